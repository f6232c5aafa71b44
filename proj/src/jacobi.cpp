#include "s3v/jacobi.hpp"

#include <unordered_map>

namespace s3v {

namespace {

std::string alpha_str(const Exps& a) { return "(" + a[0].str() + "," + a[1].str() + "," + a[2].str() + ")"; }

Rational dot(const Exps& a, const Offsets& n) {
    return a[0] * Rational(n[0]) + a[1] * Rational(n[1]) + a[2] * Rational(n[2]);
}

// Coefficients of a local expansion against the basis monomials taken on the
// branch with offsets n at the expansion point.
std::map<Exps, LaurentElem> against_branch(const LocalExpansion& e, const Offsets& n) {
    std::map<Exps, LaurentElem> out;
    for (const auto& [a, l] : e.classes()) {
        if (l.is_zero()) continue;
        out.emplace(a, l.scaled(phase(-dot(a, n), e.mode())));
    }
    return out;
}

std::map<Exps, LaurentElem> nonzero(std::map<Exps, LaurentElem> m) {
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
    return m;
}

constexpr SignedVar Z1{0, 1}, Z2{1, 1}, Z12{2, 1};

struct Expanded {
    bool passed = true;
    std::string message;
    std::vector<std::pair<std::string, std::string>> locator;
};

Expanded expand_and_compare(const LaurentElem& f, const LaurentElem& g, const LaurentElem& h, std::int64_t k,
                            Mode mode, double tol) {
    const Scalar one = Scalar::one(mode);
    DeltaExpression lhs, rhs;
    lhs.add(one, DeltaAtom::product(), iota(Iota::I12, f.to_rational_fn(), k));
    lhs.add(-one, DeltaAtom::reversed_product(), iota(Iota::I21, g.to_rational_fn(), k));
    // x2^{-1} delta((x1 - x0)/x2) = x1^{-1} delta((x2 + x0)/x1); the second
    // form keeps the attached series free of the atom's variable.
    rhs.add(one, DeltaAtom::swapped_iterate(), iota(Iota::I20, h.to_rational_fn(), k));
    CheckResult r = compare_delta_expressions("jacobi", lhs, rhs, k, mode, tol);
    return {r.passed, r.message, r.locator};
}

// The identity is linear in (f, g, h), so exact problems are cached after
// dividing by one coefficient.
const Expanded& cached_expansion(const LaurentElem& f, const LaurentElem& g, const LaurentElem& h, std::int64_t k) {
    static std::unordered_map<std::string, Expanded> cache;
    Scalar c = Scalar::one(Mode::Exact);
    for (const LaurentElem* e : {&f, &g, &h}) {
        LaurentElem n = e->normalized();
        if (!n.terms().empty()) {
            c = n.terms().begin()->second.inv();
            break;
        }
    }
    LaurentElem fs = f.scaled(c), gs = g.scaled(c), hs = h.scaled(c);
    std::string key = std::to_string(k) + "|" + fs.key() + "|" + gs.key() + "|" + hs.key();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, expand_and_compare(fs, gs, hs, k, Mode::Exact, 0.0)).first->second;
}

Quadruple permuted(const Quadruple& q, int i, int j) {
    Quadruple r = q;
    std::swap(r[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(j)]);
    return r;
}

std::string swap_ordering(const std::string& o, std::size_t i, std::size_t j) {
    std::string r = o;
    std::swap(r[i], r[j]);
    return r;
}

}  // namespace

std::vector<CoefficientFunction> basis_decompose(const GFunction& g) {
    LocalExpansion e = expansion_with_offsets(g, anchor_base_point(PathParams::defaults()), {0, 0, 0});
    std::vector<CoefficientFunction> out;
    for (const auto& [a, l] : e.classes())
        if (!l.is_zero()) out.push_back({a, l});
    return out;
}

JacobiInstance make_instance(const JacobiContext& ctx, const Quadruple& quadruple, const ClassVec& source,
                             const GFunction& phi, std::int64_t cutoff, std::string ordering) {
    const Model& m = ctx.model;
    JacobiInstance inst;
    inst.quadruple = quadruple;
    inst.source = source;
    inst.source_label = str(source);
    inst.ordering = std::move(ordering);
    inst.function = phi;
    inst.cutoff = cutoff;
    inst.mode = m.mode();

    std::map<Exps, LaurentElem> f;
    for (auto& cf : basis_decompose(phi)) f.emplace(cf.alpha, std::move(cf.value));

    const Point& p0 = ctx.frame.anchor();
    const Point& q0 = ctx.frame.mirror_anchor();
    auto g = nonzero(against_branch(m.natural(ctx.sys.B.apply(source), Z2, Z1, q0),
                                    ctx.frame.preferred_offsets(Region::R2, q0)));
    auto h = nonzero(against_branch(m.natural(ctx.sys.F.apply(source), Z12, Z2, p0),
                                    ctx.frame.preferred_offsets(Region::R3, p0)));

    auto same_keys = [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return false;
        for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
            if (ia->first != ib->first) return false;
        return true;
    };
    if (!same_keys(f, g) || !same_keys(f, h))
        throw JacobiError("product, braided and iterate extractions of " + inst.source_label +
                              " carry different exponent classes in quadruple " + m.quadruple_str(quadruple),
                          m.quadruple_str(quadruple));
    for (auto& [a, fa] : f) inst.families.emplace(a, JacobiFamily{fa, g.at(a), h.at(a)});
    return inst;
}

JacobiInstance extract_FGH(const JacobiContext& ctx, const ClassLabel& z, std::int64_t cutoff) {
    return make_instance(ctx, ctx.model.quadruple_of(z), class_vec(z, Scalar::one(ctx.model.mode())),
                         ctx.model.product_correlator(z), cutoff);
}

CheckResult jacobi_check(const JacobiInstance& inst, double tol) {
    const std::string name = "jacobi";
    for (const auto& [a, fam] : inst.families) {
        const char* bad = !fam.g.equals(fam.f, tol) ? "g" : (!fam.h.equals(fam.f, tol) ? "h" : nullptr);
        Expanded ex = inst.mode == Mode::Exact ? cached_expansion(fam.f, fam.g, fam.h, inst.cutoff)
                                               : expand_and_compare(fam.f, fam.g, fam.h, inst.cutoff, inst.mode, tol);
        if (!bad && ex.passed) continue;
        CheckResult r = CheckResult::fail(
            name, bad ? std::string("closed forms differ: ") + bad + " != f for class " + alpha_str(a)
                      : "delta expansion differs for class " + alpha_str(a) + ": " + ex.message);
        r.with("alpha", alpha_str(a)).with("stage", bad ? "closed_form" : "expansion");
        if (bad) r.with("family", bad);
        for (const auto& kv : ex.locator) r.locator.push_back(kv);
        return r;
    }
    return CheckResult::pass(name, std::to_string(inst.families.size()) + " exponent classes agree at cutoff " +
                                       std::to_string(inst.cutoff));
}

JacobiInstance transform_swap12(const JacobiContext& ctx, const JacobiInstance& inst) {
    return make_instance(ctx, permuted(inst.quadruple, 0, 1), ctx.sys.B.apply(inst.source),
                         swap_variables(ctx.frame, inst.function), inst.cutoff, swap_ordering(inst.ordering, 0, 1));
}

JacobiInstance transform_swap23(const JacobiContext& ctx, const JacobiInstance& inst) {
    return make_instance(ctx, permuted(inst.quadruple, 1, 2), ctx.sys.omega[4].apply(inst.source),
                         substitute_shift(ctx.frame, inst.function), inst.cutoff, swap_ordering(inst.ordering, 1, 2));
}

nlohmann::json S3Entry::to_json() const {
    nlohmann::json loc = nlohmann::json::object();
    for (const auto& [k, v] : locator) loc[k] = v;
    return {{"quadruple", quadruple}, {"class", class_label}, {"permutation", permutation},
            {"status", passed ? "pass" : "fail"}, {"detail", detail}, {"locator", loc}};
}

bool S3Report::all_passed() const {
    if (refused) return false;
    for (const auto& e : entries)
        if (!e.passed) return false;
    return true;
}

std::map<std::string, int> S3Report::passes_per_class() const {
    std::map<std::string, int> out;
    for (const auto& e : entries) {
        if (e.permutation.rfind("involution", 0) == 0) continue;
        out[e.class_label] += e.passed ? 1 : 0;
    }
    return out;
}

namespace {

void run_class(const JacobiContext& ctx, const ClassLabel& z, std::int64_t cutoff, S3Report& rep) {
    const Model& m = ctx.model;
    const std::string qs = m.quadruple_str(m.quadruple_of(z));
    auto record = [&](const std::string& perm, const CheckResult& r) {
        rep.entries.push_back({qs, z.str(), perm, r.passed, r.message, r.locator});
    };
    auto attempt = [&](const std::string& perm, auto&& build) -> std::optional<JacobiInstance> {
        try {
            JacobiInstance inst = build();
            record(perm, jacobi_check(inst));
            return inst;
        } catch (const JacobiError& e) {
            CheckResult r = CheckResult::fail("jacobi", e.what());
            r.with("quadruple", e.quadruple()).with("stage", "extraction");
            record(perm, r);
        } catch (const std::exception& e) {
            CheckResult r = CheckResult::fail("jacobi", e.what());
            r.with("stage", "construction");
            record(perm, r);
        }
        return std::nullopt;
    };
    auto skipped = [&](const std::string& perm, const std::string& from) {
        CheckResult r = CheckResult::fail("jacobi", "not built: instance " + from + " failed to build");
        r.with("stage", "construction");
        record(perm, r);
    };

    auto base = attempt("123", [&] { return extract_FGH(ctx, z, cutoff); });
    if (!base) {
        for (const char* p : {"213", "132", "312", "231", "321", "involution_12", "involution_23"}) skipped(p, "123");
        return;
    }
    auto s12 = attempt("213", [&] { return transform_swap12(ctx, *base); });
    auto s23 = attempt("132", [&] { return transform_swap23(ctx, *base); });
    std::optional<JacobiInstance> s12s23, s23s12;
    if (s23) s12s23 = attempt("312", [&] { return transform_swap12(ctx, *s23); });
    else skipped("312", "132");
    if (s12) s23s12 = attempt("231", [&] { return transform_swap23(ctx, *s12); });
    else skipped("231", "213");
    if (s23s12) attempt("321", [&] { return transform_swap12(ctx, *s23s12); });
    else skipped("321", "231");
    if (s12) attempt("involution_12", [&] { return transform_swap12(ctx, *s12); });
    else skipped("involution_12", "213");
    if (s23) attempt("involution_23", [&] { return transform_swap23(ctx, *s23); });
    else skipped("involution_23", "132");
}

bool relations_hold(const JacobiContext& ctx, S3Report& rep) {
    for (const auto& r : check_relations(ctx.model, ctx.sys)) {
        if (!r.passed) {
            rep.refused = true;
            rep.refusal = "Moore-Seiberg relations fail (" + r.name + ": " + r.message + ")";
            return false;
        }
    }
    return true;
}

}  // namespace

S3Report verify_s3(const JacobiContext& ctx, const Quadruple& quadruple, std::int64_t cutoff) {
    S3Report rep;
    if (!relations_hold(ctx, rep)) return rep;
    for (const auto& z : ctx.model.classes(ClassKind::P, quadruple)) run_class(ctx, z, cutoff, rep);
    return rep;
}

S3Report verify_s3_all(const JacobiContext& ctx, std::int64_t cutoff) {
    S3Report rep;
    if (!relations_hold(ctx, rep)) return rep;
    for (const auto& z : ctx.model.all_classes(ClassKind::P)) run_class(ctx, z, cutoff, rep);
    return rep;
}

}  // namespace s3v
