// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "s3v/branch_relations.hpp"
#include "s3v/formal.hpp"
#include "s3v/jacobi.hpp"
#include "s3v/model.hpp"
#include "s3v/moore_seiberg.hpp"
#include "s3v/paths.hpp"

using namespace s3v;

namespace {

// Pinned limits.
constexpr std::int64_t kFormalCutoff = 10;
constexpr std::int64_t kDeltaCutoff = 12;
constexpr int kRandomFunctions = 20;
constexpr std::uint64_t kFormalSeed = 20261016;
constexpr double kFormalSeconds = 30.0;
constexpr double kRelationsSeconds = 60.0;
constexpr double kS3Seconds = 300.0;
constexpr double kFloatTolerance = 1e-9;
constexpr std::int64_t kS3Cutoff = 8;
constexpr int kSamplePoints = 10;
constexpr std::uint64_t kSampleSeed = 7;
const std::vector<std::uint64_t> kSyntheticSeeds = {1, 2, 3, 4, 5};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool passed = true;
    std::string detail;
    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

std::string first_failure(const std::vector<CheckResult>& rs) {
    for (const auto& r : rs)
        if (!r.passed) return r.name + ": " + r.message;
    return {};
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", s);
    return buf;
}

std::vector<Model> synthetic_models() {
    std::vector<Model> out;
    for (auto s : kSyntheticSeeds) out.push_back(Model::synthetic(s));
    return out;
}

Outcome criterion1() {
    Outcome o;
    auto t0 = Clock::now();
    std::mt19937_64 rng(kFormalSeed);
    for (int i = 0; i < kRandomFunctions; ++i) {
        RationalFn f = random_rational_fn(rng, 4, 3, Mode::Exact);
        if (f.r > 3 || f.s > 3 || f.t > 3) o.fail("generator exceeded pole order 3");
        for (const auto& [e, c] : f.numerator)
            if (e[0] + e[1] + e[2] > 4) o.fail("generator exceeded numerator degree 4");
        CheckResult r = verify_rational_delta(f, kFormalCutoff);
        if (!r.passed) o.fail("function " + std::to_string(i) + ": " + r.message);
    }
    for (const auto& r : {verify_delta_identity_two_term(kDeltaCutoff, Mode::Exact),
                          verify_delta_identity_three_term(kDeltaCutoff, Mode::Exact)})
        if (!r.passed) o.fail(r.name + ": " + r.message);
    double dt = since(t0);
    if (dt >= kFormalSeconds) o.fail("runtime " + fmt_seconds(dt) + " exceeds limit");
    if (o.passed)
        o.detail = std::to_string(kRandomFunctions) + " functions at cutoff 10, delta identities at cutoff 12, " +
                   fmt_seconds(dt);
    return o;
}

Outcome criterion2() {
    Outcome o;
    Model m = Model::abelian(8);
    std::string bad = first_failure(check_omega_involution(m, {-2, -1, 0, 1}));
    if (!bad.empty()) o.fail(bad);
    const Scalar one = Scalar::one(Mode::Exact);
    std::size_t n = 0;
    for (int r : {-2, -1, 0, 1}) {
        for (auto [kind, slot] : {std::pair{ClassKind::P, 2}, std::pair{ClassKind::I, 1}}) {
            for (const auto& c : m.all_classes(kind)) {
                ClassVec v = class_vec(c, one);
                ClassVec back = m.omega_apply(-r - 1, m.omega_apply(r, v, slot), slot);
                ++n;
                if (!equals(back, v)) o.fail("class " + c.str() + " at r = " + std::to_string(r));
            }
        }
    }
    if (o.passed) o.detail = "r in {-2,-1,0,1}, " + std::to_string(n) + " class applications and all operators";
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto t0 = Clock::now();
    BranchFrame frame;
    std::size_t checks = 0;
    for (int n : {2, 3, 4, 6, 8}) {
        Model m = Model::abelian(n);
        MooreSeibergSystem sys = MooreSeibergSystem::build(m, frame);
        auto rs = check_relations(m, sys);
        checks += rs.size();
        std::string bad = first_failure(rs);
        if (!bad.empty()) o.fail("N=" + std::to_string(n) + ": " + bad);
        // Every quadruple carrying a product class is covered.
        if (class_blocks(m, ClassKind::P).size() != static_cast<std::size_t>(n * n * n))
            o.fail("N=" + std::to_string(n) + ": unexpected number of quadruples");
    }
    double dt = since(t0);
    if (dt >= kRelationsSeconds) o.fail("runtime " + fmt_seconds(dt) + " exceeds limit");
    if (o.passed) o.detail = std::to_string(checks) + " relation checks over N in {2,3,4,6,8}, " + fmt_seconds(dt);
    return o;
}

Outcome criterion4() {
    Outcome o;
    const PathParams pp = PathParams::defaults();
    for (bool gamma : {true, false}) {
        PathSpec path = gamma ? build_gamma(pp) : build_sigma(pp);
        CertificationReport cr = certify_path(path, gamma ? Region::GPrime : Region::GDoublePrime);
        if (!cr.passed) o.fail(path.name + ": " + cr.failure);
        if (!(cr.certified_lower_bound > 0)) o.fail(path.name + ": clearance not positive");
        for (const auto& c : cr.containments)
            if (!c.passed) o.fail(path.name + " containment " + c.label + " (" + c.condition + ")");
        if (cr.containments.empty()) o.fail(path.name + ": no containments checked");
        auto w = continue_along(path).winding;
        if (!(w == WindingTriple{})) o.fail(path.name + ": nonzero winding");
    }
    if (o.passed) o.detail = "gamma in GPrime, sigma in GDoublePrime, containments hold, windings (0,0,0)";
    return o;
}

Outcome criterion5() {
    Outcome o;
    auto t0 = Clock::now();
    BranchFrame frame;
    BranchSamples samples = sample_branch_points(kSampleSeed, kSamplePoints);
    std::string bad = first_failure(check_chain_offsets(frame, samples));
    if (!bad.empty()) o.fail(bad);
    std::vector<Model> models;
    for (int n : {2, 3, 4, 6, 8}) models.push_back(Model::abelian(n));
    for (auto& m : synthetic_models()) models.push_back(m);
    std::size_t classes = 0;
    for (const auto& base : models) {
        for (Mode mode : {Mode::Exact, Mode::Float}) {
            Model m = base.with_mode(mode);
            MooreSeibergSystem sys = MooreSeibergSystem::build(m, frame);
            auto rs = check_branch_relations(m, frame, sys, samples, mode == Mode::Float ? kFloatTolerance : 0.0);
            std::string b = first_failure(rs);
            if (!b.empty()) o.fail(m.name() + (mode == Mode::Float ? " (float): " : " (exact): ") + b);
        }
        classes += base.all_classes(ClassKind::P).size();
    }
    if (o.passed)
        o.detail = std::to_string(classes) + " correlators in " + std::to_string(models.size()) +
                   " models, 10 points per region, exact and float, " + fmt_seconds(since(t0));
    return o;
}

// Synthetic models must stay inside the advertised bounds.
std::string synthetic_bounds_violation(const Model& m) {
    for (const auto& [q, cls] : class_blocks(m, ClassKind::P)) {
        if (cls.size() > 5) return "more than 5 classes in " + m.quadruple_str(q);
        for (const auto& c : cls) {
            for (const auto& e : m.class_exponents(c))
                if (e.den() > 12) return "exponent denominator above 12 in " + c.str();
            if (m.dressing(c.g).degree() > 3) return "dressing degree above 3 in " + c.str();
        }
    }
    return {};
}

Outcome criterion6() {
    Outcome o;
    auto t0 = Clock::now();
    BranchFrame frame;
    std::vector<Model> models;
    for (int n : {2, 4, 6}) models.push_back(Model::abelian(n));
    for (auto& m : synthetic_models()) {
        std::string v = synthetic_bounds_violation(m);
        if (!v.empty()) o.fail(m.name() + ": " + v);
        models.push_back(m);
    }
    std::size_t classes = 0;
    for (const auto& m : models) {
        MooreSeibergSystem sys = MooreSeibergSystem::build(m, frame);
        S3Report rep = verify_s3_all(JacobiContext{m, frame, sys}, kS3Cutoff);
        if (rep.refused) {
            o.fail(m.name() + ": " + rep.refusal);
            continue;
        }
        for (const auto& [c, k] : rep.passes_per_class()) {
            ++classes;
            if (k != 6) o.fail(m.name() + " " + c + ": " + std::to_string(k) + "/6 orderings");
        }
        for (const auto& e : rep.entries)
            if (!e.passed) o.fail(m.name() + " " + e.class_label + " " + e.permutation + ": " + e.detail);
    }
    double dt = since(t0);
    if (dt >= kS3Seconds) o.fail("runtime " + fmt_seconds(dt) + " exceeds limit");
    if (o.passed)
        o.detail = "6/6 orderings and both involutions for " + std::to_string(classes) + " classes in " +
                   std::to_string(models.size()) + " models at cutoff 8, " + fmt_seconds(dt);
    return o;
}

Outcome criterion7() {
    Outcome o;
    BranchFrame frame;
    Model base = Model::abelian(4);
    Model pert = base;
    const ClassLabel x{ClassKind::P, {1, 2, 3}};
    pert.perturb(x, Scalar::root_of_unity(Rational(1, 3), Mode::Exact));

    MooreSeibergSystem sb = MooreSeibergSystem::build(base, frame);
    if (!first_failure(check_relations(base, sb)).empty()) o.fail("unperturbed model already fails");

    MooreSeibergSystem sp = MooreSeibergSystem::build(pert, frame);
    std::set<std::string> failing;
    for (const auto& r : check_relations(pert, sp)) {
        if (r.passed || r.name.rfind("hexagon", 0) != 0) continue;
        for (const auto& [k, v] : r.locator)
            if (k == "quadruple") failing.insert(v);
    }
    const std::string target = pert.quadruple_str(pert.quadruple_of(x));
    std::set<std::string> orbit;
    const auto& g = x.g;
    for (auto p : std::vector<std::array<int, 3>>{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
        orbit.insert(pert.quadruple_str(pert.quadruple_of(ClassLabel{ClassKind::P, {g[p[0]], g[p[1]], g[p[2]]}})));
    if (failing.empty()) o.fail("perturbation not detected");
    if (!failing.count(target)) o.fail("perturbed quadruple " + target + " not among the failures");
    for (const auto& q : failing)
        if (!orbit.count(q)) o.fail("failure at unrelated quadruple " + q);

    // The S3 verification refuses to run on the perturbed model.
    S3Report rep = verify_s3_all(JacobiContext{pert, frame, sp}, 4);
    if (!rep.refused) o.fail("verify_s3 ran on a model failing the relations");

    if (o.passed) {
        std::string list;
        for (const auto& q : failing) list += (list.empty() ? "" : " ") + q;
        o.detail = "hexagon failures at " + list + " (perturbed " + target + ")";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                            criterion5, criterion6, criterion7};
    const char* titles[] = {"formal calculus", "Omega involution", "Moore-Seiberg relations", "path certification",
                            "branch relations", "S3 symmetry", "mutation sensitivity"};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        all = all && o.passed;
        std::printf("CRITERION %zu (%s): %s: %s\n", i + 1, titles[i], o.passed ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
