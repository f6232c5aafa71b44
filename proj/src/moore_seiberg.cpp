#include "s3v/moore_seiberg.hpp"

#include <set>

namespace s3v {

namespace {

ClassKind kind_after(int which, bool image) {
    switch (which) {
        case 1: return ClassKind::I;
        case 2: return image ? ClassKind::I : ClassKind::P;
        case 3: return image ? ClassKind::P : ClassKind::I;
        default: return ClassKind::P;
    }
}

// Rows and columns are indexed by position; returns false if singular.
bool invert_in_place(std::vector<std::vector<Scalar>>& a, Mode mode) {
    const std::size_t n = a.size();
    std::vector<std::vector<Scalar>> inv(n, std::vector<Scalar>(n, Scalar::zero(mode)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Scalar::one(mode);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        double best = 0.0;
        for (std::size_t r = col; r < n; ++r) {
            if (a[r][col].is_zero()) continue;
            if (mode == Mode::Exact) {
                piv = r;
                break;
            }
            double mag = std::abs(a[r][col].approx());
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (piv == n) return false;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Scalar p = a[col][col].inv();
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] *= p;
            inv[col][k] *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Scalar f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[col][k];
                inv[r][k] -= f * inv[col][k];
            }
        }
    }
    a = std::move(inv);
    return true;
}

struct Relation {
    std::string name;
    std::string statement;
    IsoMatrix lhs, rhs;
};

}  // namespace

ClassVec IsoMatrix::apply(const ClassVec& v) const {
    ClassVec out;
    for (const auto& [c, s] : v) {
        auto it = columns.find(c);
        if (it == columns.end()) throw std::out_of_range(name + " is not defined on " + c.str());
        out = add(out, scale(it->second, s));
    }
    return out;
}

nlohmann::json IsoMatrix::to_json() const {
    std::set<ClassLabel> rows;
    for (const auto& [c, img] : columns)
        for (const auto& kv : img) rows.insert(kv.first);
    std::map<ClassLabel, std::size_t> row_index;
    nlohmann::json codomain = nlohmann::json::array();
    for (const auto& r : rows) {
        row_index.emplace(r, row_index.size());
        codomain.push_back(r.str());
    }
    nlohmann::json domain = nlohmann::json::array(), entries = nlohmann::json::array();
    std::size_t j = 0;
    for (const auto& [c, img] : columns) {
        domain.push_back(c.str());
        for (const auto& [r, s] : img) entries.push_back({row_index.at(r), j, scalar_to_json(s)});
        ++j;
    }
    return {{"name", name}, {"domain", domain}, {"codomain", codomain}, {"entries", entries}};
}

IsoMatrix compose(const IsoMatrix& outer, const IsoMatrix& inner, const std::string& name) {
    IsoMatrix r{name, inner.from, outer.to, {}};
    for (const auto& [c, img] : inner.columns) r.columns.emplace(c, outer.apply(img));
    return r;
}

std::map<Quadruple, std::vector<ClassLabel>> class_blocks(const Model& m, ClassKind kind) {
    std::map<Quadruple, std::vector<ClassLabel>> out;
    for (const auto& c : m.all_classes(kind)) out[m.quadruple_of(c)].push_back(c);
    return out;
}

IsoMatrix inverse(const Model& m, const IsoMatrix& a, const std::string& name) {
    std::map<Quadruple, std::vector<ClassLabel>> blocks;
    for (const auto& kv : a.columns) blocks[m.quadruple_of(kv.first)].push_back(kv.first);
    IsoMatrix r{name, a.to, a.from, {}};
    for (const auto& [q, dom] : blocks) {
        std::set<ClassLabel> rowset;
        for (const auto& c : dom)
            for (const auto& kv : a.columns.at(c)) rowset.insert(kv.first);
        std::vector<ClassLabel> rows(rowset.begin(), rowset.end());
        if (rows.size() != dom.size())
            throw std::runtime_error(a.name + " is not invertible on quadruple " + m.quadruple_str(q));
        std::map<ClassLabel, std::size_t> ri;
        for (std::size_t i = 0; i < rows.size(); ++i) ri.emplace(rows[i], i);
        const std::size_t n = dom.size();
        std::vector<std::vector<Scalar>> mat(n, std::vector<Scalar>(n, Scalar::zero(m.mode())));
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [rc, s] : a.columns.at(dom[j])) mat[ri.at(rc)][j] = s;
        if (!invert_in_place(mat, m.mode()))
            throw std::runtime_error(a.name + " is singular on quadruple " + m.quadruple_str(q));
        // mat is now the inverse: rows indexed by domain, columns by rows.
        for (std::size_t i = 0; i < n; ++i) {
            ClassVec col;
            for (std::size_t j = 0; j < n; ++j) col = add(col, class_vec(dom[j], mat[j][i]));
            r.columns.emplace(rows[i], col);
        }
    }
    return r;
}

IsoMatrix build_omega_tilde(const Model& m, int which, bool inverse) {
    if (which < 1 || which > 4) throw std::invalid_argument("Omega~ index must be 1..4");
    const int r = inverse ? 0 : -1;
    IsoMatrix out;
    out.name = inverse ? "Omega^-1~(" + std::to_string(which) + ")" : "Omega~(" + std::to_string(which) + ")";
    out.from = kind_after(which, false);
    out.to = kind_after(which, true);
    for (const auto& c : m.all_classes(out.from)) {
        const auto& g = c.g;
        ClassVec img;
        switch (which) {
            case 1:  // I(g1,g2,g3) -> [Omega(Op(g1,g2)) (x) Op(g1+g2,g3)]_I
                img = m.omega_apply(r, class_vec(c, Scalar::one(m.mode())), 1);
                break;
            case 2: {  // P(g1,g2,g3) = Op(g1,g2+g3) (x) Op(g2,g3) -> Op(g2,g3) (x) Omega(Op(g1,g2+g3))
                OmegaImage w = m.omega_apply(r, OpLabel{g[0], g[1] + g[2]});
                img = class_vec(ClassLabel{ClassKind::I, {g[1], g[2], g[0]}}, w.scalar);
                break;
            }
            case 3: {  // I(g1,g2,g3) = Op(g1,g2) (x) Op(g1+g2,g3) -> Omega(Op(g1+g2,g3)) (x) Op(g1,g2)
                OmegaImage w = m.omega_apply(r, OpLabel{g[0] + g[1], g[2]});
                img = class_vec(ClassLabel{ClassKind::P, {g[2], g[0], g[1]}}, w.scalar);
                break;
            }
            default:  // P(g1,g2,g3) -> Op(g1,g2+g3) (x) Omega(Op(g2,g3))
                img = m.omega_apply(r, class_vec(c, Scalar::one(m.mode())), 2);
                break;
        }
        out.columns.emplace(c, img);
    }
    return out;
}

IsoMatrix build_fusing(const Model& m, const BranchFrame& frame) {
    IsoMatrix f{"F", ClassKind::P, ClassKind::I, {}};
    const Point& p0 = frame.anchor();
    const Scalar one = Scalar::one(m.mode());
    const SignedVar z1{0, 1}, z2{1, 1}, z12{2, 1};
    for (const auto& [q, pcls] : class_blocks(m, ClassKind::P)) {
        std::vector<ClassLabel> icls = m.classes(ClassKind::I, q);
        std::vector<LocalExpansion> iexp;
        for (const auto& j : icls) iexp.push_back(m.natural(class_vec(j, one), z12, z2, p0));
        for (const auto& c : pcls) {
            LocalExpansion target = m.natural(class_vec(c, one), z1, z2, p0);
            ClassVec img;
            LocalExpansion sum(m.mode(), p0);
            for (const auto& [alpha, lp] : target.classes()) {
                std::vector<std::size_t> cand;
                for (std::size_t k = 0; k < icls.size(); ++k)
                    if (iexp[k].classes().count(alpha)) cand.push_back(k);
                if (cand.size() != 1)
                    throw FusingError("no unique iterate class matches " + c.str() + " in quadruple " + m.quadruple_str(q),
                                      m.quadruple_str(q));
                std::optional<Scalar> ratio = lp.proportional_to(iexp[cand[0]].classes().at(alpha));
                if (!ratio)
                    throw FusingError("iterate of " + icls[cand[0]].str() + " is not proportional to the product " +
                                          c.str() + " in quadruple " + m.quadruple_str(q),
                                      m.quadruple_str(q));
                if (img.count(icls[cand[0]])) continue;
                img = add(img, class_vec(icls[cand[0]], *ratio));
                sum.add_expansion(iexp[cand[0]], *ratio);
            }
            if (!sum.equals(target))
                throw FusingError("iterate combination does not reproduce " + c.str() + " on S1 in quadruple " +
                                      m.quadruple_str(q),
                                  m.quadruple_str(q));
            f.columns.emplace(c, img);
        }
    }
    return f;
}

IsoMatrix build_braiding(const Model& m, const IsoMatrix& fusing, const IsoMatrix& fusing_inverse) {
    IsoMatrix om1 = build_omega_tilde(m, 1, false);
    return compose(fusing_inverse, compose(om1, fusing, "Omega~(1) F"), "B");
}

MooreSeibergSystem MooreSeibergSystem::build(const Model& m, const BranchFrame& frame) {
    MooreSeibergSystem s;
    s.F = build_fusing(m, frame);
    s.F_inv = inverse(m, s.F, "F^-1");
    for (int i = 1; i <= 4; ++i) {
        s.omega[i] = build_omega_tilde(m, i, false);
        s.omega_inv[i] = build_omega_tilde(m, i, true);
    }
    s.B = build_braiding(m, s.F, s.F_inv);
    s.B_inv = inverse(m, s.B, "B^-1");
    return s;
}

std::vector<CheckResult> check_relations(const Model& m, const MooreSeibergSystem& s) {
    auto id = [&m](const IsoMatrix& a) {
        IsoMatrix r{"id", a.from, a.from, {}};
        for (const auto& kv : a.columns) r.columns.emplace(kv.first, class_vec(kv.first, Scalar::one(m.mode())));
        return r;
    };
    std::vector<Relation> rels;
    rels.push_back({"hexagon_omega", "F Omega~(3) F = Omega~(1) F Omega~(4)",
                    compose(s.F, compose(s.omega[3], s.F, ""), "lhs"),
                    compose(s.omega[1], compose(s.F, s.omega[4], ""), "rhs")});
    rels.push_back({"hexagon_omega_inverse", "F Omega^-1~(3) F = Omega^-1~(1) F Omega^-1~(4)",
                    compose(s.F, compose(s.omega_inv[3], s.F, ""), "lhs"),
                    compose(s.omega_inv[1], compose(s.F, s.omega_inv[4], ""), "rhs")});
    rels.push_back({"inverse_omega2", "(Omega~(2))^-1 = Omega^-1~(3)", inverse(m, s.omega[2], "lhs"), s.omega_inv[3]});
    rels.push_back({"inverse_omega_inv2", "(Omega^-1~(2))^-1 = Omega~(3)", inverse(m, s.omega_inv[2], "lhs"), s.omega[3]});
    rels.push_back({"inverse_omega1", "(Omega~(1))^-1 = Omega^-1~(1)", inverse(m, s.omega[1], "lhs"), s.omega_inv[1]});
    rels.push_back({"inverse_omega4", "(Omega~(4))^-1 = Omega^-1~(4)", inverse(m, s.omega[4], "lhs"), s.omega_inv[4]});
    rels.push_back({"fusing_omega4", "F Omega~(4) = Omega~(2) B^-1", compose(s.F, s.omega[4], "lhs"),
                    compose(s.omega[2], s.B_inv, "rhs")});
    rels.push_back({"braiding_omega4", "B Omega~(4) = Omega~(3) F", compose(s.B, s.omega[4], "lhs"),
                    compose(s.omega[3], s.F, "rhs")});
    rels.push_back({"fusing_invertible", "F^-1 F = id", compose(s.F_inv, s.F, "lhs"), id(s.F)});
    rels.push_back({"braiding_invertible", "B^-1 B = id", compose(s.B_inv, s.B, "lhs"), id(s.B)});

    std::vector<CheckResult> out;
    for (const auto& rel : rels) {
        std::map<Quadruple, CheckResult> bad;
        std::set<Quadruple> seen;
        for (const auto& [c, lv] : rel.lhs.columns) {
            Quadruple q = m.quadruple_of(c);
            seen.insert(q);
            auto it = rel.rhs.columns.find(c);
            ClassVec rv = it == rel.rhs.columns.end() ? ClassVec{} : it->second;
            if (equals(lv, rv) || bad.count(q)) continue;
            CheckResult r = CheckResult::fail(rel.name, rel.statement + " fails on " + c.str());
            r.with("relation", rel.name).with("quadruple", m.quadruple_str(q)).with("class", c.str());
            r.with("lhs", str(lv)).with("rhs", str(rv));
            bad.emplace(q, r);
        }
        if (bad.empty()) {
            out.push_back(CheckResult::pass(rel.name, rel.statement + " holds on " + std::to_string(seen.size()) +
                                                          " quadruples"));
        } else {
            for (auto& kv : bad) out.push_back(kv.second);
        }
    }
    return out;
}

std::vector<CheckResult> check_omega_involution(const Model& m, const std::vector<int>& rs) {
    std::vector<CheckResult> out;
    const Scalar one = Scalar::one(m.mode());
    for (int r : rs) {
        const std::string name = "omega_involution_r" + std::to_string(r);
        CheckResult res = CheckResult::pass(name, "Omega_" + std::to_string(-r - 1) + " Omega_" + std::to_string(r) +
                                                      " = id on " + std::to_string(m.order() * m.order()) +
                                                      " operators");
        for (int g = 0; g < m.order() && res.passed; ++g) {
            for (int h = 0; h < m.order(); ++h) {
                OmegaImage a = m.omega_apply(r, OpLabel{g, h});
                OmegaImage b = m.omega_apply(-r - 1, a.op);
                if (b.op == OpLabel{g, h} && (a.scalar * b.scalar).equals(one)) continue;
                res = CheckResult::fail(name, "Omega_" + std::to_string(-r - 1) + " does not undo Omega_" +
                                                  std::to_string(r) + " on Op(" + std::to_string(g) + "," +
                                                  std::to_string(h) + ")");
                res.with("r", std::to_string(r)).with("operator", "(" + std::to_string(g) + "," + std::to_string(h) + ")");
                break;
            }
        }
        out.push_back(res);
    }
    return out;
}

std::vector<CheckResult> check_braiding_monodromy(const Model& m, const BranchFrame& frame,
                                                  const MooreSeibergSystem& s) {
    const Point& q0 = frame.mirror_anchor();
    CheckResult res = CheckResult::pass("braiding_monodromy", "");
    std::size_t n = 0;
    for (const auto& [c, img] : s.B.columns) {
        ++n;
        LocalExpansion branch = local_expansion(frame, m.product_correlator(c), Region::R2, q0);
        LocalExpansion swapped = m.natural(img, SignedVar{1, 1}, SignedVar{0, 1}, q0);
        if (!branch.equals(swapped)) {
            res = CheckResult::fail("braiding_monodromy", "B scalar differs from the R2 continuation of " + c.str());
            res.with("quadruple", m.quadruple_str(m.quadruple_of(c))).with("class", c.str());
            return {res};
        }
    }
    res.message = "B agrees with the R1 to R2 continuation on " + std::to_string(n) + " classes";
    return {res};
}

}  // namespace s3v
