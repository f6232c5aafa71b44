#include "s3v/branch_relations.hpp"

#include <numbers>
#include <random>

namespace s3v {

namespace {

constexpr double kPi = std::numbers::pi;

Point random_region_point(std::mt19937_64& rng, Region r) {
    std::uniform_real_distribution<double> ang(0.05, 2 * kPi - 0.05), rad(0.3, 3.0);
    for (;;) {
        Point p{std::polar(rad(rng), ang(rng)), std::polar(rad(rng), ang(rng))};
        if (region_contains(r, p)) return p;
    }
}

// S1 is the set where z1, z2 and z1 - z2 have strictly decreasing positive
// real and imaginary parts; S2 is its mirror.
Point random_s_point(std::mt19937_64& rng, bool mirror) {
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (;;) {
        double rw = u(rng), iw = u(rng);
        Complex w(rw, iw), small(rw + u(rng), iw + u(rng));
        Point p = mirror ? Point{small, small + w} : Point{small + w, small};
        if (region_contains(mirror ? Region::S2 : Region::S1, p)) return p;
    }
}

Offsets offsets_between(const Curve& c, double t0, double t1) {
    auto res = continue_logs(c, t0, t1, principal_logs(c(t0)));
    return offsets_of(res.logs, c(t1));
}

Curve segment(const Point& a, const Point& b) {
    return [a, b](double t) { return Point{a.z1 + t * (b.z1 - a.z1), a.z2 + t * (b.z2 - a.z2)}; };
}

constexpr SignedVar Z1{0, 1}, Z2{1, 1}, Z12{2, 1}, NZ1{0, -1}, NZ2{1, -1}, NZ12{2, -1};

// A natural expression: class vector with its two slot variables.
struct Piece {
    ClassVec v;
    SignedVar first, second;
};

struct Failure {
    std::string class_label;
    std::size_t point = 0;
    std::string stop;
    std::string detail;
};

CheckResult summarize(const std::string& name, const std::string& what, std::size_t checked,
                      const std::optional<Failure>& f, const Model& m, const ClassLabel* c) {
    if (!f)
        return CheckResult::pass(name, what + ": " + std::to_string(checked) + " class/point pairs agree");
    CheckResult r = CheckResult::fail(name, what + " fails for " + f->class_label + " at point " +
                                                std::to_string(f->point) +
                                                (f->stop.empty() ? "" : " (stop " + f->stop + ")"));
    r.with("class", f->class_label);
    if (c) r.with("quadruple", m.quadruple_str(m.quadruple_of(*c)));
    r.with("point", std::to_string(f->point));
    if (!f->stop.empty()) r.with("stop", f->stop);
    if (!f->detail.empty()) r.with("detail", f->detail);
    return r;
}

}  // namespace

BranchSamples sample_branch_points(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    BranchSamples s;
    const Region rs[4] = {Region::R1, Region::R2, Region::R3, Region::R4};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < count; ++k) s.regions[static_cast<std::size_t>(i)].push_back(random_region_point(rng, rs[i]));
    for (int k = 0; k < count; ++k) s.s1.push_back(random_s_point(rng, false));
    for (int k = 0; k < count; ++k) s.s2.push_back(random_s_point(rng, true));
    return s;
}

std::vector<WalkStop> closed_walk(const PathSpec& path, const Point& start, const std::vector<Rational>& stops) {
    std::vector<WalkStop> out;
    const Point p0 = path.at(0.0);
    out.push_back({"0", p0, offsets_between(segment(start, p0), 0.0, 1.0)});
    const Curve c = path.curve();
    double prev = 0.0;
    for (const auto& t : stops) {
        double x = t.to_double();
        out.push_back({t.str(), path.at(x), offsets_between(c, prev, x)});
        prev = x;
    }
    if (prev < 1.0) out.push_back({"1", path.at(1.0), offsets_between(c, prev, 1.0)});
    out.push_back({"return", start, offsets_between(segment(path.at(1.0), start), 0.0, 1.0)});
    return out;
}

LocalExpansion move_germ(const LocalExpansion& e, const Offsets& delta, const Point& to) {
    LocalExpansion out(e.mode(), to);
    const Scalar one = Scalar::one(e.mode());
    for (const auto& [f, l] : e.classes()) {
        Rational turns = f[0] * Rational(delta[0]) + f[1] * Rational(delta[1]) + f[2] * Rational(delta[2]);
        out.add(one, f, turns, l);
    }
    return out;
}

std::vector<CheckResult> check_chain_offsets(const BranchFrame& frame, const BranchSamples& samples) {
    std::vector<CheckResult> out;
    const Region rs[4] = {Region::R1, Region::R2, Region::R3, Region::R4};
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string name = "chain_offsets_" + region_name(rs[i]);
        CheckResult r = CheckResult::pass(name, "preferred logs on " + region_name(rs[i]) +
                                                    " match continuation from the anchor at " +
                                                    std::to_string(samples.regions[i].size()) + " points");
        for (std::size_t k = 0; k < samples.regions[i].size(); ++k) {
            const Point& p = samples.regions[i][k];
            Offsets a = frame.preferred_offsets(rs[i], p), b = chain_continuation_offsets(frame, rs[i], p);
            if (a != b) {
                r = CheckResult::fail(name, "preferred offsets differ from chain continuation at point " +
                                                std::to_string(k));
                r.with("region", region_name(rs[i])).with("point", std::to_string(k));
                break;
            }
        }
        out.push_back(r);
    }
    return out;
}

std::vector<CheckResult> check_branch_relations(const Model& m, const BranchFrame& frame,
                                                const MooreSeibergSystem& sys, const BranchSamples& samples,
                                                double tol) {
    const Mode mode = m.mode();
    const Scalar one = Scalar::one(mode);
    const std::vector<ClassLabel> classes = m.all_classes(ClassKind::P);

    auto nat = [&](const Piece& pc, const Point& p) { return m.natural(pc.v, pc.first, pc.second, p); };

    std::vector<CheckResult> out;

    // Natural expansions against preferred branches of the product
    // correlator.
    struct RegionRel {
        const char* name;
        const char* what;
        Region region;
    };
    const RegionRel rel[4] = {{"branch_product_R1", "P~Z(z1,z2) is the preferred R1 branch", Region::R1},
                              {"branch_braided_R2", "P~(BZ)(z2,z1) is the preferred R2 branch", Region::R2},
                              {"branch_iterate_R3", "I~(FZ)(z1-z2,z2) is the preferred R3 branch", Region::R3},
                              {"branch_braided_iterate_R4", "I~(Omega~(1) F Z)(z2-z1,z1) is the preferred R4 branch", Region::R4}};
    for (std::size_t i = 0; i < 4; ++i) {
        std::optional<Failure> fail;
        const ClassLabel* bad = nullptr;
        std::size_t checked = 0;
        for (const auto& c : classes) {
            ClassVec z = class_vec(c, one);
            Piece pc;
            switch (i) {
                case 0: pc = {z, Z1, Z2}; break;
                case 1: pc = {sys.B.apply(z), Z2, Z1}; break;
                case 2: pc = {sys.F.apply(z), Z12, Z2}; break;
                default: pc = {sys.omega[1].apply(sys.F.apply(z)), NZ12, Z1}; break;
            }
            GFunction phi = m.product_correlator(c);
            for (std::size_t k = 0; k < samples.regions[i].size() && !fail; ++k) {
                const Point& p = samples.regions[i][k];
                ++checked;
                if (!local_expansion(frame, phi, rel[i].region, p).equals(nat(pc, p), tol))
                    fail = Failure{c.str(), k, "", ""};
            }
            if (fail) {
                bad = &c;
                break;
            }
        }
        out.push_back(summarize(rel[i].name, rel[i].what, checked, fail, m, bad));
    }

    // Two natural expansions of the same class on S1 and S2.
    for (int which = 0; which < 2; ++which) {
        const auto& pts = which == 0 ? samples.s1 : samples.s2;
        std::optional<Failure> fail;
        const ClassLabel* bad = nullptr;
        std::size_t checked = 0;
        for (const auto& c : classes) {
            ClassVec z = class_vec(c, one);
            Piece a = which == 0 ? Piece{sys.F.apply(z), Z12, Z2} : Piece{sys.omega[1].apply(sys.F.apply(z)), NZ12, Z1};
            Piece b = which == 0 ? Piece{z, Z1, Z2} : Piece{sys.B.apply(z), Z2, Z1};
            for (std::size_t k = 0; k < pts.size() && !fail; ++k) {
                ++checked;
                if (!nat(a, pts[k]).equals(nat(b, pts[k]), tol)) fail = Failure{c.str(), k, "", ""};
            }
            if (fail) {
                bad = &c;
                break;
            }
        }
        out.push_back(which == 0 ? summarize("iterate_matches_product_S1", "I~(FZ) = P~Z on S1", checked, fail, m, bad)
                                 : summarize("braided_iterate_matches_braided_S2", "I~(Omega~(1) F Z) = P~(BZ) on S2", checked, fail, m, bad));
    }

    // Closed walks through the piecewise expressions.
    const PathParams& pp = frame.params();
    for (int which = 0; which < 2; ++which) {
        const bool gamma = which == 0;
        const PathSpec path = gamma ? build_gamma(pp) : build_sigma(pp);
        const std::vector<Rational> stops =
            gamma ? std::vector<Rational>{Rational(2, 7), Rational(3, 7), Rational(4, 7), Rational(1)}
                  : std::vector<Rational>{Rational(2, 7), Rational(4, 7), Rational(5, 7), Rational(1)};
        const auto& pts = gamma ? samples.s1 : samples.s2;
        std::vector<std::vector<WalkStop>> walks;
        for (const auto& s : pts) walks.push_back(closed_walk(path, s, stops));

        std::optional<Failure> fail;
        const ClassLabel* bad = nullptr;
        std::size_t checked = 0;
        for (const auto& c : classes) {
            ClassVec z = class_vec(c, one);
            ClassVec oz = sys.omega[4].apply(z);
            // pieces[j] is valid on the j-th interval of the walk along the path
            std::vector<Piece> pieces;
            if (gamma) {
                pieces = {{oz, Z1, Z2}, {z, Z12, NZ2}, {sys.F.apply(z), Z1, NZ2}, {sys.F.apply(oz), Z12, Z2}};
            } else {
                pieces = {{sys.omega[1].apply(sys.F.apply(oz)), NZ12, Z1},
                          {oz, Z1, Z2},
                          {z, Z12, NZ2},
                          {sys.B.apply(oz), Z2, Z1}};
            }
            for (std::size_t k = 0; k < pts.size() && !fail; ++k) {
                ++checked;
                const auto& walk = walks[k];
                // walk: [0] path start, [1..4] stops, [5] back at the start point
                LocalExpansion cur = nat(pieces[0], pts[k]);
                cur = move_germ(cur, walk[0].delta, walk[0].point);
                if (!cur.equals(nat(pieces[0], walk[0].point), tol)) {
                    fail = Failure{c.str(), k, "0", "first expression is not single valued on the start leg"};
                    break;
                }
                for (std::size_t j = 1; j <= 4 && !fail; ++j) {
                    cur = move_germ(cur, walk[j].delta, walk[j].point);
                    const Piece& next = pieces[std::min<std::size_t>(j, 3)];
                    if (!cur.equals(nat(next, walk[j].point), tol)) fail = Failure{c.str(), k, walk[j].label, ""};
                }
                if (fail) break;
                cur = move_germ(cur, walk[5].delta, pts[k]);
                if (!cur.equals(nat(pieces[3], pts[k]), tol)) {
                    fail = Failure{c.str(), k, "return", ""};
                } else if (!cur.equals(nat(pieces[0], pts[k]), tol)) {
                    fail = Failure{c.str(), k, "closing", "last and first expressions differ at the start point"};
                }
            }
            if (fail) {
                bad = &c;
                break;
            }
        }
        out.push_back(gamma ? summarize("gamma_loop", "P~(Omega~(4) Z) = I~(F Omega~(4) Z) on S1 along gamma", checked,
                                        fail, m, bad)
                            : summarize("sigma_loop",
                                        "I~(Omega~(1) F Omega~(4) Z)(z2-z1,z1) = P~(B Omega~(4) Z)(z2,z1) on S2 "
                                        "along sigma",
                                        checked, fail, m, bad));
    }
    return out;
}

}  // namespace s3v
