#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "s3v/branched.hpp"

using namespace s3v;

namespace {

const double kPi = std::numbers::pi;

Complex polar(double r, double a) { return std::polar(r, a); }

GFunction random_gfunction(std::mt19937_64& rng, Mode mode) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 6), dexp(-2, 2), coef(-3, 3);
    GFunction g(mode);
    int nterms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nterms; ++i) {
        Exps e{Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
        LaurentElem d(mode);
        for (int j = 0; j < 2; ++j) {
            int c = coef(rng);
            if (c == 0) c = 1;
            d.add_term({dexp(rng), dexp(rng), dexp(rng)}, Scalar::from_rational(Rational(c), mode));
        }
        g.add(Scalar::root_of_unity(Rational(static_cast<std::int64_t>(rng() % 12), 12), mode), e, d);
    }
    return g;
}

// Random point of S1 or S2 built from three increasing positive parts.
Point random_s_point(std::mt19937_64& rng, bool second) {
    std::uniform_real_distribution<double> u(0.2, 2.0);
    double rw = u(rng), iw = u(rng);
    double r2 = rw + u(rng), i2 = iw + u(rng);
    Complex w(rw, iw), small(r2, i2);
    Complex big = small + w;
    return second ? Point{small, big} : Point{big, small};
}

Point random_region_point(std::mt19937_64& rng, Region r) {
    std::uniform_real_distribution<double> ang(0.05, 2 * kPi - 0.05), rad(0.3, 3.0);
    for (;;) {
        Point p{polar(rad(rng), ang(rng)), polar(rad(rng), ang(rng))};
        if (region_contains(r, p)) return p;
    }
}

}  // namespace

TEST_CASE("region membership examples") {
    CHECK(region_contains(Region::S1, {{3, 3}, {2, 2}}));
    CHECK_FALSE(region_contains(Region::R1, {{2, 0}, {1, 1}}));
    CHECK(region_contains(Region::S2, {{2, 2}, {3, 3}}));
    CHECK(region_contains(Region::R1, {{-3, 1}, {1, 1}}));
    CHECK_FALSE(region_contains(Region::R3, {{3, 1}, {2, 1}}));  // z1 - z2 = 1 on the cut
    CHECK(region_contains(Region::GPrime, {{-1, 0}, {0, -1}}));
    CHECK_FALSE(region_contains(Region::GDoublePrime, {{-1, -1}, {1, -1}}));  // z2 - z1 = 2
    CHECK(region_contains(Region::R5, {{1, 1}, {-0.5, 0.2}}));
}

TEST_CASE("anchor point and parameter validation") {
    PathParams pp = PathParams::defaults();
    Point p0 = anchor_base_point(pp);
    CHECK(std::abs(p0.z1 - 7.0 * omega8()) < 1e-14);
    CHECK(std::abs(p0.z12() - 3.0 * omega8()) < 1e-14);
    for (int g = 0; g < 3; ++g) CHECK(parg(p0.gen(g)) == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(region_contains(Region::S1, p0));
    CHECK(region_contains(Region::S2, mirror_base_point(pp)));

    PathParams bad = pp;
    bad.b0 = Rational(2);  // a0 - b0 = 5 > b0
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PathParams::parse("7,4,7,2,2,7,4"), std::invalid_argument);
    PathParams parsed = PathParams::parse("7, 4, 7, 2, 2, 7, 4.5, 7");
    CHECK(parsed.a3 == Rational(9, 2));
}

TEST_CASE("frame constants and preferred logs") {
    BranchFrame fr;
    CHECK(fr.constants(Region::R1) == std::array<int, 3>{0, 0, 0});
    CHECK(fr.constants(Region::R3) == std::array<int, 3>{0, 0, 0});
    CHECK(fr.constants(Region::R4) == std::array<int, 3>{0, 0, -1});
    CHECK(fr.constants(Region::R2) == std::array<int, 3>{0, 0, -1});

    // z1^(1/2) on R1 at z1 = 2i is sqrt(2) e^{i pi/4}.
    GFunction g = GFunction::monomial(Scalar(1), {Rational(1, 2), Rational(0), Rational(0)}, Mode::Exact);
    Complex v = preferred_branch_eval(fr, g, Region::R1, {{0, 2}, polar(1.0, 3.0)});
    CHECK(std::abs(v - Complex(1, 1)) < 1e-12);

    GFunction one = GFunction::monomial(Scalar(1), {Rational(0), Rational(0), Rational(0)}, Mode::Exact);
    std::mt19937_64 rng(11);
    for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4}) {
        Point p = random_region_point(rng, r);
        CHECK(std::abs(preferred_branch_eval(fr, one, r, p) - 1.0) < 1e-14);
    }
    CHECK_THROWS(fr.preferred_offsets(Region::R1, {{1, 1}, {3, 3}}));
}

TEST_CASE("chain continuation reproduces the preferred offsets") {
    BranchFrame fr;
    std::mt19937_64 rng(5);
    for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4}) {
        for (int i = 0; i < 12; ++i) {
            Point p = random_region_point(rng, r);
            CHECK(chain_continuation_offsets(fr, r, p) == fr.preferred_offsets(r, p));
        }
    }
}

TEST_CASE("continuation accumulates winding") {
    // z2 turning half a circle, as on the second piece of the gamma path.
    Curve c = [](double t) { return Point{7.0 * omega8(), 2.0 * polar(1.0, kPi / 4 + t * kPi)}; };
    auto res = continue_logs(c, 0, 1, principal_logs(c(0)));
    CHECK(res.turns[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.turns[0] == doctest::Approx(0.0));
    // A full loop of z2 around the origin shifts its offset by one.
    Curve loop = [](double t) { return Point{Complex(5, 0.5), 2.0 * polar(1.0, 0.5 + 2 * kPi * t)}; };
    auto r2 = continue_logs(loop, 0, 1, principal_logs(loop(0)));
    CHECK(offsets_of(r2.logs, loop(1))[1] == 1);
    // Reversal negates.
    auto back = continue_logs(loop, 1, 0, r2.logs);
    CHECK(offsets_of(back.logs, loop(0))[1] == 0);
}

TEST_CASE("overlap regions: preferred branches agree exactly") {
    BranchFrame fr;
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        GFunction g = random_gfunction(rng, Mode::Exact);
        Point s1 = random_s_point(rng, false);
        REQUIRE(region_contains(Region::S1, s1));
        auto e1 = local_expansion(fr, g, Region::R1, s1);
        CHECK(e1.equals(local_expansion(fr, g, Region::R3, s1)));
        CHECK(e1.equals(local_expansion(fr, g, Region::R4, s1)));
        Point s2 = random_s_point(rng, true);
        REQUIRE(region_contains(Region::S2, s2));
        CHECK(local_expansion(fr, g, Region::R4, s2).equals(local_expansion(fr, g, Region::R2, s2)));
        Complex ve = e1.evaluate();
        CHECK(std::isfinite(std::abs(ve)));
    }
}

TEST_CASE("canonical form folds branch shifts and integer exponents") {
    GFunction g(Mode::Exact);
    LaurentElem one = LaurentElem::constant(Scalar(1));
    g.add(Scalar(1), {Rational(3, 2), Rational(-1), Rational(0)}, one, {1, 0, 0});
    auto c = g.canonical();
    REQUIRE(c.terms().size() == 1);
    CHECK(c.terms()[0].mono.exps == Exps{Rational(1, 2), Rational(0), Rational(0)});
    // e^{2 pi i (3/2)} = -1 and the integer parts z1 z2^{-1} move to the dressing.
    CHECK(c.terms()[0].dressing.equals(LaurentElem::monomial({1, -1, 0}, Scalar(-1))));
    GFunction h = g + g.scaled(Scalar(-1));
    CHECK(h.is_zero());
    GFunction dup(Mode::Exact);
    dup.add(Scalar(1), {Rational(1, 3), Rational(0), Rational(0)}, one);
    dup.add(Scalar(2), {Rational(4, 3), Rational(1), Rational(0)}, one);
    CHECK_FALSE(dup.classes_distinct());
}

TEST_CASE("iota series sum to the preferred branch") {
    BranchFrame fr;
    GFunction g(Mode::Exact);
    LaurentElem d(Mode::Exact);
    d.add_term({0, 0, 0}, Scalar(1));
    d.add_term({-1, 1, 1}, Scalar(Rational(1, 3)));
    g.add(Scalar(1), {Rational(1, 2), Rational(1, 3), Rational(-3, 4)}, d);
    g.add(Scalar::root_of_unity(Rational(1, 5), Mode::Exact), {Rational(-1, 6), Rational(0), Rational(2, 5)},
          LaurentElem::constant(Scalar(1)));
    struct Case {
        Iota which;
        Region r;
        Point p;
    };
    const Complex w = 0.25 * polar(1.0, 2.0);
    std::vector<Case> cases{
        {Iota::I12, Region::R1, {polar(3.0, 1.0), polar(0.6, 4.0)}},
        {Iota::I21, Region::R2, {polar(0.6, 4.0), polar(3.0, 1.0)}},
        {Iota::I20, Region::R3, {polar(2.0, 2.5) + w, polar(2.0, 2.5)}},
    };
    for (const auto& cs : cases) {
        REQUIRE(region_contains(cs.r, cs.p));
        Series s = iota_g(fr, cs.which, g, 30);
        LogTriple l = fr.preferred_logs(cs.r, cs.p);
        std::map<Var, Complex> logs{{X1, l[0]}, {X2, l[1]}, {X0, l[2]}};
        Complex sum = sum_series(s, logs);
        Complex exact = preferred_branch_eval(fr, g, cs.r, cs.p);
        CHECK(std::abs(sum - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
    }
    // iota_12 of z1^(1/2) (z1 - z2)^(-1) = x1^(1/2) sum_m x1^(-1-m) x2^m
    GFunction h = GFunction::monomial(Scalar(1), {Rational(1, 2), Rational(0), Rational(-1)}, Mode::Exact);
    Series s = iota_g(fr, Iota::I12, h, 5);
    for (int m = 0; m <= 5; ++m)
        CHECK(s.coefficient(ExponentVector{{X1, Rational(1, 2) - Rational(1 + m)}, {X2, Rational(m)}}) == Scalar(1));
    // iota_21 of z2^3 is z2^3
    GFunction z23 = GFunction::monomial(Scalar(1), {Rational(0), Rational(3), Rational(0)}, Mode::Exact);
    Series s21 = iota_g(fr, Iota::I21, z23, 4);
    CHECK(s21.size() == 1);
    CHECK(s21.coefficient(ExponentVector{{X2, Rational(3)}}) == Scalar(1));
}

TEST_CASE("natural expansions match closed forms") {
    // (z1 - z2)^(1/2) written as z1^(1/2) (1 - z2/z1)^(1/2) on R1 is the
    // preferred R1 branch.
    BranchFrame fr;
    GFunction g = GFunction::monomial(Scalar(1), {Rational(0), Rational(0), Rational(1, 2)}, Mode::Exact);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        Point p = random_region_point(rng, Region::R1);
        NaturalTerm t{Scalar(1), {0, 1}, {1, 1}, {2, 1}, Rational(0), Rational(0), Rational(1, 2),
                      LaurentElem::constant(Scalar(1))};
        CHECK(natural_expansion({t}, p, Mode::Exact).equals(local_expansion(fr, g, Region::R1, p)));
    }
    CHECK(signed_var_of(-1, 1) == SignedVar{2, -1});
    CHECK_THROWS(signed_var_of(1, 1));
}

TEST_CASE("swap_variables") {
    BranchFrame fr;
    // No mixed factor: roles swap with no phase.
    GFunction g = GFunction::monomial(Scalar(1), {Rational(1, 3), Rational(1, 5), Rational(0)}, Mode::Exact);
    GFunction s = swap_variables(fr, g);
    GFunction expect = GFunction::monomial(Scalar(1), {Rational(1, 5), Rational(1, 3), Rational(0)}, Mode::Exact);
    Point p0 = fr.anchor();
    CHECK(local_expansion(fr, s, Region::R1, p0).equals(local_expansion(fr, expect, Region::R1, p0)));

    // (z1 - z2)^(1/2): the coefficient is -i (independent continuation oracle).
    GFunction h = GFunction::monomial(Scalar(1), {Rational(0), Rational(0), Rational(1, 2)}, Mode::Exact);
    GFunction hs = swap_variables(fr, h);
    GFunction hexp =
        GFunction::monomial(Scalar::root_of_unity(Rational(-1, 4), Mode::Exact), {Rational(0), Rational(0), Rational(1, 2)}, Mode::Exact);
    CHECK(local_expansion(fr, hs, Region::R1, p0).equals(local_expansion(fr, hexp, Region::R1, p0)));
    // Twice: -1 times the original.
    GFunction hss = swap_variables(fr, hs);
    CHECK(local_expansion(fr, hss, Region::R1, p0).equals(local_expansion(fr, h.scaled(Scalar(-1)), Region::R1, p0)));

    // Pointwise: swap(g)(p) = g_R2(swapped p) across R1.
    std::mt19937_64 rng(8);
    GFunction r = random_gfunction(rng, Mode::Exact);
    GFunction rs = swap_variables(fr, r);
    for (int i = 0; i < 10; ++i) {
        Point p = random_region_point(rng, Region::R1);
        Complex a = preferred_branch_eval(fr, rs, Region::R1, p);
        Complex b = preferred_branch_eval(fr, r, Region::R2, {p.z2, p.z1});
        CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("substitute_shift") {
    BranchFrame fr;
    Point p0 = fr.anchor();
    auto same = [&](const GFunction& a, const GFunction& b) {
        return local_expansion(fr, a, Region::R1, p0).equals(local_expansion(fr, b, Region::R1, p0));
    };
    auto mono = [](const Scalar& c, Rational a, Rational b, Rational g) {
        return GFunction::monomial(c, {a, b, g}, Mode::Exact);
    };
    CHECK(same(substitute_shift(fr, mono(Scalar(1), Rational(2, 3), 0, 0)), mono(Scalar(1), 0, 0, Rational(2, 3))));
    CHECK(same(substitute_shift(fr, mono(Scalar(1), 0, 0, Rational(3, 7))), mono(Scalar(1), Rational(3, 7), 0, 0)));
    CHECK(same(substitute_shift(fr, mono(Scalar(1), 0, Rational(1, 2), 0)),
               mono(Scalar::root_of_unity(Rational(-1, 4), Mode::Exact), 0, Rational(1, 2), 0)));
    CHECK(same(substitute_shift(fr, mono(Scalar(1), Rational(1, 3), Rational(1, 4), Rational(1, 5))),
               mono(Scalar::root_of_unity(Rational(-1, 8), Mode::Exact), Rational(1, 5), Rational(1, 4), Rational(1, 3))));

    // Pointwise near the matching point: h(p) = g_R1(p1 - p2, -p2).
    std::mt19937_64 rng(9);
    GFunction g = random_gfunction(rng, Mode::Exact);
    GFunction h = substitute_shift(fr, g);
    Point d = shift_match_point(fr.params());
    for (int i = 0; i < 10; ++i) {
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        Point p{d.z1 + Complex(u(rng), u(rng)), d.z2 + Complex(u(rng), u(rng))};
        REQUIRE(region_contains(Region::R1, p));
        Point q{p.z1 - p.z2, -p.z2};
        Complex a = preferred_branch_eval(fr, h, Region::R1, p);
        Complex b = preferred_branch_eval(fr, g, Region::R1, q);
        CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("float mode mirrors exact mode") {
    BranchFrame fr;
    std::mt19937_64 rng(17);
    GFunction g = random_gfunction(rng, Mode::Exact);
    GFunction gf(Mode::Float);
    for (const auto& t : g.terms()) {
        LaurentElem df(Mode::Float);
        for (const auto& [e, c] : t.dressing.terms()) df.add_term(e, Scalar::convert(c, Mode::Float));
        gf.add(Scalar::convert(t.mono.coeff, Mode::Float), t.mono.exps, df);
    }
    Point s2 = random_s_point(rng, true);
    Complex a = preferred_branch_eval(fr, g, Region::R2, s2);
    Complex b = preferred_branch_eval(fr, gf, Region::R2, s2);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    CHECK(local_expansion(fr, gf, Region::R4, s2).equals(local_expansion(fr, gf, Region::R2, s2), 1e-9));
    GFunction sw = swap_variables(fr, gf);
    CHECK(sw.mode() == Mode::Float);
}
