#include "doctest.h"

#include <random>

#include "s3v/laurent.hpp"

using namespace s3v;

namespace {

LaurentElem mono(int a, int b, int c, Scalar k = Scalar(1)) { return LaurentElem::monomial({a, b, c}, k); }

LaurentElem random_elem(std::mt19937_64& rng, Mode mode) {
    std::uniform_int_distribution<int> ex(-2, 2), co(-3, 3), n(1, 4);
    LaurentElem e(mode);
    int terms = n(rng);
    for (int i = 0; i < terms; ++i) {
        Scalar c = Scalar::from_rational(Rational(co(rng)), mode);
        e.add_term({ex(rng), ex(rng), ex(rng)}, c);
    }
    return e;
}

}  // namespace

TEST_CASE("canonical equality uses w = u - v") {
    LaurentElem one = LaurentElem::constant(Scalar(1));
    CHECK((mono(0, 0, 1) * mono(0, 0, -1)).equals(one));
    CHECK((mono(1, 0, -1) - mono(0, 1, -1)).equals(one));
    CHECK((mono(1, 0, 0) - mono(0, 1, 0) - mono(0, 0, 1)).is_zero());
    CHECK_FALSE((mono(1, 0, -1) + mono(0, 1, -1)).equals(one));
    // 1/(u v) = (1/v - 1/u) / w
    CHECK(mono(-1, -1, 0).equals(mono(0, -1, -1) - mono(-1, 0, -1)));
}

TEST_CASE("normal form pulls out factors of w") {
    LaurentElem e = (mono(2, 0, -3) - mono(1, 1, -3));  // u (u - v) / w^3 = u / w^2
    LaurentElem n = e.normalized();
    REQUIRE(n.terms().size() == 1);
    CHECK(n.terms().begin()->first == Exp3{1, 0, -2});
    CHECK(e.key() == mono(1, 0, -2).key());
}

TEST_CASE("signed substitutions") {
    for (auto p : {SignedPerm::swap12(), SignedPerm::shift()}) CHECK_NOTHROW(p.validate());
    SignedPerm bad{{1, 0, 2}, {1, 1, 1}};
    CHECK_THROWS(bad.validate());
    auto sw = SignedPerm::swap12().then(SignedPerm::swap12());
    CHECK(sw.target == SignedPerm::identity().target);
    CHECK(sw.sign == SignedPerm::identity().sign);
    auto sh = SignedPerm::shift().then(SignedPerm::shift());
    CHECK(sh.target == SignedPerm::identity().target);
    CHECK(sh.sign == SignedPerm::identity().sign);

    std::mt19937_64 rng(7);
    std::complex<double> z1(0.7, 0.3), z2(-0.4, 1.1);
    for (int i = 0; i < 50; ++i) {
        LaurentElem e = random_elem(rng, Mode::Exact);
        for (auto p : {SignedPerm::swap12(), SignedPerm::shift(), SignedPerm::swap12().then(SignedPerm::shift())}) {
            auto img = p.apply(z1, z2);
            CHECK(std::abs(img[0] - img[1] - img[2]) < 1e-14);
            std::complex<double> lhs = e.substitute(p).evaluate(z1, z2);
            std::complex<double> rhs = e.evaluate(img[0], img[1]);
            CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("property: canonical zero agrees with evaluation") {
    std::mt19937_64 rng(11);
    std::complex<double> z1(1.3, -0.2), z2(0.4, 0.9);
    for (int i = 0; i < 200; ++i) {
        LaurentElem a = random_elem(rng, Mode::Exact), b = random_elem(rng, Mode::Exact);
        LaurentElem lhs = a * (b + mono(0, 0, 1));
        LaurentElem rhs = a * b + a * (mono(1, 0, 0) - mono(0, 1, 0));
        CHECK(lhs.equals(rhs));
        bool zero = a.is_zero();
        CHECK(zero == (std::abs(a.evaluate(z1, z2)) < 1e-9));
        CHECK(a.normalized().equals(a));
        auto r = a.scaled(Scalar(Rational(-5, 3))).proportional_to(a);
        if (!zero) {
            REQUIRE(r.has_value());
            CHECK(*r == Scalar(Rational(-5, 3)));
        }
    }
}

TEST_CASE("rational split recombines") {
    LaurentElem e(Mode::Exact);
    e.add_term({1, -1, 0}, Scalar(Cyclotomic::zeta(8)));
    e.add_term({0, 0, -2}, Scalar(Cyclotomic::zeta(3)) + Scalar(Rational(1, 2)));
    std::vector<LaurentElem> comps;
    std::int64_t n = e.split_rational(comps);
    CHECK(n == 24);
    LaurentElem back(Mode::Exact);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (const auto& [x, c] : comps[i].terms()) {
            CHECK(c.exact().is_rational());
            back.add_term(x, c * Scalar(Cyclotomic::zeta(n, static_cast<std::int64_t>(i))));
        }
    }
    CHECK(back.equals(e));
}

TEST_CASE("conversion to a rational function") {
    LaurentElem e = mono(2, -1, -2, Scalar(3)) + mono(-1, 0, 1);
    RationalFn f = e.to_rational_fn();
    CHECK(f.r == 2);
    CHECK(f.s == 1);
    CHECK(f.t == 1);
    // Evaluate numerator / denominator at x0 = x1 - x2.
    double x1 = 1.7, x2 = 0.6, x0 = x1 - x2;
    std::complex<double> num = 0;
    for (const auto& [k, c] : f.numerator) num += c.approx() * std::pow(x0, k[0]) * std::pow(x1, k[1]) * std::pow(x2, k[2]);
    std::complex<double> val = num / (std::pow(x0, f.r) * std::pow(x1, f.s) * std::pow(x2, f.t));
    CHECK(std::abs(val - e.evaluate(x1, x2)) < 1e-12);
}

TEST_CASE("float mode elements") {
    LaurentElem a = LaurentElem::monomial({0, 0, -1}, Scalar(std::complex<double>(1.0, 0.0)));
    LaurentElem b = LaurentElem::monomial({1, 0, -1}, Scalar(std::complex<double>(1.0, 0.0))) -
                    LaurentElem::monomial({0, 1, -1}, Scalar(std::complex<double>(1.0, 0.0)));
    CHECK((a * b).equals(a));
    CHECK_THROWS_AS(a + mono(0, 0, 0), std::logic_error);
}
