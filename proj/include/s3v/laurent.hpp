#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "s3v/formal.hpp"
#include "s3v/scalar.hpp"

namespace s3v {

// Exponent triple for u = z1, v = z2, w = z1 - z2.
using Exp3 = std::array<int, 3>;

// Signed substitution of the generators: u, v, w are sent to
// sign * (u, v or w). The images must again satisfy image(u) - image(v) =
// image(w), which is checked on construction.
struct SignedPerm {
    std::array<int, 3> target{0, 1, 2};
    std::array<int, 3> sign{1, 1, 1};

    static SignedPerm identity() { return {}; }
    // (z1, z2) -> (z2, z1): u -> v, v -> u, w -> -w
    static SignedPerm swap12();
    // (z1, z2) -> (z1 - z2, -z2): u -> w, v -> -v, w -> u
    static SignedPerm shift();
    void validate() const;
    SignedPerm then(const SignedPerm& next) const;  // apply *this, then next
    // Image of a point (z1, z2) under the substitution of variables.
    std::array<std::complex<double>, 3> apply(std::complex<double> z1, std::complex<double> z2) const;
};

// Element of C[z1^{+-1}, z2^{+-1}, (z1-z2)^{-1}] stored as a finite sum of
// monomials u^i v^j w^k. Positive powers of w are allowed, so the stored form
// is not unique; equality is decided after clearing denominators and
// substituting w = u - v.
class LaurentElem {
public:
    explicit LaurentElem(Mode mode = Mode::Exact) : mode_(mode) {}
    static LaurentElem constant(const Scalar& c);
    static LaurentElem monomial(const Exp3& e, const Scalar& c);

    Mode mode() const { return mode_; }
    const std::map<Exp3, Scalar>& terms() const { return terms_; }
    bool is_zero() const;  // canonical test
    void add_term(const Exp3& e, const Scalar& c);

    LaurentElem operator-() const;
    LaurentElem scaled(const Scalar& c) const;
    LaurentElem shifted(const Exp3& e) const;  // multiply by u^e0 v^e1 w^e2
    friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator-(const LaurentElem& a, const LaurentElem& b);
    friend LaurentElem operator*(const LaurentElem& a, const LaurentElem& b);

    LaurentElem substitute(const SignedPerm& p) const;
    std::complex<double> evaluate(std::complex<double> z1, std::complex<double> z2) const;

    // Canonical polynomial in (u, v) after multiplying by u^a v^b w^c with
    // (a, b, c) = shift; requires the shift to clear every negative power.
    std::map<std::pair<int, int>, Scalar> cleared_poly(const Exp3& shift) const;
    Exp3 min_exponents() const;
    // Normal form: numerator reduced to a (u, v) polynomial over a minimal
    // u^a v^b w^c denominator with w-factors pulled out of the numerator.
    LaurentElem normalized() const;

    // True when some polynomial multiple relation makes a == c * b for a
    // scalar c; returns that scalar.
    std::optional<Scalar> proportional_to(const LaurentElem& b, double tol = 1e-9) const;
    bool equals(const LaurentElem& b, double tol = 1e-9) const;

    // As a rational function in x0 = x1 - x2, x1, x2 (x0 plays the role of w).
    RationalFn to_rational_fn() const;

    // Maximum |exponent| over stored monomials.
    int degree() const;
    std::string str() const;

    // Splits an exact element over Q(zeta_N) into rational components:
    // self = sum_i zeta_N^i * comps[i]. Returns N.
    std::int64_t split_rational(std::vector<LaurentElem>& comps) const;
    // Deterministic text key of a normalized element.
    std::string key() const;

private:
    Mode mode_;
    std::map<Exp3, Scalar> terms_;
};

}  // namespace s3v
