#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "s3v/rational.hpp"

namespace s3v {

// Integer polynomial, coefficient of x^k at index k.
using IntPoly = std::vector<std::int64_t>;

// The N-th cyclotomic polynomial, computed by dividing x^N - 1 by the
// cyclotomic polynomials of the proper divisors of N. Results are cached.
// Throws std::domain_error for N < 1 and std::length_error when N exceeds
// max_cyclotomic_order().
const IntPoly& cyclotomic_polynomial(std::int64_t n);

std::int64_t max_cyclotomic_order();
void set_max_cyclotomic_order(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

// Element of Q(zeta_N), stored as a coefficient vector of length phi(N) in the
// power basis 1, zeta, ..., zeta^(phi(N)-1). Orders are kept normalized: since
// Q(zeta_2m) = Q(zeta_m) for odd m, stored orders are 1, odd, or divisible by 4.
// Elements whose non-constant part vanishes are demoted to order 1.
class Cyclotomic {
public:
    Cyclotomic() : order_(1), c_{Rational(0)} {}
    Cyclotomic(const Rational& q) : order_(1), c_{q} {}  // NOLINT(implicit)
    Cyclotomic(std::int64_t n) : Cyclotomic(Rational(n)) {}  // NOLINT(implicit)
    Cyclotomic(int n) : Cyclotomic(Rational(n)) {}  // NOLINT(implicit)

    // Builds sum_k coeffs[k] zeta_N^k for arbitrary length; reduces mod Phi_N.
    static Cyclotomic from_coeffs(std::int64_t order, const std::vector<Rational>& coeffs);
    // zeta_N^k
    static Cyclotomic zeta(std::int64_t order, std::int64_t k = 1);
    // e^{2 pi i q}
    static Cyclotomic root_of_unity(const Rational& q);

    std::int64_t order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const { return order_ == 1; }
    Rational rational_value() const;  // throws unless is_rational()

    Cyclotomic promote(std::int64_t multiple) const;
    Cyclotomic inv() const;
    Cyclotomic conj() const;
    Cyclotomic pow(std::int64_t e) const;

    std::complex<double> to_complex() const;
    std::string str() const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inv(); }
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);


private:
    Cyclotomic(std::int64_t order, std::vector<Rational> reduced, bool);
    void demote();

    std::int64_t order_;
    std::vector<Rational> c_;
};

}  // namespace s3v
