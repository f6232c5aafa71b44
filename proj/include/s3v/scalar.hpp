#pragma once

#include <complex>
#include <string>
#include <variant>

#include "s3v/cyclotomic.hpp"

namespace s3v {

enum class Mode { Exact, Float };

std::string mode_name(Mode m);

// Either an exact cyclotomic number or a complex double. Arithmetic between
// the two kinds throws std::logic_error instead of converting silently.
class Scalar {
public:
    using Approx = std::complex<double>;

    Scalar() : v_(Cyclotomic()) {}
    Scalar(const Cyclotomic& c) : v_(c) {}  // NOLINT(implicit)
    Scalar(const Rational& q) : v_(Cyclotomic(q)) {}  // NOLINT(implicit)
    Scalar(int n) : v_(Cyclotomic(n)) {}  // NOLINT(implicit)
    Scalar(std::int64_t n) : v_(Cyclotomic(n)) {}  // NOLINT(implicit)
    Scalar(Approx z) : v_(z) {}  // NOLINT(implicit)

    static Scalar zero(Mode m) { return m == Mode::Exact ? Scalar(Cyclotomic()) : Scalar(Approx(0.0, 0.0)); }
    static Scalar one(Mode m) { return m == Mode::Exact ? Scalar(Cyclotomic(1)) : Scalar(Approx(1.0, 0.0)); }
    static Scalar from_rational(const Rational& q, Mode m);
    static Scalar root_of_unity(const Rational& q, Mode m);
    // Rebuilds a value in another mode (exact values convert to float; the
    // reverse direction is rejected).
    static Scalar convert(const Scalar& s, Mode m);

    bool is_exact() const { return std::holds_alternative<Cyclotomic>(v_); }
    Mode mode() const { return is_exact() ? Mode::Exact : Mode::Float; }
    const Cyclotomic& exact() const;
    Approx approx() const;  // valid for both kinds

    // Exact: structural zero test. Float: |z| < tol.
    bool is_zero(double tol = 1e-9) const;
    Scalar inv() const;
    Scalar conj() const;
    std::complex<double> to_complex() const { return approx(); }
    std::string str() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    // Exact equality for exact scalars; float scalars compare within
    // tol * max(1, |a|, |b|).
    bool equals(const Scalar& b, double tol = 1e-9) const;
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.equals(b); }

private:
    std::variant<Cyclotomic, Approx> v_;
};

}  // namespace s3v
