#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <compare>
#include <functional>

#include <gmpxx.h>

namespace s3v {

// Exact rational number. Small values are kept as a reduced int64 pair and
// arithmetic runs through 128-bit intermediates; anything that does not fit
// is promoted to a GMP rational and demoted again when it shrinks.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(int n) : num_(n), den_(1) {}           // NOLINT(implicit)
    Rational(std::int64_t n, std::int64_t d);
    explicit Rational(const mpq_class& q);

    static Rational parse(const std::string& text);

    bool is_big() const { return static_cast<bool>(big_); }
    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_integer() const;
    int sign() const;

    // Valid only when !is_big(); use to_mpq() otherwise.
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    mpq_class to_mpq() const;
    std::string numerator_str() const;
    std::string denominator_str() const;

    // Denominator as int64; throws if it does not fit.
    std::int64_t den_checked() const;
    // Integer value; throws if not an integer or too large.
    std::int64_t to_int() const;

    double to_double() const;
    std::string str() const;

    Rational floor() const;
    Rational frac() const { return *this - floor(); }  // in [0,1)
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inv() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::size_t hash() const;

private:
    static Rational from_i128(__int128 n, __int128 d);
    void normalize_big();

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

// Generalized binomial coefficient C(n, m) = n(n-1)...(n-m+1)/m!.
Rational binomial(const Rational& n, std::int64_t m);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace s3v

template <>
struct std::hash<s3v::Rational> {
    std::size_t operator()(const s3v::Rational& q) const { return q.hash(); }
};
