#pragma once

#include <array>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "s3v/check.hpp"
#include "s3v/scalar.hpp"

namespace s3v {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

// Formal variables are interned names. x0, x1, x2 and x are pre-registered
// with the fixed ids below so the three-variable identities can refer to them.
using Var = int;
inline constexpr Var X0 = 0;
inline constexpr Var X1 = 1;
inline constexpr Var X2 = 2;
inline constexpr Var X = 3;

Var var_id(const std::string& name);
const std::string& var_name(Var v);

// Sparse monomial exponent map; absent variables have exponent 0 and zero
// entries are never stored.
class ExponentVector {
public:
    ExponentVector() = default;
    ExponentVector(std::initializer_list<std::pair<Var, Rational>> entries);

    Rational get(Var v) const;
    void set(Var v, const Rational& e);
    ExponentVector without(Var v) const;
    bool empty() const { return e_.empty(); }
    const std::vector<std::pair<Var, Rational>>& entries() const { return e_; }
    std::string str() const;

    friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
    friend bool operator==(const ExponentVector& a, const ExponentVector& b) = default;
    friend bool operator<(const ExponentVector& a, const ExponentVector& b);

private:
    std::vector<std::pair<Var, Rational>> e_;  // sorted by Var
};

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

// Expansion direction: the series lives in powers of small/large with the
// exponents of `small` bounded below. A series without direction is a finite
// expression that combines with any direction.
struct Direction {
    Var small = -1;
    Var large = -1;
    bool none() const { return small < 0; }
    friend bool operator==(const Direction&, const Direction&) = default;
};

class Series {
public:
    explicit Series(Mode mode = Mode::Exact) : mode_(mode) {}
    Series(Mode mode, Direction dir, std::optional<Rational> valid_to = std::nullopt)
        : mode_(mode), dir_(dir), valid_to_(std::move(valid_to)) {}

    static Series constant(const Scalar& c);
    static Series monomial(const ExponentVector& e, const Scalar& c);

    Mode mode() const { return mode_; }
    Direction direction() const { return dir_; }
    // Every coefficient whose small-variable exponent is <= valid_to() is
    // exact; nullopt means the whole series is exact.
    const std::optional<Rational>& valid_to() const { return valid_to_; }
    void set_valid_to(std::optional<Rational> v) { valid_to_ = std::move(v); }
    void set_direction(Direction d) { dir_ = d; }

    const std::map<ExponentVector, Scalar>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    Scalar coefficient(const ExponentVector& e) const;
    void add_term(const ExponentVector& e, const Scalar& c);

    // Smallest exponent of `v` among the stored terms (0 when empty).
    Rational min_exponent(Var v) const;
    // Drops every term whose small-variable exponent exceeds `cutoff` and
    // caps valid_to accordingly.
    Series truncated(const Rational& cutoff) const;

    Series operator-() const;
    Series scaled(const Scalar& c) const;
    friend Series operator+(const Series& a, const Series& b);
    friend Series operator-(const Series& a, const Series& b);
    friend Series operator*(const Series& a, const Series& b);

    // Coefficientwise equality over the range where both sides are exact.
    // Returns the first differing monomial, if any.
    std::optional<ExponentVector> first_difference(const Series& other, double tol = 1e-9) const;

    std::string str() const;

private:
    Mode mode_;
    Direction dir_;
    std::optional<Rational> valid_to_;
    std::map<ExponentVector, Scalar> terms_;
};

// sum_{0<=m<=cutoff} C(n,m) u^{n-m} (c v)^m, with direction (small v, large u).
Series binom_expand(Var u, Var v, const Rational& n, const Rational& c, std::int64_t cutoff, Mode mode = Mode::Exact);

// delta(x) = sum_{|n|<=cutoff} x^n
Series delta_series(Var x, std::int64_t cutoff, Mode mode = Mode::Exact);

// The sub-series of terms with exponent -1 in var, with var removed.
Series residue(Var var, const Series& s);

// ---------------------------------------------------------------------------
// Rational functions p(x0, x1, x2) / (x0^r x1^s x2^t)
// ---------------------------------------------------------------------------

// Polynomial in x0, x1, x2.
using Poly3 = std::map<std::array<int, 3>, Scalar>;

// Homogeneous linear form c0 x0 + c1 x1 + c2 x2.
struct LinearForm {
    std::array<Rational, 3> c;
    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

// numerator / (x0^r x1^s x2^t * prod L_k^{m_k}).
struct RationalFn {
    Mode mode = Mode::Exact;
    Poly3 numerator;
    int r = 0, s = 0, t = 0;
    std::vector<std::pair<LinearForm, int>> linear_factors;

    static RationalFn from_poly(const Poly3& p, int r, int s, int t, Mode mode = Mode::Exact);
    bool is_zero() const;
    std::string str() const;
};

enum class Iota { I12, I21, I20, I10 };
std::string iota_name(Iota w);

// Expansion maps of the formal calculus. The eliminated variable is
// substituted first (x0 = x1 - x2 for I12/I21, x1 = x0 + x2 for I20,
// x2 = x1 - x0 for I10). The result is exact for small-variable exponents
// up to `cutoff` and truncated beyond.
Series iota(Iota which, const RationalFn& f, std::int64_t cutoff);

// ---------------------------------------------------------------------------
// Delta expressions
// ---------------------------------------------------------------------------

// x_d^{-1} delta((u + c v)/(e x_d)) = sum_n sum_{m>=0} e^{-n} C(n,m) c^m x_d^{-n-1} u^{n-m} v^m
struct DeltaAtom {
    enum class Slot { Product, ReversedProduct, Iterate, Other };
    Slot slot = Slot::Other;
    Var d = X0, u = X1, v = X2;
    Rational c = Rational(-1);
    Rational e = Rational(1);

    static DeltaAtom product();           // x0^{-1} delta((x1-x2)/x0)
    static DeltaAtom reversed_product();  // x0^{-1} delta((x2-x1)/(-x0))
    static DeltaAtom iterate();           // x2^{-1} delta((x1-x0)/x2)
    static DeltaAtom swapped_iterate();   // x1^{-1} delta((x2+x0)/x1)
    std::string str() const;
};

// A signed sum of delta atoms, each multiplied by a series that must not
// involve the atom's x_d and must expand with v small. Expressions are kept
// symbolic; expansion happens only in expand_window.
class DeltaExpression {
public:
    void add(const Scalar& sign, const DeltaAtom& atom, const Series& series);
    // Products of two delta expressions are ill-defined here.
    DeltaExpression operator*(const DeltaExpression&) const;

    // All coefficients of monomials whose exponents in x_d, u, v have absolute
    // value <= k. Throws if an attached series is not exact that far.
    Series expand_window(std::int64_t k, Mode mode) const;

    std::size_t size() const { return terms_.size(); }

private:
    struct Term {
        Scalar sign;
        DeltaAtom atom;
        Series series;
    };
    std::vector<Term> terms_;
};

// Expansion of a single atom on the window [-k, k]^3.
Series delta_atom_series(const DeltaAtom& atom, std::int64_t k, Mode mode = Mode::Exact);

// Compares two delta expressions on the window [-k, k]^3 and reports the first
// differing monomial.
CheckResult compare_delta_expressions(const std::string& name, const DeltaExpression& lhs,
                                      const DeltaExpression& rhs, std::int64_t k, Mode mode,
                                      double tol = 1e-9);

// f(x) delta(x) = f(1) delta(x) on the exact range of the truncation.
CheckResult verify_delta_substitution(const Series& f_laurent, std::int64_t cutoff);

// The two three-variable delta identities with trivial series attached.
CheckResult verify_delta_identity_two_term(std::int64_t cutoff, Mode mode = Mode::Exact);
CheckResult verify_delta_identity_three_term(std::int64_t cutoff, Mode mode = Mode::Exact);

// Both delta identities for a rational function with poles on the diagonals, compared on
// the window [-cutoff, cutoff]^3.
CheckResult verify_rational_delta(const RationalFn& f, std::int64_t cutoff);

// Random function of the same shape: numerator of total degree
// <= max_degree with small integer coefficients, exponents r, s, t in
// [0, max_pole].
RationalFn random_rational_fn(std::mt19937_64& rng, int max_degree = 4, int max_pole = 3, Mode mode = Mode::Exact);

}  // namespace s3v
