#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "s3v/formal.hpp"
#include "s3v/laurent.hpp"
#include "s3v/scalar.hpp"

namespace s3v {

using Complex = std::complex<double>;

struct Point {
    Complex z1, z2;
    Complex z12() const { return z1 - z2; }
    // Value of generator g (0: z1, 1: z2, 2: z1 - z2).
    Complex gen(int g) const { return g == 0 ? z1 : (g == 1 ? z2 : z1 - z2); }
};

enum class Region { R1, R2, R3, R4, R5, S1, S2, GPrime, GDoublePrime };
std::string region_name(Region r);
Region parse_region(const std::string& name);

// True when z lies on the cut [0, +inf).
bool on_nonnegative_axis(Complex z);
bool region_contains(Region r, const Point& p);

// log|z| + i arg z with arg z in [0, 2 pi).
Complex plog(Complex z);
// arg z in [0, 2 pi)
double parg(Complex z);

// ---------------------------------------------------------------------------
// Path parameters and the anchor
// ---------------------------------------------------------------------------

struct PathParams {
    Rational a0{7}, b0{4}, a1{7}, b1{2}, a2{2}, b2{7}, a3{4}, b3{7};

    static PathParams defaults() { return {}; }
    // "a0,b0,a1,b1,a2,b2,a3,b3" with integers, fractions or decimals.
    static PathParams parse(const std::string& text);
    // Throws std::invalid_argument naming the violated inequality.
    void validate() const;
    std::vector<Rational> values() const { return {a0, b0, a1, b1, a2, b2, a3, b3}; }
    std::string str() const;
};

// e^{i pi / 4}
Complex omega8();

// P0 = (a0 e^{i pi/4}, b0 e^{i pi/4}); validates the parameters.
Point anchor_base_point(const PathParams& params);
// Q0 = (b0 e^{i pi/4}, a0 e^{i pi/4}), the mirror of P0, which lies in S2.
Point mirror_base_point(const PathParams& params);

// ---------------------------------------------------------------------------
// Logarithm branches
// ---------------------------------------------------------------------------

// Continuous logarithms of z1, z2 and z1 - z2.
using LogTriple = std::array<Complex, 3>;
// Integer offsets n with branch = plog + 2 pi i n, per generator.
using Offsets = std::array<int, 3>;

LogTriple principal_logs(const Point& p);
// Rounds (logs - principal) / (2 pi i) to integers; throws if any residual
// exceeds 1e-6.
Offsets offsets_of(const LogTriple& logs, const Point& p);

// Branch bookkeeping anchored at P0. On each of R1..R4 the preferred logs are
// continuous closed-form expressions plus constants; the constants are fixed
// by matching at P0 (R1, R3, R4) and at Q0 against R4 (R2), then rounded to
// integer multiples of i pi.
class BranchFrame {
public:
    explicit BranchFrame(const PathParams& params = PathParams::defaults());

    const PathParams& params() const { return params_; }
    const Point& anchor() const { return p0_; }
    const Point& mirror_anchor() const { return q0_; }

    // Matched constants in units of i pi, per generator.
    const std::array<int, 3>& constants(Region r) const;
    // Preferred logs on r at p; throws unless r is one of R1..R4 and p lies
    // in r.
    LogTriple preferred_logs(Region r, const Point& p) const;
    Offsets preferred_offsets(Region r, const Point& p) const;

private:
    LogTriple raw_logs(Region r, const Point& p) const;
    std::array<int, 3> match(Region r, const Point& q, const LogTriple& target) const;

    PathParams params_;
    Point p0_, q0_;
    std::array<std::array<int, 3>, 4> consts_{};
};

// ---------------------------------------------------------------------------
// Continuation of logarithms along curves
// ---------------------------------------------------------------------------

using Curve = std::function<Point(double)>;

struct ContinuationResult {
    LogTriple logs{};
    // Accumulated change of arg in units of full turns (real numbers).
    std::array<double, 3> turns{};
    std::size_t steps = 0;
    double min_modulus = 0.0;  // smallest |z1|, |z2|, |z1 - z2| seen
};

// Follows logs of z1, z2, z1 - z2 along c(t), t in [t0, t1], starting from
// `start` at c(t0). Steps are refined until every step changes each argument
// by less than pi/2; throws std::runtime_error when the step size underflows.
ContinuationResult continue_logs(const Curve& c, double t0, double t1, const LogTriple& start,
                                 std::size_t initial_steps = 64);

// Three-stage path inside region r (one of R1..R4) from `from` to `to`:
// the small coordinate shrinks, the arguments rotate, then it grows again.
// The path never leaves r.
Curve region_path(Region r, const Point& from, const Point& to);

// Preferred offsets on r at p computed by numeric continuation from the
// anchor along region paths (via Q0 inside R4 for R2).
Offsets chain_continuation_offsets(const BranchFrame& frame, Region r, const Point& p);

// ---------------------------------------------------------------------------
// Multivalued functions
// ---------------------------------------------------------------------------

using Exps = std::array<Rational, 3>;

// coeff * z1^a z2^b (z1 - z2)^c * dressing. `branch` shifts the three logs by
// 2 pi i k relative to the preferred branch.
struct BranchedMonomial {
    Scalar coeff;
    Exps exps;
    std::array<int, 3> branch{0, 0, 0};
};

struct GTerm {
    BranchedMonomial mono;
    LaurentElem dressing;
};

// Finite sum of branched monomials with Laurent dressing, evaluated on the
// preferred branches of the frame it is used with.
class GFunction {
public:
    explicit GFunction(Mode mode = Mode::Exact) : mode_(mode) {}
    static GFunction monomial(const Scalar& c, const Exps& e, Mode mode);

    Mode mode() const { return mode_; }
    const std::vector<GTerm>& terms() const { return terms_; }
    void add(const Scalar& c, const Exps& e, const LaurentElem& dressing, std::array<int, 3> branch = {0, 0, 0});
    GFunction scaled(const Scalar& c) const;
    friend GFunction operator+(const GFunction& a, const GFunction& b);

    // Folds branch shifts into the coefficients, moves integer parts of the
    // exponents into the dressing and merges terms by exponent class.
    GFunction canonical() const;
    // Exponent classes (fractional parts) present after canonicalization.
    std::vector<Exps> classes() const;
    bool classes_distinct() const;
    bool is_zero() const;

    std::array<int, 4> colors{0, 0, 0, 0};

private:
    Mode mode_;
    std::vector<GTerm> terms_;
};

// e^{2 pi i q} in the requested mode.
Scalar phase(const Rational& q, Mode mode);
Exps frac_exps(const Exps& e);

// Value of a function at a point written on the principal logarithms there:
// sum over exponent classes f in [0,1)^3 of
// e^{f1 plog z1 + f2 plog z2 + f3 plog(z1 - z2)} * L_f(z1, z2).
class LocalExpansion {
public:
    LocalExpansion(Mode mode, const Point& p) : mode_(mode), p_(p) {}

    Mode mode() const { return mode_; }
    const Point& point() const { return p_; }
    const std::map<Exps, LaurentElem>& classes() const { return classes_; }

    // Adds c * e^{2 pi i turns} * e^{sum e_g plog(gen g)} * dressing.
    void add(const Scalar& c, const Exps& e, const Rational& turns, const LaurentElem& dressing);
    void add_expansion(const LocalExpansion& other, const Scalar& c);

    Complex evaluate() const;
    // Exact mode: canonical equality per class. Float mode: each class value
    // agrees within tol * max(1, |a|, |b|).
    bool equals(const LocalExpansion& other, double tol = 1e-9) const;
    // The same function expressed at p, given that the generators at this
    // expansion's point equal perm.apply(p).
    LocalExpansion relabeled(const SignedPerm& perm, const Point& p) const;
    std::string str() const;

private:
    Mode mode_;
    Point p_;
    std::map<Exps, LaurentElem> classes_;
};

// Local expansion of g's branch with the given offsets at p.
LocalExpansion expansion_with_offsets(const GFunction& g, const Point& p, const Offsets& n);
LocalExpansion local_expansion(const BranchFrame& frame, const GFunction& g, Region r, const Point& p);
Complex preferred_branch_eval(const BranchFrame& frame, const GFunction& g, Region r, const Point& p);
// The function whose preferred branch on r takes the value `loc` near its
// point.
GFunction anchor_from_local(const BranchFrame& frame, const LocalExpansion& loc, Region r);

// A generator (0: z1, 1: z2, 2: z1 - z2) with a sign.
struct SignedVar {
    int gen = 0;
    int sign = 1;
    Complex value(const Point& p) const { return static_cast<double>(sign) * p.gen(gen); }
    friend bool operator==(const SignedVar&, const SignedVar&) = default;
};
SignedVar signed_var_of(int c1, int c2);  // the signed generator equal to c1 z1 + c2 z2

// c * big^eb * small^es * combo^ec * dressing with combo = big +- small and
// combo^ec evaluated as e^{ec plog(big)} (combo/big)^ec using the principal
// power of combo/big. This is how formal series in the small/big ratio sum
// up at a point.
struct NaturalTerm {
    Scalar coeff;
    SignedVar big, small, combo;
    Rational eb, es, ec;
    LaurentElem dressing;  // already written in z1, z2, z1 - z2
};

LocalExpansion natural_expansion(const std::vector<NaturalTerm>& terms, const Point& p, Mode mode);

// iota_12 (R1), iota_21 (R2) or iota_20 (R3) of the preferred branch.
Series iota_g(const BranchFrame& frame, Iota which, const GFunction& g, std::int64_t cutoff);
// Sums a series with rational exponents at given log values of its variables.
Complex sum_series(const Series& s, const std::map<Var, Complex>& logs);

// (z1, z2) -> g(z2, z1): the R1 branch near P0 is g's preferred R2 branch at
// the swapped point.
GFunction swap_variables(const BranchFrame& frame, const GFunction& g);
// (z1, z2) -> g(z1 - z2, -z2): the R1 branch near the point gamma(2/7) is g's
// preferred R1 branch at the shifted point.
GFunction substitute_shift(const BranchFrame& frame, const GFunction& g);
// The point where substitute_shift matches branches.
Point shift_match_point(const PathParams& params);

}  // namespace s3v
