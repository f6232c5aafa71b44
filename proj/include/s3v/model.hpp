#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "s3v/branched.hpp"
#include "s3v/check.hpp"
#include "s3v/scalar.hpp"

namespace s3v {

// Raised for malformed model descriptions (bad JSON shape, unknown keys,
// inconsistent tables). The CLI maps it to exit code 2.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ClassKind { P, I };

// Basis class of a quadruple, indexed by a lift (g1, g2, g3) of the colors
// (a1, a2, a3) to components.
//   P (g1, g2, g3) = [Op(g1, g2 + g3) (x) Op(g2, g3)]_P
//   I (g1, g2, g3) = [Op(g1, g2) (x) Op(g1 + g2, g3)]_I
struct ClassLabel {
    ClassKind kind = ClassKind::P;
    std::array<int, 3> g{0, 0, 0};
    friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
    std::string str() const;
};

// (a1, a2, a3, a4) as color indices.
using Quadruple = std::array<int, 4>;

// Finite linear combination of basis classes.
using ClassVec = std::map<ClassLabel, Scalar>;

// Intertwining operator Op(g, h) of type (g, h) -> g + h.
struct OpLabel {
    int g = 0, h = 0;
    friend auto operator<=>(const OpLabel&, const OpLabel&) = default;
};

struct OmegaImage {
    OpLabel op;
    Scalar scalar;
};

// Desk-scale intertwining operator algebra built from a cyclic group G = Z/M
// of components. Colors are a partition of G (abelian models use singleton
// colors); the color of 0 is the identity color. Exponents come from a
// symmetric form q(g, h) in [0, 2), weights from h(g) in [0, 1).
//
// The distinguished correlator of P (g1, g2, g3) is
//   C z1^{q(g1,g3)} z2^{q(g2,g3)} (z1 - z2)^{q(g1,g2)} D(z1, z2)
// with C = C(g1, g2 + g3) C(g2, g3) (times an optional perturbation factor)
// and D = 1 + sum over pairs i<j of a(gi,gj) d_ij^2 + b(gi,gj) d_ij^{-2},
// where d_12 = z1 - z2, d_13 = z1, d_23 = z2. Iterates use C(g1, g2) C(g1 +
// g2, g3) and the same exponents and dressing.
class Model {
public:
    Model() = default;

    // Z/N with colors = components, q(g, h) = 2 g h / N mod 2, constants 1.
    static Model abelian(int n, Mode mode = Mode::Exact);
    // Seeded random model with merged colors; see README for the recipe.
    static Model synthetic(std::uint64_t seed, Mode mode = Mode::Exact);
    // Throws ModelError on schema violations.
    static Model from_json(const nlohmann::json& j, Mode mode = Mode::Exact);
    static Model load(const std::string& path, Mode mode = Mode::Exact);
    nlohmann::json to_json() const;

    const std::string& name() const { return name_; }
    Mode mode() const { return mode_; }
    Model with_mode(Mode m) const;
    int order() const { return m_; }
    int num_colors() const { return static_cast<int>(labels_.size()); }
    const std::string& color_label(int c) const { return labels_.at(static_cast<std::size_t>(c)); }
    int color_of(int g) const { return color_of_.at(static_cast<std::size_t>(mod(g))); }
    int identity_color() const { return color_of(0); }
    const std::vector<int>& components(int color) const { return comps_.at(static_cast<std::size_t>(color)); }
    int mod(int g) const { return ((g % m_) + m_) % m_; }

    Rational form(int g, int h) const;
    Rational component_weight(int g) const { return weights_.at(static_cast<std::size_t>(mod(g))); }
    Rational color_weight(int c) const { return component_weight(components(c).front()); }
    Scalar constant(int g, int h) const;  // C(g, h)
    Rational dressing_a(int g, int h) const;
    Rational dressing_b(int g, int h) const;

    // Multiplies the correlator of one P class by `factor`.
    void perturb(const ClassLabel& p, const Scalar& factor);
    const std::map<ClassLabel, Cyclotomic>& perturbations() const { return perturb_; }

    std::vector<Quadruple> quadruples() const;  // all quadruples with at least one class
    std::vector<ClassLabel> classes(ClassKind kind, const Quadruple& q) const;
    std::vector<ClassLabel> all_classes(ClassKind kind) const;
    Quadruple quadruple_of(const ClassLabel& c) const;
    std::string quadruple_str(const Quadruple& q) const;
    // Exponents (alpha, beta, gamma) on z1, z2, z1 - z2.
    Exps class_exponents(const ClassLabel& c) const;
    Scalar class_constant(const ClassLabel& c) const;
    LaurentElem dressing(const std::array<int, 3>& g) const;  // in u = z1, v = z2, w = z1 - z2

    // R1-anchored function of a P class (or combination of P classes).
    GFunction product_correlator(const ClassLabel& c) const;
    GFunction product_correlator(const ClassVec& v) const;
    // R3 branch of the iterate, re-anchored at P0.
    GFunction iterate_correlator(const BranchFrame& frame, const ClassLabel& c) const;

    // Natural series sums. For P classes the slots are (x1, x2) with
    // combination x1 - x2; for I classes they are (x0, x2) with combination
    // x0 + x2. Each slot is a signed generator of (z1, z2, z1 - z2).
    std::vector<NaturalTerm> natural_terms(const ClassLabel& c, SignedVar first, SignedVar second) const;
    LocalExpansion natural(const ClassVec& v, SignedVar first, SignedVar second, const Point& p) const;

    // Omega_r on a single operator: e^{(2r+1) pi i q(g,h)} C(g,h)/C(h,g) Op(h, g).
    OmegaImage omega_apply(int r, const OpLabel& op) const;
    ClassVec omega_apply(int r, const ClassVec& v, int slot) const;

private:
    void finish();

    std::string name_;
    Mode mode_ = Mode::Exact;
    int m_ = 1;
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> comps_;
    std::vector<int> color_of_;
    std::vector<Rational> weights_;
    std::vector<Rational> form_;  // m_ x m_
    std::map<std::pair<int, int>, Cyclotomic> constants_;
    std::map<std::pair<int, int>, std::pair<Rational, Rational>> dressing_;
    std::map<ClassLabel, Cyclotomic> perturb_;
    // Echo of the form multiplier for reports.
    int form_multiplier_ = 1;
};

// Axiom and bookkeeping checks: identity color fuses trivially, weights
// agree across the components of a color, exponents satisfy the weight
// condition, and exponent classes are distinct within every quadruple.
std::vector<CheckResult> validate_spec(const Model& m);

// Kernel triviality at finite order: the iota_12 expansions of the product
// correlators of a quadruple are linearly independent up to `cutoff`.
CheckResult kernel_rank_check(const Model& m, const BranchFrame& frame, const Quadruple& q, std::int64_t cutoff = 8);

// ClassVec helpers.
ClassVec class_vec(const ClassLabel& c, const Scalar& s);
ClassVec add(const ClassVec& a, const ClassVec& b);
ClassVec scale(const ClassVec& a, const Scalar& s);
bool is_zero(const ClassVec& v);
bool equals(const ClassVec& a, const ClassVec& b, double tol = 1e-9);
std::string str(const ClassVec& v);

// Scalars in JSON: "p/q" strings, integers, or {order, coeffs: ["p/q", ...]}.
Cyclotomic scalar_from_json(const nlohmann::json& j);
nlohmann::json scalar_to_json(const Scalar& s);

}  // namespace s3v
