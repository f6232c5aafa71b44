#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "s3v/branched.hpp"
#include "s3v/check.hpp"
#include "s3v/laurent.hpp"
#include "s3v/model.hpp"
#include "s3v/moore_seiberg.hpp"

namespace s3v {

// The three extractions of one instance disagree on their exponent classes.
class JacobiError : public std::runtime_error {
public:
    JacobiError(const std::string& what, std::string quadruple)
        : std::runtime_error(what), quadruple_(std::move(quadruple)) {}
    const std::string& quadruple() const { return quadruple_; }

private:
    std::string quadruple_;
};

// Coefficient of the basis monomial e_alpha = z1^a1 z2^a2 (z1-z2)^a3 with
// alpha in [0,1)^3.
struct CoefficientFunction {
    Exps alpha;
    LaurentElem value;
};

// g = sum_alpha value_alpha * e_alpha on g's preferred R1 branch.
std::vector<CoefficientFunction> basis_decompose(const GFunction& g);

// Everything the extraction and the swap constructions consume.
struct JacobiContext {
    const Model& model;
    const BranchFrame& frame;
    const MooreSeibergSystem& sys;
};

struct JacobiFamily {
    LaurentElem f, g, h;
};

struct JacobiInstance {
    Quadruple quadruple{};
    // Product class whose correlator the instance is about, and the ordering
    // of (w1, w2, w3) it realizes, e.g. "213".
    ClassVec source;
    std::string ordering = "123";
    std::string source_label;
    // The product function on its preferred R1 branch.
    GFunction function;
    std::int64_t cutoff = 8;
    Mode mode = Mode::Exact;
    // f: product (iota_12 side), g: braided product (iota_21 side),
    // h: iterate (iota_20 side, as a function of x1 = x2 + x0 and x2).
    std::map<Exps, JacobiFamily> families;
};

// Families of the instance built on the product function `phi` of class
// `source` in `quadruple`. The braided family is read off the natural
// expansion of B(source) with swapped insertions at the mirror anchor, the
// iterate family off the natural expansion of F(source) at the anchor.
// Throws JacobiError when the class sets differ.
JacobiInstance make_instance(const JacobiContext& ctx, const Quadruple& quadruple, const ClassVec& source,
                             const GFunction& phi, std::int64_t cutoff, std::string ordering = "123");

JacobiInstance extract_FGH(const JacobiContext& ctx, const ClassLabel& z, std::int64_t cutoff);

// Closed forms first (g and h against f, per class), then the three delta
// terms on the window [-cutoff, cutoff]^3. Identical expansion problems are
// evaluated once per process in exact mode.
CheckResult jacobi_check(const JacobiInstance& inst, double tolerance = 1e-9);

// (w1, w2, w3) -> (w2, w1, w3) over (a2, a1, a3, a4): product function
// phi(z2, z1) on its R1 branch, source B(source).
JacobiInstance transform_swap12(const JacobiContext& ctx, const JacobiInstance& inst);
// (w1, w2, w3) -> (w1, w3, w2) over (a1, a3, a2, a4): product function
// phi(z1 - z2, -z2) on its R1 branch, source Omega~(4)(source).
JacobiInstance transform_swap23(const JacobiContext& ctx, const JacobiInstance& inst);

struct S3Entry {
    std::string quadruple;
    std::string class_label;
    std::string permutation;  // ordering of (w1, w2, w3), or involution_12/23
    bool passed = false;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> locator;

    nlohmann::json to_json() const;
};

struct S3Report {
    bool refused = false;
    std::string refusal;
    std::vector<S3Entry> entries;

    bool all_passed() const;
    // Per class: number of the six orderings that pass.
    std::map<std::string, int> passes_per_class() const;
};

// For every product class of `quadruple`: the base instance, the five other
// orderings from compositions of the two swaps, and both involutions.
// Refuses to run unless every Moore-Seiberg relation holds.
S3Report verify_s3(const JacobiContext& ctx, const Quadruple& quadruple, std::int64_t cutoff);
// The same over every quadruple with at least one product class; the
// relation check runs once.
S3Report verify_s3_all(const JacobiContext& ctx, std::int64_t cutoff);

}  // namespace s3v
