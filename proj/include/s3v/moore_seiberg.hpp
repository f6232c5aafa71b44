#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "s3v/branched.hpp"
#include "s3v/check.hpp"
#include "s3v/model.hpp"

namespace s3v {

// No I-class combination reproduces a product correlator on S1.
class FusingError : public std::runtime_error {
public:
    FusingError(const std::string& what, std::string quadruple)
        : std::runtime_error(what), quadruple_(std::move(quadruple)) {}
    const std::string& quadruple() const { return quadruple_; }

private:
    std::string quadruple_;
};

// Linear map between class spans, stored column by column: every basis class
// of the domain maps to a combination of codomain classes. Maps are block
// diagonal over quadruples up to the color permutation they implement.
struct IsoMatrix {
    std::string name;
    ClassKind from = ClassKind::P;
    ClassKind to = ClassKind::P;
    std::map<ClassLabel, ClassVec> columns;

    // Throws std::out_of_range for a class outside the domain.
    ClassVec apply(const ClassVec& v) const;
    // {name, domain, codomain, entries: [[i, j, scalar], ...]} with i the
    // codomain row and j the domain column.
    nlohmann::json to_json() const;
};

// outer after inner
IsoMatrix compose(const IsoMatrix& outer, const IsoMatrix& inner, const std::string& name);
// Block-wise Gaussian elimination. Throws std::runtime_error naming the
// quadruple of a singular block.
IsoMatrix inverse(const Model& m, const IsoMatrix& a, const std::string& name);

// The four maps built from Omega = Omega_{-1} (or its inverse Omega_0):
//   (1) I: Y1 (x) Y2 -> Omega(Y1) (x) Y2
//   (2) P -> I: Y1 (x) Y2 -> Y2 (x) Omega(Y1)
//   (3) I -> P: Y1 (x) Y2 -> Omega(Y2) (x) Y1
//   (4) P: Y1 (x) Y2 -> Y1 (x) Omega(Y2)
IsoMatrix build_omega_tilde(const Model& m, int which, bool inverse);

// P -> I, solved per P class by matching exponent classes and comparing the
// natural product and iterate expansions at the anchor.
IsoMatrix build_fusing(const Model& m, const BranchFrame& frame);

// B = F^{-1} Omega~(1) F
IsoMatrix build_braiding(const Model& m, const IsoMatrix& fusing, const IsoMatrix& fusing_inverse);

// Every matrix the relation checks and the S3 constructions consume.
struct MooreSeibergSystem {
    IsoMatrix F, F_inv, B, B_inv;
    IsoMatrix omega[5];      // index 1..4
    IsoMatrix omega_inv[5];  // built from Omega^{-1}

    static MooreSeibergSystem build(const Model& m, const BranchFrame& frame);
};

// Hexagons, inverse relations and the two derived identities, one result per
// relation plus one failure per failing quadruple (locator: relation,
// quadruple, class).
std::vector<CheckResult> check_relations(const Model& m, const MooreSeibergSystem& sys);

// The braiding scalar against the branched module: the natural swapped
// expansion of P~(B Z) at the mirror anchor equals the preferred R2 branch of
// the product correlator of Z, class by class.
std::vector<CheckResult> check_braiding_monodromy(const Model& m, const BranchFrame& frame,
                                                  const MooreSeibergSystem& sys);

// Omega_{-r-1} after Omega_r is the identity on every operator label, one
// result per r.
std::vector<CheckResult> check_omega_involution(const Model& m, const std::vector<int>& rs = {-2, -1, 0, 1});

// Classes of one kind grouped by quadruple.
std::map<Quadruple, std::vector<ClassLabel>> class_blocks(const Model& m, ClassKind kind);

}  // namespace s3v
