#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "s3v/branched.hpp"
#include "s3v/check.hpp"
#include "s3v/model.hpp"
#include "s3v/moore_seiberg.hpp"
#include "s3v/paths.hpp"

namespace s3v {

// Seeded sample points: `count` points in each of R1..R4 and in S1, S2.
struct BranchSamples {
    std::array<std::vector<Point>, 4> regions;  // R1, R2, R3, R4
    std::vector<Point> s1, s2;
};

BranchSamples sample_branch_points(std::uint64_t seed, int count = 10);

// One stop of a closed walk: the point reached and the log offsets picked up
// since the previous stop, relative to principal logs at both ends.
struct WalkStop {
    std::string label;
    Point point;
    Offsets delta{0, 0, 0};
};

// start -> path(0) (straight) -> path(t_1) -> ... -> path(1) -> start
// (straight). The straight legs must stay inside a convex region containing
// both ends; the caller picks the start accordingly.
std::vector<WalkStop> closed_walk(const PathSpec& path, const Point& start, const std::vector<Rational>& stops);

// Re-expresses a germ after continuation: logs picked up `delta` full turns.
LocalExpansion move_germ(const LocalExpansion& e, const Offsets& delta, const Point& to);

// Preferred offsets on R1..R4 against numeric continuation from the anchor.
std::vector<CheckResult> check_chain_offsets(const BranchFrame& frame, const BranchSamples& samples);

// The natural-expansion identities of every product class at the sample
// points. Four results compare natural expansions with preferred branches on
// R1..R4, two compare pairs of natural expansions on S1 and S2, and
// gamma_loop and sigma_loop walk the piecewise expressions along the two
// closed paths. One result per identity; a failure carries class, point
// index and stop in its locator.
std::vector<CheckResult> check_branch_relations(const Model& m, const BranchFrame& frame,
                                                const MooreSeibergSystem& sys, const BranchSamples& samples,
                                                double tolerance = 1e-9);

}  // namespace s3v
