#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "s3v/branched.hpp"
#include "s3v/cyclotomic.hpp"

namespace s3v {

// One coordinate along a segment: center + r(t) e^{i pi theta(t)} with
// center = cmod e^{i pi carg}, r(t) = r0 + r1 t and theta(t) = th0 + th1 t.
// Every quantity is rational, so the value at a rational t with a rational
// angle is an exact element of a cyclotomic field.
struct PathCoordinate {
    Rational cmod{0}, carg{0};
    Rational r0{0}, r1{0};
    Rational th0{0}, th1{0};

    Complex at(double t) const;
    Cyclotomic exact_at(const Rational& t) const;
    // Upper bound of |dz/dt| on [t0, t1].
    double speed_bound(double t0, double t1) const;
    bool is_arc() const { return !th1.is_zero(); }
};

struct PathSegment {
    Rational t0, t1;
    PathCoordinate z1, z2;
    std::string formula;

    Point at(double t) const { return {z1.at(t), z2.at(t)}; }
    std::array<Cyclotomic, 2> exact_at(const Rational& t) const { return {z1.exact_at(t), z2.exact_at(t)}; }
};

struct PathSpec {
    std::string name;
    PathParams params;
    std::vector<PathSegment> segments;
    bool closed = true;
    int samples_per_segment = 256;

    Point at(double t) const;
    std::array<Cyclotomic, 2> exact_at(const Rational& t) const;
    // Index of the segment whose half-open interval (t0, t1] contains t;
    // t = 0 belongs to the first segment.
    std::size_t segment_index(double t) const;
    Curve curve() const;
    // Joint continuity and closure, compared exactly.
    std::vector<std::string> joint_defects() const;
};

PathSpec build_gamma(const PathParams& params);
PathSpec build_sigma(const PathParams& params);

// A strict chain of inequalities on Re/Im/|.| of z1, z2, z1 - z2.
struct Containment {
    std::string label;  // e.g. "(0,2/7)" or "2/7"
    Rational t0, t1;    // equal for a single parameter value
    bool open_interval = false;
    std::string condition;
    // Smallest slack of the defining inequalities at p (positive inside).
    double (*margin)(const Point&) = nullptr;
};

std::vector<Containment> gamma_containments();
std::vector<Containment> sigma_containments();

// Distance (max-norm on C^2) from p to the cut set of `ambient`.
double clearance(Region ambient, const Point& p);

struct ContainmentResult {
    std::string label;
    std::string condition;
    bool passed = false;
    double min_margin = 0.0;
    double worst_t = 0.0;
};

struct CertificationReport {
    std::string path;
    Region ambient = Region::GPrime;
    bool joints_ok = false;
    std::vector<std::string> joint_defects;
    bool inside = false;
    double min_sampled_clearance = 0.0;
    double certified_lower_bound = 0.0;
    double worst_t = 0.0;
    std::size_t samples = 0;
    std::vector<ContainmentResult> containments;
    bool passed = false;
    std::string failure;
};

// Adaptive certification: on every sampling interval the clearance at the
// end points minus a speed bound times half the width must stay above
// `floor`; intervals that do not certify are bisected. Throws
// std::runtime_error if the sampling budget runs out.
CertificationReport certify_path(const PathSpec& p, Region ambient, double floor = 1e-3,
                                 std::size_t max_samples = 2000000);

struct WindingTriple {
    std::array<int, 3> w{0, 0, 0};
    friend bool operator==(const WindingTriple&, const WindingTriple&) = default;
};

struct ContinuationReport {
    WindingTriple winding;
    // Argument change per segment, in full turns.
    std::vector<std::array<double, 3>> segment_turns;
    std::array<double, 3> total_turns{};
    std::size_t steps = 0;
    // The function after continuation along the closed path, written on the
    // starting branch (branch offsets shifted by the winding).
    std::optional<GFunction> continued;
};

// Continues the logs of z1, z2, z1 - z2 along the whole path. For closed
// paths the total turns must be integers, which become the winding triple.
ContinuationReport continue_along(const PathSpec& p, const GFunction* g = nullptr);
// Continued logs at parameter t, starting from `start` at t = 0.
LogTriple logs_along(const PathSpec& p, double t, const LogTriple& start);
// Argument change over [ta, tb] in turns.
std::array<double, 3> turns_between(const PathSpec& p, double ta, double tb);

// CSV with columns t,re_z1,im_z1,re_z2,im_z2.
void write_path_csv(const PathSpec& p, std::ostream& os, int samples_per_segment = 200);

}  // namespace s3v
