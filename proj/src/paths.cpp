#include "s3v/paths.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <stdexcept>

namespace s3v {

namespace {

constexpr double kPi = std::numbers::pi;

Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

PathCoordinate ray(const Rational& r0, const Rational& r1, const Rational& th) {
    PathCoordinate c;
    c.r0 = r0;
    c.r1 = r1;
    c.th0 = th;
    return c;
}

PathCoordinate arc(const Rational& r, const Rational& th0, const Rational& th1) {
    PathCoordinate c;
    c.r0 = r;
    c.th0 = th0;
    c.th1 = th1;
    return c;
}

// Linear interpolation value = A*(k1 - 7t) + B*(7t - k0) written as r0 + r1 t.
PathCoordinate lerp(const Rational& A, const Rational& B, std::int64_t k0, const Rational& th) {
    // A (k0 + 1 - 7t) + B (7t - k0)
    Rational r0 = A * R(k0 + 1) - B * R(k0);
    Rational r1 = (B - A) * R(7);
    return ray(r0, r1, th);
}

double dist_to_ray(Complex z) {
    if (z.real() >= 0) return std::abs(z.imag());
    return std::abs(z);
}

}  // namespace

Complex PathCoordinate::at(double t) const {
    Complex center = std::polar(cmod.to_double(), kPi * carg.to_double());
    double r = r0.to_double() + r1.to_double() * t;
    double th = th0.to_double() + th1.to_double() * t;
    return center + std::polar(1.0, kPi * th) * r;
}

Cyclotomic PathCoordinate::exact_at(const Rational& t) const {
    Cyclotomic center = Cyclotomic(cmod) * Cyclotomic::root_of_unity(carg / R(2));
    Rational r = r0 + r1 * t;
    Rational th = th0 + th1 * t;
    return center + Cyclotomic(r) * Cyclotomic::root_of_unity(th / R(2));
}

double PathCoordinate::speed_bound(double t0, double t1) const {
    double rmax = std::max(std::abs(r0.to_double() + r1.to_double() * t0), std::abs(r0.to_double() + r1.to_double() * t1));
    return std::abs(r1.to_double()) + rmax * kPi * std::abs(th1.to_double());
}

Point PathSpec::at(double t) const { return segments[segment_index(t)].at(t); }

std::array<Cyclotomic, 2> PathSpec::exact_at(const Rational& t) const {
    for (const auto& s : segments)
        if (t <= s.t1) return s.exact_at(t);
    throw std::out_of_range("path parameter outside [0, 1]");
}

std::size_t PathSpec::segment_index(double t) const {
    for (std::size_t i = 0; i < segments.size(); ++i)
        if (t <= segments[i].t1.to_double()) return i;
    return segments.size() - 1;
}

Curve PathSpec::curve() const {
    return [this](double t) { return at(t); };
}

std::vector<std::string> PathSpec::joint_defects() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const auto& a = segments[i];
        const auto& b = segments[i + 1];
        if (!(a.t1 == b.t0)) out.push_back("segment " + std::to_string(i + 1) + " parameter gap");
        auto ea = a.exact_at(a.t1);
        auto eb = b.exact_at(a.t1);
        if (!(ea[0] == eb[0]) || !(ea[1] == eb[1]))
            out.push_back("discontinuity at t=" + a.t1.str() + " between segments " + std::to_string(i + 1) + " and " +
                          std::to_string(i + 2));
    }
    if (closed) {
        auto s = segments.front().exact_at(segments.front().t0);
        auto e = segments.back().exact_at(segments.back().t1);
        if (!(s[0] == e[0]) || !(s[1] == e[1])) out.push_back("path is not closed");
    }
    return out;
}

PathSpec build_gamma(const PathParams& pp) {
    pp.validate();
    const Rational q1 = R(1, 4), q5 = R(5, 4);
    const Rational c2 = pp.b2 * R(2) - pp.a2;
    PathSpec p;
    p.name = "gamma";
    p.params = pp;
    auto seg = [&](std::int64_t k, PathCoordinate z1, PathCoordinate z2, std::string f) {
        p.segments.push_back(PathSegment{R(k, 7), R(k + 1, 7), z1, z2, std::move(f)});
    };
    seg(0, lerp(pp.a0, pp.a1, 0, q1), lerp(pp.b0, pp.b1, 0, q1), "linear (a0,b0)w -> (a1,b1)w");
    seg(1, ray(pp.a1, 0, q1), arc(pp.b1, R(-3, 4), R(7)), "z2 = b1 e^{i pi (1/4 + 7t - 1)}");
    seg(2, lerp(pp.a1, pp.a2, 2, q1), lerp(pp.b1, pp.b2, 2, q5), "linear to (a2 e^{i pi/4}, b2 e^{5 i pi/4})");
    seg(3, arc(pp.a2, R(-11, 4), R(7)), ray(pp.b2, 0, q5), "z1 = a2 e^{i pi (1/4 + 7t - 3)}");
    {
        PathCoordinate z1 = arc(pp.b2 - pp.a2, R(-15, 4), R(7));
        z1.cmod = pp.b2;
        z1.carg = q5;
        seg(4, z1, ray(pp.b2, 0, q5), "z1 = b2 e^{5 i pi/4} + (b2 - a2) e^{i pi (1/4 + 7t - 4)}");
    }
    seg(5, arc(c2, R(25, 4), R(-7)), arc(pp.b2, R(25, 4), R(-7)), "both rotate by e^{-i pi (7t - 5)}");
    seg(6, lerp(c2, pp.a0, 6, q1), lerp(pp.b2, pp.b0, 6, q1), "linear back to (a0,b0)w");
    return p;
}

PathSpec build_sigma(const PathParams& pp) {
    pp.validate();
    const Rational q1 = R(1, 4), q5 = R(5, 4);
    PathSpec p;
    p.name = "sigma";
    p.params = pp;
    auto seg = [&](std::int64_t k, PathCoordinate z1, PathCoordinate z2, std::string f) {
        p.segments.push_back(PathSegment{R(k, 7), R(k + 1, 7), z1, z2, std::move(f)});
    };
    {
        PathCoordinate z2 = arc(pp.b3 - pp.a3, q1, R(7));
        z2.cmod = pp.a3;
        z2.carg = q1;
        seg(0, ray(pp.a3, 0, q1), z2, "z2 = a3 e^{i pi/4} + (b3 - a3) e^{i pi (1/4 + 7t)}");
    }
    seg(1, lerp(pp.a3, pp.a0, 1, q1), lerp(pp.a3 * R(2) - pp.b3, pp.b0, 1, q1), "linear to (a0,b0)w");
    seg(2, lerp(pp.a0, pp.a1, 2, q1), lerp(pp.b0, pp.b1, 2, q1), "linear to (a1,b1)w");
    seg(3, ray(pp.a1, 0, q1), arc(pp.b1, R(-11, 4), R(7)), "z2 = b1 e^{i pi (1/4 + 7t - 3)}");
    seg(4, lerp(pp.a1, pp.a2, 4, q1), lerp(pp.b1, pp.b2, 4, q5), "linear to (a2 e^{i pi/4}, b2 e^{5 i pi/4})");
    seg(5, ray(pp.a2, 0, q1), arc(pp.b2, R(25, 4), R(-7)), "z2 = b2 e^{i pi (5/4 - 7t + 5)}");
    seg(6, lerp(pp.a2, pp.a3, 6, q1), lerp(pp.b2, pp.b3, 6, q1), "linear back to (a3,b3)w");
    return p;
}

// ---------------------------------------------------------------------------

namespace {

double m_s1(const Point& p) {
    Complex z1 = p.z1, z2 = p.z2, w = p.z12();
    return std::min({z1.real() - z2.real(), z2.real() - w.real(), w.real(), z1.imag() - z2.imag(),
                     z2.imag() - w.imag(), w.imag()});
}
double m_s2(const Point& p) {
    Complex z1 = p.z1, z2 = p.z2, w = p.z2 - p.z1;
    return std::min({z2.real() - z1.real(), z1.real() - w.real(), w.real(), z2.imag() - z1.imag(),
                     z1.imag() - w.imag(), w.imag()});
}
double m_z1_gt_z2(const Point& p) { return std::min(std::abs(p.z1) - std::abs(p.z2), std::abs(p.z2)); }
double m_z2_gt_z1(const Point& p) { return std::min(std::abs(p.z2) - std::abs(p.z1), std::abs(p.z1)); }
double m_z2_gt_w(const Point& p) { return std::min(std::abs(p.z2) - std::abs(p.z12()), std::abs(p.z12())); }
double m_z1_gt_w(const Point& p) { return std::min(std::abs(p.z1) - std::abs(p.z12()), std::abs(p.z12())); }
double m_z1_gt_mz2(const Point& p) {
    return std::min({p.z1.real() + p.z2.real(), -p.z2.real(), p.z1.imag() + p.z2.imag(), -p.z2.imag()});
}
double m_quadrants(const Point& p) {
    return std::min({p.z1.real(), -p.z2.real(), p.z1.imag(), -p.z2.imag()});
}
double m_mz2_gt_z1(const Point& p) {
    return std::min({-p.z2.real() - p.z1.real(), p.z1.real(), -p.z2.imag() - p.z1.imag(), p.z1.imag()});
}
double m_gamma_47(const Point& p) {
    Complex z1 = p.z1, z2 = p.z2, d = p.z2 - p.z1;
    return std::min({d.real() - z2.real(), z1.real() - d.real(), -z1.real(), d.imag() - z2.imag(),
                     z1.imag() - d.imag(), -z1.imag()});
}

Containment point_cond(const char* label, Rational t, const char* cond, double (*m)(const Point&)) {
    return Containment{label, t, t, false, cond, m};
}
Containment open_cond(const char* label, Rational t0, Rational t1, const char* cond, double (*m)(const Point&)) {
    return Containment{label, t0, t1, true, cond, m};
}

}  // namespace

std::vector<Containment> gamma_containments() {
    return {
        point_cond("0", R(0), "S1", m_s1),
        open_cond("(0,2/7)", R(0), R(2, 7), "|z1|>|z2|>0", m_z1_gt_z2),
        point_cond("2/7", R(2, 7), "Re z1>-Re z2>0, Im z1>-Im z2>0", m_z1_gt_mz2),
        open_cond("(2/7,3/7)", R(2, 7), R(3, 7), "Re z1>0>Re z2, Im z1>0>Im z2", m_quadrants),
        point_cond("3/7", R(3, 7), "-Re z2>Re z1>0, -Im z2>Im z1>0", m_mz2_gt_z1),
        open_cond("(3/7,4/7)", R(3, 7), R(4, 7), "|z2|>|z1|>0", m_z2_gt_z1),
        point_cond("4/7", R(4, 7), "Re z2<Re(z2-z1)<Re z1<0, same for Im", m_gamma_47),
        open_cond("(4/7,1)", R(4, 7), R(1), "|z2|>|z1-z2|>0", m_z2_gt_w),
        point_cond("1", R(1), "S1", m_s1),
    };
}

std::vector<Containment> sigma_containments() {
    return {
        point_cond("0", R(0), "S2", m_s2),
        open_cond("(0,2/7)", R(0), R(2, 7), "|z1|>|z1-z2|>0", m_z1_gt_w),
        point_cond("2/7", R(2, 7), "S1", m_s1),
        open_cond("(2/7,4/7)", R(2, 7), R(4, 7), "|z1|>|z2|>0", m_z1_gt_z2),
        point_cond("4/7", R(4, 7), "Re z1>-Re z2>0, Im z1>-Im z2>0", m_z1_gt_mz2),
        open_cond("(4/7,5/7)", R(4, 7), R(5, 7), "Re z1>0>Re z2, Im z1>0>Im z2", m_quadrants),
        point_cond("5/7", R(5, 7), "-Re z2>Re z1>0, -Im z2>Im z1>0", m_mz2_gt_z1),
        open_cond("(5/7,1)", R(5, 7), R(1), "|z2|>|z1|>0", m_z2_gt_z1),
        point_cond("1", R(1), "S2", m_s2),
    };
}

double clearance(Region ambient, const Point& p) {
    double d = std::min(dist_to_ray(p.z1), dist_to_ray(p.z2));
    if (ambient == Region::GPrime) return std::min(d, dist_to_ray(p.z12()) / 2);
    if (ambient == Region::GDoublePrime) return std::min(d, dist_to_ray(-p.z12()) / 2);
    throw std::invalid_argument("clearance is defined for GPrime and GDoublePrime");
}

CertificationReport certify_path(const PathSpec& p, Region ambient, double floor, std::size_t max_samples) {
    CertificationReport rep;
    rep.path = p.name;
    rep.ambient = ambient;
    rep.joint_defects = p.joint_defects();
    rep.joints_ok = rep.joint_defects.empty();
    rep.min_sampled_clearance = INFINITY;
    rep.certified_lower_bound = INFINITY;

    for (const auto& s : p.segments) {
        const double a = s.t0.to_double(), b = s.t1.to_double();
        const double speed = std::max(s.z1.speed_bound(a, b), s.z2.speed_bound(a, b));
        const int n = std::max(p.samples_per_segment, 8);
        struct Iv {
            double t0, t1, c0, c1;
        };
        std::vector<Iv> stack;
        double prev_t = a, prev_c = clearance(ambient, s.at(a));
        rep.samples += 1;
        for (int i = 1; i <= n; ++i) {
            double t = a + (b - a) * i / n;
            double c = clearance(ambient, s.at(t));
            stack.push_back({prev_t, t, prev_c, c});
            prev_t = t;
            prev_c = c;
            rep.samples += 1;
        }
        while (!stack.empty()) {
            Iv iv = stack.back();
            stack.pop_back();
            for (auto [t, c] : {std::pair{iv.t0, iv.c0}, std::pair{iv.t1, iv.c1}}) {
                if (c < rep.min_sampled_clearance) {
                    rep.min_sampled_clearance = c;
                    rep.worst_t = t;
                }
            }
            double lower = std::min(iv.c0, iv.c1) - speed * (iv.t1 - iv.t0) / 2;
            if (lower > floor) {
                rep.certified_lower_bound = std::min(rep.certified_lower_bound, lower);
                continue;
            }
            if (std::min(iv.c0, iv.c1) <= floor) {
                rep.certified_lower_bound = std::min(rep.certified_lower_bound, std::min(iv.c0, iv.c1));
                rep.failure = "clearance below floor near t=" + std::to_string(iv.c0 <= iv.c1 ? iv.t0 : iv.t1);
                continue;
            }
            if (rep.samples >= max_samples) throw std::runtime_error("path certification sampling budget exhausted");
            double tm = (iv.t0 + iv.t1) / 2;
            double cm = clearance(ambient, s.at(tm));
            rep.samples += 1;
            stack.push_back({iv.t0, tm, iv.c0, cm});
            stack.push_back({tm, iv.t1, cm, iv.c1});
        }
    }
    rep.inside = rep.failure.empty() && rep.certified_lower_bound > floor;

    auto conds = p.name == "sigma" ? sigma_containments() : gamma_containments();
    for (const auto& c : conds) {
        ContainmentResult cr{c.label, c.condition, true, INFINITY, 0.0};
        auto probe = [&](double t) {
            double m = c.margin(p.at(t));
            if (m < cr.min_margin) {
                cr.min_margin = m;
                cr.worst_t = t;
            }
        };
        if (!c.open_interval) {
            probe(c.t0.to_double());
        } else {
            const double a = c.t0.to_double(), b = c.t1.to_double();
            const int n = 4000;
            // Interior samples plus points approaching both ends.
            for (int i = 1; i < n; ++i) probe(a + (b - a) * i / n);
            for (int k = 4; k <= 12; ++k) {
                probe(a + (b - a) * std::pow(10.0, -k));
                probe(b - (b - a) * std::pow(10.0, -k));
            }
        }
        cr.passed = cr.min_margin > 0;
        rep.containments.push_back(cr);
    }
    bool cont_ok = std::all_of(rep.containments.begin(), rep.containments.end(),
                               [](const ContainmentResult& c) { return c.passed; });
    rep.passed = rep.joints_ok && rep.inside && cont_ok;
    if (!rep.passed && rep.failure.empty()) {
        if (!rep.joints_ok)
            rep.failure = rep.joint_defects.front();
        else if (!cont_ok)
            rep.failure = "region containment violated";
        else
            rep.failure = "clearance not certified above floor";
    }
    return rep;
}

// ---------------------------------------------------------------------------

ContinuationReport continue_along(const PathSpec& p, const GFunction* g) {
    ContinuationReport rep;
    LogTriple logs = principal_logs(p.at(0.0));
    const LogTriple start = logs;
    for (const auto& s : p.segments) {
        Curve c = [&s](double t) { return s.at(t); };
        auto r = continue_logs(c, s.t0.to_double(), s.t1.to_double(), logs, 128);
        logs = r.logs;
        rep.segment_turns.push_back(r.turns);
        for (std::size_t i = 0; i < 3; ++i) rep.total_turns[i] += r.turns[i];
        rep.steps += r.steps;
    }
    if (p.closed) {
        for (std::size_t i = 0; i < 3; ++i) {
            double x = rep.total_turns[i];
            double r = std::round(x);
            if (std::abs(x - r) > 1e-9) throw std::runtime_error("closed path has non-integer winding");
            rep.winding.w[i] = static_cast<int>(r);
            Complex d = (logs[i] - start[i]) / Complex(0.0, 2 * kPi);
            if (std::abs(d - Complex(r, 0.0)) > 1e-6) throw std::runtime_error("winding and log offset disagree");
        }
        if (g) {
            GFunction out(g->mode());
            for (const auto& t : g->terms()) {
                auto b = t.mono.branch;
                for (std::size_t i = 0; i < 3; ++i) b[i] += rep.winding.w[i];
                out.add(t.mono.coeff, t.mono.exps, t.dressing, b);
            }
            out.colors = g->colors;
            rep.continued = out;
        }
    }
    return rep;
}

LogTriple logs_along(const PathSpec& p, double t, const LogTriple& start) {
    LogTriple logs = start;
    for (const auto& s : p.segments) {
        double a = s.t0.to_double(), b = s.t1.to_double();
        if (t <= a) break;
        Curve c = [&s](double x) { return s.at(x); };
        logs = continue_logs(c, a, std::min(b, t), logs, 128).logs;
    }
    return logs;
}

std::array<double, 3> turns_between(const PathSpec& p, double ta, double tb) {
    std::array<double, 3> total{};
    for (const auto& s : p.segments) {
        double a = std::max(ta, s.t0.to_double()), b = std::min(tb, s.t1.to_double());
        if (b <= a) continue;
        Curve c = [&s](double x) { return s.at(x); };
        auto r = continue_logs(c, a, b, principal_logs(s.at(a)), 128);
        for (std::size_t i = 0; i < 3; ++i) total[i] += r.turns[i];
    }
    return total;
}

void write_path_csv(const PathSpec& p, std::ostream& os, int samples_per_segment) {
    os << "t,re_z1,im_z1,re_z2,im_z2\n";
    os << std::setprecision(17);
    bool first = true;
    for (const auto& s : p.segments) {
        double a = s.t0.to_double(), b = s.t1.to_double();
        for (int i = first ? 0 : 1; i <= samples_per_segment; ++i) {
            double t = a + (b - a) * i / samples_per_segment;
            Point q = s.at(t);
            os << t << ',' << q.z1.real() << ',' << q.z1.imag() << ',' << q.z2.real() << ',' << q.z2.imag() << '\n';
        }
        first = false;
    }
}

}  // namespace s3v
