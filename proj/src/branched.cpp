#include "s3v/branched.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace s3v {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

int round_checked(double x, double tol, const char* what) {
    double r = std::round(x);
    if (std::abs(x - r) > tol) {
        std::ostringstream os;
        os << what << ": value " << x << " is not an integer";
        throw std::runtime_error(os.str());
    }
    return static_cast<int>(r);
}

// Half-turn offset of plog(sign * x) relative to plog(x): 0 or +-1/2.
Rational sign_turns(int sign, Complex x) {
    if (sign == 1) return Rational(0);
    return parg(x) < kPi ? Rational(1, 2) : Rational(-1, 2);
}

Rational parse_decimal(const std::string& raw) {
    std::string t;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    auto dot = t.find('.');
    if (dot == std::string::npos) return Rational::parse(t);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < t.size(); ++i) den *= 10;
    return Rational::parse(digits) / Rational(den);
}

}  // namespace

std::string region_name(Region r) {
    switch (r) {
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::R3: return "R3";
        case Region::R4: return "R4";
        case Region::R5: return "R5";
        case Region::S1: return "S1";
        case Region::S2: return "S2";
        case Region::GPrime: return "GPrime";
        case Region::GDoublePrime: return "GDoublePrime";
    }
    return "?";
}

Region parse_region(const std::string& name) {
    for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4, Region::R5, Region::S1, Region::S2,
                     Region::GPrime, Region::GDoublePrime})
        if (region_name(r) == name) return r;
    throw std::invalid_argument("unknown region '" + name + "'");
}

bool on_nonnegative_axis(Complex z) { return z.imag() == 0.0 && z.real() >= 0.0; }

bool region_contains(Region r, const Point& p) {
    const Complex z1 = p.z1, z2 = p.z2, w = p.z12();
    auto off = [](Complex z) { return !on_nonnegative_axis(z); };
    switch (r) {
        case Region::R1: return std::abs(z1) > std::abs(z2) && std::abs(z2) > 0 && off(z1) && off(z2);
        case Region::R2: return std::abs(z2) > std::abs(z1) && std::abs(z1) > 0 && off(z1) && off(z2);
        case Region::R3: return std::abs(z2) > std::abs(w) && std::abs(w) > 0 && off(z2) && off(w);
        case Region::R4: return std::abs(z1) > std::abs(w) && std::abs(w) > 0 && off(z1) && off(-w);
        case Region::R5: return std::abs(w) > std::abs(z2) && std::abs(z2) > 0 && off(-z2) && off(w);
        case Region::S1:
            return z1.real() > z2.real() && z2.real() > w.real() && w.real() > 0 && z1.imag() > z2.imag() &&
                   z2.imag() > w.imag() && w.imag() > 0;
        case Region::S2:
            return z2.real() > z1.real() && z1.real() > -w.real() && -w.real() > 0 && z2.imag() > z1.imag() &&
                   z1.imag() > -w.imag() && -w.imag() > 0;
        case Region::GPrime: return off(z1) && off(z2) && off(w);
        case Region::GDoublePrime: return off(z1) && off(z2) && off(-w);
    }
    return false;
}

double parg(Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2 * kPi;
    if (a >= 2 * kPi) a -= 2 * kPi;
    return a;
}

Complex plog(Complex z) {
    if (z == Complex(0.0, 0.0)) throw std::domain_error("logarithm of zero");
    return {std::log(std::abs(z)), parg(z)};
}

// ---------------------------------------------------------------------------

PathParams PathParams::parse(const std::string& text) {
    std::vector<Rational> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_decimal(item));
    if (v.size() != 8) throw std::invalid_argument("path parameters need 8 comma-separated values");
    PathParams p{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
    p.validate();
    return p;
}

void PathParams::validate() const {
    const Rational z(0);
    auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(std::string("path parameters violate ") + what);
    };
    need(a0 > b0 && b0 > a0 - b0 && a0 - b0 > z, "a0 > b0 > a0-b0 > 0");
    need(a1 > a1 - b1 && a1 - b1 > b1 && b1 > z, "a1 > a1-b1 > b1 > 0");
    need(b2 > b2 - a2 && b2 - a2 > a2 && a2 > z, "b2 > b2-a2 > a2 > 0");
    need(b3 > a3 && a3 > b3 - a3 && b3 - a3 > z, "b3 > a3 > b3-a3 > 0");
}

std::string PathParams::str() const {
    std::string s;
    for (const auto& q : values()) s += (s.empty() ? "" : ",") + q.str();
    return s;
}

Complex omega8() { return std::polar(1.0, kPi / 4); }

Point anchor_base_point(const PathParams& params) {
    params.validate();
    return {params.a0.to_double() * omega8(), params.b0.to_double() * omega8()};
}

Point mirror_base_point(const PathParams& params) {
    params.validate();
    return {params.b0.to_double() * omega8(), params.a0.to_double() * omega8()};
}

Point shift_match_point(const PathParams& params) {
    params.validate();
    return {params.a1.to_double() * omega8(), params.b1.to_double() * std::polar(1.0, 5 * kPi / 4)};
}

// ---------------------------------------------------------------------------

LogTriple principal_logs(const Point& p) { return {plog(p.z1), plog(p.z2), plog(p.z12())}; }

Offsets offsets_of(const LogTriple& logs, const Point& p) {
    LogTriple pr = principal_logs(p);
    Offsets n{};
    for (std::size_t g = 0; g < 3; ++g) {
        Complex d = (logs[g] - pr[g]) / (2 * kPi * kI);
        if (std::abs(d.imag()) > 1e-6) throw std::runtime_error("log branch differs in modulus from principal log");
        n[g] = round_checked(d.real(), 1e-6, "branch offset");
    }
    return n;
}

BranchFrame::BranchFrame(const PathParams& params)
    : params_(params), p0_(anchor_base_point(params)), q0_(mirror_base_point(params)) {
    const LogTriple anchor = principal_logs(p0_);
    consts_[0] = match(Region::R1, p0_, anchor);
    const LogTriple r1 = preferred_logs(Region::R1, p0_);
    consts_[2] = match(Region::R3, p0_, r1);
    consts_[3] = match(Region::R4, p0_, r1);
    consts_[1] = match(Region::R2, q0_, preferred_logs(Region::R4, q0_));
}

std::array<int, 3> BranchFrame::match(Region r, const Point& q, const LogTriple& target) const {
    if (!region_contains(r, q)) throw std::logic_error("matching point outside " + region_name(r));
    LogTriple raw = raw_logs(r, q);
    std::array<int, 3> k{};
    for (std::size_t g = 0; g < 3; ++g) {
        Complex d = (target[g] - raw[g]) / (kPi * kI);
        k[g] = round_checked(d.real(), 1e-9, "branch constant");
    }
    return k;
}

const std::array<int, 3>& BranchFrame::constants(Region r) const {
    switch (r) {
        case Region::R1: return consts_[0];
        case Region::R2: return consts_[1];
        case Region::R3: return consts_[2];
        case Region::R4: return consts_[3];
        default: throw std::invalid_argument("preferred branches exist only on R1..R4");
    }
}

LogTriple BranchFrame::raw_logs(Region r, const Point& p) const {
    const Complex z1 = p.z1, z2 = p.z2, w = p.z12();
    switch (r) {
        case Region::R1: return {plog(z1), plog(z2), plog(z1) + std::log(1.0 - z2 / z1)};
        case Region::R2: return {plog(z1), plog(z2), plog(z2) + std::log(1.0 - z1 / z2)};
        case Region::R3: return {plog(z2) + std::log(1.0 + w / z2), plog(z2), plog(w)};
        case Region::R4: return {plog(z1), plog(z1) + std::log(1.0 - w / z1), plog(-w)};
        default: throw std::invalid_argument("preferred branches exist only on R1..R4");
    }
}

LogTriple BranchFrame::preferred_logs(Region r, const Point& p) const {
    if (!region_contains(r, p)) throw std::invalid_argument("point outside region " + region_name(r));
    LogTriple raw = raw_logs(r, p);
    // The constants are only known once the constructor has matched them;
    // during matching of R1 they are still zero, as they should be.
    const auto& k = (r == Region::R1)   ? consts_[0]
                    : (r == Region::R2) ? consts_[1]
                    : (r == Region::R3) ? consts_[2]
                                        : consts_[3];
    for (std::size_t g = 0; g < 3; ++g) raw[g] += kPi * kI * static_cast<double>(k[g]);
    return raw;
}

Offsets BranchFrame::preferred_offsets(Region r, const Point& p) const {
    return offsets_of(preferred_logs(r, p), p);
}

// ---------------------------------------------------------------------------

ContinuationResult continue_logs(const Curve& c, double t0, double t1, const LogTriple& start,
                                 std::size_t initial_steps) {
    ContinuationResult res;
    res.logs = start;
    Point cur = c(t0);
    res.min_modulus = std::min({std::abs(cur.z1), std::abs(cur.z2), std::abs(cur.z12())});
    if (t1 == t0) return res;
    const double hmax = (t1 - t0) / static_cast<double>(std::max<std::size_t>(initial_steps, 1));
    double h = hmax;
    double t = t0;
    while ((hmax > 0 && t < t1) || (hmax < 0 && t > t1)) {
        double tn = t + h;
        if ((hmax > 0 && tn > t1) || (hmax < 0 && tn < t1)) tn = t1;
        Point nxt = c(tn);
        bool ok = true;
        std::array<Complex, 3> ratio{};
        for (int g = 0; g < 3; ++g) {
            Complex a = cur.gen(g), b = nxt.gen(g);
            if (std::abs(a) == 0.0 || std::abs(b) == 0.0) throw std::runtime_error("continuation hit a singular point");
            ratio[static_cast<std::size_t>(g)] = b / a;
            if (std::abs(std::arg(ratio[static_cast<std::size_t>(g)])) >= kPi / 2) ok = false;
        }
        if (!ok) {
            h /= 2;
            if (std::abs(h) < 1e-13 * std::max(1.0, std::abs(t1 - t0)))
                throw std::runtime_error("continuation step underflow near a singular point");
            continue;
        }
        for (std::size_t g = 0; g < 3; ++g) {
            Complex d = std::log(ratio[g]);
            res.logs[g] += d;
            res.turns[g] += d.imag() / (2 * kPi);
        }
        res.min_modulus = std::min({res.min_modulus, std::abs(nxt.z1), std::abs(nxt.z2), std::abs(nxt.z12())});
        ++res.steps;
        cur = nxt;
        t = tn;
        if (std::abs(h * 2) <= std::abs(hmax)) h *= 2;
    }
    return res;
}

namespace {

std::pair<Complex, Complex> to_region_coords(Region r, const Point& p) {
    switch (r) {
        case Region::R1: return {p.z1, p.z2};
        case Region::R2: return {p.z2, p.z1};
        case Region::R3: return {p.z2, p.z12()};
        case Region::R4: return {p.z1, -p.z12()};
        default: throw std::invalid_argument("region paths exist only on R1..R4");
    }
}

Point from_region_coords(Region r, Complex a, Complex b) {
    switch (r) {
        case Region::R1: return {a, b};
        case Region::R2: return {b, a};
        case Region::R3: return {a + b, a};
        case Region::R4: return {a, a + b};
        default: throw std::invalid_argument("region paths exist only on R1..R4");
    }
}

}  // namespace

Curve region_path(Region r, const Point& from, const Point& to) {
    if (!region_contains(r, from) || !region_contains(r, to))
        throw std::invalid_argument("region path endpoints must lie in " + region_name(r));
    auto [af, bf] = to_region_coords(r, from);
    auto [at, bt] = to_region_coords(r, to);
    const double raf = std::abs(af), rat = std::abs(at), rbf = std::abs(bf), rbt = std::abs(bt);
    const double taf = parg(af), tat = parg(at), tbf = parg(bf), tbt = parg(bt);
    const double rho = 0.5 * std::min(rbf, rbt);
    return [=](double t) -> Point {
        double ra = raf, ta = taf, rb = rbf, tb = tbf;
        if (t <= 1.0 / 3) {
            double s = 3 * t;
            rb = rbf * std::pow(rho / rbf, s);
        } else if (t <= 2.0 / 3) {
            double s = 3 * t - 1;
            ra = raf * std::pow(rat / raf, s);
            ta = taf + (tat - taf) * s;
            tb = tbf + (tbt - tbf) * s;
            rb = rho;
        } else {
            double s = 3 * t - 2;
            ra = rat;
            ta = tat;
            tb = tbt;
            rb = rho * std::pow(rbt / rho, s);
        }
        if (t >= 1.0) return to;
        return from_region_coords(r, std::polar(ra, ta), std::polar(rb, tb));
    };
}

Offsets chain_continuation_offsets(const BranchFrame& frame, Region r, const Point& p) {
    const Point& p0 = frame.anchor();
    LogTriple start = principal_logs(p0);
    if (r == Region::R2) {
        auto leg1 = continue_logs(region_path(Region::R4, p0, frame.mirror_anchor()), 0, 1, start);
        auto leg2 = continue_logs(region_path(Region::R2, frame.mirror_anchor(), p), 0, 1, leg1.logs);
        return offsets_of(leg2.logs, p);
    }
    auto leg = continue_logs(region_path(r, p0, p), 0, 1, start);
    return offsets_of(leg.logs, p);
}

// ---------------------------------------------------------------------------

Scalar phase(const Rational& q, Mode mode) { return Scalar::root_of_unity(q, mode); }

Exps frac_exps(const Exps& e) { return {e[0].frac(), e[1].frac(), e[2].frac()}; }

namespace {

Exp3 floor_exps(const Exps& e) {
    return {static_cast<int>(e[0].floor().to_int()), static_cast<int>(e[1].floor().to_int()),
            static_cast<int>(e[2].floor().to_int())};
}

Rational dot(const Exps& e, const std::array<int, 3>& n) {
    return e[0] * Rational(n[0]) + e[1] * Rational(n[1]) + e[2] * Rational(n[2]);
}

std::string exps_str(const Exps& e) { return "(" + e[0].str() + "," + e[1].str() + "," + e[2].str() + ")"; }

}  // namespace

GFunction GFunction::monomial(const Scalar& c, const Exps& e, Mode mode) {
    GFunction g(mode);
    g.add(Scalar::convert(c, mode), e, LaurentElem::constant(Scalar::one(mode)));
    return g;
}

void GFunction::add(const Scalar& c, const Exps& e, const LaurentElem& dressing, std::array<int, 3> branch) {
    if (c.mode() != mode_ || dressing.mode() != mode_) throw std::logic_error("GFunction term has the wrong mode");
    terms_.push_back(GTerm{BranchedMonomial{c, e, branch}, dressing});
}

GFunction GFunction::scaled(const Scalar& c) const {
    GFunction r = *this;
    for (auto& t : r.terms_) t.mono.coeff *= c;
    return r;
}

GFunction operator+(const GFunction& a, const GFunction& b) {
    if (a.mode() != b.mode()) throw std::logic_error("adding GFunctions of different modes");
    GFunction r = a;
    for (const auto& t : b.terms_) r.terms_.push_back(t);
    return r;
}

GFunction GFunction::canonical() const {
    std::map<Exps, LaurentElem> cls;
    for (const auto& t : terms_) {
        const auto& m = t.mono;
        Scalar c = m.coeff * phase(dot(m.exps, m.branch), mode_);
        LaurentElem d = t.dressing.shifted(floor_exps(m.exps)).scaled(c);
        Exps f = frac_exps(m.exps);
        auto it = cls.find(f);
        if (it == cls.end())
            cls.emplace(f, d);
        else
            it->second = it->second + d;
    }
    GFunction r(mode_);
    r.colors = colors;
    for (const auto& [f, d] : cls) {
        if (d.is_zero()) continue;
        r.add(Scalar::one(mode_), f, d.normalized());
    }
    return r;
}

std::vector<Exps> GFunction::classes() const {
    std::vector<Exps> out;
    const GFunction c = canonical();
    for (const auto& t : c.terms()) out.push_back(t.mono.exps);
    return out;
}

bool GFunction::classes_distinct() const {
    std::vector<Exps> seen;
    for (const auto& t : terms_) {
        Exps f = frac_exps(t.mono.exps);
        if (std::find(seen.begin(), seen.end(), f) != seen.end()) return false;
        seen.push_back(f);
    }
    return true;
}

bool GFunction::is_zero() const { return canonical().terms().empty(); }

// ---------------------------------------------------------------------------

void LocalExpansion::add(const Scalar& c, const Exps& e, const Rational& turns, const LaurentElem& dressing) {
    if (c.mode() != mode_ || dressing.mode() != mode_) throw std::logic_error("local expansion term has the wrong mode");
    LaurentElem d = dressing.shifted(floor_exps(e)).scaled(c * phase(turns, mode_));
    Exps f = frac_exps(e);
    auto it = classes_.find(f);
    if (it == classes_.end())
        classes_.emplace(f, d);
    else
        it->second = it->second + d;
}

void LocalExpansion::add_expansion(const LocalExpansion& other, const Scalar& c) {
    if (other.mode_ != mode_) throw std::logic_error("local expansions of different modes");
    for (const auto& [f, d] : other.classes_) add(c, f, Rational(0), d);
}

Complex LocalExpansion::evaluate() const {
    LogTriple l = principal_logs(p_);
    Complex total(0.0, 0.0);
    for (const auto& [f, d] : classes_) {
        Complex e = f[0].to_double() * l[0] + f[1].to_double() * l[1] + f[2].to_double() * l[2];
        total += std::exp(e) * d.evaluate(p_.z1, p_.z2);
    }
    return total;
}

bool LocalExpansion::equals(const LocalExpansion& other, double tol) const {
    if (other.mode_ != mode_) throw std::logic_error("comparing local expansions of different modes");
    std::vector<Exps> keys;
    for (const auto& kv : classes_) keys.push_back(kv.first);
    for (const auto& kv : other.classes_)
        if (!classes_.count(kv.first)) keys.push_back(kv.first);
    LogTriple l = principal_logs(p_);
    for (const auto& f : keys) {
        LaurentElem a = classes_.count(f) ? classes_.at(f) : LaurentElem(mode_);
        LaurentElem b = other.classes_.count(f) ? other.classes_.at(f) : LaurentElem(mode_);
        if (mode_ == Mode::Exact) {
            if (!(a - b).is_zero()) return false;
        } else {
            Complex m = std::exp(f[0].to_double() * l[0] + f[1].to_double() * l[1] + f[2].to_double() * l[2]);
            Complex va = m * a.evaluate(p_.z1, p_.z2), vb = m * b.evaluate(p_.z1, p_.z2);
            if (std::abs(va - vb) > tol * std::max({1.0, std::abs(va), std::abs(vb)})) return false;
        }
    }
    return true;
}

LocalExpansion LocalExpansion::relabeled(const SignedPerm& perm, const Point& p) const {
    perm.validate();
    auto img = perm.apply(p.z1, p.z2);
    for (int g = 0; g < 3; ++g) {
        Complex here = p_.gen(g);
        if (std::abs(img[static_cast<std::size_t>(g)] - here) > 1e-9 * std::max(1.0, std::abs(here)))
            throw std::invalid_argument("relabeling point does not correspond to the expansion point");
    }
    LocalExpansion out(mode_, p);
    for (const auto& [f, d] : classes_) {
        Exps nf{Rational(0), Rational(0), Rational(0)};
        Rational turns(0);
        for (std::size_t g = 0; g < 3; ++g) {
            auto t = static_cast<std::size_t>(perm.target[g]);
            nf[t] = f[g];
            turns += f[g] * sign_turns(perm.sign[g], p.gen(perm.target[g]));
        }
        out.add(Scalar::one(mode_), nf, turns, d.substitute(perm));
    }
    return out;
}

std::string LocalExpansion::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, d] : classes_) {
        if (!first) os << " + ";
        first = false;
        os << "e" << exps_str(f) << "*[" << d.str() << "]";
    }
    if (first) os << "0";
    return os.str();
}

LocalExpansion expansion_with_offsets(const GFunction& g, const Point& p, const Offsets& n) {
    LocalExpansion loc(g.mode(), p);
    for (const auto& t : g.terms()) {
        const auto& m = t.mono;
        std::array<int, 3> k{m.branch[0] + n[0], m.branch[1] + n[1], m.branch[2] + n[2]};
        loc.add(m.coeff, m.exps, dot(m.exps, k), t.dressing);
    }
    return loc;
}

LocalExpansion local_expansion(const BranchFrame& frame, const GFunction& g, Region r, const Point& p) {
    return expansion_with_offsets(g, p, frame.preferred_offsets(r, p));
}

Complex preferred_branch_eval(const BranchFrame& frame, const GFunction& g, Region r, const Point& p) {
    return local_expansion(frame, g, r, p).evaluate();
}

GFunction anchor_from_local(const BranchFrame& frame, const LocalExpansion& loc, Region r) {
    Offsets n = frame.preferred_offsets(r, loc.point());
    GFunction g(loc.mode());
    for (const auto& [f, d] : loc.classes()) {
        if (d.is_zero()) continue;
        g.add(Scalar::one(loc.mode()), f, d.scaled(phase(-dot(f, n), loc.mode())).normalized());
    }
    return g;
}

// ---------------------------------------------------------------------------

SignedVar signed_var_of(int c1, int c2) {
    if (c1 == 1 && c2 == 0) return {0, 1};
    if (c1 == -1 && c2 == 0) return {0, -1};
    if (c1 == 0 && c2 == 1) return {1, 1};
    if (c1 == 0 && c2 == -1) return {1, -1};
    if (c1 == 1 && c2 == -1) return {2, 1};
    if (c1 == -1 && c2 == 1) return {2, -1};
    throw std::invalid_argument("linear form is not a signed generator");
}

LocalExpansion natural_expansion(const std::vector<NaturalTerm>& terms, const Point& p, Mode mode) {
    LocalExpansion loc(mode, p);
    for (const auto& t : terms) {
        if (t.big.gen == t.small.gen || t.big.gen == t.combo.gen || t.small.gen == t.combo.gen)
            throw std::invalid_argument("natural term needs three distinct generators");
        const Complex b = t.big.value(p), s = t.small.value(p), c = t.combo.value(p);
        const double scale = std::max({1.0, std::abs(b), std::abs(s)});
        if (std::abs(c - (b + s)) > 1e-9 * scale && std::abs(c - (b - s)) > 1e-9 * scale)
            throw std::invalid_argument("natural term combination is not big +- small");
        // plog(big) + Log(combo / big) = plog(combo) + 2 pi i m
        Complex lhs = plog(b) + std::log(c / b);
        int m = round_checked(((lhs - plog(c)) / (2 * kPi * kI)).real(), 1e-6, "natural branch offset");
        Exps e{Rational(0), Rational(0), Rational(0)};
        e[static_cast<std::size_t>(t.big.gen)] = t.eb;
        e[static_cast<std::size_t>(t.small.gen)] = t.es;
        e[static_cast<std::size_t>(t.combo.gen)] = t.ec;
        Rational turns = t.eb * sign_turns(t.big.sign, p.gen(t.big.gen)) +
                         t.es * sign_turns(t.small.sign, p.gen(t.small.gen)) +
                         t.ec * (sign_turns(t.combo.sign, p.gen(t.combo.gen)) + Rational(m));
        loc.add(Scalar::convert(t.coeff, mode), e, turns, t.dressing);
    }
    return loc;
}

// ---------------------------------------------------------------------------

namespace {

struct IotaPlan {
    Var small, large;
    // Each generator is either a pure power of one variable or (large + c*small).
    struct GenImage {
        bool pure;
        Var var;
        Rational c;
    };
    std::array<GenImage, 3> img;
};

IotaPlan iota_plan(Iota which) {
    switch (which) {
        case Iota::I12:
            return {X2, X1, {{{true, X1, 0}, {true, X2, 0}, {false, X1, Rational(-1)}}}};
        case Iota::I21:
            return {X1, X2, {{{true, X1, 0}, {true, X2, 0}, {false, X2, Rational(-1)}}}};
        case Iota::I20:
            return {X0, X2, {{{false, X2, Rational(1)}, {true, X2, 0}, {true, X0, 0}}}};
        default: throw std::invalid_argument("iota_g supports 12, 21 and 20");
    }
}

}  // namespace

Series iota_g(const BranchFrame& frame, Iota which, const GFunction& g, std::int64_t cutoff) {
    const Mode mode = g.mode();
    const IotaPlan plan = iota_plan(which);
    Region r = which == Iota::I12 ? Region::R1 : (which == Iota::I21 ? Region::R2 : Region::R3);
    const auto& k = frame.constants(r);
    Series total(mode, Direction{plan.small, plan.large}, Rational(cutoff));
    const GFunction gc = g.canonical();
    for (const auto& t : gc.terms()) {
        const Exps& e = t.mono.exps;
        const Scalar& pre = t.mono.coeff;
        for (const auto& [d, dc] : t.dressing.terms()) {
            // Exponents per generator: branched part plus integer dressing part.
            std::array<Rational, 3> ex{e[0] + Rational(d[0]), e[1] + Rational(d[1]), e[2] + Rational(d[2])};
            ExponentVector pure;
            std::vector<std::pair<std::size_t, Rational>> binoms;
            // Constant i pi k_g shifts of the region logs.
            Rational turns = (ex[0] * Rational(k[0]) + ex[1] * Rational(k[1]) + ex[2] * Rational(k[2])) / Rational(2);
            Scalar c = pre * dc * phase(turns, mode);
            for (std::size_t gi = 0; gi < 3; ++gi) {
                if (ex[gi].is_zero()) continue;
                const auto& im = plan.img[gi];
                if (im.pure) {
                    pure = pure + ExponentVector{{im.var, ex[gi]}};
                } else {
                    binoms.emplace_back(gi, ex[gi]);
                }
            }
            Rational smin = pure.get(plan.small);
            std::int64_t order = cutoff;
            if (smin < Rational(cutoff)) order = (Rational(cutoff) - smin).floor().to_int() + 1;
            Series s = Series::monomial(pure, c);
            s.set_direction(Direction{plan.small, plan.large});
            for (const auto& [gi, n] : binoms)
                s = s * binom_expand(plan.img[gi].var, plan.small, n, plan.img[gi].c, order, mode);
            total = total + s.truncated(Rational(cutoff));
        }
    }
    return total.truncated(Rational(cutoff));
}

Complex sum_series(const Series& s, const std::map<Var, Complex>& logs) {
    Complex total(0.0, 0.0);
    for (const auto& [ev, c] : s.terms()) {
        Complex e(0.0, 0.0);
        for (const auto& [v, q] : ev.entries()) e += q.to_double() * logs.at(v);
        total += c.approx() * std::exp(e);
    }
    return total;
}

GFunction swap_variables(const BranchFrame& frame, const GFunction& g) {
    LocalExpansion at_q = local_expansion(frame, g, Region::R2, frame.mirror_anchor());
    GFunction out = anchor_from_local(frame, at_q.relabeled(SignedPerm::swap12(), frame.anchor()), Region::R1);
    out.colors = {g.colors[1], g.colors[0], g.colors[2], g.colors[3]};
    return out;
}

GFunction substitute_shift(const BranchFrame& frame, const GFunction& g) {
    Point d = shift_match_point(frame.params());
    Point q{d.z1 - d.z2, -d.z2};
    LocalExpansion at_q = local_expansion(frame, g, Region::R1, q);
    GFunction out = anchor_from_local(frame, at_q.relabeled(SignedPerm::shift(), d), Region::R1);
    out.colors = {g.colors[0], g.colors[2], g.colors[1], g.colors[3]};
    return out;
}

}  // namespace s3v
