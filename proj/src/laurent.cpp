#include "s3v/laurent.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

namespace s3v {

namespace {

using VPoly = std::map<int, Scalar>;  // polynomial in v

bool scalar_zero(const Scalar& c, double tol) { return c.is_exact() ? c.is_zero() : c.is_zero(tol); }

// Linear form of u, v, w in (z1, z2) coordinates.
std::array<int, 2> gen_form(int g) {
    switch (g) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        default: return {1, -1};
    }
}

}  // namespace

SignedPerm SignedPerm::swap12() { return SignedPerm{{1, 0, 2}, {1, 1, -1}}; }
SignedPerm SignedPerm::shift() { return SignedPerm{{2, 1, 0}, {1, -1, 1}}; }

void SignedPerm::validate() const {
    std::array<std::array<int, 2>, 3> img;
    for (int g = 0; g < 3; ++g) {
        auto f = gen_form(target[static_cast<std::size_t>(g)]);
        int s = sign[static_cast<std::size_t>(g)];
        if (s != 1 && s != -1) throw std::invalid_argument("signed permutation sign must be +-1");
        img[static_cast<std::size_t>(g)] = {s * f[0], s * f[1]};
    }
    if (img[0][0] - img[1][0] != img[2][0] || img[0][1] - img[1][1] != img[2][1]) {
        throw std::invalid_argument("signed permutation does not preserve w = u - v");
    }
}

SignedPerm SignedPerm::then(const SignedPerm& next) const {
    SignedPerm r;
    for (std::size_t g = 0; g < 3; ++g) {
        auto t1 = static_cast<std::size_t>(target[g]);
        r.target[g] = next.target[t1];
        r.sign[g] = sign[g] * next.sign[t1];
    }
    return r;
}

std::array<std::complex<double>, 3> SignedPerm::apply(std::complex<double> z1, std::complex<double> z2) const {
    std::array<std::complex<double>, 3> gens{z1, z2, z1 - z2};
    std::array<std::complex<double>, 3> out;
    for (std::size_t g = 0; g < 3; ++g) out[g] = static_cast<double>(sign[g]) * gens[static_cast<std::size_t>(target[g])];
    return out;
}

LaurentElem LaurentElem::constant(const Scalar& c) {
    LaurentElem e(c.mode());
    e.add_term({0, 0, 0}, c);
    return e;
}

LaurentElem LaurentElem::monomial(const Exp3& x, const Scalar& c) {
    LaurentElem e(c.mode());
    e.add_term(x, c);
    return e;
}

void LaurentElem::add_term(const Exp3& e, const Scalar& c) {
    if (c.mode() != mode_) throw std::logic_error("laurent element term has the wrong scalar mode");
    if (c.is_exact() && c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_exact() && it->second.is_zero()) terms_.erase(it);
}

LaurentElem LaurentElem::operator-() const { return scaled(-Scalar::one(mode_)); }

LaurentElem LaurentElem::scaled(const Scalar& c) const {
    LaurentElem r(mode_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

LaurentElem LaurentElem::shifted(const Exp3& s) const {
    LaurentElem r(mode_);
    for (const auto& [e, v] : terms_) r.add_term({e[0] + s[0], e[1] + s[1], e[2] + s[2]}, v);
    return r;
}

LaurentElem operator+(const LaurentElem& a, const LaurentElem& b) {
    if (a.mode_ != b.mode_) throw std::logic_error("laurent arithmetic mixes modes");
    LaurentElem r = a;
    for (const auto& [e, v] : b.terms_) r.add_term(e, v);
    return r;
}

LaurentElem operator-(const LaurentElem& a, const LaurentElem& b) { return a + (-b); }

LaurentElem operator*(const LaurentElem& a, const LaurentElem& b) {
    if (a.mode_ != b.mode_) throw std::logic_error("laurent arithmetic mixes modes");
    LaurentElem r(a.mode_);
    for (const auto& [ea, va] : a.terms_) {
        for (const auto& [eb, vb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, va * vb);
    }
    return r;
}

LaurentElem LaurentElem::substitute(const SignedPerm& p) const {
    p.validate();
    LaurentElem r(mode_);
    for (const auto& [e, v] : terms_) {
        Exp3 ne{0, 0, 0};
        int sign = 1;
        for (std::size_t g = 0; g < 3; ++g) {
            ne[static_cast<std::size_t>(p.target[g])] += e[g];
            if (p.sign[g] < 0 && (e[g] % 2 != 0)) sign = -sign;
        }
        r.add_term(ne, sign > 0 ? v : -v);
    }
    return r;
}

std::complex<double> LaurentElem::evaluate(std::complex<double> z1, std::complex<double> z2) const {
    std::complex<double> w = z1 - z2;
    std::complex<double> s(0.0, 0.0);
    for (const auto& [e, v] : terms_) {
        s += v.approx() * std::pow(z1, e[0]) * std::pow(z2, e[1]) * std::pow(w, e[2]);
    }
    return s;
}

Exp3 LaurentElem::min_exponents() const {
    Exp3 m{0, 0, 0};
    for (const auto& [e, v] : terms_) {
        for (std::size_t i = 0; i < 3; ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

std::map<std::pair<int, int>, Scalar> LaurentElem::cleared_poly(const Exp3& shift) const {
    std::map<std::pair<int, int>, Scalar> out;
    auto add = [&](int p, int q, const Scalar& c) {
        auto it = out.find({p, q});
        if (it == out.end()) out.emplace(std::make_pair(p, q), c);
        else it->second += c;
    };
    for (const auto& [e, v] : terms_) {
        int i = e[0] + shift[0], j = e[1] + shift[1], k = e[2] + shift[2];
        if (i < 0 || j < 0 || k < 0) throw std::invalid_argument("shift does not clear denominators");
        // (u - v)^k
        Rational binom(1);
        for (int m = 0; m <= k; ++m) {
            if (m > 0) binom = binom * Rational(k - m + 1) / Rational(m);
            Rational c = (m % 2 == 0) ? binom : -binom;
            add(i + k - m, j + m, v * Scalar::from_rational(c, mode_));
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_exact() && it->second.is_zero()) it = out.erase(it);
        else ++it;
    }
    return out;
}

bool LaurentElem::is_zero() const {
    if (terms_.empty()) return true;
    Exp3 m = min_exponents();
    auto p = cleared_poly({-m[0], -m[1], -m[2]});
    for (const auto& [e, c] : p) {
        if (!scalar_zero(c, 1e-9)) return false;
    }
    return true;
}

LaurentElem LaurentElem::normalized() const {
    if (is_zero()) return LaurentElem(mode_);
    Exp3 m = min_exponents();
    Exp3 s{-m[0], -m[1], -m[2]};
    auto poly = cleared_poly(s);
    // Pull common factors of u and v.
    int pu = INT32_MAX, pv = INT32_MAX;
    for (const auto& [e, c] : poly) {
        pu = std::min(pu, e.first);
        pv = std::min(pv, e.second);
    }
    // Divide by (u - v) while possible and while w remains in the denominator
    // or a w factor can be made explicit.
    auto to_upoly = [&](const std::map<std::pair<int, int>, Scalar>& p) {
        std::map<int, VPoly> up;
        for (const auto& [e, c] : p) up[e.first][e.second] = c;
        return up;
    };
    int wpow = -s[2];
    std::map<std::pair<int, int>, Scalar> cur;
    for (const auto& [e, c] : poly) cur.emplace(std::make_pair(e.first - pu, e.second - pv), c);
    while (true) {
        auto up = to_upoly(cur);
        int deg = up.empty() ? 0 : up.rbegin()->first;
        if (deg == 0) break;
        // synthetic division by (u - v): b_{k-1} = a_k + v b_k
        std::map<int, VPoly> b;
        VPoly carry;
        for (int k = deg; k >= 1; --k) {
            VPoly ak = up.count(k) ? up[k] : VPoly{};
            VPoly bk = ak;
            for (const auto& [q, c] : carry) {
                auto it = bk.find(q);
                if (it == bk.end()) bk.emplace(q, c);
                else it->second += c;
            }
            b[k - 1] = bk;
            carry.clear();
            for (const auto& [q, c] : bk) carry.emplace(q + 1, c);
        }
        VPoly rem = up.count(0) ? up[0] : VPoly{};
        for (const auto& [q, c] : carry) {
            auto it = rem.find(q);
            if (it == rem.end()) rem.emplace(q, c);
            else it->second += c;
        }
        bool divisible = true;
        for (const auto& [q, c] : rem) {
            if (!scalar_zero(c, 1e-12)) divisible = false;
        }
        if (!divisible) break;
        std::map<std::pair<int, int>, Scalar> next;
        for (const auto& [k, vp] : b) {
            for (const auto& [q, c] : vp) {
                if (!(c.is_exact() && c.is_zero())) next.emplace(std::make_pair(k, q), c);
            }
        }
        cur = next;
        ++wpow;
    }
    LaurentElem r(mode_);
    for (const auto& [e, c] : cur) r.add_term({e.first + pu - s[0], e.second + pv - s[1], wpow}, c);
    return r;
}

std::optional<Scalar> LaurentElem::proportional_to(const LaurentElem& b, double tol) const {
    if (b.is_zero()) {
        if (is_zero()) return Scalar::zero(mode_);
        return std::nullopt;
    }
    Exp3 ma = min_exponents(), mb = b.min_exponents();
    Exp3 s{-std::min(ma[0], mb[0]), -std::min(ma[1], mb[1]), -std::min(ma[2], mb[2])};
    auto pa = cleared_poly(s);
    auto pb = b.cleared_poly(s);
    std::optional<Scalar> ratio;
    for (const auto& [e, c] : pb) {
        if (!scalar_zero(c, tol)) {
            auto it = pa.find(e);
            ratio = (it == pa.end() ? Scalar::zero(mode_) : it->second) / c;
            break;
        }
    }
    if (!ratio) return std::nullopt;
    std::map<std::pair<int, int>, bool> keys;
    for (const auto& [e, c] : pa) keys[e] = true;
    for (const auto& [e, c] : pb) keys[e] = true;
    for (const auto& [e, unused] : keys) {
        Scalar x = pa.count(e) ? pa.at(e) : Scalar::zero(mode_);
        Scalar y = pb.count(e) ? pb.at(e) : Scalar::zero(mode_);
        if (!x.equals(y * *ratio, tol)) return std::nullopt;
    }
    return ratio;
}

bool LaurentElem::equals(const LaurentElem& b, double tol) const {
    if (mode_ != b.mode_) throw std::logic_error("laurent comparison mixes modes");
    LaurentElem d = *this - b;
    if (d.terms_.empty()) return true;
    Exp3 m = d.min_exponents();
    auto p = d.cleared_poly({-m[0], -m[1], -m[2]});
    for (const auto& [e, c] : p) {
        if (!scalar_zero(c, tol)) return false;
    }
    return true;
}

RationalFn LaurentElem::to_rational_fn() const {
    Exp3 m = min_exponents();
    RationalFn f;
    f.mode = mode_;
    f.r = -m[2];
    f.s = -m[0];
    f.t = -m[1];
    for (const auto& [e, v] : terms_) {
        std::array<int, 3> key{e[2] - m[2], e[0] - m[0], e[1] - m[1]};
        auto it = f.numerator.find(key);
        if (it == f.numerator.end()) f.numerator.emplace(key, v);
        else it->second += v;
    }
    return f;
}

int LaurentElem::degree() const {
    int d = 0;
    for (const auto& [e, v] : terms_) {
        for (int x : e) d = std::max(d, std::abs(x));
    }
    return d;
}

std::string LaurentElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    static const char* names[3] = {"z1", "z2", "(z1-z2)"};
    for (const auto& [e, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        for (std::size_t i = 0; i < 3; ++i) {
            if (e[i] != 0) os << "*" << names[i] << "^" << e[i];
        }
    }
    return os.str();
}

std::int64_t LaurentElem::split_rational(std::vector<LaurentElem>& comps) const {
    if (mode_ != Mode::Exact) throw std::logic_error("rational split needs exact coefficients");
    std::int64_t n = 1;
    for (const auto& [e, v] : terms_) n = lcm64(n, v.exact().order());
    Cyclotomic probe = Cyclotomic::zeta(std::max<std::int64_t>(n, 1)).promote(n);
    std::size_t width = std::max<std::size_t>(1, probe.order() == 1 ? 1 : static_cast<std::size_t>(euler_phi(probe.order())));
    n = probe.order() == 1 ? 1 : probe.order();
    comps.assign(width, LaurentElem(Mode::Exact));
    for (const auto& [e, v] : terms_) {
        Cyclotomic c = v.exact().promote(n);
        for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
            if (!c.coeffs()[i].is_zero()) comps[i].add_term(e, Scalar(c.coeffs()[i]));
        }
    }
    return n;
}

std::string LaurentElem::key() const {
    LaurentElem n = normalized();
    std::ostringstream os;
    for (const auto& [e, v] : n.terms_) os << e[0] << "," << e[1] << "," << e[2] << ":" << v.str() << ";";
    return os.str();
}

}  // namespace s3v
