#include "s3v/cyclotomic.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace s3v {

namespace {

std::atomic<std::int64_t> g_max_order{1024};

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
}

// Divides a by monic integer polynomial b in place, returning the quotient.
IntPoly exact_divide(IntPoly a, const IntPoly& b) {
    std::size_t db = b.size() - 1;
    if (a.size() < b.size()) return {0};
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        std::int64_t c = a[i];
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    for (std::size_t i = 0; i < db; ++i) {
        if (a[i] != 0) throw std::logic_error("cyclotomic division left a remainder");
    }
    return q;
}

std::int64_t normalized_order(std::int64_t n) { return (n % 4 == 2) ? n / 2 : n; }

void check_order(std::int64_t n) {
    if (n < 1) throw std::domain_error("cyclotomic order must be positive");
    if (n > g_max_order.load()) {
        throw std::length_error("cyclotomic order " + std::to_string(n) + " exceeds configured maximum " +
                                std::to_string(g_max_order.load()));
    }
}

// Reduces a polynomial in zeta_N (any length) to the canonical length phi(N).
QPoly reduce_mod_phi(std::int64_t n, QPoly p) {
    const IntPoly& phi = cyclotomic_polynomial(n);
    std::size_t d = phi.size() - 1;
    // zeta^N = 1 first, so that the division below stays short.
    if (p.size() > static_cast<std::size_t>(n)) {
        for (std::size_t i = static_cast<std::size_t>(n); i < p.size(); ++i) {
            if (!p[i].is_zero()) p[i % n] += p[i];
        }
        p.resize(static_cast<std::size_t>(n));
    }
    for (std::size_t i = p.size(); i-- > d;) {
        if (p[i].is_zero()) continue;
        Rational c = p[i];
        for (std::size_t j = 0; j <= d; ++j) {
            if (phi[j] != 0) p[i - d + j] -= c * Rational(phi[j]);
        }
    }
    p.resize(d, Rational(0));
    return p;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

bool poly_is_zero(const QPoly& p) {
    for (const auto& c : p) {
        if (!c.is_zero()) return false;
    }
    return true;
}

// Polynomial division with remainder over Q.
void poly_divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    trim(a);
    QPoly bb = b;
    trim(bb);
    std::size_t db = bb.size() - 1;
    if (a.size() < bb.size()) {
        q = {Rational(0)};
        r = a;
        return;
    }
    q.assign(a.size() - db, Rational(0));
    Rational lead_inv = bb.back().inv();
    for (std::size_t i = a.size(); i-- > db;) {
        if (a[i].is_zero()) continue;
        Rational c = a[i] * lead_inv;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * bb[j];
    }
    a.resize(std::max<std::size_t>(db, 1), Rational(0));
    trim(a);
    r = a;
}

}  // namespace

std::int64_t max_cyclotomic_order() { return g_max_order.load(); }
void set_max_cyclotomic_order(std::int64_t n) {
    if (n < 1) throw std::domain_error("maximum cyclotomic order must be positive");
    g_max_order.store(n);
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

const IntPoly& cyclotomic_polynomial(std::int64_t n) {
    check_order(n);
    static std::mutex mu;
    static std::map<std::int64_t, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(std::int64_t order, std::vector<Rational> reduced, bool) : order_(order), c_(std::move(reduced)) {
    demote();
}

void Cyclotomic::demote() {
    if (order_ == 1) return;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) return;
    }
    Rational c0 = c_.empty() ? Rational(0) : c_[0];
    order_ = 1;
    c_ = {c0};
}

Cyclotomic Cyclotomic::from_coeffs(std::int64_t order, const std::vector<Rational>& coeffs) {
    check_order(order);
    std::int64_t n = order;
    QPoly p = coeffs;
    if (n % 4 == 2) {
        // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
        std::int64_t m = n / 2;
        std::int64_t step = (m + 1) / 2;
        QPoly q(static_cast<std::size_t>(m), Rational(0));
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k].is_zero()) continue;
            auto kk = static_cast<std::int64_t>(k);
            std::int64_t idx = ((kk % n) * step) % m;
            if (kk % 2 == 0) q[static_cast<std::size_t>(idx)] += p[k];
            else q[static_cast<std::size_t>(idx)] -= p[k];
        }
        n = m;
        p = std::move(q);
    }
    if (p.empty()) p.push_back(Rational(0));
    return Cyclotomic(n, reduce_mod_phi(n, std::move(p)), true);
}

Cyclotomic Cyclotomic::zeta(std::int64_t order, std::int64_t k) {
    check_order(order);
    std::int64_t e = ((k % order) + order) % order;
    QPoly p(static_cast<std::size_t>(e) + 1, Rational(0));
    p[static_cast<std::size_t>(e)] = Rational(1);
    return from_coeffs(order, p);
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& q) {
    Rational f = q.frac();
    if (f.is_zero()) return Cyclotomic(1);
    if (f.is_big()) throw std::length_error("root of unity order too large");
    return zeta(f.den(), f.num());
}

bool Cyclotomic::is_zero() const { return poly_is_zero(c_); }

bool Cyclotomic::is_one() const { return order_ == 1 && c_[0] == Rational(1); }

Rational Cyclotomic::rational_value() const {
    if (order_ != 1) throw std::domain_error("cyclotomic number is not rational: " + str());
    return c_[0];
}

Cyclotomic Cyclotomic::promote(std::int64_t multiple) const {
    std::int64_t m = normalized_order(multiple);
    if (m == order_) return *this;
    if (m % order_ != 0) throw std::invalid_argument("promotion target is not a multiple of the order");
    check_order(m);
    std::int64_t step = m / order_;
    QPoly p(static_cast<std::size_t>((c_.size() - 1) * step) + 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) p[k * static_cast<std::size_t>(step)] = c_[k];
    Cyclotomic r;
    r.order_ = m;
    r.c_ = reduce_mod_phi(m, std::move(p));
    return r;  // deliberately not demoted: callers need the promoted layout
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

namespace {

template <typename Op>
Cyclotomic add_like(const Cyclotomic& a, const Cyclotomic& b, Op op) {
    if (a.order() == 1 && b.order() == 1) return Cyclotomic(op(a.coeffs()[0], b.coeffs()[0]));
    std::int64_t l = lcm64(a.order(), b.order());
    Cyclotomic pa = a.promote(l);
    Cyclotomic pb = b.promote(l);
    std::vector<Rational> c(pa.coeffs().size(), Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = op(pa.coeffs()[i], pb.coeffs()[i]);
    return Cyclotomic::from_coeffs(l, c);
}

}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    return add_like(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    return add_like(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == 1 && b.order_ == 1) return Cyclotomic(a.c_[0] * b.c_[0]);
    if (a.order_ == 1 || b.order_ == 1) {
        const Cyclotomic& s = a.order_ == 1 ? a : b;
        const Cyclotomic& v = a.order_ == 1 ? b : a;
        Rational k = s.c_[0];
        if (k.is_zero()) return Cyclotomic();
        Cyclotomic r = v;
        for (auto& c : r.c_) c *= k;
        return r;
    }
    std::int64_t l = lcm64(a.order_, b.order_);
    Cyclotomic pa = a.promote(l);
    Cyclotomic pb = b.promote(l);
    return Cyclotomic(l, reduce_mod_phi(l, poly_mul(pa.c_, pb.c_)), true);
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    return (a - b).is_zero();
}

Cyclotomic Cyclotomic::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
    if (order_ == 1) return Cyclotomic(c_[0].inv());
    // Extended Euclid: find s with s*a + t*phi = 1.
    const IntPoly& phi_i = cyclotomic_polynomial(order_);
    QPoly phi(phi_i.begin(), phi_i.end());
    QPoly r0 = phi, r1 = c_;
    trim(r1);
    QPoly s0 = {Rational(0)}, s1 = {Rational(1)};
    while (!(r1.size() == 1 && r1[0].is_zero())) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant gcd
    Rational g = r0[0];
    for (auto& c : s0) c /= g;
    return Cyclotomic(order_, reduce_mod_phi(order_, s0), true);
}

Cyclotomic Cyclotomic::conj() const {
    QPoly p(static_cast<std::size_t>(order_), Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        std::size_t idx = (static_cast<std::size_t>(order_) - k) % static_cast<std::size_t>(order_);
        p[idx] += c_[k];
    }
    return Cyclotomic(order_, reduce_mod_phi(order_, std::move(p)), true);
}

Cyclotomic Cyclotomic::pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    Cyclotomic result(1), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> z(0.0, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(order_);
        z += c_[k].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string Cyclotomic::str() const {
    if (order_ == 1) return c_[0].str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[k].str() << ")";
        if (k > 0) os << "*z" << order_ << "^" << k;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace s3v
