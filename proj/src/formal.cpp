#include "s3v/formal.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace s3v {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

namespace {

struct VarRegistry {
    std::mutex mu;
    std::vector<std::string> names{"x0", "x1", "x2", "x"};
    std::unordered_map<std::string, Var> ids{{"x0", 0}, {"x1", 1}, {"x2", 2}, {"x", 3}};
};

VarRegistry& registry() {
    static VarRegistry r;
    return r;
}

}  // namespace

Var var_id(const std::string& name) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) return it->second;
    Var v = static_cast<Var>(r.names.size());
    r.names.push_back(name);
    r.ids.emplace(name, v);
    return v;
}

const std::string& var_name(Var v) {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    if (v < 0 || static_cast<std::size_t>(v) >= r.names.size()) throw std::out_of_range("unknown variable id");
    return r.names[static_cast<std::size_t>(v)];
}

// ---------------------------------------------------------------------------
// ExponentVector
// ---------------------------------------------------------------------------

ExponentVector::ExponentVector(std::initializer_list<std::pair<Var, Rational>> entries) {
    for (const auto& [v, e] : entries) set(v, get(v) + e);
}

Rational ExponentVector::get(Var v) const {
    for (const auto& [w, e] : e_) {
        if (w == v) return e;
        if (w > v) break;
    }
    return Rational(0);
}

void ExponentVector::set(Var v, const Rational& e) {
    auto it = std::lower_bound(e_.begin(), e_.end(), v, [](const auto& p, Var x) { return p.first < x; });
    if (it != e_.end() && it->first == v) {
        if (e.is_zero()) e_.erase(it);
        else it->second = e;
    } else if (!e.is_zero()) {
        e_.insert(it, {v, e});
    }
}

ExponentVector ExponentVector::without(Var v) const {
    ExponentVector r = *this;
    r.set(v, Rational(0));
    return r;
}

std::string ExponentVector::str() const {
    if (e_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, e] : e_) {
        if (!first) os << "*";
        first = false;
        os << var_name(v);
        if (e != Rational(1)) os << "^" << (e.is_integer() ? e.str() : "(" + e.str() + ")");
    }
    return os.str();
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r = a;
    for (const auto& [v, e] : b.e_) r.set(v, r.get(v) + e);
    return r;
}

bool operator<(const ExponentVector& a, const ExponentVector& b) {
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                                        [](const auto& x, const auto& y) {
                                            if (x.first != y.first) return x.first < y.first;
                                            return x.second < y.second;
                                        });
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

namespace {

std::optional<Rational> min_valid(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

Direction merge_direction(const Series& a, const Series& b) {
    if (a.direction().none()) return b.direction();
    if (b.direction().none()) return a.direction();
    if (a.direction() == b.direction()) return a.direction();
    throw std::invalid_argument("series with incompatible expansion directions");
}

void check_modes(const Series& a, const Series& b) {
    if (a.mode() != b.mode()) throw std::logic_error("series arithmetic mixes exact and float modes");
}

}  // namespace

Series Series::constant(const Scalar& c) {
    Series s(c.mode());
    s.add_term(ExponentVector{}, c);
    return s;
}

Series Series::monomial(const ExponentVector& e, const Scalar& c) {
    Series s(c.mode());
    s.add_term(e, c);
    return s;
}

Scalar Series::coefficient(const ExponentVector& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

void Series::add_term(const ExponentVector& e, const Scalar& c) {
    if (c.mode() != mode_) throw std::logic_error("series term has the wrong scalar mode");
    if (c.is_exact() && c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_exact() && it->second.is_zero()) terms_.erase(it);
}

Rational Series::min_exponent(Var v) const {
    bool first = true;
    Rational m(0);
    for (const auto& [e, c] : terms_) {
        Rational x = e.get(v);
        if (first || x < m) m = x;
        first = false;
    }
    return m;
}

Series Series::truncated(const Rational& cutoff) const {
    if (dir_.none()) return *this;
    Series r(mode_, dir_, min_valid(valid_to_, cutoff));
    for (const auto& [e, c] : terms_) {
        if (e.get(dir_.small) <= cutoff) r.terms_.emplace(e, c);
    }
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Series Series::scaled(const Scalar& c) const {
    Series r(mode_, dir_, valid_to_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

Series operator+(const Series& a, const Series& b) {
    check_modes(a, b);
    Series r(a.mode(), merge_direction(a, b), min_valid(a.valid_to(), b.valid_to()));
    for (const auto& [e, c] : a.terms()) r.add_term(e, c);
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r.valid_to() ? r.truncated(*r.valid_to()) : r;
}

Series operator-(const Series& a, const Series& b) { return a + (-b); }

Series operator*(const Series& a, const Series& b) {
    check_modes(a, b);
    Direction dir = merge_direction(a, b);
    std::optional<Rational> valid;
    if (!dir.none()) {
        std::optional<Rational> va, vb;
        if (a.valid_to()) va = *a.valid_to() + b.min_exponent(dir.small);
        if (b.valid_to()) vb = *b.valid_to() + a.min_exponent(dir.small);
        valid = min_valid(va, vb);
    }
    Series r(a.mode(), dir, valid);
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            ExponentVector e = ea + eb;
            if (valid && e.get(dir.small) > *valid) continue;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

std::optional<ExponentVector> Series::first_difference(const Series& other, double tol) const {
    check_modes(*this, other);
    Direction dir = merge_direction(*this, other);
    std::optional<Rational> valid = min_valid(valid_to_, other.valid_to_);
    auto in_range = [&](const ExponentVector& e) { return !valid || dir.none() || e.get(dir.small) <= *valid; };
    std::map<ExponentVector, bool> keys;
    for (const auto& [e, c] : terms_) keys.emplace(e, true);
    for (const auto& [e, c] : other.terms_) keys.emplace(e, true);
    for (const auto& [e, unused] : keys) {
        if (!in_range(e)) continue;
        if (!coefficient(e).equals(other.coefficient(e), tol)) return e;
    }
    return std::nullopt;
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << e.str();
    }
    if (first) os << "0";
    if (valid_to_) os << " + O(" << var_name(dir_.small) << "^" << (*valid_to_ + Rational(1)).str() << ")";
    return os.str();
}

Series binom_expand(Var u, Var v, const Rational& n, const Rational& c, std::int64_t cutoff, Mode mode) {
    if (cutoff < 0) throw std::invalid_argument("binomial cutoff must be nonnegative");
    bool terminates = n.is_integer() && n.sign() >= 0 && n <= Rational(cutoff);
    Series s(mode, Direction{v, u}, terminates ? std::nullopt : std::optional<Rational>(Rational(cutoff)));
    Rational coef(1);
    Rational cpow(1);
    for (std::int64_t m = 0; m <= cutoff; ++m) {
        if (m > 0) {
            coef = coef * (n - Rational(m - 1)) / Rational(m);
            cpow = cpow * c;
        }
        if (coef.is_zero()) break;
        ExponentVector e;
        e.set(u, n - Rational(m));
        e.set(v, Rational(m));
        s.add_term(e, Scalar::from_rational(coef * cpow, mode));
    }
    return s;
}

Series delta_series(Var x, std::int64_t cutoff, Mode mode) {
    Series s(mode);
    for (std::int64_t n = -cutoff; n <= cutoff; ++n) {
        ExponentVector e;
        e.set(x, Rational(n));
        s.add_term(e, Scalar::one(mode));
    }
    return s;
}

Series residue(Var var, const Series& s) {
    Direction d = s.direction();
    if (d.small == var || d.large == var) d = Direction{};
    Series r(s.mode(), d, d.none() ? std::nullopt : s.valid_to());
    for (const auto& [e, c] : s.terms()) {
        if (e.get(var) == Rational(-1)) r.add_term(e.without(var), c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// RationalFn and iota maps
// ---------------------------------------------------------------------------

RationalFn RationalFn::from_poly(const Poly3& p, int r, int s, int t, Mode mode) {
    RationalFn f;
    f.mode = mode;
    for (const auto& [e, c] : p) {
        if (!(c.is_exact() && c.is_zero())) f.numerator.emplace(e, c);
    }
    f.r = r;
    f.s = s;
    f.t = t;
    return f;
}

bool RationalFn::is_zero() const {
    for (const auto& [e, c] : numerator) {
        if (!c.is_zero()) return false;
    }
    return true;
}

std::string RationalFn::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto& [e, c] : numerator) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        static const char* names[3] = {"x0", "x1", "x2"};
        for (int i = 0; i < 3; ++i) {
            if (e[static_cast<std::size_t>(i)] != 0) os << "*" << names[i] << "^" << e[static_cast<std::size_t>(i)];
        }
    }
    if (first) os << "0";
    os << ")/(x0^" << r << " x1^" << s << " x2^" << t;
    for (const auto& [lf, m] : linear_factors) {
        os << " (" << lf.c[0].str() << "x0+" << lf.c[1].str() << "x1+" << lf.c[2].str() << "x2)^" << m;
    }
    os << ")";
    return os.str();
}

std::string iota_name(Iota w) {
    switch (w) {
        case Iota::I12: return "iota12";
        case Iota::I21: return "iota21";
        case Iota::I20: return "iota20";
        case Iota::I10: return "iota10";
    }
    return "?";
}

namespace {

// Image of x0, x1, x2 as (coefficient of small, coefficient of large).
struct IotaFrame {
    Var small, large;
    std::array<std::pair<Rational, Rational>, 3> image;
};

IotaFrame frame_for(Iota w) {
    using P = std::pair<Rational, Rational>;
    switch (w) {
        case Iota::I12:  // small x2, large x1, x0 = x1 - x2
            return {X2, X1, {P{Rational(-1), Rational(1)}, P{Rational(0), Rational(1)}, P{Rational(1), Rational(0)}}};
        case Iota::I21:  // small x1, large x2, x0 = x1 - x2
            return {X1, X2, {P{Rational(1), Rational(-1)}, P{Rational(1), Rational(0)}, P{Rational(0), Rational(1)}}};
        case Iota::I20:  // small x0, large x2, x1 = x0 + x2
            return {X0, X2, {P{Rational(1), Rational(0)}, P{Rational(1), Rational(1)}, P{Rational(0), Rational(1)}}};
        case Iota::I10:  // small x0, large x1, x2 = x1 - x0
            return {X0, X1, {P{Rational(1), Rational(0)}, P{Rational(0), Rational(1)}, P{Rational(-1), Rational(1)}}};
    }
    throw std::logic_error("bad iota");
}

ExponentVector mono(Var a, std::int64_t ea, Var b, std::int64_t eb) {
    ExponentVector e;
    e.set(a, Rational(ea));
    e.set(b, e.get(b) + Rational(eb));
    return e;
}

// (p S + q L)^k for k >= 0 as an exact finite series.
Series linear_power(Var s, Var l, const Rational& p, const Rational& q, int k, Mode mode) {
    Series out(mode);
    Rational binom(1);
    for (int j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * Rational(k - j + 1) / Rational(j);
        Rational coef = binom;
        for (int i = 0; i < j; ++i) coef *= p;
        for (int i = 0; i < k - j; ++i) coef *= q;
        out.add_term(mono(s, j, l, k - j), Scalar::from_rational(coef, mode));
    }
    return out;
}

}  // namespace

Series iota(Iota which, const RationalFn& f, std::int64_t cutoff) {
    if (cutoff < 0) throw std::invalid_argument("iota cutoff must be nonnegative");
    const Mode mode = f.mode;
    IotaFrame fr = frame_for(which);
    const Var S = fr.small, L = fr.large;

    // Denominator factors as linear forms in (S, L).
    std::vector<std::pair<std::pair<Rational, Rational>, int>> factors;
    auto add_factor = [&](const std::array<Rational, 3>& c, int mult) {
        if (mult == 0) return;
        Rational p(0), q(0);
        for (std::size_t i = 0; i < 3; ++i) {
            p += c[i] * fr.image[i].first;
            q += c[i] * fr.image[i].second;
        }
        if (p.is_zero() && q.is_zero()) throw std::invalid_argument("malformed denominator: linear factor vanishes");
        factors.push_back({{p, q}, mult});
    };
    add_factor({Rational(1), Rational(0), Rational(0)}, f.r);
    add_factor({Rational(0), Rational(1), Rational(0)}, f.s);
    add_factor({Rational(0), Rational(0), Rational(1)}, f.t);
    for (const auto& [lf, m] : f.linear_factors) {
        if (m < 0) throw std::invalid_argument("malformed denominator: negative linear-factor multiplicity");
        add_factor(lf.c, m);
    }

    // Negative powers of the form (p S + q L)^k with k < 0 (denominators) or
    // polynomial factors with k > 0 (numerators moved from negative r, s, t).
    std::int64_t extra = 0;
    for (const auto& [pq, m] : factors) {
        if (m > 0 && pq.second.is_zero()) extra += m;
    }
    const std::int64_t order = cutoff + extra;

    Series numer(mode);
    for (const auto& [e, c] : f.numerator) {
        if (c.is_exact() && c.is_zero()) continue;
        Series term = Series::constant(Scalar::convert(c, mode));
        for (std::size_t i = 0; i < 3; ++i) {
            if (e[i] < 0) throw std::invalid_argument("numerator exponents must be nonnegative");
            if (e[i] == 0) continue;
            term = term * linear_power(S, L, fr.image[i].first, fr.image[i].second, e[i], mode);
        }
        numer = numer + term;
    }
    Series result = numer;
    result.set_direction(Direction{S, L});
    for (const auto& [pq, m] : factors) {
        const Rational& p = pq.first;
        const Rational& q = pq.second;
        Series fac(mode);
        if (m < 0) {
            fac = linear_power(S, L, p, q, -m, mode);
        } else if (q.is_zero()) {
            // (p S)^{-m}
            Rational coef(1);
            for (int i = 0; i < m; ++i) coef /= p;
            fac.add_term(mono(S, -m, L, 0), Scalar::from_rational(coef, mode));
        } else {
            // (q L)^{-m} (1 + (p/q) S/L)^{-m}
            Series b = binom_expand(L, S, Rational(-m), p / q, order, mode);
            Rational qinv(1);
            for (int i = 0; i < m; ++i) qinv /= q;
            fac = b.scaled(Scalar::from_rational(qinv, mode));
        }
        fac.set_direction(Direction{S, L});
        result = result * fac;
    }
    result.set_direction(Direction{S, L});
    Series out = result.truncated(Rational(cutoff));
    // A finite result that never needed truncation is still exact.
    bool any_infinite = false;
    for (const auto& [pq, m] : factors) {
        if (m > 0 && !pq.second.is_zero() && !pq.first.is_zero()) any_infinite = true;
    }
    if (!any_infinite) {
        bool beyond = false;
        for (const auto& [e, c] : result.terms()) {
            if (e.get(S) > Rational(cutoff)) beyond = true;
        }
        if (!beyond) out.set_valid_to(std::nullopt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Delta atoms and expressions
// ---------------------------------------------------------------------------

DeltaAtom DeltaAtom::product() { return {Slot::Product, X0, X1, X2, Rational(-1), Rational(1)}; }
DeltaAtom DeltaAtom::reversed_product() { return {Slot::ReversedProduct, X0, X2, X1, Rational(-1), Rational(-1)}; }
DeltaAtom DeltaAtom::iterate() { return {Slot::Iterate, X2, X1, X0, Rational(-1), Rational(1)}; }
DeltaAtom DeltaAtom::swapped_iterate() { return {Slot::Other, X1, X2, X0, Rational(1), Rational(1)}; }

std::string DeltaAtom::str() const {
    std::ostringstream os;
    os << var_name(d) << "^-1 delta((" << var_name(u) << (c.sign() < 0 ? " - " : " + ");
    if (c.abs() != Rational(1)) os << c.abs().str() << "*";
    os << var_name(v) << ")/(";
    if (e != Rational(1)) os << e.str() << "*";
    os << var_name(d) << "))";
    return os.str();
}

void DeltaExpression::add(const Scalar& sign, const DeltaAtom& atom, const Series& series) {
    for (const auto& [e, c] : series.terms()) {
        if (!e.get(atom.d).is_zero()) {
            throw std::invalid_argument("series attached to " + atom.str() + " involves " + var_name(atom.d));
        }
        for (const auto& [v, x] : e.entries()) {
            if (v != atom.u && v != atom.v) throw std::invalid_argument("series involves a foreign variable");
        }
    }
    if (!series.direction().none() && series.direction().small != atom.v) {
        throw std::invalid_argument("series attached to " + atom.str() + " expands in the wrong direction");
    }
    terms_.push_back(Term{sign, atom, series});
}

DeltaExpression DeltaExpression::operator*(const DeltaExpression&) const {
    throw std::logic_error("products of delta expressions are not defined");
}

Series DeltaExpression::expand_window(std::int64_t k, Mode mode) const {
    using Key = std::array<Rational, 3>;  // exponents of x0, x1, x2 (or other vars by id order)
    std::map<ExponentVector, Scalar> acc;
    std::map<std::array<Rational, 3>, Scalar> fast;
    const Rational K(k);
    for (const auto& term : terms_) {
        const DeltaAtom& a = term.atom;
        const Series& s = term.series;
        if (s.valid_to() && *s.valid_to() < K) {
            throw std::invalid_argument("series attached to " + a.str() + " is exact only up to order " +
                                        s.valid_to()->str() + ", window needs " + K.str());
        }
        // Binomial table C(n, m) for n in [-k-1, k-1].
        Rational min_q = s.min_exponent(a.v);
        std::int64_t max_m = (K - std::min(min_q, Rational(0))).floor().to_int() + 1;
        std::vector<Rational> cpow(static_cast<std::size_t>(max_m) + 1);
        cpow[0] = Rational(1);
        for (std::size_t m = 1; m < cpow.size(); ++m) cpow[m] = cpow[m - 1] * a.c;
        const bool fixed_roles = a.d <= X2 && a.u <= X2 && a.v <= X2;
        for (std::int64_t A = -k; A <= k; ++A) {
            std::int64_t n = -A - 1;
            // e^{-n} with e = +-1 or general
            Rational epow(1);
            Rational base = (n >= 0) ? a.e.inv() : a.e;
            for (std::int64_t i = 0; i < (n >= 0 ? n : -n); ++i) epow *= base;
            std::vector<Rational> binom(static_cast<std::size_t>(max_m) + 1);
            binom[0] = Rational(1);
            for (std::size_t m = 1; m < binom.size(); ++m) {
                binom[m] = binom[m - 1] * Rational(n - static_cast<std::int64_t>(m) + 1) / Rational(static_cast<std::int64_t>(m));
            }
            for (const auto& [ev, coef] : s.terms()) {
                Rational p = ev.get(a.u);
                Rational q = ev.get(a.v);
                if (q > K) continue;
                // m ranges so that C = m + q lies in [-k, k]
                Rational lo = -K - q;
                std::int64_t m_lo = lo.sign() > 0 ? (lo.floor() + (lo.is_integer() ? Rational(0) : Rational(1))).to_int() : 0;
                std::int64_t m_hi = (K - q).floor().to_int();
                for (std::int64_t m = m_lo; m <= m_hi; ++m) {
                    if (static_cast<std::size_t>(m) >= binom.size()) break;
                    const Rational& bnm = binom[static_cast<std::size_t>(m)];
                    if (bnm.is_zero()) continue;
                    Rational B = Rational(n - m) + p;
                    if (B > K || B < -K) continue;
                    Rational factor = epow * bnm * cpow[static_cast<std::size_t>(m)];
                    Scalar val = term.sign * coef * Scalar::from_rational(factor, mode);
                    if (fixed_roles) {
                        Key key;
                        key[static_cast<std::size_t>(a.d)] = Rational(A);
                        key[static_cast<std::size_t>(a.u)] = B;
                        key[static_cast<std::size_t>(a.v)] = q + Rational(m);
                        auto it = fast.find(key);
                        if (it == fast.end()) fast.emplace(key, val);
                        else it->second += val;
                    } else {
                        ExponentVector e;
                        e.set(a.d, Rational(A));
                        e.set(a.u, B);
                        e.set(a.v, q + Rational(m));
                        auto it = acc.find(e);
                        if (it == acc.end()) acc.emplace(e, val);
                        else it->second += val;
                    }
                }
            }
        }
    }
    Series out(mode);
    for (const auto& [key, c] : fast) {
        ExponentVector e;
        for (std::size_t i = 0; i < 3; ++i) e.set(static_cast<Var>(i), key[i]);
        out.add_term(e, c);
    }
    for (const auto& [e, c] : acc) out.add_term(e, c);
    return out;
}

Series delta_atom_series(const DeltaAtom& atom, std::int64_t k, Mode mode) {
    DeltaExpression e;
    e.add(Scalar::one(mode), atom, Series::constant(Scalar::one(mode)));
    return e.expand_window(k, mode);
}

CheckResult compare_delta_expressions(const std::string& name, const DeltaExpression& lhs, const DeltaExpression& rhs,
                                      std::int64_t k, Mode mode, double tol) {
    Series l = lhs.expand_window(k, mode);
    Series r = rhs.expand_window(k, mode);
    auto diff = l.first_difference(r, tol);
    if (!diff) {
        return CheckResult::pass(name, "coefficients agree on window [-" + std::to_string(k) + "," + std::to_string(k) +
                                           "]^3 (" + std::to_string(l.size()) + " nonzero)");
    }
    CheckResult res = CheckResult::fail(name, "coefficient mismatch at " + diff->str());
    res.with("monomial", diff->str()).with("lhs", l.coefficient(*diff).str()).with("rhs", r.coefficient(*diff).str());
    return res;
}

CheckResult verify_delta_substitution(const Series& f, std::int64_t cutoff) {
    const Mode mode = f.mode();
    Rational span(0);
    Scalar f1 = Scalar::zero(mode);
    for (const auto& [e, c] : f.terms()) {
        for (const auto& [v, x] : e.entries()) {
            if (v != X) throw std::invalid_argument("f must be a Laurent polynomial in x");
        }
        if (!e.get(X).is_integer()) throw std::invalid_argument("f must have integer exponents");
        span = std::max(span, e.get(X).abs());
        f1 += c;
    }
    Series lhs = f * delta_series(X, cutoff, mode);
    Series rhs = delta_series(X, cutoff, mode).scaled(f1);
    std::int64_t ok = cutoff - span.to_int();
    for (std::int64_t n = -ok; n <= ok; ++n) {
        ExponentVector e{{X, Rational(n)}};
        if (!lhs.coefficient(e).equals(rhs.coefficient(e))) {
            return CheckResult::fail("delta_substitution", "mismatch at " + e.str()).with("monomial", e.str());
        }
    }
    return CheckResult::pass("delta_substitution", "f(x)delta(x) = f(1)delta(x) for |n| <= " + std::to_string(ok));
}

CheckResult verify_delta_identity_two_term(std::int64_t cutoff, Mode mode) {
    DeltaExpression lhs, rhs;
    lhs.add(Scalar::one(mode), DeltaAtom::swapped_iterate(), Series::constant(Scalar::one(mode)));
    rhs.add(Scalar::one(mode), DeltaAtom::iterate(), Series::constant(Scalar::one(mode)));
    return compare_delta_expressions("delta_identity_two_term", lhs, rhs, cutoff, mode);
}

CheckResult verify_delta_identity_three_term(std::int64_t cutoff, Mode mode) {
    DeltaExpression lhs, rhs;
    lhs.add(Scalar::one(mode), DeltaAtom::product(), Series::constant(Scalar::one(mode)));
    lhs.add(-Scalar::one(mode), DeltaAtom::reversed_product(), Series::constant(Scalar::one(mode)));
    rhs.add(Scalar::one(mode), DeltaAtom::iterate(), Series::constant(Scalar::one(mode)));
    return compare_delta_expressions("delta_identity_three_term", lhs, rhs, cutoff, mode);
}

CheckResult verify_rational_delta(const RationalFn& f, std::int64_t cutoff) {
    const Mode mode = f.mode;
    const Scalar one = Scalar::one(mode);
    Series i12 = iota(Iota::I12, f, cutoff);
    Series i21 = iota(Iota::I21, f, cutoff);
    Series i20 = iota(Iota::I20, f, cutoff);
    Series i10 = iota(Iota::I10, f, cutoff);

    DeltaExpression l1, r1;
    l1.add(one, DeltaAtom::swapped_iterate(), i20);
    r1.add(one, DeltaAtom::iterate(), i10);
    CheckResult first = compare_delta_expressions("two_term", l1, r1, cutoff, mode);

    DeltaExpression l2, r2;
    l2.add(one, DeltaAtom::product(), i12);
    l2.add(-one, DeltaAtom::reversed_product(), i21);
    r2.add(one, DeltaAtom::iterate(), i10);
    CheckResult second = compare_delta_expressions("three_term", l2, r2, cutoff, mode);

    if (first.passed && second.passed) {
        return CheckResult::pass("rational_delta", "both identities hold for " + f.str() + " at cutoff " +
                                                            std::to_string(cutoff));
    }
    const CheckResult& bad = first.passed ? second : first;
    CheckResult res = CheckResult::fail("rational_delta", bad.name + " identity fails for " + f.str() + ": " + bad.message,
                                        bad.locator);
    res.with("identity", bad.name).with("function", f.str());
    return res;
}

RationalFn random_rational_fn(std::mt19937_64& rng, int max_degree, int max_pole, Mode mode) {
    std::uniform_int_distribution<int> nterms(1, 5);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> pole(0, max_pole);
    Poly3 p;
    int count = nterms(rng);
    for (int i = 0; i < count; ++i) {
        int total = deg(rng);
        std::uniform_int_distribution<int> split(0, total);
        int a = split(rng);
        std::uniform_int_distribution<int> split2(0, total - a);
        int b = split2(rng);
        int c = total - a - b;
        int k = coef(rng);
        if (k == 0) k = 1;
        auto it = p.find({a, b, c});
        Scalar v = Scalar::from_rational(Rational(k), mode);
        if (it == p.end()) p.emplace(std::array<int, 3>{a, b, c}, v);
        else it->second += v;
    }
    return RationalFn::from_poly(p, pole(rng), pole(rng), pole(rng), mode);
}

}  // namespace s3v
