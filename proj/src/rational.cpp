#include "s3v/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace s3v {

namespace {

using i128 = __int128;

constexpr i128 kMin64 = std::numeric_limits<std::int64_t>::min();
constexpr i128 kMax64 = std::numeric_limits<std::int64_t>::max();

bool fits64(i128 v) { return v > kMin64 && v <= kMax64; }

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class i128_to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    auto hi = static_cast<std::uint64_t>(u >> 64);
    auto lo = static_cast<std::uint64_t>(u);
    mpz_class r = hi;
    r <<= 64;
    r += mpz_class(static_cast<unsigned long>(lo));
    return neg ? mpz_class(-r) : r;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    i128 l = static_cast<i128>(a / std::gcd(a, b)) * b;
    if (l < 0) l = -l;
    if (!fits64(l)) throw std::overflow_error("lcm overflow");
    return static_cast<std::int64_t>(l);
}

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
    auto p = std::make_shared<mpq_class>(q);
    p->canonicalize();
    big_ = p;
    normalize_big();
}

Rational Rational::from_i128(i128 n, i128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    if (fits64(n) && fits64(d)) {
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    mpq_class q(i128_to_mpz(n), i128_to_mpz(d));
    q.canonicalize();
    r.big_ = std::make_shared<mpq_class>(q);
    return r;
}

void Rational::normalize_big() {
    const mpq_class& q = *big_;
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        long n = q.get_num().get_si();
        long d = q.get_den().get_si();
        if (n != std::numeric_limits<long>::min()) {
            num_ = n;
            den_ = d;
            big_.reset();
        }
    }
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class q(mpz_class(text, 10));
            return Rational(q);
        }
        mpz_class n(text.substr(0, slash), 10);
        mpz_class d(text.substr(slash + 1), 10);
        if (d == 0) throw std::domain_error("zero denominator");
        return Rational(mpq_class(n, d));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    }
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
}

bool Rational::is_integer() const {
    if (big_) return big_->get_den() == 1;
    return den_ == 1;
}

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

std::string Rational::numerator_str() const {
    return big_ ? big_->get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
    return big_ ? big_->get_den().get_str() : std::to_string(den_);
}

std::int64_t Rational::den_checked() const {
    if (big_) {
        if (!big_->get_den().fits_slong_p()) throw std::overflow_error("denominator too large");
        return big_->get_den().get_si();
    }
    return den_;
}

std::int64_t Rational::to_int() const {
    if (!is_integer()) throw std::domain_error("rational is not an integer: " + str());
    if (big_) throw std::overflow_error("integer too large: " + str());
    return num_;
}

double Rational::to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
    if (is_integer()) return numerator_str();
    return numerator_str() + "/" + denominator_str();
}

Rational Rational::floor() const {
    if (big_) {
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
        return Rational(mpq_class(f));
    }
    std::int64_t q = num_ / den_;
    if ((num_ % den_ != 0) && (num_ < 0)) --q;
    return Rational(q);
}

Rational Rational::inv() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    if (big_) return Rational(mpq_class(1 / *big_));
    return from_i128(den_, num_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    return from_i128(-static_cast<i128>(num_), den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return Rational::from_i128(static_cast<i128>(a.num_) + b.num_, a.den_);
        return Rational::from_i128(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                                   static_cast<i128>(a.den_) * b.den_);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.den_ == b.den_) return Rational::from_i128(static_cast<i128>(a.num_) - b.num_, a.den_);
        return Rational::from_i128(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                                   static_cast<i128>(a.den_) * b.den_);
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.num_ == 0 || b.num_ == 0) return Rational();
        return Rational::from_i128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational");
    if (!a.big_ && !b.big_) {
        return Rational::from_i128(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    }
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // big values are never representable in the small form
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Rational::hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str());
    std::size_t h = std::hash<std::int64_t>{}(num_);
    return h ^ (std::hash<std::int64_t>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

Rational binomial(const Rational& n, std::int64_t m) {
    if (m < 0) return Rational();
    Rational r(1);
    for (std::int64_t k = 0; k < m; ++k) {
        r = r * (n - Rational(k)) / Rational(k + 1);
    }
    return r;
}

}  // namespace s3v
