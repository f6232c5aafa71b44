#include "s3v/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace s3v {

std::string mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

namespace {

[[noreturn]] void mixed() { throw std::logic_error("scalar arithmetic mixes exact and float modes"); }

}  // namespace

Scalar Scalar::from_rational(const Rational& q, Mode m) {
    if (m == Mode::Exact) return Scalar(q);
    return Scalar(Approx(q.to_double(), 0.0));
}

Scalar Scalar::root_of_unity(const Rational& q, Mode m) {
    if (m == Mode::Exact) return Scalar(Cyclotomic::root_of_unity(q));
    double ang = 2.0 * std::numbers::pi * q.frac().to_double();
    return Scalar(Approx(std::cos(ang), std::sin(ang)));
}

Scalar Scalar::convert(const Scalar& s, Mode m) {
    if (s.mode() == m) return s;
    if (m == Mode::Float) return Scalar(s.approx());
    throw std::logic_error("cannot convert a float scalar to exact mode");
}

const Cyclotomic& Scalar::exact() const {
    if (!is_exact()) throw std::logic_error("exact value requested from float scalar");
    return std::get<Cyclotomic>(v_);
}

Scalar::Approx Scalar::approx() const {
    if (is_exact()) return std::get<Cyclotomic>(v_).to_complex();
    return std::get<Approx>(v_);
}

bool Scalar::is_zero(double tol) const {
    if (is_exact()) return std::get<Cyclotomic>(v_).is_zero();
    return std::abs(std::get<Approx>(v_)) < tol;
}

Scalar Scalar::inv() const {
    if (is_exact()) return Scalar(std::get<Cyclotomic>(v_).inv());
    Approx z = std::get<Approx>(v_);
    if (z == Approx(0.0, 0.0)) throw std::domain_error("inverse of zero scalar");
    return Scalar(1.0 / z);
}

Scalar Scalar::conj() const {
    if (is_exact()) return Scalar(std::get<Cyclotomic>(v_).conj());
    return Scalar(std::conj(std::get<Approx>(v_)));
}

std::string Scalar::str() const {
    if (is_exact()) return std::get<Cyclotomic>(v_).str();
    std::ostringstream os;
    os.precision(17);
    Approx z = std::get<Approx>(v_);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

Scalar Scalar::operator-() const {
    if (is_exact()) return Scalar(-std::get<Cyclotomic>(v_));
    return Scalar(-std::get<Approx>(v_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) mixed();
    if (a.is_exact()) return Scalar(std::get<Cyclotomic>(a.v_) + std::get<Cyclotomic>(b.v_));
    return Scalar(std::get<Scalar::Approx>(a.v_) + std::get<Scalar::Approx>(b.v_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) mixed();
    if (a.is_exact()) return Scalar(std::get<Cyclotomic>(a.v_) - std::get<Cyclotomic>(b.v_));
    return Scalar(std::get<Scalar::Approx>(a.v_) - std::get<Scalar::Approx>(b.v_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() != b.is_exact()) mixed();
    if (a.is_exact()) return Scalar(std::get<Cyclotomic>(a.v_) * std::get<Cyclotomic>(b.v_));
    return Scalar(std::get<Scalar::Approx>(a.v_) * std::get<Scalar::Approx>(b.v_));
}

bool Scalar::equals(const Scalar& b, double tol) const {
    if (is_exact() != b.is_exact()) mixed();
    if (is_exact()) return std::get<Cyclotomic>(v_) == std::get<Cyclotomic>(b.v_);
    Approx x = std::get<Approx>(v_), y = std::get<Approx>(b.v_);
    double scale = std::max({1.0, std::abs(x), std::abs(y)});
    return std::abs(x - y) <= tol * scale;
}

}  // namespace s3v
