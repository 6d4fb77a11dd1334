#include "momentvar/cla/rational.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace momentvar::cla {
namespace {

__extension__ using Int128 = __int128;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: overflow");
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const std::int64_t g = std::gcd(a.den_, b.den_);
  return Rational(checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g)),
                  checked_mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Rational(checked_mul(a.num_ / (g1 ? g1 : 1), b.num_ / (g2 ? g2 : 1)),
                  checked_mul(a.den_ / (g2 ? g2 : 1), b.den_ / (g1 ? g1 : 1)));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<Int128>(a.num_) * b.den_ < static_cast<Int128>(b.num_) * a.den_;
}

std::optional<Rational> best_rational(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x) || max_den < 1) return std::nullopt;
  const bool negative = x < 0.0;
  const long double ax = std::fabs(static_cast<long double>(x));

  // Convergents h/k with the usual recurrences; (h0/k0) is the previous one.
  std::int64_t h0 = 0, k0 = 1, h1 = 1, k1 = 0;
  long double y = ax;
  std::int64_t best_h = static_cast<std::int64_t>(std::floor(ax));
  std::int64_t best_k = 1;
  for (int iter = 0; iter < 64; ++iter) {
    const long double fl = std::floor(y);
    if (fl > 4e18L) break;
    const std::int64_t a = static_cast<std::int64_t>(fl);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_den) {
      // Largest semiconvergent that still fits, compared with the last
      // convergent.
      const std::int64_t t = k1 > 0 ? (max_den - k0) / k1 : 0;
      if (t > 0) {
        const std::int64_t hs = t * h1 + h0;
        const std::int64_t ks = t * k1 + k0;
        const long double es = std::fabs(ax - static_cast<long double>(hs) / ks);
        const long double ec = std::fabs(ax - static_cast<long double>(best_h) / best_k);
        if (es < ec) {
          best_h = hs;
          best_k = ks;
        }
      }
      break;
    }
    h0 = h1;
    k0 = k1;
    h1 = h2;
    k1 = k2;
    best_h = h1;
    best_k = k1;
    const long double frac = y - fl;
    if (frac <= 1e-18L * y || std::fabs(ax - static_cast<long double>(h1) / k1) == 0.0L) break;
    y = 1.0L / frac;
  }
  const long double err = std::fabs(ax - static_cast<long double>(best_h) / best_k);
  if (err > tol) return std::nullopt;
  return Rational(negative ? -best_h : best_h, best_k);
}

}  // namespace momentvar::cla
