#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace momentvar::cla {

// Exact rational with 64-bit parts, always in lowest terms with den > 0.
// Arithmetic throws std::overflow_error instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Best rational approximation p/q of x with q <= max_den, found from the
// continued fraction convergents and the final semiconvergent. Returns
// nullopt when even the best candidate misses x by more than tol.
std::optional<Rational> best_rational(double x, std::int64_t max_den, double tol);

}  // namespace momentvar::cla
