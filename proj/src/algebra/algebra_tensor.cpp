#include "momentvar/algebra/algebra_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "momentvar/cla/decompositions.hpp"

namespace momentvar::algebra {

AlgebraTensor::AlgebraTensor(std::size_t dim) : dim_(dim), c_(dim * dim * dim) {}

AlgebraTensor::AlgebraTensor(std::size_t dim, std::vector<Complex> coefficients)
    : dim_(dim), c_(std::move(coefficients)) {
  if (c_.size() != dim * dim * dim) {
    throw std::invalid_argument("AlgebraTensor: expected dim^3 coefficients");
  }
  for (const Complex& z : c_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("AlgebraTensor: non-finite coefficient");
    }
  }
}

AlgebraTensor AlgebraTensor::from_terms(std::size_t dim, std::span<const Term> terms) {
  AlgebraTensor mu(dim);
  std::vector<bool> seen(mu.c_.size(), false);
  for (const Term& t : terms) {
    if (t.i < 1 || t.j < 1 || t.k < 1 || t.i > dim || t.j > dim || t.k > dim) {
      throw std::invalid_argument("AlgebraTensor: term index out of range (" +
                                  std::to_string(t.i) + "," + std::to_string(t.j) + "," +
                                  std::to_string(t.k) + ")");
    }
    if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag())) {
      throw std::invalid_argument("AlgebraTensor: non-finite coefficient");
    }
    const std::size_t idx = ((t.i - 1) * dim + (t.j - 1)) * dim + (t.k - 1);
    if (seen[idx]) {
      throw std::invalid_argument("AlgebraTensor: duplicate term (" + std::to_string(t.i) + "," +
                                  std::to_string(t.j) + "," + std::to_string(t.k) + ")");
    }
    seen[idx] = true;
    mu.c_[idx] = t.c;
  }
  return mu;
}

AlgebraTensor AlgebraTensor::from_terms(std::size_t dim, std::initializer_list<Term> terms) {
  return from_terms(dim, std::span<const Term>(terms.begin(), terms.size()));
}

double AlgebraTensor::norm_sq() const {
  double s = 0.0;
  for (const Complex& z : c_) s += std::norm(z);
  return s;
}

double AlgebraTensor::norm() const { return std::sqrt(norm_sq()); }

bool AlgebraTensor::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Complex& z) { return z == 0.0; });
}

CVector AlgebraTensor::product(std::span<const Complex> x, std::span<const Complex> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("product: size mismatch");
  CVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Complex xy = x[i] * y[j];
      if (xy == 0.0) continue;
      for (std::size_t k = 0; k < dim_; ++k) out[k] += xy * (*this)(i, j, k);
    }
  }
  return out;
}

CMatrix AlgebraTensor::left(std::span<const Complex> x) const {
  if (x.size() != dim_) throw std::invalid_argument("left: size mismatch");
  CMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) += x[i] * (*this)(i, j, k);
  }
  return m;
}

CMatrix AlgebraTensor::right(std::span<const Complex> y) const {
  if (y.size() != dim_) throw std::invalid_argument("right: size mismatch");
  CMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    if (y[j] == 0.0) continue;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) m(k, i) += y[j] * (*this)(i, j, k);
  }
  return m;
}

CMatrix AlgebraTensor::left_basis(std::size_t i) const {
  CMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = (*this)(i, j, k);
  return m;
}

CMatrix AlgebraTensor::right_basis(std::size_t i) const {
  CMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j)
    for (std::size_t k = 0; k < dim_; ++k) m(k, j) = (*this)(j, i, k);
  return m;
}

AlgebraTensor& AlgebraTensor::operator+=(const AlgebraTensor& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("AlgebraTensor +: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

AlgebraTensor& AlgebraTensor::operator-=(const AlgebraTensor& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("AlgebraTensor -: dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

AlgebraTensor& AlgebraTensor::operator*=(Complex s) {
  for (Complex& z : c_) z *= s;
  return *this;
}

void require_nonzero(const AlgebraTensor& mu, const char* where) {
  if (mu.dim() == 0 || mu.norm_sq() == 0.0) {
    throw std::invalid_argument(std::string(where) + ": zero tensor");
  }
}

AlgebraTensor normalized(const AlgebraTensor& mu) {
  require_nonzero(mu, "normalized");
  return (1.0 / mu.norm()) * mu;
}

AlgebraTensor act_group(const CMatrix& g, const AlgebraTensor& mu) {
  if (!g.is_square() || g.rows() != mu.dim()) {
    throw std::invalid_argument("act_group: g must be n x n");
  }
  return act_group(g, cla::inverse(g), mu);
}

AlgebraTensor act_group(const CMatrix& g, const CMatrix& g_inv, const AlgebraTensor& mu) {
  const std::size_t n = mu.dim();
  if (!g.is_square() || g.rows() != n || !g_inv.is_square() || g_inv.rows() != n) {
    throw std::invalid_argument("act_group: g must be n x n");
  }
  // Contract one slot at a time: output index, then the two input slots.
  AlgebraTensor t1(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        const Complex v = mu(i, j, l);
        if (v == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) t1(i, j, k) += g(k, l) * v;
      }
  AlgebraTensor t2(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      const Complex w = g_inv(i, a);
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) t2(a, j, k) += w * t1(i, j, k);
    }
  AlgebraTensor out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t b = 0; b < n; ++b) {
      const Complex w = g_inv(j, b);
      if (w == 0.0) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t k = 0; k < n; ++k) out(a, b, k) += w * t2(a, j, k);
    }
  return out;
}

AlgebraTensor act_lie(const CMatrix& a, const AlgebraTensor& mu) {
  const std::size_t n = mu.dim();
  if (!a.is_square() || a.rows() != n) throw std::invalid_argument("act_lie: A must be n x n");
  AlgebraTensor out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Complex s = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
          s += a(k, l) * mu(i, j, l);
          s -= a(l, i) * mu(l, j, k);
          s -= a(l, j) * mu(i, l, k);
        }
        out(i, j, k) = s;
      }
  return out;
}

Complex inner_product(const AlgebraTensor& mu, const AlgebraTensor& lam) {
  if (mu.dim() != lam.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  return cla::inner(mu.coefficients(), lam.coefficients());
}

AssociativityCheck is_associative(const AlgebraTensor& mu, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("is_associative: tol must be positive");
  const std::size_t n = mu.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double sq = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
          Complex d = 0.0;
          for (std::size_t l = 0; l < n; ++l) {
            d += mu(j, k, l) * mu(i, l, m);
            d -= mu(i, j, l) * mu(l, k, m);
          }
          sq += std::norm(d);
        }
        worst = std::max(worst, std::sqrt(sq));
      }
  return {worst <= tol * std::max(1.0, mu.norm_sq()), worst};
}

AlgebraTensor direct_sum(const AlgebraTensor& mu, const AlgebraTensor& lam, Complex t) {
  if (t == 0.0) throw std::invalid_argument("direct_sum: t must be nonzero");
  const std::size_t n = mu.dim();
  const std::size_t m = lam.dim();
  AlgebraTensor out(n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j, k) = mu(i, j, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) out(n + i, n + j, n + k) = t * lam(i, j, k);
  return out;
}

}  // namespace momentvar::algebra
