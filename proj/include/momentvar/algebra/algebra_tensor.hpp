#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "momentvar/cla/cmatrix.hpp"

namespace momentvar::algebra {

using cla::CMatrix;
using cla::Complex;
using cla::CVector;

// One structure constant c_{ij}^k with 1-based indices, as written in tables.
struct Term {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Complex c = 1.0;
};

// A bilinear product on C^n given by its structure constants in a fixed
// orthonormal frame: mu(e_i, e_j) = sum_k c_{ij}^k e_k. Indices in the member
// functions are 0-based.
class AlgebraTensor {
 public:
  AlgebraTensor() = default;
  explicit AlgebraTensor(std::size_t dim);
  // Throws std::invalid_argument on a size mismatch or non-finite entry.
  AlgebraTensor(std::size_t dim, std::vector<Complex> coefficients);
  // Throws std::invalid_argument on an out-of-range or duplicate term.
  static AlgebraTensor from_terms(std::size_t dim, std::span<const Term> terms);
  static AlgebraTensor from_terms(std::size_t dim, std::initializer_list<Term> terms);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  const Complex& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  std::span<const Complex> coefficients() const { return c_; }
  std::span<Complex> coefficients() { return c_; }

  double norm_sq() const;
  double norm() const;
  bool is_zero() const;

  // mu(x, y).
  CVector product(std::span<const Complex> x, std::span<const Complex> y) const;
  // Left and right multiplication operators: L_x y = mu(x, y), R_y x = mu(x, y).
  CMatrix left(std::span<const Complex> x) const;
  CMatrix right(std::span<const Complex> y) const;
  // L and R for the basis vector e_i.
  CMatrix left_basis(std::size_t i) const;
  CMatrix right_basis(std::size_t i) const;

  AlgebraTensor& operator+=(const AlgebraTensor& other);
  AlgebraTensor& operator-=(const AlgebraTensor& other);
  AlgebraTensor& operator*=(Complex s);
  friend AlgebraTensor operator+(AlgebraTensor a, const AlgebraTensor& b) { return a += b; }
  friend AlgebraTensor operator-(AlgebraTensor a, const AlgebraTensor& b) { return a -= b; }
  friend AlgebraTensor operator*(Complex s, AlgebraTensor a) { return a *= s; }
  friend AlgebraTensor operator*(AlgebraTensor a, Complex s) { return a *= s; }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> c_;
};

// Throws std::invalid_argument naming `where` when mu is the zero tensor.
void require_nonzero(const AlgebraTensor& mu, const char* where);

// mu / ||mu||. Throws on the zero tensor.
AlgebraTensor normalized(const AlgebraTensor& mu);

// (g.mu)(X, Y) = g mu(g^-1 X, g^-1 Y). Throws std::invalid_argument on a
// shape mismatch and std::domain_error when g is singular.
AlgebraTensor act_group(const CMatrix& g, const AlgebraTensor& mu);
// Same, with g^-1 supplied by the caller.
AlgebraTensor act_group(const CMatrix& g, const CMatrix& g_inv, const AlgebraTensor& mu);

// (A.mu)(X, Y) = A mu(X, Y) - mu(AX, Y) - mu(X, AY).
AlgebraTensor act_lie(const CMatrix& a, const AlgebraTensor& mu);

// <mu, lam> = sum c^mu conj(c^lam).
Complex inner_product(const AlgebraTensor& mu, const AlgebraTensor& lam);

struct AssociativityCheck {
  bool associative = false;
  double max_violation = 0.0;  // max over basis triples of ||e_i(e_j e_k) - (e_i e_j)e_k||
};

// The violation is compared with tol * max(1, ||mu||^2) so the verdict does
// not depend on the overall scale of the tensor.
AssociativityCheck is_associative(const AlgebraTensor& mu, double tol = 1e-9);

// mu (+) t lam on C^{n+m}; the two blocks multiply to zero. Throws
// std::invalid_argument when t = 0.
AlgebraTensor direct_sum(const AlgebraTensor& mu, const AlgebraTensor& lam, Complex t = 1.0);

}  // namespace momentvar::algebra
