#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/algebra/catalog.hpp"
#include "momentvar/cla/cmatrix.hpp"

namespace testing {

using momentvar::algebra::AlgebraTensor;
using momentvar::cla::CMatrix;
using momentvar::cla::Complex;

inline Complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const double re = normal(rng);
  return {re, normal(rng)};
}

inline AlgebraTensor random_tensor(std::size_t n, std::mt19937_64& rng) {
  AlgebraTensor mu(n);
  for (auto& c : mu.coefficients()) c = gaussian(rng);
  return mu;
}

// Sparse random tensors hit degenerate corners (annihilators, zero rows) that
// dense ones never do.
inline AlgebraTensor random_sparse_tensor(std::size_t n, std::mt19937_64& rng, double density) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  AlgebraTensor mu(n);
  for (auto& c : mu.coefficients())
    if (u(rng) < density) c = gaussian(rng);
  if (mu.is_zero()) mu(0, 0, 0) = 1.0;
  return mu;
}

inline CMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  CMatrix a(n, n);
  for (auto& x : a.entries()) x = gaussian(rng);
  return a;
}

// I + 0.5 G keeps the condition number moderate.
inline CMatrix random_invertible(std::size_t n, std::mt19937_64& rng) {
  return CMatrix::identity(n) + 0.5 * random_matrix(n, rng);
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

inline double max_abs_diff(const AlgebraTensor& a, const AlgebraTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  return m;
}

struct Named {
  std::string name;
  std::size_t dim;
};

// Every table row plus the families and alternative models.
inline std::vector<Named> catalog_names() {
  std::vector<Named> out;
  for (const auto& l : momentvar::algebra::catalog_list()) out.push_back({l.name, l.dim});
  return out;
}

inline momentvar::algebra::CatalogEntry get(const Named& n) {
  return momentvar::algebra::catalog_get(n.name, n.dim);
}

inline std::string label(const Named& n) { return n.name + " (dim " + std::to_string(n.dim) + ")"; }

}  // namespace testing
