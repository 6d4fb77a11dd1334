#include "momentvar/structure/derivations.hpp"

#include <algorithm>
#include <stdexcept>

namespace momentvar::structure {

CVector vec(const CMatrix& a) { return CVector(a.entries().begin(), a.entries().end()); }

CMatrix unvec(std::span<const Complex> v, std::size_t n) {
  if (v.size() != n * n) throw std::invalid_argument("unvec: size mismatch");
  return CMatrix(n, n, CVector(v.begin(), v.end()));
}

CMatrix derivation_system(const AlgebraTensor& mu) {
  const std::size_t n = mu.dim();
  CMatrix sys(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t row = (i * n + j) * n + k;
        for (std::size_t l = 0; l < n; ++l) {
          sys(row, k * n + l) += mu(i, j, l);  // A e_k component of mu(e_i, e_j)
          sys(row, l * n + i) -= mu(l, j, k);  // mu(A e_i, e_j)
          sys(row, l * n + j) -= mu(i, l, k);  // mu(e_i, A e_j)
        }
      }
  return sys;
}

DerivationBasis derivation_algebra(const AlgebraTensor& mu, double tol) {
  const std::size_t n = mu.dim();
  if (n == 0) throw std::invalid_argument("derivation_algebra: empty algebra");
  DerivationBasis der;
  if (mu.is_zero()) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) der.basis.push_back(CMatrix::unit(n, k, l));
    return der;
  }
  for (const CVector& v : cla::nullspace(derivation_system(algebra::normalized(mu)), tol, 1.0)) {
    der.basis.push_back(unvec(v, n));
  }
  return der;
}

double derivation_residual(const CMatrix& a, const AlgebraTensor& mu) {
  algebra::require_nonzero(mu, "derivation_residual");
  return algebra::act_lie(a, mu).norm() / mu.norm();
}

double commutator_closure_residual(const DerivationBasis& der) {
  std::vector<CVector> basis;
  for (const CMatrix& b : der.basis) basis.push_back(vec(b));
  double worst = 0.0;
  for (std::size_t i = 0; i < der.basis.size(); ++i)
    for (std::size_t j = i + 1; j < der.basis.size(); ++j) {
      const CVector c = vec(cla::commutator(der.basis[i], der.basis[j]));
      worst = std::max(worst, cla::distance_to_span(c, basis));
    }
  return worst;
}

}  // namespace momentvar::structure
