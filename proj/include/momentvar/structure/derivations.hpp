#pragma once

#include <vector>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/cla/decompositions.hpp"

namespace momentvar::structure {

using algebra::AlgebraTensor;
using cla::CMatrix;
using cla::Complex;
using cla::CVector;

struct DerivationBasis {
  std::vector<CMatrix> basis;  // orthonormal for tr(A B^*)
};

// Matrix of A -> A.mu acting on vec(A) (row-major, entry (k, l) at k*n + l),
// with rows indexed like the structure constants. Size n^3 x n^2.
CMatrix derivation_system(const AlgebraTensor& mu);

// Orthonormal basis of Der(mu) = ker(A -> A.mu).
DerivationBasis derivation_algebra(const AlgebraTensor& mu, double tol = cla::kDefaultRankTol);

// ||A.mu|| / ||mu||.
double derivation_residual(const CMatrix& a, const AlgebraTensor& mu);

// Largest distance from [B_i, B_j] to span(basis), over all pairs.
double commutator_closure_residual(const DerivationBasis& der);

// Reshapes between n x n matrices and their row-major vectors.
CVector vec(const CMatrix& a);
CMatrix unvec(std::span<const Complex> v, std::size_t n);

}  // namespace momentvar::structure
