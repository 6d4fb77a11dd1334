#pragma once

#include <functional>
#include <span>
#include <vector>

#include "momentvar/cla/cmatrix.hpp"

namespace momentvar::cla {

// Default relative rank tolerance. A singular value s is treated as zero when
// s <= tol * max(rows, cols) * s_max.
inline constexpr double kDefaultRankTol = 1e-9;

struct HermEig {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // unitary, eigenvector i in column i
};

// Cyclic complex Jacobi. The input is symmetrized before iterating.
// Throws std::invalid_argument for non-square input or when
// ||A - A^*|| > 1e-8 ||A||.
HermEig hermitian_eig(const CMatrix& a);

// Applies a real function to the spectrum: V f(Lambda) V^*.
CMatrix hermitian_function(const HermEig& eig, const std::function<double(double)>& f);

// Singular value decomposition A = U diag(sigma) V^*, sigma descending, one
// singular value per column of A (wide inputs get trailing zeros). v is the
// full cols x cols unitary factor; u is rows x cols with zero columns where
// sigma vanishes. Tall inputs are first reduced by Householder QR, then
// one-sided Jacobi runs on the triangular factor.
struct Svd {
  CMatrix u;
  std::vector<double> sigma;
  CMatrix v;
};
Svd svd(const CMatrix& a);

// Number of singular values above the rank threshold.
std::size_t numerical_rank(const Svd& s, std::size_t rows, std::size_t cols, double tol,
                           double scale = 0.0);

// Orthonormal basis of the numerical kernel of A. The basis is canonical: it
// is Gram-Schmidt applied, in index order, to the columns of the kernel
// projector, so it does not depend on rotations inside the SVD.
// Singular values up to tol * max(rows, cols) * max(sigma_max, scale) count
// as zero; a positive scale keeps a matrix of pure round-off from looking
// full rank. Throws std::invalid_argument on an empty matrix or tol <= 0.
std::vector<CVector> nullspace(const CMatrix& a, double tol = kDefaultRankTol, double scale = 0.0);

struct LstsqResult {
  CVector x;
  double residual = 0.0;  // ||A x - b||
  std::size_t rank = 0;
};

// Minimal-norm minimizer of ||A x - b||.
LstsqResult lstsq_min_norm(const CMatrix& a, std::span<const Complex> b,
                           double tol = kDefaultRankTol);

// Gaussian elimination with partial pivoting. Throws std::domain_error if the
// matrix is singular to working precision.
CMatrix inverse(const CMatrix& a);

// Matrix exponential by scaling and squaring of a truncated Taylor series.
CMatrix expm(const CMatrix& a);

// sigma_max / sigma_min (infinity for singular input).
double condition_number(const CMatrix& a);

// Orthonormal basis of span(vectors), canonical in the same sense as
// nullspace(). Vectors are the columns of the spanning set.
std::vector<CVector> orthonormal_span(std::span<const CVector> vectors,
                                      double tol = kDefaultRankTol);

// Distance from v to span(basis); basis must be orthonormal.
double distance_to_span(std::span<const Complex> v, std::span<const CVector> basis);

// Coefficients of the orthogonal projection of v onto an orthonormal basis.
CVector project_coefficients(std::span<const Complex> v, std::span<const CVector> basis);

}  // namespace momentvar::cla
