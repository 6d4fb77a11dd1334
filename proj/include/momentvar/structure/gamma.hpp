#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"

namespace momentvar::structure {

using algebra::AlgebraTensor;
using cla::CMatrix;

struct GammaPair {
  CMatrix phi;
  CMatrix psi;
};

// Product (Phi1, Psi1)(Phi2, Psi2) = (Phi1 Phi2, Psi2 Psi1).
GammaPair operator*(const GammaPair& a, const GammaPair& b);
GammaPair adjoint(const GammaPair& p);

struct GammaStructure {
  std::vector<CMatrix> left;     // L(lam): Phi(lam(X, Y)) = lam(Phi X, Y)
  std::vector<CMatrix> right;    // R(lam): Psi(lam(X, Y)) = lam(X, Psi Y)
  std::vector<CMatrix> gamma_l;  // elements of L(lam) commuting with R(lam)
  std::vector<CMatrix> gamma_r;  // elements of R(lam) commuting with L(lam)
  std::vector<GammaPair> gamma;  // pairs with lam(., Phi .) = lam(Psi ., .)
  double product_closure_residual = 0.0;
  bool degenerate = false;  // lam = 0
};

// Max over basis X, Y of ||Phi lam(X,Y) - lam(Phi X, Y)||, and the right analogue.
double left_intertwiner_residual(const CMatrix& phi, const AlgebraTensor& lam);
double right_intertwiner_residual(const CMatrix& psi, const AlgebraTensor& lam);
// Max over basis X, Y of ||lam(X, Phi Y) - lam(Psi X, Y)||.
double compatibility_residual(const GammaPair& p, const AlgebraTensor& lam);

// Bases of L, R, Gamma_l, Gamma_r and Gamma for a nilpotent lam. Throws
// std::invalid_argument when lam is not nilpotent.
GammaStructure gamma_structure(const AlgebraTensor& lam, double tol = cla::kDefaultRankTol);

// Raised by semidirect_sum with every violated precondition listed.
class SemidirectPreconditionError : public std::invalid_argument {
 public:
  explicit SemidirectPreconditionError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// S (x) lam with product (Phi1 Phi2, Psi2 Psi1) + Phi1 X2 + Psi2 X1 + X1 X2,
// written on an orthonormal frame for the metric that keeps lam's frame and
// uses -(2/c)(tr L^S_H L^S_{K*} + tr H K^*) on S. The lam block comes first.
// `critical` is the report of lam; c is rescaled to lam's own norm.
AlgebraTensor semidirect_sum(const std::vector<GammaPair>& s, const AlgebraTensor& lam,
                             const moment::CriticalReport& critical);

}  // namespace momentvar::structure
