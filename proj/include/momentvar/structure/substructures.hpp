#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"

namespace momentvar::structure {

using algebra::AlgebraTensor;
using cla::CMatrix;
using cla::CVector;

struct EigenspaceSplit {
  std::vector<CVector> negative;  // A_-
  std::vector<CVector> zero;      // A_0
  std::vector<CVector> positive;  // A_+
};

// Eigenvectors of the Hermitian D grouped by sign, with |lambda| <= tol
// counted as zero.
EigenspaceSplit eigenspace_split(const CMatrix& d, double tol = 1e-6);

struct SubstructureReport {
  std::vector<CVector> center;
  std::vector<CVector> annihilator;
  std::vector<CVector> radical;
  std::optional<EigenspaceSplit> eig_split;
};

// Orthonormal bases of C(mu) = {x : xy = yx} and ann(mu) = {x : xA = Ax = 0};
// defined for any algebra.
std::vector<CVector> center(const AlgebraTensor& mu, double tol = cla::kDefaultRankTol);
std::vector<CVector> annihilator(const AlgebraTensor& mu, double tol = cla::kDefaultRankTol);

// Center and annihilator from the obvious linear systems; the radical from
// the trace form tr(L+_x L+_y) of the unitization. The radical is then
// checked to be a nilpotent ideal, tightening the rank tolerance by factors
// of 10 (down to 1e-13) while it is not. Throws std::invalid_argument for
// non-associative input and std::runtime_error if no tolerance passes.
SubstructureReport substructures(const AlgebraTensor& mu, double tol = cla::kDefaultRankTol);

// Smallest k with N^k = 0 for the span N, or 0 if none up to max_depth.
std::size_t nilpotency_index(const AlgebraTensor& mu, const std::vector<CVector>& span,
                             std::size_t max_depth, double tol = 1e-8);

// Largest distance of a product of a span vector with a basis vector (on
// either side) from the span.
double ideal_residual(const AlgebraTensor& mu, const std::vector<CVector>& span);

// Largest distance of a vector of `inner` from span(`outer`); both orthonormal.
double containment_residual(const std::vector<CVector>& inner, const std::vector<CVector>& outer);

struct ClauseResult {
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

struct StructureCheckResult {
  ClauseResult annihilator_in_positive;  // (i)   ann(mu) in A_+
  ClauseResult positive_in_radical;      // (ii)  A_+ in N(mu)
  ClauseResult negative_central;         // (iii) A_- in C(mu) and N(mu), A_- meets ann(mu) only in 0
  ClauseResult zero_adjoint_derivation;  // (iv)  (L_A - R_A)^* in Der(mu) for A in A_0
  bool all_pass() const;
};

// Runs the four containment checks of the structure theorem for a critical
// point. Throws std::invalid_argument when report is not critical.
StructureCheckResult structure_checks(const AlgebraTensor& mu, const moment::CriticalReport& report,
                                      double tol = 1e-6);

nlohmann::json substructures_to_json(const SubstructureReport& r);
nlohmann::json structure_checks_to_json(const StructureCheckResult& r);

}  // namespace momentvar::structure
