#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/cla/rational.hpp"
#include "momentvar/structure/derivations.hpp"

namespace momentvar::structure {

struct NikolayevskyOptions {
  double rank_tol = cla::kDefaultRankTol;
  double cluster_tol = 1e-4;  // eigenvalue clustering, relative to max(1, spectral radius)
  double rational_tol = 1e-6;
  std::int64_t max_den = 64;
};

struct NikolayevskyResult {
  // The semisimple derivation when is_semisimple, otherwise the minimal-norm
  // solution of the trace system.
  CMatrix phi;
  // One rational per eigenvalue, ascending, repeated by multiplicity.
  std::vector<cla::Rational> eigen_rationals;
  std::vector<double> eigenvalues;  // numeric, ascending, with multiplicity
  bool is_semisimple = false;
  double trace_residual = 0.0;       // max_j |tr(phi B_j) - tr(B_j)|
  double derivation_residual = 0.0;  // ||phi.mu|| / ||mu||
  double nilpotent_part = 0.0;       // ||phi_min - phi|| for the extracted semisimple part
  std::size_t der_dim = 0;
  // Eigenvalues rebuilt exactly from the relations c_i + c_j = c_k, and
  // whether they agree with eigen_rationals.
  std::vector<cla::Rational> exact_distinct;
  std::optional<bool> exact_agrees;
  std::string note;
};

// Solves tr(phi psi) = tr(psi) over Der(mu) by minimal-norm least squares,
// extracts the semisimple part through generalized eigenspaces, and
// reconstructs the rational spectrum. Failures are reported through
// is_semisimple and note rather than thrown.
NikolayevskyResult nikolayevsky(const AlgebraTensor& mu, const NikolayevskyOptions& opts = {});

// Distinct eigenvalues c solving the rationality system for multiplicities
// ds and the relations c_i + c_j = c_k present in `pattern`; exact.
std::vector<cla::Rational> exact_spectrum(const std::vector<cla::Rational>& pattern,
                                          const std::vector<int>& ds);

nlohmann::json nikolayevsky_to_json(const NikolayevskyResult& r);

}  // namespace momentvar::structure
