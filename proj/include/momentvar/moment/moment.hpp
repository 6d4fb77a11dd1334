#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/algebra/critical_type.hpp"

namespace momentvar::moment {

using algebra::AlgebraTensor;
using algebra::CriticalType;
using cla::CMatrix;

struct MomentMatrix {
  CMatrix m;             // Hermitian
  double norm_sq = 0.0;  // ||mu||^2 at which m was computed
};

// M_mu = 2 sum L_i L_i^* - 2 sum L_i^* L_i - 2 sum R_i^* R_i, evaluated
// entrywise. Throws std::invalid_argument on the zero tensor.
MomentMatrix moment_matrix(const AlgebraTensor& mu);

// F(mu) = tr M_mu^2 / ||mu||^4.
double f_value(const AlgebraTensor& mu);

// Gradient of F for the real inner product Re<., .> on V_n:
// -4 F mu / ||mu||^2 + 8 (M_mu . mu) / ||mu||^4.
AlgebraTensor euclidean_gradient(const AlgebraTensor& mu);

// Raised when the spectrum of D has no rational pattern within tolerance.
class TypeReconstructionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct TypeOptions {
  double cluster_tol = 1e-6;  // after scaling D to unit spectral radius
  std::int64_t max_den = 64;
  double zero_tol = 1e-8;     // D counts as zero below this spectral radius
};

// Coprime integer pattern of a positive multiple of the Hermitian matrix D.
// D = 0 gives (0; n).
CriticalType critical_type(const CMatrix& d, const TypeOptions& opts = {});

// Closed-form value 4 / (n - (sum k_i d_i)^2 / sum k_i^2 d_i), or 4/n for
// (0; n). Throws std::invalid_argument when sum d_i != n.
double value_from_type(const CriticalType& type, int n);

struct CriticalOptions {
  double tol = 1e-7;  // residual threshold
  TypeOptions type;
};

struct CriticalReport {
  double c = 0.0;
  CMatrix d;
  double residual = 0.0;
  bool critical = false;
  std::optional<CriticalType> type;  // set when critical and reconstruction succeeds
  std::string type_error;            // reconstruction failure message, if any
  double value = 0.0;                // F(mu), always filled
  std::vector<double> d_eigenvalues;
};

// Normalizes mu, forms c = tr M^2 / tr M and D = M - cI, and measures
// residual = ||D . mu||. Throws std::invalid_argument on the zero tensor.
CriticalReport critical_test(const AlgebraTensor& mu, const CriticalOptions& opts = {});

nlohmann::json report_to_json(const CriticalReport& r);

}  // namespace momentvar::moment
