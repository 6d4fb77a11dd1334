#include "momentvar/moment/moment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "momentvar/algebra/json_io.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/cla/rational.hpp"

namespace momentvar::moment {

using cla::Complex;

MomentMatrix moment_matrix(const AlgebraTensor& mu) {
  algebra::require_nonzero(mu, "moment_matrix");
  const std::size_t n = mu.dim();
  CMatrix m(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          s += 2.0 * mu(i, j, a) * std::conj(mu(i, j, b));
          s -= 2.0 * std::conj(mu(i, a, j)) * mu(i, b, j);
          s -= 2.0 * std::conj(mu(a, i, j)) * mu(b, i, j);
        }
      }
      m(a, b) = s;
      m(b, a) = std::conj(s);
    }
    m(a, a) = m(a, a).real();
  }
  return {std::move(m), mu.norm_sq()};
}

double f_value(const AlgebraTensor& mu) {
  const MomentMatrix mm = moment_matrix(mu);
  // tr M^2 = ||M||_F^2 for Hermitian M.
  const double fro = mm.m.frobenius_norm();
  return fro * fro / (mm.norm_sq * mm.norm_sq);
}

AlgebraTensor euclidean_gradient(const AlgebraTensor& mu) {
  const MomentMatrix mm = moment_matrix(mu);
  const double fro = mm.m.frobenius_norm();
  const double n2 = mm.norm_sq;
  const double f = fro * fro / (n2 * n2);
  AlgebraTensor g = (8.0 / (n2 * n2)) * algebra::act_lie(mm.m, mu);
  g -= (4.0 * f / n2) * mu;
  return g;
}

CriticalType critical_type(const CMatrix& d, const TypeOptions& opts) {
  if (!d.is_square()) throw std::invalid_argument("critical_type: D must be square");
  const std::size_t n = d.rows();
  const std::vector<double> ev = cla::hermitian_eig(d).eigenvalues;
  double rho = 0.0;
  for (double x : ev) rho = std::max(rho, std::abs(x));
  if (rho <= opts.zero_tol) return {{0}, {static_cast<int>(n)}};

  // Single-linkage clusters of the ascending normalized spectrum.
  std::vector<double> means;
  std::vector<int> sizes;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = ev[i] / rho;
    if (i == 0 || x - prev > opts.cluster_tol) {
      means.push_back(0.0);
      sizes.push_back(0);
    }
    means.back() += x;
    ++sizes.back();
    prev = x;
  }
  for (std::size_t c = 0; c < means.size(); ++c) means[c] /= sizes[c];

  std::vector<cla::Rational> fracs;
  std::int64_t lcm = 1;
  for (double x : means) {
    const auto r = cla::best_rational(x, opts.max_den, opts.cluster_tol);
    if (!r) {
      throw TypeReconstructionError("critical_type: eigenvalue ratio " + std::to_string(x) +
                                    " has no rational form with denominator <= " +
                                    std::to_string(opts.max_den));
    }
    fracs.push_back(*r);
    lcm = std::lcm(lcm, r->den());
  }
  CriticalType t;
  std::int64_t g = 0;
  for (const cla::Rational& r : fracs) {
    t.ks.push_back(r.num() * (lcm / r.den()));
    g = std::gcd(g, t.ks.back());
  }
  if (g > 1) {
    for (std::int64_t& k : t.ks) k /= g;
  }
  // Clusters are separated by more than cluster_tol, so the reconstructed
  // rationals are distinct unless the tolerance is too coarse.
  for (std::size_t i = 1; i < t.ks.size(); ++i) {
    if (t.ks[i - 1] >= t.ks[i]) {
      throw TypeReconstructionError("critical_type: clusters collapse to the same rational");
    }
  }
  t.ds = sizes;
  return t;
}

double value_from_type(const CriticalType& type, int n) {
  if (type.ks.size() != type.ds.size() || type.dim() != n || n <= 0) {
    throw std::invalid_argument("value_from_type: multiplicities must sum to n");
  }
  if (type.ks.size() == 1 && type.ks[0] == 0) return 4.0 / n;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < type.ks.size(); ++i) {
    s1 += static_cast<double>(type.ks[i]) * type.ds[i];
    s2 += static_cast<double>(type.ks[i]) * static_cast<double>(type.ks[i]) * type.ds[i];
  }
  const double denom = n - s1 * s1 / s2;
  if (!(denom > 0.0)) throw std::invalid_argument("value_from_type: degenerate type " + type.str());
  return 4.0 / denom;
}

CriticalReport critical_test(const AlgebraTensor& mu, const CriticalOptions& opts) {
  algebra::require_nonzero(mu, "critical_test");
  const AlgebraTensor unit = algebra::normalized(mu);
  const std::size_t n = unit.dim();
  const MomentMatrix mm = moment_matrix(unit);

  CriticalReport r;
  const double tr = mm.m.trace().real();
  const double fro = mm.m.frobenius_norm();
  r.c = fro * fro / tr;
  r.d = mm.m - r.c * CMatrix::identity(n);
  r.residual = algebra::act_lie(r.d, unit).norm();
  r.critical = r.residual <= opts.tol;
  r.value = fro * fro;
  r.d_eigenvalues = cla::hermitian_eig(r.d).eigenvalues;
  if (r.critical) {
    try {
      r.type = critical_type(r.d, opts.type);
    } catch (const TypeReconstructionError& e) {
      r.type_error = e.what();
    }
  }
  return r;
}

nlohmann::json report_to_json(const CriticalReport& r) {
  nlohmann::json j = {{"c", r.c},
                      {"residual", r.residual},
                      {"critical", r.critical},
                      {"value", r.value},
                      {"D_eigenvalues", r.d_eigenvalues}};
  j["type"] = r.type ? algebra::type_to_json(*r.type) : nlohmann::json(nullptr);
  if (r.type) j["type_text"] = r.type->str();
  if (!r.type_error.empty()) j["type_error"] = r.type_error;
  return j;
}

}  // namespace momentvar::moment
