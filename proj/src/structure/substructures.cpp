#include "momentvar/structure/substructures.hpp"

#include "momentvar/structure/derivations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace momentvar::structure {

using cla::Complex;

namespace {

constexpr double kRadicalTolFloor = 1e-13;

std::vector<CVector> standard_basis(std::size_t n) {
  std::vector<CVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    CVector e(n);
    e[i] = 1.0;
    basis.push_back(e);
  }
  return basis;
}

nlohmann::json vectors_to_json(const std::vector<CVector>& vs) {
  nlohmann::json out = nlohmann::json::array();
  for (const CVector& v : vs) {
    nlohmann::json row = nlohmann::json::array();
    for (const Complex& z : v) row.push_back({z.real(), z.imag()});
    out.push_back(row);
  }
  return out;
}

nlohmann::json clause_to_json(const ClauseResult& c) {
  nlohmann::json j = {{"pass", c.pass}, {"residual", c.residual}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace

EigenspaceSplit eigenspace_split(const CMatrix& d, double tol) {
  const cla::HermEig eig = cla::hermitian_eig(d);
  EigenspaceSplit split;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const double x = eig.eigenvalues[i];
    CVector v = eig.eigenvectors.column(i);
    if (x < -tol) {
      split.negative.push_back(std::move(v));
    } else if (x > tol) {
      split.positive.push_back(std::move(v));
    } else {
      split.zero.push_back(std::move(v));
    }
  }
  return split;
}

std::size_t nilpotency_index(const AlgebraTensor& mu, const std::vector<CVector>& span,
                             std::size_t max_depth, double tol) {
  std::vector<CVector> power = span;
  for (std::size_t depth = 1; depth <= max_depth + 1; ++depth) {
    if (power.empty()) return depth;
    std::vector<CVector> products;
    for (const CVector& a : power)
      for (const CVector& b : span) {
        CVector p = mu.product(a, b);
        if (cla::norm(p) > tol) products.push_back(std::move(p));
      }
    power = products.empty() ? std::vector<CVector>{} : cla::orthonormal_span(products);
  }
  return 0;
}

double ideal_residual(const AlgebraTensor& mu, const std::vector<CVector>& span) {
  double worst = 0.0;
  for (const CVector& r : span)
    for (const CVector& e : standard_basis(mu.dim())) {
      worst = std::max(worst, cla::distance_to_span(mu.product(r, e), span));
      worst = std::max(worst, cla::distance_to_span(mu.product(e, r), span));
    }
  return worst;
}

double containment_residual(const std::vector<CVector>& inner, const std::vector<CVector>& outer) {
  double worst = 0.0;
  for (const CVector& v : inner) worst = std::max(worst, cla::distance_to_span(v, outer));
  return worst;
}

std::vector<CVector> center(const AlgebraTensor& mu, double tol) {
  const std::size_t n = mu.dim();
  if (mu.is_zero()) return standard_basis(n);
  const AlgebraTensor unit = algebra::normalized(mu);
  // sum_i x_i (c_ij^k - c_ji^k) = 0
  CMatrix comm(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) comm(j * n + k, i) = unit(i, j, k) - unit(j, i, k);
  return cla::nullspace(comm, tol, 1.0);
}

std::vector<CVector> annihilator(const AlgebraTensor& mu, double tol) {
  const std::size_t n = mu.dim();
  if (mu.is_zero()) return standard_basis(n);
  const AlgebraTensor unit = algebra::normalized(mu);
  CMatrix ann(2 * n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) {
        ann(j * n + k, i) = unit(i, j, k);
        ann(n * n + j * n + k, i) = unit(j, i, k);
      }
  return cla::nullspace(ann, tol, 1.0);
}

SubstructureReport substructures(const AlgebraTensor& mu, double tol) {
  const std::size_t n = mu.dim();
  if (n == 0) throw std::invalid_argument("substructures: empty algebra");
  if (!algebra::is_associative(mu).associative) {
    throw std::invalid_argument("substructures: algebra is not associative");
  }
  SubstructureReport rep;
  if (mu.is_zero()) {
    rep.center = rep.annihilator = rep.radical = standard_basis(n);
    return rep;
  }
  const AlgebraTensor unit = algebra::normalized(mu);
  rep.center = center(unit, tol);
  rep.annihilator = annihilator(unit, tol);

  // Trace form of the unitization restricted to x in A: the unit row gives
  // tr L_x and the remaining rows tr(L_y L_x).
  std::vector<CMatrix> left;
  for (std::size_t i = 0; i < n; ++i) left.push_back(unit.left_basis(i));
  CMatrix form(n + 1, n);
  for (std::size_t a = 0; a < n; ++a) {
    form(0, a) = left[a].trace();
    for (std::size_t b = 0; b < n; ++b) form(b + 1, a) = (left[b] * left[a]).trace();
  }
  // The form is quadratic in mu, so an ill-conditioned frame can push part of
  // its spectrum under tol. A candidate that fails the ideal or nilpotency
  // check is retried at a tighter tolerance.
  double ideal = 0.0;
  bool nilpotent = true;
  for (double t = tol;; t *= 0.1) {
    rep.radical = cla::nullspace(form, t, 1.0);
    ideal = ideal_residual(unit, rep.radical);
    nilpotent = rep.radical.empty() || nilpotency_index(unit, rep.radical, n) != 0;
    if (ideal <= std::max(1e-8, 10.0 * t) && nilpotent) return rep;
    if (t * 0.1 < kRadicalTolFloor) break;
  }
  if (!nilpotent) throw std::runtime_error("substructures: computed radical is not nilpotent");
  throw std::runtime_error("substructures: computed radical is not an ideal (residual " +
                           std::to_string(ideal) + ")");
}

bool StructureCheckResult::all_pass() const {
  return annihilator_in_positive.pass && positive_in_radical.pass && negative_central.pass &&
         zero_adjoint_derivation.pass;
}

StructureCheckResult structure_checks(const AlgebraTensor& mu, const moment::CriticalReport& report,
                                      double tol) {
  if (!report.critical) throw std::invalid_argument("structure_checks: input is not critical");
  const AlgebraTensor unit = algebra::normalized(mu);
  const SubstructureReport sub = substructures(unit);
  double radius = 0.0;
  for (double x : report.d_eigenvalues) radius = std::max(radius, std::abs(x));
  const EigenspaceSplit split = eigenspace_split(report.d, 1e-6 * std::max(1.0, radius));

  StructureCheckResult out;
  auto fill = [tol](ClauseResult& c, double residual, std::string detail = {}) {
    c.residual = residual;
    c.pass = residual <= tol;
    c.detail = std::move(detail);
  };

  fill(out.annihilator_in_positive, containment_residual(sub.annihilator, split.positive));
  fill(out.positive_in_radical, containment_residual(split.positive, sub.radical));

  const double in_center = containment_residual(split.negative, sub.center);
  const double in_radical = containment_residual(split.negative, sub.radical);
  // A_- and ann(mu) meet only in 0 iff their bases stay independent together.
  std::string detail;
  double meet = 0.0;
  if (!split.negative.empty() && !sub.annihilator.empty()) {
    std::vector<CVector> joint = split.negative;
    joint.insert(joint.end(), sub.annihilator.begin(), sub.annihilator.end());
    const std::size_t rank = cla::orthonormal_span(joint, 1e-6).size();
    if (rank < joint.size()) {
      meet = 1.0;
      detail = "A_- meets the annihilator";
    }
  }
  fill(out.negative_central, std::max({in_center, in_radical, meet}), detail);

  double worst = 0.0;
  for (const CVector& a : split.zero) {
    const CMatrix diff = unit.left(a) - unit.right(a);
    worst = std::max(worst, derivation_residual(diff.adjoint(), unit));
  }
  fill(out.zero_adjoint_derivation, worst);
  return out;
}

nlohmann::json substructures_to_json(const SubstructureReport& r) {
  nlohmann::json j = {{"center", vectors_to_json(r.center)},
                      {"annihilator", vectors_to_json(r.annihilator)},
                      {"radical", vectors_to_json(r.radical)},
                      {"dims",
                       {{"center", r.center.size()},
                        {"annihilator", r.annihilator.size()},
                        {"radical", r.radical.size()}}}};
  if (r.eig_split) {
    j["eig_split"] = {{"negative", vectors_to_json(r.eig_split->negative)},
                      {"zero", vectors_to_json(r.eig_split->zero)},
                      {"positive", vectors_to_json(r.eig_split->positive)}};
  }
  return j;
}

nlohmann::json structure_checks_to_json(const StructureCheckResult& r) {
  return {{"annihilator_in_positive", clause_to_json(r.annihilator_in_positive)},
          {"positive_in_radical", clause_to_json(r.positive_in_radical)},
          {"negative_central", clause_to_json(r.negative_central)},
          {"zero_adjoint_derivation", clause_to_json(r.zero_adjoint_derivation)},
          {"all_pass", r.all_pass()}};
}

}  // namespace momentvar::structure
