#include "momentvar/structure/nikolayevsky.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "momentvar/structure/general_eigen.hpp"

namespace momentvar::structure {

using cla::Rational;

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

// Rows of `rows` that are linearly independent, chosen greedily in order.
RMatrix independent_rows(const RMatrix& rows) {
  RMatrix kept;
  RMatrix echelon;  // reduced copies of kept rows
  std::vector<std::size_t> pivots;
  for (const auto& row : rows) {
    std::vector<Rational> r = row;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const Rational f = r[pivots[e]];
      if (f.num() == 0) continue;
      for (std::size_t c = 0; c < r.size(); ++c) r[c] = r[c] - f * echelon[e][c];
    }
    const auto it = std::find_if(r.begin(), r.end(), [](const Rational& q) { return q.num() != 0; });
    if (it == r.end()) continue;
    const std::size_t p = static_cast<std::size_t>(it - r.begin());
    const Rational lead = r[p];
    for (Rational& q : r) q = q / lead;
    for (auto& prev : echelon) {
      const Rational f = prev[p];
      if (f.num() == 0) continue;
      for (std::size_t c = 0; c < prev.size(); ++c) prev[c] = prev[c] - f * r[c];
    }
    echelon.push_back(r);
    pivots.push_back(p);
    kept.push_back(row);
  }
  return kept;
}

// Solves the nonsingular system a x = b exactly.
std::vector<Rational> solve_exact(RMatrix a, std::vector<Rational> b) {
  const std::size_t s = a.size();
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = col;
    while (piv < s && a[piv][col].num() == 0) ++piv;
    if (piv == s) throw std::domain_error("solve_exact: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < s; ++r) {
      if (r == col || a[r][col].num() == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < s; ++c) a[r][c] = a[r][c] - f * a[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  for (std::size_t r = 0; r < s; ++r) b[r] = b[r] / a[r][r];
  return b;
}

double trace_condition_residual(const CMatrix& phi, const DerivationBasis& der) {
  double worst = 0.0;
  for (const CMatrix& b : der.basis) {
    worst = std::max(worst, std::abs((phi * b).trace() - b.trace()));
  }
  return worst;
}

}  // namespace

std::vector<Rational> exact_spectrum(const std::vector<Rational>& pattern,
                                     const std::vector<int>& ds) {
  const std::size_t r = pattern.size();
  if (ds.size() != r) throw std::invalid_argument("exact_spectrum: size mismatch");
  RMatrix relations;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (!(pattern[i] + pattern[j] == pattern[k])) continue;
        std::vector<Rational> row(r);
        row[i] = row[i] + Rational(1);
        row[j] = row[j] + Rational(1);
        row[k] = row[k] - Rational(1);
        relations.push_back(row);
      }
  const RMatrix e = independent_rows(relations);
  std::vector<Rational> c(r, Rational(1));
  if (e.empty()) return c;
  const std::size_t s = e.size();
  // c = 1 - D^-1 E^T (E D^-1 E^T)^-1 1.
  RMatrix a(s, std::vector<Rational>(s));
  for (std::size_t p = 0; p < s; ++p)
    for (std::size_t q = 0; q < s; ++q)
      for (std::size_t i = 0; i < r; ++i) {
        if (e[p][i].num() == 0 || e[q][i].num() == 0) continue;
        a[p][q] = a[p][q] + e[p][i] * e[q][i] / Rational(ds[i]);
      }
  const std::vector<Rational> y = solve_exact(a, std::vector<Rational>(s, Rational(1)));
  for (std::size_t i = 0; i < r; ++i) {
    Rational t;
    for (std::size_t p = 0; p < s; ++p) t = t + e[p][i] * y[p];
    c[i] = c[i] - t / Rational(ds[i]);
  }
  return c;
}

NikolayevskyResult nikolayevsky(const AlgebraTensor& mu, const NikolayevskyOptions& opts) {
  algebra::require_nonzero(mu, "nikolayevsky");
  const std::size_t n = mu.dim();
  const AlgebraTensor unit = algebra::normalized(mu);
  const DerivationBasis der = derivation_algebra(unit, opts.rank_tol);
  const std::size_t k = der.basis.size();

  NikolayevskyResult res;
  res.der_dim = k;

  CMatrix phi_min(n, n);
  if (k > 0) {
    CMatrix gram(k, k);
    cla::CVector rhs(k);
    for (std::size_t j = 0; j < k; ++j) {
      rhs[j] = der.basis[j].trace();
      for (std::size_t i = 0; i < k; ++i) gram(j, i) = (der.basis[i] * der.basis[j]).trace();
    }
    const cla::LstsqResult sol = cla::lstsq_min_norm(gram, rhs, opts.rank_tol);
    for (std::size_t i = 0; i < k; ++i) phi_min += sol.x[i] * der.basis[i];
  }

  auto finish_without_semisimple = [&](std::string note) {
    res.phi = phi_min;
    res.is_semisimple = false;
    res.note = std::move(note);
    res.trace_residual = trace_condition_residual(phi_min, der);
    res.derivation_residual = derivation_residual(phi_min, unit);
    return res;
  };

  const std::vector<Complex> ev = general_eigenvalues(phi_min);
  double radius = 0.0;
  for (const Complex& z : ev) radius = std::max(radius, std::abs(z));
  const double scale = std::max(1.0, radius);
  for (const Complex& z : ev) {
    if (std::abs(z.imag()) > opts.cluster_tol * scale) {
      return finish_without_semisimple("spectrum is not real");
    }
  }

  std::vector<double> means;
  std::vector<int> sizes;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (i == 0 || ev[i].real() - ev[i - 1].real() > opts.cluster_tol * scale) {
      means.push_back(0.0);
      sizes.push_back(0);
    }
    means.back() += ev[i].real();
    ++sizes.back();
  }
  std::vector<Rational> distinct;
  for (std::size_t c = 0; c < means.size(); ++c) {
    means[c] /= sizes[c];
    const auto q = cla::best_rational(means[c], opts.max_den, opts.rational_tol);
    if (!q) return finish_without_semisimple("eigenvalue " + std::to_string(means[c]) + " is not rational");
    distinct.push_back(*q);
  }

  // Semisimple part from the generalized eigenspaces of phi_min.
  std::vector<cla::CVector> columns;
  std::vector<Complex> lambda;
  for (std::size_t c = 0; c < distinct.size(); ++c) {
    CMatrix shifted = phi_min - distinct[c].value() * CMatrix::identity(n);
    CMatrix power = CMatrix::identity(n);
    for (int p = 0; p < sizes[c]; ++p) power = power * shifted;
    const cla::Svd s = cla::svd(power);
    for (int p = 0; p < sizes[c]; ++p) {
      columns.push_back(s.v.column(n - 1 - static_cast<std::size_t>(p)));
      lambda.push_back(distinct[c].value());
    }
  }
  const CMatrix w = CMatrix::from_columns(columns);
  if (cla::condition_number(w) > 1e10) {
    return finish_without_semisimple("generalized eigenspaces are numerically dependent");
  }
  const CMatrix semisimple = w * CMatrix::diagonal(lambda) * cla::inverse(w);
  const double der_res = derivation_residual(semisimple, unit);
  const double tr_res = trace_condition_residual(semisimple, der);
  if (der_res > 1e-7 || tr_res > 1e-7) {
    return finish_without_semisimple("semisimple part fails the derivation or trace check");
  }

  res.phi = semisimple;
  res.is_semisimple = true;
  res.nilpotent_part = (phi_min - semisimple).frobenius_norm();
  res.trace_residual = tr_res;
  res.derivation_residual = der_res;
  for (std::size_t c = 0; c < distinct.size(); ++c) {
    for (int p = 0; p < sizes[c]; ++p) {
      res.eigen_rationals.push_back(distinct[c]);
      res.eigenvalues.push_back(distinct[c].value());
    }
  }
  try {
    res.exact_distinct = exact_spectrum(distinct, sizes);
    res.exact_agrees = res.exact_distinct == distinct;
  } catch (const std::exception& e) {
    res.note = std::string("exact check skipped: ") + e.what();
  }
  return res;
}

nlohmann::json nikolayevsky_to_json(const NikolayevskyResult& r) {
  nlohmann::json rationals = nlohmann::json::array();
  for (const Rational& q : r.eigen_rationals) rationals.push_back({q.num(), q.den()});
  nlohmann::json phi = nlohmann::json::array();
  for (std::size_t i = 0; i < r.phi.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < r.phi.cols(); ++j) row.push_back({r.phi(i, j).real(), r.phi(i, j).imag()});
    phi.push_back(row);
  }
  nlohmann::json j = {{"phi", phi},
                      {"eigen_rationals", rationals},
                      {"is_semisimple", r.is_semisimple},
                      {"trace_residual", r.trace_residual},
                      {"derivation_residual", r.derivation_residual},
                      {"der_dim", r.der_dim}};
  if (r.exact_agrees) j["exact_check"] = *r.exact_agrees;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace momentvar::structure
