#include "momentvar/structure/gamma.hpp"

#include <algorithm>
#include <cmath>

#include "momentvar/cla/decompositions.hpp"
#include "momentvar/structure/derivations.hpp"
#include "momentvar/structure/substructures.hpp"

namespace momentvar::structure {

using cla::Complex;
using cla::CVector;

namespace {

constexpr double kCheckTol = 1e-8;

CVector pair_vec(const GammaPair& p) {
  CVector v = vec(p.phi);
  const CVector w = vec(p.psi);
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

std::vector<CVector> standard_basis(std::size_t n) {
  std::vector<CVector> basis;
  for (std::size_t i = 0; i < n; ++i) {
    CVector e(n);
    e[i] = 1.0;
    basis.push_back(e);
  }
  return basis;
}

// Combinations sum_a x_a basis[a] for each x in coefficient vectors.
std::vector<CMatrix> combine(const std::vector<CMatrix>& basis, const std::vector<CVector>& coeffs,
                             std::size_t m) {
  std::vector<CMatrix> out;
  for (const CVector& x : coeffs) {
    CMatrix s(m, m);
    for (std::size_t a = 0; a < basis.size(); ++a) s += x[a] * basis[a];
    out.push_back(std::move(s));
  }
  return out;
}

// Elements of span(family) commuting with every element of `other`.
std::vector<CMatrix> commutant_in(const std::vector<CMatrix>& family,
                                  const std::vector<CMatrix>& other, std::size_t m, double tol) {
  if (family.empty() || other.empty()) return family;
  CMatrix sys(m * m * other.size(), family.size());
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < other.size(); ++b) {
      const CMatrix c = cla::commutator(family[a], other[b]);
      for (std::size_t e = 0; e < m * m; ++e) sys(b * m * m + e, a) = c.entries()[e];
    }
  return combine(family, cla::nullspace(sys, tol, 1.0), m);
}

bool is_nilpotent(const AlgebraTensor& lam) {
  if (lam.is_zero()) return true;
  return nilpotency_index(algebra::normalized(lam), standard_basis(lam.dim()), lam.dim()) != 0;
}

}  // namespace

GammaPair operator*(const GammaPair& a, const GammaPair& b) {
  return {a.phi * b.phi, b.psi * a.psi};
}

GammaPair adjoint(const GammaPair& p) { return {p.phi.adjoint(), p.psi.adjoint()}; }

double left_intertwiner_residual(const CMatrix& phi, const AlgebraTensor& lam) {
  const auto basis = standard_basis(lam.dim());
  double worst = 0.0;
  for (const CVector& x : basis)
    for (const CVector& y : basis) {
      CVector d = phi * lam.product(x, y);
      const CVector r = lam.product(phi * x, y);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= r[k];
      worst = std::max(worst, cla::norm(d));
    }
  return worst;
}

double right_intertwiner_residual(const CMatrix& psi, const AlgebraTensor& lam) {
  const auto basis = standard_basis(lam.dim());
  double worst = 0.0;
  for (const CVector& x : basis)
    for (const CVector& y : basis) {
      CVector d = psi * lam.product(x, y);
      const CVector r = lam.product(x, psi * y);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= r[k];
      worst = std::max(worst, cla::norm(d));
    }
  return worst;
}

double compatibility_residual(const GammaPair& p, const AlgebraTensor& lam) {
  const auto basis = standard_basis(lam.dim());
  double worst = 0.0;
  for (const CVector& x : basis)
    for (const CVector& y : basis) {
      CVector d = lam.product(x, p.phi * y);
      const CVector r = lam.product(p.psi * x, y);
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= r[k];
      worst = std::max(worst, cla::norm(d));
    }
  return worst;
}

GammaStructure gamma_structure(const AlgebraTensor& lam, double tol) {
  const std::size_t m = lam.dim();
  if (m == 0) throw std::invalid_argument("gamma_structure: empty algebra");
  if (!is_nilpotent(lam)) throw std::invalid_argument("gamma_structure: algebra is not nilpotent");

  GammaStructure g;
  g.degenerate = lam.is_zero();
  const AlgebraTensor unit = g.degenerate ? lam : algebra::normalized(lam);

  CMatrix left_sys(m * m * m, m * m);
  CMatrix right_sys(m * m * m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        const std::size_t row = (i * m + j) * m + k;
        for (std::size_t l = 0; l < m; ++l) {
          left_sys(row, k * m + l) += unit(i, j, l);
          left_sys(row, l * m + i) -= unit(l, j, k);
          right_sys(row, k * m + l) += unit(i, j, l);
          right_sys(row, l * m + j) -= unit(i, l, k);
        }
      }
  auto to_matrices = [m](const std::vector<CVector>& vs) {
    std::vector<CMatrix> out;
    for (const CVector& v : vs) out.push_back(unvec(v, m));
    return out;
  };
  if (g.degenerate) {
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) g.left.push_back(CMatrix::unit(m, k, l));
    g.right = g.left;
  } else {
    g.left = to_matrices(cla::nullspace(left_sys, tol, 1.0));
    g.right = to_matrices(cla::nullspace(right_sys, tol, 1.0));
  }
  g.gamma_l = commutant_in(g.left, g.right, m, tol);
  g.gamma_r = commutant_in(g.right, g.left, m, tol);

  // Compatibility lam(X, Phi Y) = lam(Psi X, Y) on coefficient pairs (x, y).
  const std::size_t nl = g.gamma_l.size();
  const std::size_t nr = g.gamma_r.size();
  if (nl + nr > 0) {
    CMatrix sys(m * m * m, nl + nr);
    const auto basis = standard_basis(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t a = 0; a < nl; ++a) {
          const CVector p = unit.product(basis[i], g.gamma_l[a] * basis[j]);
          for (std::size_t k = 0; k < m; ++k) sys((i * m + j) * m + k, a) = p[k];
        }
        for (std::size_t b = 0; b < nr; ++b) {
          const CVector p = unit.product(g.gamma_r[b] * basis[i], basis[j]);
          for (std::size_t k = 0; k < m; ++k) sys((i * m + j) * m + k, nl + b) = -p[k];
        }
      }
    for (const CVector& x : cla::nullspace(sys, tol, 1.0)) {
      GammaPair p{CMatrix(m, m), CMatrix(m, m)};
      for (std::size_t a = 0; a < nl; ++a) p.phi += x[a] * g.gamma_l[a];
      for (std::size_t b = 0; b < nr; ++b) p.psi += x[nl + b] * g.gamma_r[b];
      g.gamma.push_back(std::move(p));
    }
  }

  std::vector<CVector> span;
  for (const GammaPair& p : g.gamma) span.push_back(pair_vec(p));
  for (const GammaPair& a : g.gamma)
    for (const GammaPair& b : g.gamma) {
      g.product_closure_residual =
          std::max(g.product_closure_residual, cla::distance_to_span(pair_vec(a * b), span));
    }
  return g;
}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string s = "semidirect_sum: preconditions violated:";
  for (const std::string& x : v) s += " [" + x + "]";
  return s;
}

}  // namespace

SemidirectPreconditionError::SemidirectPreconditionError(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

AlgebraTensor semidirect_sum(const std::vector<GammaPair>& s, const AlgebraTensor& lam,
                             const moment::CriticalReport& critical) {
  const std::size_t d = s.size();
  if (d == 0) return lam;
  algebra::require_nonzero(lam, "semidirect_sum");
  const std::size_t m = lam.dim();
  for (const GammaPair& p : s) {
    if (p.phi.rows() != m || p.phi.cols() != m || p.psi.rows() != m || p.psi.cols() != m) {
      throw std::invalid_argument("semidirect_sum: pairs must be m x m");
    }
  }

  std::vector<std::string> violations;
  if (!critical.critical) violations.push_back("lam is not critical");
  std::vector<CVector> cols;
  for (const GammaPair& p : s) cols.push_back(pair_vec(p));
  const std::vector<CVector> span = cla::orthonormal_span(cols);
  if (span.size() < d) violations.push_back("S is linearly dependent");

  double closure = 0.0;
  for (const GammaPair& a : s)
    for (const GammaPair& b : s) closure = std::max(closure, cla::distance_to_span(pair_vec(a * b), span));
  if (closure > kCheckTol) {
    violations.push_back("S is not closed under the product (residual " + std::to_string(closure) + ")");
  }
  double adj = 0.0;
  for (const GammaPair& a : s) adj = std::max(adj, cla::distance_to_span(pair_vec(adjoint(a)), span));
  if (adj > kCheckTol) {
    violations.push_back("S is not closed under adjoint (residual " + std::to_string(adj) + ")");
  }
  if (critical.d.rows() == m) {
    double comm = 0.0;
    for (const GammaPair& a : s) {
      comm = std::max(comm, cla::commutator(critical.d, a.phi).frobenius_norm());
      comm = std::max(comm, cla::commutator(critical.d, a.psi).frobenius_norm());
    }
    if (comm > kCheckTol) {
      violations.push_back("S does not commute with D (residual " + std::to_string(comm) + ")");
    }
  } else {
    violations.push_back("critical report has the wrong dimension");
  }
  if (!is_nilpotent(lam)) {
    violations.push_back("lam is not nilpotent");
  } else {
    const GammaStructure g = gamma_structure(lam);
    std::vector<CVector> gspan;
    for (const GammaPair& p : g.gamma) gspan.push_back(pair_vec(p));
    double member = 0.0;
    for (const CVector& v : cols) member = std::max(member, cla::distance_to_span(v, gspan) / cla::norm(v));
    if (member > kCheckTol) {
      violations.push_back("S is not contained in Gamma(lam) (residual " + std::to_string(member) + ")");
    }
  }
  if (!violations.empty()) throw SemidirectPreconditionError(std::move(violations));

  // Coordinates in the S basis through least squares on stacked pair vectors.
  CMatrix basis_matrix = CMatrix::from_columns(cols);
  auto coords = [&](const GammaPair& p) { return cla::lstsq_min_norm(basis_matrix, pair_vec(p)).x; };
  std::vector<std::vector<CVector>> prod(d, std::vector<CVector>(d));
  std::vector<CVector> adj_coords(d);
  for (std::size_t a = 0; a < d; ++a) {
    adj_coords[a] = coords(adjoint(s[a]));
    for (std::size_t b = 0; b < d; ++b) prod[a][b] = coords(s[a] * s[b]);
  }
  // Left multiplication in S: (L_a)_{cb} = coefficient of H_c in H_a H_b.
  std::vector<CMatrix> left_s(d, CMatrix(d, d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) left_s[a](c, b) = prod[a][b][c];

  const double c_lam = critical.c * lam.norm_sq();
  CMatrix gram(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      CMatrix left_adj(d, d);
      for (std::size_t e = 0; e < d; ++e) left_adj += adj_coords[b][e] * left_s[e];
      const Complex t = (left_s[a] * left_adj).trace() + (s[a].phi * s[b].phi.adjoint()).trace() +
                        (s[a].psi * s[b].psi.adjoint()).trace();
      gram(a, b) = -(2.0 / c_lam) * t;
    }
  CMatrix gram_conj(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) gram_conj(a, b) = std::conj(gram(a, b));
  const cla::HermEig eig = cla::hermitian_eig(gram_conj);
  if (eig.eigenvalues.front() <= 0.0) {
    throw std::domain_error("semidirect_sum: extended metric is not positive definite");
  }
  const CMatrix t = cla::hermitian_function(eig, [](double x) { return 1.0 / std::sqrt(x); });

  const std::size_t n = m + d;
  AlgebraTensor mu(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) mu(i, j, k) = lam(i, j, k);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        mu(m + a, j, k) = s[a].phi(k, j);
        mu(j, m + a, k) = s[a].psi(k, j);
      }
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) mu(m + a, m + b, m + c) = prod[a][b][c];
  }
  // New frame: e_1..e_m, then f_p = sum_a T_ap H_a.
  CMatrix frame = CMatrix::identity(n);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t p = 0; p < d; ++p) frame(m + a, m + p) = t(a, p);
  return algebra::act_group(cla::inverse(frame), frame, mu);
}

}  // namespace momentvar::structure
