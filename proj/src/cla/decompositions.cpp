#include "momentvar/cla/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace momentvar::cla {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Solves t^2 + 2 zeta t - 1 = 0 for the root of smaller magnitude.
double jacobi_tangent(double zeta) {
  if (std::abs(zeta) > 1e150) return 0.5 / zeta;
  const double sign = zeta >= 0.0 ? 1.0 : -1.0;
  return sign / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
}

// Gram-Schmidt over the columns of the projector onto span(basis), in index
// order. `basis` is orthonormal; the result spans the same subspace.
std::vector<CVector> canonical_basis(const std::vector<CVector>& basis, std::size_t ambient) {
  std::vector<CVector> out;
  const std::size_t dim = basis.size();
  if (dim == 0) return out;
  out.reserve(dim);
  for (std::size_t j = 0; j < ambient && out.size() < dim; ++j) {
    CVector v(ambient, 0.0);
    for (const CVector& b : basis) axpy(std::conj(b[j]), b, v);
    for (int pass = 0; pass < 2; ++pass)
      for (const CVector& u : out) axpy(-inner(v, u), u, v);
    const double nv = norm(v);
    if (nv > 1e-3) out.push_back(scaled(v, 1.0 / nv));
  }
  return out;
}

struct Householder {
  std::vector<CVector> reflectors;  // reflector k acts on rows k..m-1
  CMatrix r;                        // n x n upper triangular
};

Householder householder_qr(const CMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  CMatrix w = a;
  Householder h;
  h.reflectors.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    CVector v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = w(i, k);
    const double nx = norm(v);
    if (nx == 0.0) {
      h.reflectors.emplace_back();
      continue;
    }
    const Complex phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : Complex(1.0);
    v[0] += phase * nx;
    const double nv = norm(v);
    for (Complex& z : v) z /= nv;
    for (std::size_t j = k; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += std::conj(v[i - k]) * w(i, j);
      for (std::size_t i = k; i < m; ++i) w(i, j) -= 2.0 * v[i - k] * s;
    }
    h.reflectors.push_back(std::move(v));
  }
  h.r = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) h.r(i, j) = w(i, j);
  return h;
}

// First n columns of Q = H_0 H_1 ... H_{n-1}.
CMatrix thin_q(const Householder& h, std::size_t m) {
  const std::size_t n = h.reflectors.size();
  CMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) q(j, j) = 1.0;
  for (std::size_t kk = n; kk-- > 0;) {
    const CVector& v = h.reflectors[kk];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = kk; i < m; ++i) s += std::conj(v[i - kk]) * q(i, j);
      for (std::size_t i = kk; i < m; ++i) q(i, j) -= 2.0 * v[i - kk] * s;
    }
  }
  return q;
}

// One-sided Jacobi: rotates the columns of w until they are mutually
// orthogonal, accumulating the rotations in v.
void orthogonalize_columns(CMatrix& w, CMatrix& v) {
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  // Columns below eps ||w|| are round-off; rotating them further only drives
  // them into subnormals, where the phase of gamma is lost.
  const double negligible = std::pow(kEps * w.frobenius_norm(), 2);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (alpha <= negligible || beta <= negligible || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma / g);
        const double t = jacobi_tangent((beta - alpha) / (2.0 * g));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex wp = w(i, p);
          const Complex wq = w(i, q) * phase;
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < v.rows(); ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * phase;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

HermEig hermitian_eig(const CMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("hermitian_eig: non-square matrix");
  const double scale = a.frobenius_norm();
  if (hermitian_defect(a) > 1e-8 * scale) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  const std::size_t n = a.rows();
  CMatrix h = (a + a.adjoint()) * Complex(0.5);
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (off <= (kEps * scale) * (kEps * scale)) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(h(p, q));
        if (g <= std::numeric_limits<double>::min()) continue;
        // Rotate the phase so that h(p, q) becomes real and positive.
        const Complex e = h(p, q) / g;
        for (std::size_t k = 0; k < n; ++k) {
          h(k, q) *= std::conj(e);
          v(k, q) *= std::conj(e);
        }
        for (std::size_t k = 0; k < n; ++k) h(q, k) *= e;

        const double t = jacobi_tangent((h(q, q).real() - h(p, p).real()) / (2.0 * g));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = h(k, p), hq = h(k, q);
          h(k, p) = c * hp - s * hq;
          h(k, q) = s * hp + c * hq;
          const Complex vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp - s * vq;
          v(k, q) = s * vp + c * vq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hp = h(p, k), hq = h(q, k);
          h(p, k) = c * hp - s * hq;
          h(q, k) = s * hp + c * hq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return h(i, i).real() < h(j, j).real();
  });
  HermEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = h(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

CMatrix hermitian_function(const HermEig& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.eigenvalues.size();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

Svd svd(const CMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Svd out;
  out.v = CMatrix::identity(n);
  CMatrix w;
  Householder qr;
  const bool tall = m > n;
  if (tall) {
    qr = householder_qr(a);
    w = qr.r;
  } else {
    w = a;
  }
  orthogonalize_columns(w, out.v);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm(w.column(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  CMatrix v_sorted(n, n);
  CMatrix w_sorted(w.rows(), n);
  out.sigma.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.sigma[c] = norms[src];
    for (std::size_t r = 0; r < n; ++r) v_sorted(r, c) = out.v(r, src);
    if (norms[src] > 0.0)
      for (std::size_t r = 0; r < w.rows(); ++r) w_sorted(r, c) = w(r, src) / norms[src];
  }
  out.v = std::move(v_sorted);
  out.u = tall ? thin_q(qr, m) * w_sorted : std::move(w_sorted);
  return out;
}

std::size_t numerical_rank(const Svd& s, std::size_t rows, std::size_t cols, double tol,
                           double scale) {
  if (s.sigma.empty() || s.sigma.front() == 0.0) return 0;
  const double threshold =
      tol * static_cast<double>(std::max(rows, cols)) * std::max(s.sigma.front(), scale);
  return static_cast<std::size_t>(
      std::count_if(s.sigma.begin(), s.sigma.end(), [&](double x) { return x > threshold; }));
}

std::vector<CVector> nullspace(const CMatrix& a, double tol, double scale) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("nullspace: empty matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("nullspace: tol must be positive");
  const Svd s = svd(a);
  const std::size_t rank = numerical_rank(s, a.rows(), a.cols(), tol, scale);
  std::vector<CVector> kernel;
  for (std::size_t c = rank; c < a.cols(); ++c) kernel.push_back(s.v.column(c));
  return canonical_basis(kernel, a.cols());
}

LstsqResult lstsq_min_norm(const CMatrix& a, std::span<const Complex> b, double tol) {
  if (b.size() != a.rows()) throw std::invalid_argument("lstsq_min_norm: size mismatch");
  LstsqResult out;
  out.x.assign(a.cols(), 0.0);
  if (a.rows() == 0 || a.cols() == 0) {
    out.residual = norm(b);
    return out;
  }
  const Svd s = svd(a);
  out.rank = numerical_rank(s, a.rows(), a.cols(), tol);
  for (std::size_t j = 0; j < out.rank; ++j) {
    Complex coef = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) coef += std::conj(s.u(i, j)) * b[i];
    coef /= s.sigma[j];
    for (std::size_t i = 0; i < a.cols(); ++i) out.x[i] += s.v(i, j) * coef;
  }
  CVector r = a * std::span<const Complex>(out.x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  out.residual = norm(r);
  return out;
}

CMatrix expm(const CMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("expm: non-square matrix");
  const std::size_t n = a.rows();
  const double fro = a.frobenius_norm();
  if (!std::isfinite(fro)) throw std::domain_error("expm: non-finite input");
  int squarings = 0;
  if (fro > 0.5) squarings = static_cast<int>(std::ceil(std::log2(fro / 0.5)));
  const CMatrix x = std::ldexp(1.0, -squarings) * a;
  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * x);
    sum += term;
    if (term.frobenius_norm() <= kEps * sum.frobenius_norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CMatrix inverse(const CMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse: non-square matrix");
  const std::size_t n = a.rows();
  CMatrix w = a;
  CMatrix inv = CMatrix::identity(n);
  const double scale = a.max_abs();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(w(i, k)) > std::abs(w(piv, k))) piv = i;
    if (std::abs(w(piv, k)) <= 1e-14 * scale || scale == 0.0) {
      throw std::domain_error("inverse: matrix is singular");
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w(k, j), w(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    }
    const Complex d = 1.0 / w(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      w(k, j) *= d;
      inv(k, j) *= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Complex f = w(i, k);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) -= f * w(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

double condition_number(const CMatrix& a) {
  const Svd s = svd(a);
  const std::size_t k = std::min(a.rows(), a.cols());
  if (k == 0) return 0.0;
  const double smin = s.sigma[k - 1];
  return smin == 0.0 ? std::numeric_limits<double>::infinity() : s.sigma.front() / smin;
}

std::vector<CVector> orthonormal_span(std::span<const CVector> vectors, double tol) {
  if (vectors.empty()) return {};
  const CMatrix a = CMatrix::from_columns(vectors);
  const Svd s = svd(a);
  const std::size_t rank = numerical_rank(s, a.rows(), a.cols(), tol);
  std::vector<CVector> range;
  for (std::size_t c = 0; c < rank; ++c) range.push_back(s.u.column(c));
  return canonical_basis(range, a.rows());
}

double distance_to_span(std::span<const Complex> v, std::span<const CVector> basis) {
  CVector r(v.begin(), v.end());
  for (int pass = 0; pass < 2; ++pass)
    for (const CVector& b : basis) axpy(-inner(r, b), b, r);
  return norm(r);
}

CVector project_coefficients(std::span<const Complex> v, std::span<const CVector> basis) {
  CVector c(basis.size());
  for (std::size_t l = 0; l < basis.size(); ++l) c[l] = inner(v, basis[l]);
  return c;
}

}  // namespace momentvar::cla
