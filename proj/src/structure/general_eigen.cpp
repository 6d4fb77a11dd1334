#include "momentvar/structure/general_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace momentvar::structure {

using cla::CMatrix;
using cla::Complex;

namespace {

void reduce_to_hessenberg(CMatrix& h) {
  const std::size_t n = h.rows();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<Complex> v(n - k - 1);
    double norm_sq = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i - k - 1] = h(i, k);
      norm_sq += std::norm(h(i, k));
    }
    const double alpha = std::sqrt(norm_sq);
    if (alpha == 0.0) continue;
    const Complex x0 = v[0];
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    v[0] += phase * alpha;
    double vnorm = 0.0;
    for (const Complex& z : v) vnorm += std::norm(z);
    vnorm = std::sqrt(vnorm);
    if (vnorm == 0.0) continue;
    for (Complex& z : v) z /= vnorm;
    // H <- (I - 2vv^*) H (I - 2vv^*) on the trailing rows and columns.
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= 2.0 * v[i - k - 1] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= 2.0 * s * std::conj(v[j - k - 1]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

Complex wilkinson_shift(const CMatrix& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  const Complex p = 0.5 * (a - d);
  const Complex disc = std::sqrt(p * p + b * c);
  const Complex big = std::abs(p + disc) >= std::abs(p - disc) ? p + disc : p - disc;
  if (big == 0.0) return d;
  return d - b * c / big;
}

// One explicit shifted QR step on the active block [lo, hi].
void qr_step(CMatrix& h, std::size_t lo, std::size_t hi, Complex shift) {
  const std::size_t m = hi - lo;
  std::vector<Complex> cs(m);
  std::vector<Complex> sn(m);
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
  for (std::size_t k = lo; k < hi; ++k) {
    const Complex x = h(k, k);
    const Complex y = h(k + 1, k);
    const double r = std::hypot(std::abs(x), std::abs(y));
    const Complex c = r > 0.0 ? x / r : Complex(1.0);
    const Complex s = r > 0.0 ? y / r : Complex(0.0);
    cs[k - lo] = c;
    sn[k - lo] = s;
    for (std::size_t j = k; j <= hi; ++j) {
      const Complex t1 = h(k, j);
      const Complex t2 = h(k + 1, j);
      h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
      h(k + 1, j) = -s * t1 + c * t2;
    }
  }
  for (std::size_t k = lo; k < hi; ++k) {
    const Complex c = cs[k - lo];
    const Complex s = sn[k - lo];
    for (std::size_t i = lo; i <= std::min(k + 1, hi); ++i) {
      const Complex t1 = h(i, k);
      const Complex t2 = h(i, k + 1);
      h(i, k) = t1 * c + t2 * s;
      h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
    }
  }
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
}

}  // namespace

std::vector<Complex> general_eigenvalues(const CMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("general_eigenvalues: non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Complex> ev;
  if (n == 0) return ev;
  CMatrix h = a;
  reduce_to_hessenberg(h);
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(h.max_abs(), std::numeric_limits<double>::min());

  std::size_t hi = n - 1;
  int iter = 0;
  int total = 0;
  while (hi > 0) {
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * (diag > 0.0 ? diag : scale)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      iter = 0;
      continue;
    }
    if (++total > 200 * static_cast<int>(n)) {
      throw std::runtime_error("general_eigenvalues: QR iteration did not converge");
    }
    Complex shift = wilkinson_shift(h, hi);
    if (++iter % 11 == 0) {
      // Exceptional shift to break cycles.
      shift = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.25 * std::abs(h(hi, hi - 1)));
    }
    qr_step(h, lo, hi, shift);
  }
  for (std::size_t i = 0; i < n; ++i) ev.push_back(h(i, i));
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return ev;
}

}  // namespace momentvar::structure
