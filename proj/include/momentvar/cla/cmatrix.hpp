#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace momentvar::cla {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense complex matrix, row-major. Sized for the small problems this library
// deals with (n up to a few dozen, the n^3 x n^2 derivation systems).
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  // Throws std::invalid_argument if entries.size() != rows * cols or any
  // entry is NaN/Inf.
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix diagonal(std::span<const Complex> values);
  static CMatrix unit(std::size_t n, std::size_t row, std::size_t col);
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> values);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CVector operator*(const CMatrix& a, std::span<const Complex> x);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

// [A, B] = AB - BA.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Frobenius inner product (A, B) = tr(A B^*).
Complex frobenius_inner(const CMatrix& a, const CMatrix& b);

// ||A - A^*||_F.
double hermitian_defect(const CMatrix& a);

// Vector helpers. inner(x, y) is linear in x and conjugate-linear in y.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
CVector scaled(std::span<const Complex> x, Complex s);
void axpy(Complex a, std::span<const Complex> x, std::span<Complex> y);

}  // namespace momentvar::cla
