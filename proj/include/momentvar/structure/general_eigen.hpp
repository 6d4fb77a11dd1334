#pragma once

#include <vector>

#include "momentvar/cla/cmatrix.hpp"

namespace momentvar::structure {

// Eigenvalues of a general square complex matrix: Householder reduction to
// Hessenberg form, then shifted QR with Wilkinson shifts and deflation.
// Sorted by real part, then imaginary part. Throws std::runtime_error if QR
// fails to converge.
std::vector<cla::Complex> general_eigenvalues(const cla::CMatrix& a);

}  // namespace momentvar::structure
