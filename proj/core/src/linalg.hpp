#pragma once

#include <vector>

#include "momentlab/real.hpp"

namespace momentlab::detail {

using Matrix = std::vector<std::vector<Real>>;  // row-major, rows × cols

// Least-squares solution of A x ≈ b by Householder QR (rows ≥ cols, full column rank).
std::vector<Real> lsq_solve(const Matrix& a, const std::vector<Real>& b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<Real> symmetric_eigenvalues(Matrix s);

// 2-norm condition number of A via the eigenvalues of AᵀA.
Real condition_number(const Matrix& a);

// Pseudo-inverse (cols × rows) of a full-column-rank A, one least-squares solve per column.
Matrix pseudo_inverse(const Matrix& a);

}  // namespace momentlab::detail
