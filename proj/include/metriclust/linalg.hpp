#pragma once

#include "metriclust/types.hpp"

namespace metriclust::linalg {

/// Column means of the point set.
Vector mean(const DataMatrix& points);

/// Unbiased sample covariance (divisor n - 1).
Matrix covariance(const DataMatrix& points);

/// True when |A_ij - A_ji| <= 1e-12 * max|A| for all entries.
bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

/// Lower-triangular L with L * L^T = m. Throws "matrix not positive definite".
Matrix cholesky(const Matrix& m);

/// Inverse of a symmetric positive-definite matrix through its Cholesky factor.
/// A pivot at or below `rel_pivot_tol * max diag` throws "singular matrix".
Matrix invert_spd(const Matrix& m, double rel_pivot_tol = 1e-12);

struct EigenDecomposition {
    Vector values;   // descending
    Matrix vectors;  // column k pairs with values[k]; orthonormal
};

/// Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
/// Eigenvalues descend with ties kept in original index order; each
/// eigenvector is signed so that its largest-magnitude entry is positive.
EigenDecomposition symmetric_eigen(const Matrix& m);

/// Default pseudo-inverse cutoff: d * machine epsilon.
double default_pinv_tolerance(std::size_t dim);

/// Moore-Penrose pseudo-inverse of a symmetric matrix. Eigenvalues at or below
/// `rel_tol * lambda_max` are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double rel_tol);
Matrix pseudo_inverse(const Matrix& m);

/// Number of eigenvalues above the pseudo-inverse cutoff.
std::size_t numerical_rank(const Matrix& m, double rel_tol);

}  // namespace metriclust::linalg
