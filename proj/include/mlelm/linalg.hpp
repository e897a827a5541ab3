#pragma once

#include "mlelm/errors.hpp"
#include "mlelm/matrix.hpp"

namespace mlelm::linalg {

/// Pivots below this fraction of the largest pivot seen so far are rejected.
inline constexpr double pivot_tolerance = 1e-12;

/// Matrix product. Throws shape_error unless a.cols() == b.rows().
[[nodiscard]] DenseMatrix matmul(const DenseMatrix &a, const DenseMatrix &b);

[[nodiscard]] DenseMatrix transpose(const DenseMatrix &a);

/// Lower-triangular Cholesky factor L with a == L * L^T.
/// Throws singularity_error on a non-positive or relatively tiny pivot.
[[nodiscard]] DenseMatrix cholesky(const DenseMatrix &a);

/// Solves a * X = b for symmetric positive definite a.
[[nodiscard]] DenseMatrix solve_spd(const DenseMatrix &a, const DenseMatrix &b);

/**
 * Regularized Moore-Penrose pseudoinverse.
 *
 * Tall or square h uses (h^T h + ridge I)^-1 h^T, wide h uses
 * h^T (h h^T + ridge I)^-1 so the smaller Gram matrix is factored.
 * With ridge == 0 this is the exact pseudoinverse of a full-rank h; a
 * singular Gram matrix then raises singularity_error.
 */
[[nodiscard]] DenseMatrix pseudoinverse(const DenseMatrix &h, double ridge);

/// pseudoinverse(h, ridge) * y without materializing the pseudoinverse.
[[nodiscard]] DenseMatrix least_squares(const DenseMatrix &h, const DenseMatrix &y, double ridge);

/// trace(h^T h) == squared Frobenius norm of h.
[[nodiscard]] double gram_trace(const DenseMatrix &h);

}  // namespace mlelm::linalg
