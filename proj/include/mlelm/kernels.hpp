#pragma once

// Dense compute kernels in two flavours: `serial::` is the plain reference
// used by tests and the benchmark, `parallel::` is the OpenMP version used by
// the library. Both accumulate every output entry in the same index order, so
// their results agree bit-for-bit for any thread count.

#include "mlelm/matrix.hpp"

#include <span>

namespace mlelm::kernels {

enum class Activation { sigmoid = 0, tanh = 1, hardlimit = 2 };

[[nodiscard]] double activate(Activation g, double z) noexcept;

namespace serial {

/// c = a * b (dimensions are the caller's responsibility).
void matmul(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c);
/// c = a * b^T.
void matmul_transposed(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c);
/// g = a^T * a.
void gram_columns(const DenseMatrix &a, DenseMatrix &g);
/// g = a * a^T.
void gram_rows(const DenseMatrix &a, DenseMatrix &g);
/// h[j][i] = activation(dot(x_j, w_i) + bias_i).
void hidden_layer(const DenseMatrix &x, const DenseMatrix &weights, std::span<const double> biases, Activation g, DenseMatrix &h);

}  // namespace serial

namespace parallel {

void matmul(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c);
void matmul_transposed(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c);
void gram_columns(const DenseMatrix &a, DenseMatrix &g);
void gram_rows(const DenseMatrix &a, DenseMatrix &g);
void hidden_layer(const DenseMatrix &x, const DenseMatrix &weights, std::span<const double> biases, Activation g, DenseMatrix &h);

}  // namespace parallel

}  // namespace mlelm::kernels
