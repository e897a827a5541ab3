#include "mlelm/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace mlelm::kernels {

double activate(Activation g, double z) noexcept {
    switch (g) {
        case Activation::sigmoid:
            return 1.0 / (1.0 + std::exp(-z));
        case Activation::tanh:
            return std::tanh(z);
        case Activation::hardlimit:
            return z >= 0.0 ? 1.0 : 0.0;
    }
    return z;
}

namespace {

DenseMatrix transposed(const DenseMatrix &a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

// out_row += s * in_row
inline void axpy(double s, std::span<const double> in_row, std::span<double> out_row) noexcept {
    const std::size_t n = out_row.size();
    const double *in = in_row.data();
    double *out = out_row.data();
    for (std::size_t q = 0; q < n; ++q) {
        out[q] += s * in[q];
    }
}

}  // namespace

namespace serial {

void matmul(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c) {
    c = DenseMatrix(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(k, j);
            }
            c(i, j) = sum;
        }
    }
}

void matmul_transposed(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c) {
    c = DenseMatrix(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(j, k);
            }
            c(i, j) = sum;
        }
    }
}

void gram_columns(const DenseMatrix &a, DenseMatrix &g) {
    const std::size_t n = a.cols();
    g = DenseMatrix(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.rows(); ++k) {
                sum += a(k, p) * a(k, q);
            }
            g(p, q) = sum;
        }
    }
}

void gram_rows(const DenseMatrix &a, DenseMatrix &g) {
    matmul_transposed(a, a, g);
}

void hidden_layer(const DenseMatrix &x, const DenseMatrix &weights, std::span<const double> biases, Activation g, DenseMatrix &h) {
    h = DenseMatrix(x.rows(), weights.rows());
    for (std::size_t j = 0; j < x.rows(); ++j) {
        for (std::size_t i = 0; i < weights.rows(); ++i) {
            double z = 0.0;
            for (std::size_t d = 0; d < x.cols(); ++d) {
                z += x(j, d) * weights(i, d);
            }
            h(j, i) = activate(g, z + biases[i]);
        }
    }
}

}  // namespace serial

namespace parallel {

void matmul(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c) {
    c = DenseMatrix(a.rows(), b.cols());
    const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        auto out = c.row(static_cast<std::size_t>(i));
        const auto in = a.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < in.size(); ++k) {
            axpy(in[k], b.row(k), out);
        }
    }
}

void matmul_transposed(const DenseMatrix &a, const DenseMatrix &b, DenseMatrix &c) {
    matmul(a, transposed(b), c);
}

void gram_columns(const DenseMatrix &a, DenseMatrix &g) {
    const std::size_t n = a.cols();
    g = DenseMatrix(n, n);
    const auto dim = static_cast<std::int64_t>(n);
    // Upper triangle row by row, then mirror.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t pi = 0; pi < dim; ++pi) {
        const auto p = static_cast<std::size_t>(pi);
        auto out = g.row(p).subspan(p);
        for (std::size_t k = 0; k < a.rows(); ++k) {
            axpy(a(k, p), a.row(k).subspan(p), out);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < p; ++q) {
            g(p, q) = g(q, p);
        }
    }
}

void gram_rows(const DenseMatrix &a, DenseMatrix &g) {
    const DenseMatrix at = transposed(a);
    const std::size_t n = a.rows();
    g = DenseMatrix(n, n);
    const auto dim = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t pi = 0; pi < dim; ++pi) {
        const auto p = static_cast<std::size_t>(pi);
        auto out = g.row(p).subspan(p);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            axpy(a(p, k), at.row(k).subspan(p), out);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < p; ++q) {
            g(p, q) = g(q, p);
        }
    }
}

void hidden_layer(const DenseMatrix &x, const DenseMatrix &weights, std::span<const double> biases, Activation g, DenseMatrix &h) {
    const DenseMatrix wt = transposed(weights);
    h = DenseMatrix(x.rows(), weights.rows());
    const auto rows = static_cast<std::int64_t>(x.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t ji = 0; ji < rows; ++ji) {
        const auto j = static_cast<std::size_t>(ji);
        auto out = h.row(j);
        const auto in = x.row(j);
        for (std::size_t d = 0; d < in.size(); ++d) {
            axpy(in[d], wt.row(d), out);
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = activate(g, out[i] + biases[i]);
        }
    }
}

}  // namespace parallel

}  // namespace mlelm::kernels
