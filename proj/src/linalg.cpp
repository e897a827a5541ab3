#include "mlelm/linalg.hpp"

#include "mlelm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace mlelm {

namespace {

void require_finite(std::span<const double> values) {
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw input_error{ "matrix entries must be finite" };
    }
}

std::string dims(const DenseMatrix &a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill) :
    rows_{ rows },
    cols_{ cols },
    values_(rows * cols, fill) {
    require_finite(values_);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values) :
    rows_{ rows },
    cols_{ cols },
    values_{ std::move(values) } {
    if (values_.size() != rows_ * cols_) {
        throw shape_error{ "value count " + std::to_string(values_.size()) + " does not match " + dims(*this) };
    }
    require_finite(values_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) :
    rows_{ rows.size() },
    cols_{ rows.size() == 0 ? 0 : rows.begin()->size() } {
    values_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw shape_error{ "ragged initializer list" };
        }
        values_.insert(values_.end(), r.begin(), r.end());
    }
    require_finite(values_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

double max_abs(const DenseMatrix &a) {
    double m = 0.0;
    for (double v : a.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double frobenius_norm(const DenseMatrix &a) {
    double s = 0.0;
    for (double v : a.values()) {
        s += v * v;
    }
    return std::sqrt(s);
}

DenseMatrix subtract(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw shape_error{ "cannot subtract " + dims(b) + " from " + dims(a) };
    }
    DenseMatrix out = a;
    auto o = out.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] -= bv[i];
    }
    return out;
}

namespace linalg {

DenseMatrix matmul(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.cols() != b.rows()) {
        throw shape_error{ "matmul: " + dims(a) + " times " + dims(b) };
    }
    DenseMatrix c;
    kernels::parallel::matmul(a, b, c);
    return c;
}

DenseMatrix transpose(const DenseMatrix &a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

DenseMatrix cholesky(const DenseMatrix &a) {
    if (a.rows() != a.cols()) {
        throw shape_error{ "cholesky: matrix is " + dims(a) + ", expected square" };
    }
    const std::size_t n = a.rows();
    DenseMatrix l(n, n);
    double largest_pivot = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto lj = l.row(j);
        double pivot = a(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            pivot -= lj[k] * lj[k];
        }
        if (!(pivot > 0.0) || pivot < linalg::pivot_tolerance * largest_pivot) {
            throw singularity_error{ "Gram matrix is singular or ill-conditioned (pivot " + std::to_string(j) + " = " + std::to_string(pivot)
                                     + "); supply a ridge > 0" };
        }
        largest_pivot = std::max(largest_pivot, pivot);
        const double diag = std::sqrt(pivot);
        l(j, j) = diag;

        const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t ii = static_cast<std::int64_t>(j) + 1; ii < rows; ++ii) {
            const auto i = static_cast<std::size_t>(ii);
            const auto li = l.row(i);
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                s -= li[k] * lj[k];
            }
            li[j] = s / diag;
        }
    }
    return l;
}

namespace {

// Solves L L^T X = B in place of b, given the Cholesky factor.
DenseMatrix cholesky_solve(const DenseMatrix &l, DenseMatrix b) {
    const std::size_t n = l.rows();
    const std::size_t m = b.cols();
    // forward: L Y = B
    for (std::size_t i = 0; i < n; ++i) {
        auto bi = b.row(i);
        for (std::size_t k = 0; k < i; ++k) {
            const double lik = l(i, k);
            const auto bk = b.row(k);
            for (std::size_t c = 0; c < m; ++c) {
                bi[c] -= lik * bk[c];
            }
        }
        const double inv = 1.0 / l(i, i);
        for (std::size_t c = 0; c < m; ++c) {
            bi[c] *= inv;
        }
    }
    // backward: L^T X = Y
    for (std::size_t ii = n; ii-- > 0;) {
        auto bi = b.row(ii);
        for (std::size_t k = ii + 1; k < n; ++k) {
            const double lki = l(k, ii);
            const auto bk = b.row(k);
            for (std::size_t c = 0; c < m; ++c) {
                bi[c] -= lki * bk[c];
            }
        }
        const double inv = 1.0 / l(ii, ii);
        for (std::size_t c = 0; c < m; ++c) {
            bi[c] *= inv;
        }
    }
    return b;
}

void add_ridge(DenseMatrix &g, double ridge) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
        g(i, i) += ridge;
    }
}

void check_ridge(double ridge) {
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
        throw input_error{ "ridge must be a finite value >= 0" };
    }
}

}  // namespace

DenseMatrix solve_spd(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.rows() != a.cols() || a.rows() != b.rows()) {
        throw shape_error{ "solve_spd: " + dims(a) + " system with right-hand side " + dims(b) };
    }
    return cholesky_solve(cholesky(a), b);
}

DenseMatrix pseudoinverse(const DenseMatrix &h, double ridge) {
    if (h.empty()) {
        throw input_error{ "pseudoinverse of an empty matrix" };
    }
    check_ridge(ridge);
    const DenseMatrix ht = transpose(h);
    DenseMatrix g;
    if (h.rows() >= h.cols()) {
        kernels::parallel::gram_columns(h, g);
        add_ridge(g, ridge);
        return solve_spd(g, ht);
    }
    kernels::parallel::gram_rows(h, g);
    add_ridge(g, ridge);
    // h^T (h h^T + rI)^-1 == ((h h^T + rI)^-1 h)^T by symmetry of the Gram matrix.
    return transpose(solve_spd(g, h));
}

DenseMatrix least_squares(const DenseMatrix &h, const DenseMatrix &y, double ridge) {
    if (h.empty()) {
        throw input_error{ "least squares with an empty design matrix" };
    }
    if (h.rows() != y.rows()) {
        throw shape_error{ "least_squares: design " + dims(h) + " with targets " + dims(y) };
    }
    check_ridge(ridge);
    DenseMatrix g;
    if (h.rows() >= h.cols()) {
        kernels::parallel::gram_columns(h, g);
        add_ridge(g, ridge);
        return solve_spd(g, matmul(transpose(h), y));
    }
    kernels::parallel::gram_rows(h, g);
    add_ridge(g, ridge);
    return matmul(transpose(h), solve_spd(g, y));
}

double gram_trace(const DenseMatrix &h) {
    double s = 0.0;
    for (double v : h.values()) {
        s += v * v;
    }
    return s;
}

}  // namespace linalg

}  // namespace mlelm
