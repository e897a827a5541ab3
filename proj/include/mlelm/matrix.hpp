#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mlelm {

/**
 * Row-major dense matrix of doubles.
 *
 * Constructors reject non-finite entries; element writes through the mutable
 * accessors are not re-checked.
 */
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    [[nodiscard]] double &operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

    [[nodiscard]] std::span<const double> row(std::size_t r) const { return { values_.data() + r * cols_, cols_ }; }
    [[nodiscard]] std::span<double> row(std::size_t r) { return { values_.data() + r * cols_, cols_ }; }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }

    friend bool operator==(const DenseMatrix &, const DenseMatrix &) = default;

  private:
    std::size_t rows_{ 0 };
    std::size_t cols_{ 0 };
    std::vector<double> values_;
};

/// Largest absolute entry; 0 for an empty matrix.
[[nodiscard]] double max_abs(const DenseMatrix &a);
[[nodiscard]] double frobenius_norm(const DenseMatrix &a);
/// Elementwise a - b.
[[nodiscard]] DenseMatrix subtract(const DenseMatrix &a, const DenseMatrix &b);

}  // namespace mlelm
