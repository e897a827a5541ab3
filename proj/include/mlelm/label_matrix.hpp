#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace mlelm {

/// N x M binary membership matrix: cell (i, l) is 1 when sample i carries label l.
class LabelMatrix {
  public:
    LabelMatrix() = default;
    LabelMatrix(std::size_t rows, std::size_t cols);
    /// Throws format_error if any value is not 0 or 1.
    LabelMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> values);
    LabelMatrix(std::initializer_list<std::initializer_list<int>> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] bool operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c] != 0; }
    void set(std::size_t r, std::size_t c, bool on) { values_[r * cols_ + c] = on ? 1 : 0; }

    [[nodiscard]] std::span<const std::uint8_t> row(std::size_t r) const { return { values_.data() + r * cols_, cols_ }; }
    [[nodiscard]] std::span<const std::uint8_t> values() const noexcept { return values_; }

    /// Number of labels set in row r.
    [[nodiscard]] std::size_t row_count(std::size_t r) const;

    friend bool operator==(const LabelMatrix &, const LabelMatrix &) = default;

  private:
    std::size_t rows_{ 0 };
    std::size_t cols_{ 0 };
    std::vector<std::uint8_t> values_;
};

}  // namespace mlelm
