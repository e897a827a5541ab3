#pragma once

#include "mlelm/label_matrix.hpp"
#include "mlelm/matrix.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mlelm {

/// Feature matrix paired with its label matrix.
struct MultiLabelDataset {
    std::string name;
    DenseMatrix features;  // N x D (after one-hot expansion of nominal features)
    LabelMatrix labels;    // N x M
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;
    /// Feature attribute count before nominal expansion; equals features.cols() when nothing was expanded.
    std::size_t source_feature_count{ 0 };

    [[nodiscard]] std::size_t samples() const noexcept { return features.rows(); }
    [[nodiscard]] std::size_t feature_count() const noexcept { return features.cols(); }
    [[nodiscard]] std::size_t label_count() const noexcept { return labels.cols(); }
};

/// Builds a dataset from matrices with generated names ("f0".., "l0"..) where none are given.
/// Throws shape_error if row counts disagree.
[[nodiscard]] MultiLabelDataset make_dataset(DenseMatrix features, LabelMatrix labels, std::string name = "dataset");

/// Rows of `dataset` at `indices`, in that order.
[[nodiscard]] MultiLabelDataset select_rows(const MultiLabelDataset &dataset, std::span<const std::size_t> indices);

}  // namespace mlelm
