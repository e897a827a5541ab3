#pragma once

#include "mlelm/label_matrix.hpp"

#include <cstddef>

namespace mlelm::metrics {

/// Example-based multi-label scores, each a mean over samples.
struct MetricsReport {
    double hamming_loss{ 0.0 };
    double accuracy{ 0.0 };
    double precision{ 0.0 };
    double recall{ 0.0 };
    double f1{ 0.0 };
    std::size_t sample_count{ 0 };

    friend bool operator==(const MetricsReport &, const MetricsReport &) = default;
};

/// Multi-labelness of a label matrix.
struct DatasetStats {
    double label_cardinality{ 0.0 };
    double label_density{ 0.0 };
    std::size_t samples{ 0 };
    std::size_t labels{ 0 };
    std::size_t features{ 0 };
};

/// Fraction of cells where predicted and truth disagree. Throws shape_error on mismatched dims
/// and input_error on an empty matrix.
[[nodiscard]] double hamming_loss(const LabelMatrix &predicted, const LabelMatrix &truth);

/**
 * Per-sample Jaccard accuracy, precision, recall and F1 averaged over samples,
 * plus the hamming loss.
 *
 * With Y the true and Z the predicted set of a sample: if both are empty the
 * four per-sample values are 1; otherwise a ratio whose denominator is zero is
 * 0. Sums are kept as exact rationals and divided once at the end, so results
 * are the correctly rounded values of the exact means.
 */
[[nodiscard]] MetricsReport example_based_metrics(const LabelMatrix &predicted, const LabelMatrix &truth);

/// Label cardinality (mean labels per sample) and density (cardinality / labels).
/// Throws input_error on an empty label matrix.
[[nodiscard]] DatasetStats dataset_stats(const LabelMatrix &labels, std::size_t features);

}  // namespace mlelm::metrics
