#pragma once

#include "mlelm/dataset.hpp"
#include "mlelm/elm.hpp"
#include "mlelm/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mlelm::cv {

struct CvReport {
    std::size_t k{ 0 };
    std::uint64_t seed{ 0 };
    std::vector<metrics::MetricsReport> per_fold;
    metrics::MetricsReport mean;
    /// Population standard deviation (divides by k).
    metrics::MetricsReport stddev;
};

/// Seeded shuffle of 0..n-1 cut into k contiguous chunks; the first n % k
/// chunks get one extra index. Throws input_error unless 2 <= k <= n.
[[nodiscard]] std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed);

/// Model for fold `fold`: trained on every other fold with seed config.seed + fold.
[[nodiscard]] ElmModel train_fold(const MultiLabelDataset &dataset, const ElmConfig &config, const std::vector<std::vector<std::size_t>> &folds, std::size_t fold);

/// Trains and scores one model per fold, then aggregates mean and population stddev.
/// A training failure is rethrown as an error naming the fold.
[[nodiscard]] CvReport cross_validate(const MultiLabelDataset &dataset, const ElmConfig &config, std::size_t k, std::uint64_t seed);

/// Mean and population stddev of a set of reports.
[[nodiscard]] std::pair<metrics::MetricsReport, metrics::MetricsReport> aggregate(const std::vector<metrics::MetricsReport> &reports);

}  // namespace mlelm::cv
