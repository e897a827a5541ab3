#pragma once

#include "mlelm/cv.hpp"
#include "mlelm/data.hpp"
#include "mlelm/metrics.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mlelm::report {

/// Wall-clock seconds around training and around prediction (scores + threshold), I/O excluded.
struct TimingReport {
    std::string dataset;
    std::size_t train_samples{ 0 };
    std::size_t test_samples{ 0 };
    std::size_t hidden_neurons{ 0 };
    double train_seconds{ 0.0 };
    double test_seconds{ 0.0 };
    std::vector<double> train_runs;
    std::vector<double> test_runs;
};

/// Fixed-point with `decimals` digits, e.g. fixed(0.25, 4) == "0.2500".
[[nodiscard]] std::string fixed(double value, int decimals = 4);
/// Shortest round-trip decimal form.
[[nodiscard]] std::string exact(double value);

/// Header line plus one tab-separated line, 4 decimals.
[[nodiscard]] std::string metrics_table(const metrics::MetricsReport &m);
/// key=value lines with round-trip precision; `prefix` is prepended to every key.
[[nodiscard]] std::string metrics_keyvalues(const metrics::MetricsReport &m, std::string_view prefix = "");

/// "<metric>: mean(±std)" lines at 4 decimals.
[[nodiscard]] std::string cv_summary(const cv::CvReport &r);
[[nodiscard]] std::string cv_keyvalues(const cv::CvReport &r);

[[nodiscard]] std::string stats_table(std::string_view name, const metrics::DatasetStats &s);
[[nodiscard]] std::string stats_keyvalues(std::string_view name, const metrics::DatasetStats &s);
[[nodiscard]] std::string spec_check_table(const data::SpecCheck &check);

[[nodiscard]] std::string timing_header();
[[nodiscard]] std::string timing_row(const TimingReport &t);
[[nodiscard]] std::string timing_keyvalues(const TimingReport &t);

/// Median of a non-empty sample (mean of the middle pair for even sizes).
[[nodiscard]] double median(std::vector<double> values);

}  // namespace mlelm::report
