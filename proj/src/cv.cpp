#include "mlelm/cv.hpp"

#include "mlelm/errors.hpp"
#include "mlelm/multilabel.hpp"
#include "mlelm/random.hpp"

#include <tuple>
#include <cmath>
#include <numeric>
#include <string>

namespace mlelm::cv {

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n) {
        throw input_error{ "fold count " + std::to_string(k) + " must lie in [2, " + std::to_string(n) + "]" };
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{ 0 });
    Rng rng{ seed };
    rng.shuffle(std::span{ order });

    std::vector<std::vector<std::size_t>> folds(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t at = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(at), order.begin() + static_cast<std::ptrdiff_t>(at + size));
        at += size;
    }
    return folds;
}

namespace {

std::vector<std::size_t> training_indices(const std::vector<std::vector<std::size_t>> &folds, std::size_t fold) {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        if (f != fold) {
            out.insert(out.end(), folds[f].begin(), folds[f].end());
        }
    }
    return out;
}

}  // namespace

ElmModel train_fold(const MultiLabelDataset &dataset, const ElmConfig &config, const std::vector<std::vector<std::size_t>> &folds, std::size_t fold) {
    ElmConfig fold_config = config;
    fold_config.seed = config.seed + fold;
    const auto train_rows = training_indices(folds, fold);
    return elm::train(select_rows(dataset, train_rows), fold_config);
}

std::pair<metrics::MetricsReport, metrics::MetricsReport> aggregate(const std::vector<metrics::MetricsReport> &reports) {
    metrics::MetricsReport mean;
    metrics::MetricsReport stddev;
    if (reports.empty()) {
        return { mean, stddev };
    }
    const auto k = static_cast<double>(reports.size());
    constexpr double metrics::MetricsReport::*fields[] = { &metrics::MetricsReport::hamming_loss, &metrics::MetricsReport::accuracy,
                                                           &metrics::MetricsReport::precision, &metrics::MetricsReport::recall,
                                                           &metrics::MetricsReport::f1 };
    for (auto field : fields) {
        double sum = 0.0;
        for (const auto &r : reports) {
            sum += r.*field;
        }
        const double m = sum / k;
        double sq = 0.0;
        for (const auto &r : reports) {
            sq += (r.*field - m) * (r.*field - m);
        }
        mean.*field = m;
        stddev.*field = std::sqrt(sq / k);
    }
    for (const auto &r : reports) {
        mean.sample_count += r.sample_count;
    }
    stddev.sample_count = mean.sample_count;
    return { mean, stddev };
}

CvReport cross_validate(const MultiLabelDataset &dataset, const ElmConfig &config, std::size_t k, std::uint64_t seed) {
    const auto folds = kfold_partition(dataset.samples(), k, seed);
    CvReport report;
    report.k = k;
    report.seed = seed;
    report.per_fold.reserve(k);
    for (std::size_t f = 0; f < k; ++f) {
        try {
            const ElmModel model = train_fold(dataset, config, folds, f);
            const MultiLabelDataset held_out = select_rows(dataset, folds[f]);
            const LabelMatrix predicted = multilabel::predict_labels(model, held_out.features);
            report.per_fold.push_back(metrics::example_based_metrics(predicted, held_out.labels));
        } catch (const singularity_error &e) {
            throw singularity_error{ "fold " + std::to_string(f) + ": " + e.what() };
        } catch (const input_error &e) {
            throw input_error{ "fold " + std::to_string(f) + ": " + e.what() };
        }
    }
    std::tie(report.mean, report.stddev) = aggregate(report.per_fold);
    return report;
}

}  // namespace mlelm::cv
