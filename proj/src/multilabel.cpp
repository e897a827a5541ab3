#include "mlelm/multilabel.hpp"

#include "mlelm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace mlelm {

LabelMatrix::LabelMatrix(std::size_t rows, std::size_t cols) :
    rows_{ rows },
    cols_{ cols },
    values_(rows * cols, 0) {}

LabelMatrix::LabelMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> values) :
    rows_{ rows },
    cols_{ cols },
    values_{ std::move(values) } {
    if (values_.size() != rows_ * cols_) {
        throw shape_error{ "label value count does not match " + std::to_string(rows_) + "x" + std::to_string(cols_) };
    }
    if (!std::all_of(values_.begin(), values_.end(), [](std::uint8_t v) { return v <= 1; })) {
        throw format_error{ "label values must be 0 or 1" };
    }
}

LabelMatrix::LabelMatrix(std::initializer_list<std::initializer_list<int>> rows) :
    rows_{ rows.size() },
    cols_{ rows.size() == 0 ? 0 : rows.begin()->size() } {
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw shape_error{ "ragged initializer list" };
        }
        for (int v : r) {
            if (v != 0 && v != 1) {
                throw format_error{ "label values must be 0 or 1" };
            }
            values_.push_back(static_cast<std::uint8_t>(v));
        }
    }
}

std::size_t LabelMatrix::row_count(std::size_t r) const {
    const auto cells = row(r);
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{ 1 }));
}

namespace multilabel {

DenseMatrix encode_bipolar(const LabelMatrix &labels) {
    DenseMatrix out(labels.rows(), labels.cols());
    const auto in = labels.values();
    auto o = out.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        o[i] = in[i] != 0 ? 1.0 : -1.0;
    }
    return out;
}

LabelMatrix decode_bipolar(const DenseMatrix &bipolar) {
    std::vector<std::uint8_t> cells(bipolar.size());
    const auto in = bipolar.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        cells[i] = in[i] > 0.0 ? 1 : 0;
    }
    return LabelMatrix(bipolar.rows(), bipolar.cols(), std::move(cells));
}

ThresholdReport calibrate_threshold(const DenseMatrix &raw_scores, const LabelMatrix &true_labels) {
    if (raw_scores.rows() != true_labels.rows() || raw_scores.cols() != true_labels.cols()) {
        throw shape_error{ "score and label matrices differ in shape" };
    }
    struct Cell {
        double score;
        bool positive;
    };
    std::vector<Cell> cells;
    cells.reserve(raw_scores.size());
    const auto scores = raw_scores.values();
    const auto truth = true_labels.values();
    std::size_t positives = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        cells.push_back({ scores[i], truth[i] != 0 });
        positives += truth[i] != 0 ? 1 : 0;
    }
    const std::size_t negatives = cells.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw calibration_error{ "threshold calibration needs both positive and negative label cells" };
    }

    ThresholdReport report;
    report.method = ThresholdMethod::midpoint_calibrated;
    report.positive_min = std::numeric_limits<double>::infinity();
    report.negative_max = -std::numeric_limits<double>::infinity();
    for (const Cell &c : cells) {
        if (c.positive) {
            report.positive_min = std::min(report.positive_min, c.score);
        } else {
            report.negative_max = std::max(report.negative_max, c.score);
        }
    }
    report.margin = report.positive_min - report.negative_max;

    if (report.negative_max < report.positive_min) {
        double t = report.negative_max + report.margin / 2.0;
        if (!(t < report.positive_min)) {
            t = report.negative_max;  // gap narrower than one ulp
        }
        report.threshold = t;
        report.misclassified = 0;
        return report;
    }

    std::sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) { return a.score < b.score; });

    // Sweep cuts between adjacent distinct scores. Below the cut, positives
    // are misclassified; above it, negatives are.
    std::size_t positives_below = 0;
    std::size_t negatives_below = 0;
    bool found = false;
    std::size_t best_errors = 0;
    double best_gap = 0.0;
    double best_cut = 0.0;
    std::size_t i = 0;
    while (i < cells.size()) {
        const double value = cells[i].score;
        while (i < cells.size() && cells[i].score == value) {
            (cells[i].positive ? positives_below : negatives_below) += 1;
            ++i;
        }
        if (i == cells.size()) {
            break;
        }
        const double next = cells[i].score;
        const double cut = value + (next - value) / 2.0;
        const double gap = next - value;
        const std::size_t errors = positives_below + (negatives - negatives_below);
        const bool better = !found || errors < best_errors || (errors == best_errors && gap > best_gap)
                            || (errors == best_errors && gap == best_gap && std::abs(cut) < std::abs(best_cut));
        if (better) {
            found = true;
            best_errors = errors;
            best_gap = gap;
            best_cut = cut;
        }
    }

    if (!found) {
        // Every cell has the same score: nothing lies above it.
        report.threshold = cells.front().score;
        report.misclassified = positives;
        return report;
    }
    report.threshold = best_cut;
    report.misclassified = best_errors;
    return report;
}

LabelMatrix apply_threshold(const DenseMatrix &raw_scores, double threshold) {
    std::vector<std::uint8_t> cells(raw_scores.size());
    const auto in = raw_scores.values();
    for (std::size_t i = 0; i < in.size(); ++i) {
        cells[i] = in[i] > threshold ? 1 : 0;
    }
    return LabelMatrix(raw_scores.rows(), raw_scores.cols(), std::move(cells));
}

void top1_fallback(const DenseMatrix &raw_scores, LabelMatrix &predicted) {
    if (raw_scores.rows() != predicted.rows() || raw_scores.cols() != predicted.cols()) {
        throw shape_error{ "score and label matrices differ in shape" };
    }
    if (predicted.cols() == 0) {
        return;
    }
    for (std::size_t r = 0; r < predicted.rows(); ++r) {
        if (predicted.row_count(r) != 0) {
            continue;
        }
        const auto s = raw_scores.row(r);
        const auto best = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
        predicted.set(r, best, true);
    }
}

LabelMatrix predict_labels(const ElmModel &model, const DenseMatrix &x) {
    const DenseMatrix scores = elm::raw_predict(model, x);
    LabelMatrix predicted = apply_threshold(scores, model.threshold);
    if (model.config.top1_fallback) {
        top1_fallback(scores, predicted);
    }
    return predicted;
}

}  // namespace multilabel

}  // namespace mlelm
