#pragma once

#include "mlelm/elm.hpp"
#include "mlelm/label_matrix.hpp"
#include "mlelm/matrix.hpp"

namespace mlelm::multilabel {

struct ThresholdReport {
    double threshold{ 0.0 };
    double positive_min{ 0.0 };
    double negative_max{ 0.0 };
    /// positive_min - negative_max; positive iff the two populations are separable.
    double margin{ 0.0 };
    ThresholdMethod method{ ThresholdMethod::midpoint_calibrated };
    /// Cells on the wrong side of the threshold.
    std::size_t misclassified{ 0 };
};

/// 0 -> -1, 1 -> +1.
[[nodiscard]] DenseMatrix encode_bipolar(const LabelMatrix &labels);
/// Inverse of encode_bipolar: positive entries -> 1, everything else -> 0.
[[nodiscard]] LabelMatrix decode_bipolar(const DenseMatrix &bipolar);

/**
 * Picks the single global cut separating scores of present labels from
 * scores of absent ones.
 *
 * Separable populations get the midpoint of the gap. Otherwise the cut is
 * the midpoint of two adjacent distinct scores that misclassifies the fewest
 * cells; ties go to the wider gap, then to the smaller |threshold|.
 *
 * Throws calibration_error when there is no positive or no negative cell,
 * shape_error on mismatched dimensions.
 */
[[nodiscard]] ThresholdReport calibrate_threshold(const DenseMatrix &raw_scores, const LabelMatrix &true_labels);

/// Cell is 1 iff score > threshold.
[[nodiscard]] LabelMatrix apply_threshold(const DenseMatrix &raw_scores, double threshold);

/// Sets the arg-max label (first on ties) in every row of `predicted` that has none.
void top1_fallback(const DenseMatrix &raw_scores, LabelMatrix &predicted);

/// apply_threshold(raw_predict(model, x), model.threshold), plus the top-1
/// fallback when the model was configured with it.
[[nodiscard]] LabelMatrix predict_labels(const ElmModel &model, const DenseMatrix &x);

}  // namespace mlelm::multilabel
