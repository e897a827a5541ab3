#pragma once

#include "mlelm/dataset.hpp"
#include "mlelm/kernels.hpp"
#include "mlelm/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlelm {

using kernels::Activation;

[[nodiscard]] std::string_view to_string(Activation g);
/// Parses "sigmoid", "tanh" or "hardlimit"; throws input_error otherwise.
[[nodiscard]] Activation parse_activation(std::string_view name);

struct Interval {
    double lower;
    double upper;
    friend bool operator==(const Interval &, const Interval &) = default;
};

/// How the decision threshold stored in a model was obtained.
enum class ThresholdMethod : std::uint8_t { fixed = 0, midpoint_calibrated = 1 };

struct ElmConfig {
    std::size_t hidden_neurons{ 0 };
    Activation activation{ Activation::sigmoid };
    std::uint64_t seed{ 0 };
    /// Ridge added to the Gram diagonal. Unset means 1e-8 * trace(H^T H) / hidden_neurons.
    std::optional<double> ridge{};
    Interval weight_range{ -1.0, 1.0 };
    Interval bias_range{ 0.0, 1.0 };
    /// Unset: calibrate on the training outputs. Set: use this value as is.
    std::optional<double> fixed_threshold{};
    /// Predict the arg-max label for rows that would otherwise get no label.
    bool top1_fallback{ false };

    friend bool operator==(const ElmConfig &, const ElmConfig &) = default;
};

/// Throws input_error when the config breaks an invariant.
void validate(const ElmConfig &config);

/// min(1000, 10 * labels + 2 * features).
[[nodiscard]] std::size_t default_hidden_neurons(std::size_t feature_count, std::size_t label_count);

/// Affine map x -> (x - shift) * scale taking the training range of a feature onto [-1, 1].
struct FeatureScaling {
    double shift{ 0.0 };
    double scale{ 1.0 };
    friend bool operator==(const FeatureScaling &, const FeatureScaling &) = default;
};

struct HiddenLayer {
    DenseMatrix input_weights;  // hidden x features
    std::vector<double> biases;
};

struct ElmModel {
    DenseMatrix input_weights;   // hidden x features
    std::vector<double> biases;  // hidden
    DenseMatrix output_weights;  // hidden x labels
    Activation activation{ Activation::sigmoid };
    double threshold{ 0.0 };
    ThresholdMethod threshold_method{ ThresholdMethod::fixed };
    std::vector<FeatureScaling> normalization;  // one per feature
    std::vector<std::string> label_names;
    ElmConfig config;
    /// Ridge actually used when solving for the output weights.
    double ridge_used{ 0.0 };

    [[nodiscard]] std::size_t feature_count() const noexcept { return input_weights.cols(); }
    [[nodiscard]] std::size_t hidden_neurons() const noexcept { return input_weights.rows(); }
    [[nodiscard]] std::size_t label_count() const noexcept { return output_weights.cols(); }

    friend bool operator==(const ElmModel &, const ElmModel &) = default;
};

/// Throws format_error if the model's dimensions are inconsistent or a weight is not finite.
void validate(const ElmModel &model);

namespace elm {

/// Draws the random hidden layer. Each neuron's weights are drawn followed by
/// its bias, so a larger layer built from the same seed extends a smaller one.
[[nodiscard]] HiddenLayer init_hidden(const ElmConfig &config, std::size_t feature_count);

/// H[j][i] = g(w_i . x_j + b_i); dims x.rows() x weights.rows().
[[nodiscard]] DenseMatrix hidden_output(const DenseMatrix &x, const DenseMatrix &input_weights, std::span<const double> biases, Activation activation);

/// Per-feature scaling onto [-1, 1]; constant features map to 0.
[[nodiscard]] std::vector<FeatureScaling> fit_normalization(const DenseMatrix &features);
[[nodiscard]] DenseMatrix normalize(const DenseMatrix &features, std::span<const FeatureScaling> scaling);

/// Fits a model on the dataset: normalization, random hidden layer, output
/// weights against bipolar targets, and the decision threshold.
[[nodiscard]] ElmModel train(const MultiLabelDataset &dataset, const ElmConfig &config);

/// Real-valued label scores H * beta, one row per sample.
[[nodiscard]] DenseMatrix raw_predict(const ElmModel &model, const DenseMatrix &x);

}  // namespace elm

}  // namespace mlelm
