#include "mlelm/elm.hpp"

#include "mlelm/errors.hpp"
#include "mlelm/linalg.hpp"
#include "mlelm/multilabel.hpp"
#include "mlelm/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mlelm {

std::string_view to_string(Activation g) {
    switch (g) {
        case Activation::sigmoid:
            return "sigmoid";
        case Activation::tanh:
            return "tanh";
        case Activation::hardlimit:
            return "hardlimit";
    }
    return "unknown";
}

Activation parse_activation(std::string_view name) {
    if (name == "sigmoid") {
        return Activation::sigmoid;
    }
    if (name == "tanh") {
        return Activation::tanh;
    }
    if (name == "hardlimit") {
        return Activation::hardlimit;
    }
    throw input_error{ "unknown activation '" + std::string{ name } + "' (expected sigmoid, tanh or hardlimit)" };
}

void validate(const ElmConfig &config) {
    if (config.hidden_neurons < 1) {
        throw input_error{ "hidden neuron count must be at least 1" };
    }
    if (!(config.weight_range.lower < config.weight_range.upper)) {
        throw input_error{ "weight range lower bound must be below its upper bound" };
    }
    if (!(config.bias_range.lower < config.bias_range.upper)) {
        throw input_error{ "bias range lower bound must be below its upper bound" };
    }
    if (config.ridge && !(*config.ridge >= 0.0 && std::isfinite(*config.ridge))) {
        throw input_error{ "ridge must be a finite value >= 0" };
    }
    if (config.fixed_threshold && !std::isfinite(*config.fixed_threshold)) {
        throw input_error{ "fixed threshold must be finite" };
    }
}

std::size_t default_hidden_neurons(std::size_t feature_count, std::size_t label_count) {
    return std::min<std::size_t>(1000, 10 * label_count + 2 * feature_count);
}

void validate(const ElmModel &model) {
    const std::size_t hidden = model.input_weights.rows();
    if (hidden == 0 || model.biases.size() != hidden || model.output_weights.rows() != hidden) {
        throw format_error{ "model hidden-layer dimensions are inconsistent" };
    }
    if (model.input_weights.cols() != model.normalization.size()) {
        throw format_error{ "model feature count does not match its normalization table" };
    }
    if (model.output_weights.cols() != model.label_names.size()) {
        throw format_error{ "model label count does not match its label names" };
    }
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(model.input_weights.values().begin(), model.input_weights.values().end(), finite)
        || !std::all_of(model.output_weights.values().begin(), model.output_weights.values().end(), finite)
        || !std::all_of(model.biases.begin(), model.biases.end(), finite) || !std::isfinite(model.threshold)) {
        throw format_error{ "model contains non-finite weights" };
    }
}

namespace elm {

HiddenLayer init_hidden(const ElmConfig &config, std::size_t feature_count) {
    validate(config);
    if (feature_count < 1) {
        throw input_error{ "feature count must be at least 1" };
    }
    Rng rng{ config.seed };
    HiddenLayer layer{ DenseMatrix(config.hidden_neurons, feature_count), std::vector<double>(config.hidden_neurons) };
    for (std::size_t i = 0; i < config.hidden_neurons; ++i) {
        for (double &w : layer.input_weights.row(i)) {
            w = rng.uniform(config.weight_range.lower, config.weight_range.upper);
        }
        layer.biases[i] = rng.uniform(config.bias_range.lower, config.bias_range.upper);
    }
    return layer;
}

DenseMatrix hidden_output(const DenseMatrix &x, const DenseMatrix &input_weights, std::span<const double> biases, Activation activation) {
    if (x.cols() != input_weights.cols()) {
        throw shape_error{ "samples have " + std::to_string(x.cols()) + " features, hidden layer expects " + std::to_string(input_weights.cols()) };
    }
    if (biases.size() != input_weights.rows()) {
        throw shape_error{ "bias count does not match hidden neuron count" };
    }
    DenseMatrix h;
    kernels::parallel::hidden_layer(x, input_weights, biases, activation, h);
    return h;
}

std::vector<FeatureScaling> fit_normalization(const DenseMatrix &features) {
    std::vector<FeatureScaling> scaling(features.cols());
    if (features.rows() == 0) {
        return scaling;
    }
    for (std::size_t d = 0; d < features.cols(); ++d) {
        double lo = features(0, d);
        double hi = lo;
        for (std::size_t j = 1; j < features.rows(); ++j) {
            lo = std::min(lo, features(j, d));
            hi = std::max(hi, features(j, d));
        }
        if (hi > lo) {
            scaling[d] = { lo + (hi - lo) / 2.0, 2.0 / (hi - lo) };
        } else {
            scaling[d] = { lo, 0.0 };
        }
    }
    return scaling;
}

DenseMatrix normalize(const DenseMatrix &features, std::span<const FeatureScaling> scaling) {
    if (features.cols() != scaling.size()) {
        throw shape_error{ "samples have " + std::to_string(features.cols()) + " features, model expects " + std::to_string(scaling.size()) };
    }
    DenseMatrix out = features;
    for (std::size_t j = 0; j < out.rows(); ++j) {
        auto r = out.row(j);
        for (std::size_t d = 0; d < r.size(); ++d) {
            r[d] = (r[d] - scaling[d].shift) * scaling[d].scale;
        }
    }
    return out;
}

ElmModel train(const MultiLabelDataset &dataset, const ElmConfig &config) {
    validate(config);
    if (dataset.samples() == 0 || dataset.feature_count() == 0 || dataset.label_count() == 0) {
        throw input_error{ "cannot train on an empty dataset" };
    }
    if (dataset.labels.rows() != dataset.samples()) {
        throw shape_error{ "feature and label row counts differ" };
    }

    ElmModel model;
    model.config = config;
    model.activation = config.activation;
    model.label_names = dataset.label_names;
    if (model.label_names.size() != dataset.label_count()) {
        model.label_names.clear();
        for (std::size_t l = 0; l < dataset.label_count(); ++l) {
            model.label_names.push_back("l" + std::to_string(l));
        }
    }
    model.normalization = fit_normalization(dataset.features);

    HiddenLayer layer = init_hidden(config, dataset.feature_count());
    model.input_weights = std::move(layer.input_weights);
    model.biases = std::move(layer.biases);

    const DenseMatrix h = hidden_output(normalize(dataset.features, model.normalization), model.input_weights, model.biases, model.activation);
    const DenseMatrix targets = multilabel::encode_bipolar(dataset.labels);
    model.ridge_used = config.ridge ? *config.ridge : 1e-8 * linalg::gram_trace(h) / static_cast<double>(config.hidden_neurons);
    model.output_weights = linalg::least_squares(h, targets, model.ridge_used);

    if (config.fixed_threshold) {
        model.threshold = *config.fixed_threshold;
        model.threshold_method = ThresholdMethod::fixed;
    } else {
        try {
            const auto report = multilabel::calibrate_threshold(linalg::matmul(h, model.output_weights), dataset.labels);
            model.threshold = report.threshold;
            model.threshold_method = report.method;
        } catch (const calibration_error &) {
            model.threshold = 0.0;
            model.threshold_method = ThresholdMethod::fixed;
        }
    }
    validate(model);
    return model;
}

DenseMatrix raw_predict(const ElmModel &model, const DenseMatrix &x) {
    if (x.cols() != model.feature_count()) {
        throw shape_error{ "samples have " + std::to_string(x.cols()) + " features, model expects " + std::to_string(model.feature_count()) };
    }
    const DenseMatrix h = hidden_output(normalize(x, model.normalization), model.input_weights, model.biases, model.activation);
    return linalg::matmul(h, model.output_weights);
}

}  // namespace elm

}  // namespace mlelm
