#include "mlelm/data.hpp"

#include "mlelm/errors.hpp"
#include "mlelm/random.hpp"

#include "text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mlelm {

namespace text {

std::string read_file(const std::string &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw error{ "cannot open '" + path + "'" };
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace text

MultiLabelDataset make_dataset(DenseMatrix features, LabelMatrix labels, std::string name) {
    if (features.rows() != labels.rows()) {
        throw shape_error{ "feature and label matrices have different row counts" };
    }
    MultiLabelDataset ds;
    ds.name = std::move(name);
    for (std::size_t d = 0; d < features.cols(); ++d) {
        ds.feature_names.push_back("f" + std::to_string(d));
    }
    for (std::size_t l = 0; l < labels.cols(); ++l) {
        ds.label_names.push_back("l" + std::to_string(l));
    }
    ds.source_feature_count = features.cols();
    ds.features = std::move(features);
    ds.labels = std::move(labels);
    return ds;
}

MultiLabelDataset select_rows(const MultiLabelDataset &dataset, std::span<const std::size_t> indices) {
    const std::size_t d = dataset.feature_count();
    const std::size_t m = dataset.label_count();
    std::vector<double> features;
    std::vector<std::uint8_t> labels;
    features.reserve(indices.size() * d);
    labels.reserve(indices.size() * m);
    for (std::size_t i : indices) {
        if (i >= dataset.samples()) {
            throw input_error{ "row index " + std::to_string(i) + " out of range" };
        }
        const auto f = dataset.features.row(i);
        const auto l = dataset.labels.row(i);
        features.insert(features.end(), f.begin(), f.end());
        labels.insert(labels.end(), l.begin(), l.end());
    }
    MultiLabelDataset out;
    out.name = dataset.name;
    out.features = DenseMatrix(indices.size(), d, std::move(features));
    out.labels = LabelMatrix(indices.size(), m, std::move(labels));
    out.feature_names = dataset.feature_names;
    out.label_names = dataset.label_names;
    out.source_feature_count = dataset.source_feature_count;
    return out;
}

namespace data {

MultiLabelDataset parse_delimited(std::string_view content, std::size_t label_count, char delimiter, std::string name) {
    const auto lines = text::lines(content);
    std::vector<std::vector<std::string_view>> rows;
    std::vector<std::size_t> row_line;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (text::trim(lines[i]).empty()) {
            continue;
        }
        rows.push_back(text::split(lines[i], delimiter));
        row_line.push_back(i + 1);
    }
    if (rows.empty()) {
        throw input_error{ "delimited file has no rows" };
    }
    const std::size_t width = rows.front().size();
    if (label_count >= width) {
        throw input_error{ "label count " + std::to_string(label_count) + " leaves no feature among " + std::to_string(width) + " columns" };
    }
    const std::size_t d = width - label_count;

    const bool has_header = std::any_of(rows.front().begin(), rows.front().end(), [](std::string_view cell) { return !text::parse_double(cell); });
    MultiLabelDataset ds;
    ds.name = std::move(name);
    std::size_t first = 0;
    if (has_header) {
        for (std::size_t c = 0; c < width; ++c) {
            const std::string cell{ text::trim(rows.front()[c]) };
            (c < d ? ds.feature_names : ds.label_names).push_back(cell);
        }
        first = 1;
    } else {
        for (std::size_t c = 0; c < d; ++c) {
            ds.feature_names.push_back("f" + std::to_string(c));
        }
        for (std::size_t l = 0; l < label_count; ++l) {
            ds.label_names.push_back("l" + std::to_string(l));
        }
    }

    const std::size_t n = rows.size() - first;
    std::vector<double> features;
    std::vector<std::uint8_t> labels;
    features.reserve(n * d);
    labels.reserve(n * label_count);
    for (std::size_t r = first; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (row.size() != width) {
            throw parse_error{ "row has " + std::to_string(row.size()) + " columns, expected " + std::to_string(width), row_line[r] };
        }
        for (std::size_t c = 0; c < width; ++c) {
            const auto v = text::parse_double(row[c]);
            if (!v || !std::isfinite(*v)) {
                throw parse_error{ "non-numeric value '" + std::string{ text::trim(row[c]) } + "' in column " + std::to_string(c + 1), row_line[r] };
            }
            if (c < d) {
                features.push_back(*v);
            } else if (*v == 0.0 || *v == 1.0) {
                labels.push_back(*v == 1.0 ? 1 : 0);
            } else {
                throw format_error{ "label column " + std::to_string(c + 1) + " has value outside {0,1} (line " + std::to_string(row_line[r]) + ")" };
            }
        }
    }
    ds.features = DenseMatrix(n, d, std::move(features));
    ds.labels = LabelMatrix(n, label_count, std::move(labels));
    ds.source_feature_count = d;
    return ds;
}

MultiLabelDataset load_delimited(const std::filesystem::path &path, std::size_t label_count, char delimiter) {
    return parse_delimited(text::read_file(path.string()), label_count, delimiter, path.stem().string());
}

std::string format_delimited(const MultiLabelDataset &dataset, char delimiter) {
    std::string out;
    const auto separator = [&](std::size_t c, std::size_t width) { out += c + 1 < width ? delimiter : '\n'; };
    const std::size_t width = dataset.feature_count() + dataset.label_count();
    for (std::size_t c = 0; c < width; ++c) {
        const std::size_t d = dataset.feature_count();
        out += c < d ? dataset.feature_names.at(c) : dataset.label_names.at(c - d);
        separator(c, width);
    }
    char buffer[64];
    for (std::size_t r = 0; r < dataset.samples(); ++r) {
        std::size_t c = 0;
        for (double v : dataset.features.row(r)) {
            const auto res = std::to_chars(buffer, buffer + sizeof buffer, v, std::chars_format::general, 17);
            out.append(buffer, res.ptr);
            separator(c++, width);
        }
        for (std::uint8_t l : dataset.labels.row(r)) {
            out += l != 0 ? '1' : '0';
            separator(c++, width);
        }
    }
    return out;
}

void save_delimited(const MultiLabelDataset &dataset, const std::filesystem::path &path, char delimiter) {
    std::ofstream out{ path, std::ios::binary | std::ios::trunc };
    if (!out) {
        throw error{ "cannot open '" + path.string() + "' for writing" };
    }
    out << format_delimited(dataset, delimiter);
}

MultiLabelDataset load_dataset(const std::filesystem::path &path, const LoadOptions &options) {
    if (text::lower(path.extension().string()) == ".arff") {
        return load_arff(path, options.label_count, options.labels_at_end);
    }
    return load_delimited(path, options.label_count, options.delimiter);
}

std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset &dataset, double test_fraction, std::uint64_t seed) {
    const std::size_t n = dataset.samples();
    if (n < 2) {
        throw input_error{ "splitting needs at least 2 samples" };
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw input_error{ "test fraction must lie in (0, 1)" };
    }
    // The small offset keeps products like 0.3 * 10 from rounding up past an integer.
    const auto test_n = static_cast<std::size_t>(std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
    if (test_n == 0 || test_n >= n) {
        throw input_error{ "test fraction " + std::to_string(test_fraction) + " leaves one side of a " + std::to_string(n) + "-sample split empty" };
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{ 0 });
    Rng rng{ seed };
    rng.shuffle(std::span{ order });
    std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_n));
    std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(test_n), order.end());
    std::sort(test.begin(), test.end());
    std::sort(train.begin(), train.end());
    return { select_rows(dataset, train), select_rows(dataset, test) };
}

bool SpecCheck::passed() const {
    return std::all_of(fields.begin(), fields.end(), [](const FieldCheck &f) { return f.passed; });
}

SpecCheck verify_against_spec(const MultiLabelDataset &dataset, const ExpectedSpec &expected) {
    SpecCheck check;
    const auto exact = [&](std::string field, std::size_t want, std::size_t got) {
        check.fields.push_back({ std::move(field), static_cast<double>(want), static_cast<double>(got), 0.0, want == got });
    };
    const auto near = [&](std::string field, double want, double got, double tol) {
        check.fields.push_back({ std::move(field), want, got, tol, std::abs(want - got) <= tol });
    };
    exact("samples", expected.samples, dataset.samples());
    exact("features", expected.features, dataset.source_feature_count);
    exact("labels", expected.labels, dataset.label_count());
    if (dataset.samples() == 0 || dataset.label_count() == 0) {
        near("cardinality", expected.label_cardinality, 0.0, cardinality_tolerance);
        check.fields.back().passed = false;
        near("density", expected.label_density, 0.0, density_tolerance);
        check.fields.back().passed = false;
        return check;
    }
    const auto stats = metrics::dataset_stats(dataset.labels, dataset.source_feature_count);
    // Half a unit in the last place of the expected value is absorbed by rounding, hence the slack.
    near("cardinality", expected.label_cardinality, stats.label_cardinality, cardinality_tolerance + 1e-12);
    near("density", expected.label_density, stats.label_density, density_tolerance + 1e-12);
    return check;
}

ExpectedSpec spec_of(const MultiLabelDataset &dataset) {
    const auto stats = metrics::dataset_stats(dataset.labels, dataset.source_feature_count);
    return { dataset.name, stats.samples, stats.features, stats.labels, stats.label_cardinality, stats.label_density };
}

ExpectedSpec parse_expected_spec(std::string_view content) {
    ExpectedSpec spec;
    const auto lines = text::lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto line = lines[i];
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = text::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw parse_error{ "expected key=value", i + 1 };
        }
        const std::string key = text::lower(text::trim(line.substr(0, eq)));
        const auto value = text::trim(line.substr(eq + 1));
        if (key == "name") {
            spec.name = std::string{ value };
            continue;
        }
        const auto number = text::parse_double(value);
        if (!number || *number < 0) {
            throw parse_error{ "bad value for '" + key + "'", i + 1 };
        }
        if (key == "samples") {
            spec.samples = static_cast<std::size_t>(*number);
        } else if (key == "features") {
            spec.features = static_cast<std::size_t>(*number);
        } else if (key == "labels") {
            spec.labels = static_cast<std::size_t>(*number);
        } else if (key == "cardinality" || key == "lc") {
            spec.label_cardinality = *number;
        } else if (key == "density" || key == "ld") {
            spec.label_density = *number;
        } else {
            throw parse_error{ "unknown key '" + key + "'", i + 1 };
        }
    }
    return spec;
}

ExpectedSpec load_expected_spec(const std::filesystem::path &path) {
    return parse_expected_spec(text::read_file(path.string()));
}

std::string format_expected_spec(const ExpectedSpec &spec) {
    std::ostringstream out;
    out.precision(17);
    out << "name=" << spec.name << "\nsamples=" << spec.samples << "\nfeatures=" << spec.features << "\nlabels=" << spec.labels
        << "\ncardinality=" << spec.label_cardinality << "\ndensity=" << spec.label_density << '\n';
    return out.str();
}

const std::vector<ExpectedSpec> &benchmark_specs() {
    static const std::vector<ExpectedSpec> specs{
        { "emotions", 593, 72, 6, 1.87, 0.312 },   { "yeast", 2417, 103, 14, 4.24, 0.303 },   { "scene", 2407, 294, 6, 1.07, 0.178 },
        { "corel5k", 5000, 499, 374, 3.52, 0.009 }, { "enron", 1702, 1001, 53, 3.38, 0.064 }, { "medical", 978, 1449, 45, 1.25, 0.027 },
    };
    return specs;
}

std::optional<ExpectedSpec> benchmark_spec(std::string_view name) {
    const std::string key = text::lower(name);
    for (const auto &s : benchmark_specs()) {
        if (s.name == key || (key == "emotion" && s.name == "emotions")) {
            return s;
        }
    }
    return std::nullopt;
}

}  // namespace data

}  // namespace mlelm
