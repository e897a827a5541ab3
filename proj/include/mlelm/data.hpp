#pragma once

#include "mlelm/dataset.hpp"
#include "mlelm/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlelm::data {

/**
 * Reads a multi-label ARFF file (MULAN/KEEL convention).
 *
 * The last `label_count` attributes (the first ones when `labels_at_end` is
 * false) form the label matrix and must be {0,1} valued. Numeric attributes
 * become features, nominal ones are one-hot expanded, and missing values are
 * replaced by the attribute mean. Dense and sparse data rows are accepted.
 */
[[nodiscard]] MultiLabelDataset load_arff(const std::filesystem::path &path, std::size_t label_count, bool labels_at_end = true);
/// Same as load_arff, reading from memory. `name` is used when the text has no @relation.
[[nodiscard]] MultiLabelDataset parse_arff(std::string_view text, std::size_t label_count, bool labels_at_end = true, std::string name = "dataset");

/// Rectangular delimited text; last `label_count` columns are labels (zero
/// reads a plain feature matrix). A first row with any non-numeric cell is
/// taken as a header.
[[nodiscard]] MultiLabelDataset load_delimited(const std::filesystem::path &path, std::size_t label_count, char delimiter = ',');
[[nodiscard]] MultiLabelDataset parse_delimited(std::string_view text, std::size_t label_count, char delimiter = ',', std::string name = "dataset");

/// Writes a header row plus one row per sample, features at 17 significant digits.
void save_delimited(const MultiLabelDataset &dataset, const std::filesystem::path &path, char delimiter = ',');
[[nodiscard]] std::string format_delimited(const MultiLabelDataset &dataset, char delimiter = ',');

struct LoadOptions {
    std::size_t label_count{ 0 };
    bool labels_at_end{ true };
    char delimiter{ ',' };
};

/// Dispatches on extension: ".arff" goes to load_arff, everything else to load_delimited.
[[nodiscard]] MultiLabelDataset load_dataset(const std::filesystem::path &path, const LoadOptions &options);

/// Seeded shuffle, then ceil(test_fraction * N) samples go to the test side.
/// Both sides keep the original row order. Throws input_error if a side would be empty.
[[nodiscard]] std::pair<MultiLabelDataset, MultiLabelDataset> split(const MultiLabelDataset &dataset, double test_fraction, std::uint64_t seed);

/// Published shape of a benchmark dataset.
struct ExpectedSpec {
    std::string name;
    std::size_t samples{ 0 };
    std::size_t features{ 0 };
    std::size_t labels{ 0 };
    double label_cardinality{ 0.0 };
    double label_density{ 0.0 };
};

inline constexpr double cardinality_tolerance = 0.01;
inline constexpr double density_tolerance = 0.002;

struct FieldCheck {
    std::string field;
    double expected{ 0.0 };
    double actual{ 0.0 };
    double tolerance{ 0.0 };
    bool passed{ false };
};

struct SpecCheck {
    std::vector<FieldCheck> fields;
    [[nodiscard]] bool passed() const;
};

/// N, D (pre-expansion) and M must match exactly; LC and LD within the tolerances above.
[[nodiscard]] SpecCheck verify_against_spec(const MultiLabelDataset &dataset, const ExpectedSpec &expected);

/// Expected spec derived from a dataset's own statistics.
[[nodiscard]] ExpectedSpec spec_of(const MultiLabelDataset &dataset);

/// key=value lines: name, samples, features, labels, cardinality, density. '#' starts a comment.
[[nodiscard]] ExpectedSpec parse_expected_spec(std::string_view text);
[[nodiscard]] ExpectedSpec load_expected_spec(const std::filesystem::path &path);
[[nodiscard]] std::string format_expected_spec(const ExpectedSpec &spec);

/// The six public benchmark datasets: emotions, yeast, scene, corel5k, enron, medical.
[[nodiscard]] const std::vector<ExpectedSpec> &benchmark_specs();
[[nodiscard]] std::optional<ExpectedSpec> benchmark_spec(std::string_view name);

}  // namespace mlelm::data
