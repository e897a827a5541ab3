#include "mlelm/data.hpp"
#include "mlelm/errors.hpp"

#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mlelm::data {

namespace {

struct Attribute {
    std::string name;
    bool nominal{ false };
    std::vector<std::string> values;  // nominal domain
};

// Splits on `delim` outside of single or double quotes and strips the quotes.
// Inside quotes a backslash escapes the next character.
std::vector<std::string> split_quoted(std::string_view s, char delim, std::size_t line) {
    std::vector<std::string> out;
    std::string current;
    char quote = 0;
    bool quoted_token = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quote != 0) {
            if (c == '\\' && i + 1 < s.size()) {
                current.push_back(s[++i]);
            } else if (c == quote) {
                quote = 0;
            } else {
                current.push_back(c);
            }
        } else if (c == '\'' || c == '"') {
            quote = c;
            quoted_token = true;
        } else if (c == delim) {
            out.push_back(quoted_token ? current : std::string{ text::trim(current) });
            current.clear();
            quoted_token = false;
        } else {
            current.push_back(c);
        }
    }
    if (quote != 0) {
        throw parse_error{ "unterminated quote", line };
    }
    out.push_back(quoted_token ? current : std::string{ text::trim(current) });
    return out;
}

// Reads one possibly-quoted token from the front of `s`, advancing it.
std::string take_token(std::string_view &s, std::size_t line) {
    s = text::trim(s);
    if (s.empty()) {
        throw parse_error{ "expected a name", line };
    }
    std::string out;
    if (s.front() == '\'' || s.front() == '"') {
        const char q = s.front();
        std::size_t i = 1;
        for (; i < s.size() && s[i] != q; ++i) {
            if (s[i] == '\\' && i + 1 < s.size()) {
                ++i;
            }
            out.push_back(s[i]);
        }
        if (i >= s.size()) {
            throw parse_error{ "unterminated quote", line };
        }
        s.remove_prefix(i + 1);
        return out;
    }
    std::size_t i = 0;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '{') {
        ++i;
    }
    out = std::string{ s.substr(0, i) };
    s.remove_prefix(i);
    return out;
}

Attribute parse_attribute(std::string_view rest, std::size_t line) {
    Attribute a;
    a.name = take_token(rest, line);
    rest = text::trim(rest);
    if (rest.empty()) {
        throw parse_error{ "attribute '" + a.name + "' has no type", line };
    }
    if (rest.front() == '{') {
        const auto close = rest.rfind('}');
        if (close == std::string_view::npos) {
            throw parse_error{ "unterminated nominal domain for '" + a.name + "'", line };
        }
        a.nominal = true;
        a.values = split_quoted(rest.substr(1, close - 1), ',', line);
        if (a.values.empty() || (a.values.size() == 1 && a.values.front().empty())) {
            throw parse_error{ "empty nominal domain for '" + a.name + "'", line };
        }
        return a;
    }
    const std::string type = text::lower(text::trim(rest));
    if (type == "numeric" || type == "real" || type == "integer") {
        return a;
    }
    throw parse_error{ "unsupported attribute type '" + std::string{ text::trim(rest) } + "' for '" + a.name + "'", line };
}

bool starts_with_keyword(std::string_view line, std::string_view keyword) {
    return line.size() >= keyword.size() && text::iequals(line.substr(0, keyword.size()), keyword)
           && (line.size() == keyword.size() || std::isspace(static_cast<unsigned char>(line[keyword.size()])));
}

constexpr double missing = std::numeric_limits<double>::quiet_NaN();

}  // namespace

MultiLabelDataset parse_arff(std::string_view content, std::size_t label_count, bool labels_at_end, std::string name) {
    if (label_count < 1) {
        throw input_error{ "label count must be at least 1" };
    }
    const auto lines = text::lines(content);
    std::vector<Attribute> attributes;
    std::size_t line_no = 0;
    bool in_data = false;
    for (; line_no < lines.size() && !in_data; ++line_no) {
        const auto line = text::trim(lines[line_no]);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        if (starts_with_keyword(line, "@relation")) {
            auto rest = line.substr(9);
            if (!text::trim(rest).empty()) {
                name = take_token(rest, line_no + 1);
            }
        } else if (starts_with_keyword(line, "@attribute")) {
            attributes.push_back(parse_attribute(line.substr(10), line_no + 1));
        } else if (starts_with_keyword(line, "@data")) {
            in_data = true;
        } else {
            throw parse_error{ "unexpected header line '" + std::string{ line } + "'", line_no + 1 };
        }
    }
    if (!in_data) {
        throw parse_error{ "missing @data section", line_no };
    }
    const std::size_t attr_count = attributes.size();
    if (label_count >= attr_count) {
        throw input_error{ "label count " + std::to_string(label_count) + " leaves no feature among " + std::to_string(attr_count) + " attributes" };
    }

    // Column layout: labels are separate; features expand nominal attributes.
    const std::size_t first_label = labels_at_end ? attr_count - label_count : 0;
    const auto is_label = [&](std::size_t a) { return a >= first_label && a < first_label + label_count; };
    std::vector<std::size_t> column_of(attr_count, 0);
    std::vector<std::string> feature_names;
    std::vector<std::string> label_names;
    std::size_t source_features = 0;
    for (std::size_t a = 0; a < attr_count; ++a) {
        const Attribute &attr = attributes[a];
        if (is_label(a)) {
            if (attr.nominal) {
                for (const auto &v : attr.values) {
                    if (v != "0" && v != "1") {
                        throw format_error{ "label attribute '" + attr.name + "' has value '" + v + "' outside {0,1}" };
                    }
                }
            }
            column_of[a] = label_names.size();
            label_names.push_back(attr.name);
            continue;
        }
        ++source_features;
        column_of[a] = feature_names.size();
        if (attr.nominal) {
            for (const auto &v : attr.values) {
                feature_names.push_back(attr.name + "=" + v);
            }
        } else {
            feature_names.push_back(attr.name);
        }
    }
    const std::size_t d = feature_names.size();

    std::vector<double> features;
    std::vector<std::uint8_t> labels;
    std::size_t rows = 0;
    std::vector<std::string> cells(attr_count);
    for (; line_no < lines.size(); ++line_no) {
        const auto line = text::trim(lines[line_no]);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        const std::size_t at = line_no + 1;
        if (line.front() == '{') {
            if (line.back() != '}') {
                throw parse_error{ "unterminated sparse row", at };
            }
            for (std::size_t a = 0; a < attr_count; ++a) {
                cells[a] = attributes[a].nominal ? attributes[a].values.front() : "0";
            }
            const auto body = text::trim(line.substr(1, line.size() - 2));
            if (!body.empty()) {
                for (const auto &entry : split_quoted(body, ',', at)) {
                    auto rest = std::string_view{ entry };
                    const std::string index_text = take_token(rest, at);
                    const auto index = text::parse_double(index_text);
                    if (!index || *index < 0 || *index >= static_cast<double>(attr_count) || std::floor(*index) != *index) {
                        throw parse_error{ "bad sparse index '" + index_text + "'", at };
                    }
                    auto value = text::trim(rest);
                    if (!value.empty() && (value.front() == '\'' || value.front() == '"')) {
                        value = value.substr(1, value.size() >= 2 ? value.size() - 2 : 0);
                    }
                    cells[static_cast<std::size_t>(*index)] = std::string{ value };
                }
            }
        } else {
            auto parts = split_quoted(line, ',', at);
            if (parts.size() != attr_count) {
                throw parse_error{ "expected " + std::to_string(attr_count) + " values, found " + std::to_string(parts.size()), at };
            }
            cells = std::move(parts);
        }

        features.resize(features.size() + d, 0.0);
        labels.resize(labels.size() + label_count, 0);
        double *frow = features.data() + rows * d;
        std::uint8_t *lrow = labels.data() + rows * label_count;
        for (std::size_t a = 0; a < attr_count; ++a) {
            const Attribute &attr = attributes[a];
            const std::string &cell = cells[a];
            if (is_label(a)) {
                if (cell == "1" || cell == "0") {
                    lrow[column_of[a]] = cell == "1" ? 1 : 0;
                    continue;
                }
                const auto v = attr.nominal ? std::nullopt : text::parse_double(cell);
                if (!v || (*v != 0.0 && *v != 1.0)) {
                    throw format_error{ "label '" + attr.name + "' has value '" + cell + "' outside {0,1} (line " + std::to_string(at) + ")" };
                }
                lrow[column_of[a]] = *v == 1.0 ? 1 : 0;
                continue;
            }
            if (cell == "?") {
                const std::size_t width = attr.nominal ? attr.values.size() : 1;
                std::fill_n(frow + column_of[a], width, missing);
                continue;
            }
            if (attr.nominal) {
                const auto it = std::find(attr.values.begin(), attr.values.end(), cell);
                if (it == attr.values.end()) {
                    throw format_error{ "attribute '" + attr.name + "' has undeclared value '" + cell + "' (line " + std::to_string(at) + ")" };
                }
                frow[column_of[a] + static_cast<std::size_t>(it - attr.values.begin())] = 1.0;
                continue;
            }
            const auto v = text::parse_double(cell);
            if (!v || !std::isfinite(*v)) {
                throw parse_error{ "attribute '" + attr.name + "' has non-numeric value '" + cell + "'", at };
            }
            frow[column_of[a]] = *v;
        }
        ++rows;
    }

    // Mean imputation per column over the observed values.
    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0;
        std::size_t seen = 0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double v = features[r * d + c];
            if (!std::isnan(v)) {
                sum += v;
                ++seen;
            }
        }
        const double fill = seen == 0 ? 0.0 : sum / static_cast<double>(seen);
        for (std::size_t r = 0; r < rows; ++r) {
            double &v = features[r * d + c];
            if (std::isnan(v)) {
                v = fill;
            }
        }
    }

    MultiLabelDataset ds;
    ds.name = std::move(name);
    ds.features = DenseMatrix(rows, d, std::move(features));
    ds.labels = LabelMatrix(rows, label_count, std::move(labels));
    ds.feature_names = std::move(feature_names);
    ds.label_names = std::move(label_names);
    ds.source_feature_count = source_features;
    return ds;
}

MultiLabelDataset load_arff(const std::filesystem::path &path, std::size_t label_count, bool labels_at_end) {
    MultiLabelDataset ds = parse_arff(text::read_file(path.string()), label_count, labels_at_end);
    ds.name = path.stem().string();
    return ds;
}

}  // namespace mlelm::data
