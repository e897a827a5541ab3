#include "mlelm/report.hpp"

#include "mlelm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace mlelm::report {

std::string fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    return buffer;
}

std::string exact(double value) {
    char buffer[64];
    const auto res = std::to_chars(buffer, buffer + sizeof buffer, value);
    return { buffer, res.ptr };
}

std::string metrics_table(const metrics::MetricsReport &m) {
    return "hamming_loss\taccuracy\tprecision\trecall\tf1\n" + fixed(m.hamming_loss) + '\t' + fixed(m.accuracy) + '\t' + fixed(m.precision) + '\t'
           + fixed(m.recall) + '\t' + fixed(m.f1) + '\n';
}

std::string metrics_keyvalues(const metrics::MetricsReport &m, std::string_view prefix) {
    const std::string p{ prefix };
    return p + "samples=" + std::to_string(m.sample_count) + '\n' + p + "hamming_loss=" + exact(m.hamming_loss) + '\n' + p + "accuracy=" + exact(m.accuracy)
           + '\n' + p + "precision=" + exact(m.precision) + '\n' + p + "recall=" + exact(m.recall) + '\n' + p + "f1=" + exact(m.f1) + '\n';
}

std::string cv_summary(const cv::CvReport &r) {
    const auto line = [](std::string_view name, double mean, double sd) { return std::string{ name } + ": " + fixed(mean) + "(±" + fixed(sd) + ")\n"; };
    return line("hamming", r.mean.hamming_loss, r.stddev.hamming_loss) + line("accuracy", r.mean.accuracy, r.stddev.accuracy)
           + line("precision", r.mean.precision, r.stddev.precision) + line("recall", r.mean.recall, r.stddev.recall) + line("f1", r.mean.f1, r.stddev.f1);
}

std::string cv_keyvalues(const cv::CvReport &r) {
    std::string out = "k=" + std::to_string(r.k) + "\nseed=" + std::to_string(r.seed) + '\n';
    out += metrics_keyvalues(r.mean, "mean.");
    out += metrics_keyvalues(r.stddev, "stddev.");
    for (std::size_t f = 0; f < r.per_fold.size(); ++f) {
        out += metrics_keyvalues(r.per_fold[f], "fold" + std::to_string(f) + '.');
    }
    return out;
}

std::string stats_table(std::string_view name, const metrics::DatasetStats &s) {
    return "dataset\t" + std::string{ name } + "\nsamples\t" + std::to_string(s.samples) + "\nfeatures\t" + std::to_string(s.features) + "\nlabels\t"
           + std::to_string(s.labels) + "\ncardinality\t" + fixed(s.label_cardinality) + "\ndensity\t" + fixed(s.label_density, 3) + '\n';
}

std::string stats_keyvalues(std::string_view name, const metrics::DatasetStats &s) {
    return "name=" + std::string{ name } + "\nsamples=" + std::to_string(s.samples) + "\nfeatures=" + std::to_string(s.features)
           + "\nlabels=" + std::to_string(s.labels) + "\ncardinality=" + exact(s.label_cardinality) + "\ndensity=" + exact(s.label_density) + '\n';
}

std::string spec_check_table(const data::SpecCheck &check) {
    std::string out;
    for (const auto &f : check.fields) {
        const bool integral = f.tolerance == 0.0;
        out += "check\t" + f.field + "\texpected " + (integral ? fixed(f.expected, 0) : fixed(f.expected, 3)) + "\tactual "
               + (integral ? fixed(f.actual, 0) : fixed(f.actual, 4)) + '\t' + (f.passed ? "PASS" : "FAIL") + '\n';
    }
    out += std::string{ "spec\t" } + (check.passed() ? "PASS" : "FAIL") + '\n';
    return out;
}

std::string timing_header() {
    return "dataset\tn_train\tn_test\thidden\ttrain_s\ttest_s\n";
}

std::string timing_row(const TimingReport &t) {
    return t.dataset + '\t' + std::to_string(t.train_samples) + '\t' + std::to_string(t.test_samples) + '\t' + std::to_string(t.hidden_neurons) + '\t'
           + fixed(t.train_seconds, 4) + '\t' + fixed(t.test_seconds, 4) + '\n';
}

std::string timing_keyvalues(const TimingReport &t) {
    const std::string p = t.dataset + '.';
    std::string out = p + "train_samples=" + std::to_string(t.train_samples) + '\n' + p + "test_samples=" + std::to_string(t.test_samples) + '\n' + p
                      + "hidden=" + std::to_string(t.hidden_neurons) + '\n' + p + "train_seconds=" + exact(t.train_seconds) + '\n' + p
                      + "test_seconds=" + exact(t.test_seconds) + '\n';
    for (std::size_t i = 0; i < t.train_runs.size(); ++i) {
        out += p + "train_run" + std::to_string(i) + '=' + exact(t.train_runs[i]) + '\n';
    }
    for (std::size_t i = 0; i < t.test_runs.size(); ++i) {
        out += p + "test_run" + std::to_string(i) + '=' + exact(t.test_runs[i]) + '\n';
    }
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw input_error{ "median of an empty sample" };
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

}  // namespace mlelm::report
