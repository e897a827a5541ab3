#include "mlelm/cli.hpp"

#include "mlelm/cv.hpp"
#include "mlelm/data.hpp"
#include "mlelm/elm.hpp"
#include "mlelm/errors.hpp"
#include "mlelm/metrics.hpp"
#include "mlelm/model_io.hpp"
#include "mlelm/multilabel.hpp"
#include "mlelm/report.hpp"

#include "text.hpp"

#include <tuple>
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

namespace mlelm::cli {

namespace {

namespace fs = std::filesystem;

enum class Command { stats, train, predict, evaluate, crossval, bench };

/// Everything a command line can set; each command reads the subset it needs.
struct RunConfig {
    Command command{ Command::stats };
    std::vector<std::string> datasets;
    std::vector<std::size_t> label_counts;
    bool labels_first{ false };
    char delimiter{ ',' };
    std::size_t hidden{ 0 };  // 0: derived from the data
    std::string activation{ "sigmoid" };
    std::string ridge{ "auto" };
    std::uint64_t seed{ 1 };
    std::string threshold{ "auto" };
    bool top1_fallback{ false };
    std::string model;
    std::string out;
    std::string report;
    std::string expected;
    std::string expected_builtin;
    std::string predictions;
    bool scores{ false };
    std::size_t k{ 10 };
    std::size_t repeats{ 5 };
    double test_fraction{ 0.3 };
};

class Stopwatch {
  public:
    Stopwatch() :
        start_{ std::chrono::steady_clock::now() } {}

    [[nodiscard]] double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

  private:
    std::chrono::steady_clock::time_point start_;
};

void require_file(const std::string &path, std::string_view what) {
    if (path.empty()) {
        throw input_error{ std::string{ what } + " path is required" };
    }
    if (!fs::is_regular_file(path)) {
        throw input_error{ std::string{ what } + " '" + path + "' does not exist" };
    }
}

void require_writable(const std::string &path) {
    if (path.empty()) {
        return;
    }
    const fs::path parent = fs::path{ path }.parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
        throw input_error{ "output directory '" + parent.string() + "' does not exist" };
    }
}

void write_text(const std::string &path, const std::string &content) {
    std::ofstream out{ path, std::ios::binary | std::ios::trunc };
    if (!out) {
        throw error{ "cannot open '" + path + "' for writing" };
    }
    out << content;
}

std::size_t label_count_for(const RunConfig &rc, std::size_t index) {
    if (rc.label_counts.empty()) {
        return 0;
    }
    return rc.label_counts.size() == 1 ? rc.label_counts.front() : rc.label_counts.at(index);
}

MultiLabelDataset load(const RunConfig &rc, std::size_t index) {
    const std::size_t labels = label_count_for(rc, index);
    if (labels == 0) {
        throw input_error{ "--labels is required for '" + rc.datasets.at(index) + "'" };
    }
    return data::load_dataset(rc.datasets.at(index), { labels, !rc.labels_first, rc.delimiter });
}

ElmConfig make_config(const RunConfig &rc, const MultiLabelDataset &dataset) {
    ElmConfig config;
    config.hidden_neurons = rc.hidden != 0 ? rc.hidden : default_hidden_neurons(dataset.feature_count(), dataset.label_count());
    config.activation = parse_activation(rc.activation);
    config.seed = rc.seed;
    if (rc.ridge != "auto") {
        const auto v = text::parse_double(rc.ridge);
        if (!v || *v < 0.0) {
            throw input_error{ "--ridge expects 'auto' or a value >= 0" };
        }
        config.ridge = *v;
    }
    if (rc.threshold != "auto") {
        const std::string_view spec{ rc.threshold };
        const auto v = spec.starts_with("fixed:") ? text::parse_double(spec.substr(6)) : std::nullopt;
        if (!v) {
            throw input_error{ "--threshold expects 'auto' or 'fixed:<value>'" };
        }
        config.fixed_threshold = *v;
    }
    config.top1_fallback = rc.top1_fallback;
    validate(config);
    return config;
}

LabelMatrix predict(const ElmModel &model, const DenseMatrix &x, DenseMatrix &scores) {
    scores = elm::raw_predict(model, x);
    LabelMatrix predicted = multilabel::apply_threshold(scores, model.threshold);
    if (model.config.top1_fallback) {
        multilabel::top1_fallback(scores, predicted);
    }
    return predicted;
}

std::string prediction_lines(const LabelMatrix &predicted, const std::vector<std::string> &names, const DenseMatrix *scores) {
    std::string out;
    for (std::size_t r = 0; r < predicted.rows(); ++r) {
        bool first = true;
        for (std::size_t c = 0; c < predicted.cols(); ++c) {
            if (predicted(r, c)) {
                out += first ? "" : ",";
                out += names[c];
                first = false;
            }
        }
        if (scores != nullptr) {
            out += '\t';
            for (std::size_t c = 0; c < scores->cols(); ++c) {
                out += (c == 0 ? "" : ",") + report::exact((*scores)(r, c));
            }
        }
        out += '\n';
    }
    return out;
}

LabelMatrix parse_prediction_lines(const std::string &path, const std::vector<std::string> &names, std::size_t rows) {
    const std::string content = text::read_file(path);
    auto lines = text::split(content, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.size() != rows) {
        throw input_error{ "prediction file has " + std::to_string(lines.size()) + " lines, dataset has " + std::to_string(rows) + " samples" };
    }
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t c = 0; c < names.size(); ++c) {
        index.emplace(names[c], c);
    }
    LabelMatrix out(rows, names.size());
    for (std::size_t r = 0; r < rows; ++r) {
        auto line = lines[r];
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        line = line.substr(0, line.find('\t'));
        if (text::trim(line).empty()) {
            continue;
        }
        for (const auto name : text::split(line, ',')) {
            const auto it = index.find(text::trim(name));
            if (it == index.end()) {
                throw parse_error{ "unknown label '" + std::string{ text::trim(name) } + "'", r + 1 };
            }
            out.set(r, it->second, true);
        }
    }
    return out;
}

int cmd_stats(const RunConfig &rc, std::ostream &out) {
    const MultiLabelDataset ds = load(rc, 0);
    const auto stats = metrics::dataset_stats(ds.labels, ds.source_feature_count);
    out << report::stats_table(ds.name, stats);
    if (!rc.report.empty()) {
        write_text(rc.report, report::stats_keyvalues(ds.name, stats));
    }
    std::optional<data::ExpectedSpec> expected;
    if (!rc.expected.empty()) {
        expected = data::load_expected_spec(rc.expected);
    } else if (!rc.expected_builtin.empty()) {
        expected = data::benchmark_spec(rc.expected_builtin);
        if (!expected) {
            throw input_error{ "no built-in specification named '" + rc.expected_builtin + "'" };
        }
    }
    if (!expected) {
        return success;
    }
    const auto check = data::verify_against_spec(ds, *expected);
    out << report::spec_check_table(check);
    return check.passed() ? success : spec_mismatch;
}

int cmd_train(const RunConfig &rc, std::ostream &out, std::ostream &err) {
    const MultiLabelDataset ds = load(rc, 0);
    const ElmConfig config = make_config(rc, ds);
    const Stopwatch watch;
    const ElmModel model = elm::train(ds, config);
    const double seconds = watch.seconds();
    save_model(model, rc.model);

    std::string summary = "model\t" + rc.model + "\nsamples\t" + std::to_string(ds.samples()) + "\nfeatures\t" + std::to_string(model.feature_count())
                          + "\nhidden\t" + std::to_string(model.hidden_neurons()) + "\nlabels\t" + std::to_string(model.label_count()) + "\nactivation\t"
                          + std::string{ to_string(model.activation) } + "\nridge\t" + report::exact(model.ridge_used) + "\nthreshold\t"
                          + report::exact(model.threshold) + '\n';
    out << summary;
    err << "train_seconds=" << report::exact(seconds) << '\n';
    if (!rc.report.empty()) {
        std::string kv = "samples=" + std::to_string(ds.samples()) + "\nhidden=" + std::to_string(model.hidden_neurons()) + "\nridge="
                         + report::exact(model.ridge_used) + "\nthreshold=" + report::exact(model.threshold) + '\n';
        write_text(rc.report, kv);
    }
    return success;
}

int cmd_predict(const RunConfig &rc, std::ostream &out, std::ostream &err) {
    const ElmModel model = load_model(rc.model);
    const std::size_t labels = label_count_for(rc, 0);
    const MultiLabelDataset ds = labels == 0 ? data::load_delimited(rc.datasets.front(), 0, rc.delimiter) : load(rc, 0);
    DenseMatrix scores;
    const Stopwatch watch;
    const LabelMatrix predicted = predict(model, ds.features, scores);
    const double seconds = watch.seconds();
    const std::string lines = prediction_lines(predicted, model.label_names, rc.scores ? &scores : nullptr);
    if (rc.out.empty()) {
        out << lines;
    } else {
        write_text(rc.out, lines);
        out << "predictions\t" << rc.out << "\nsamples\t" << predicted.rows() << '\n';
    }
    err << "test_seconds=" << report::exact(seconds) << '\n';
    return success;
}

int cmd_evaluate(const RunConfig &rc, std::ostream &out, std::ostream &err) {
    const MultiLabelDataset ds = load(rc, 0);
    LabelMatrix predicted;
    if (!rc.predictions.empty()) {
        predicted = parse_prediction_lines(rc.predictions, ds.label_names, ds.samples());
    } else {
        const ElmModel model = load_model(rc.model);
        DenseMatrix scores;
        const Stopwatch watch;
        predicted = predict(model, ds.features, scores);
        err << "test_seconds=" << report::exact(watch.seconds()) << '\n';
    }
    const auto m = metrics::example_based_metrics(predicted, ds.labels);
    out << report::metrics_table(m);
    if (!rc.report.empty()) {
        write_text(rc.report, report::metrics_keyvalues(m));
    }
    return success;
}

int cmd_crossval(const RunConfig &rc, std::ostream &out) {
    const MultiLabelDataset ds = load(rc, 0);
    const ElmConfig config = make_config(rc, ds);
    const auto r = cv::cross_validate(ds, config, rc.k, rc.seed);
    out << report::cv_summary(r);
    if (!rc.report.empty()) {
        write_text(rc.report, report::cv_keyvalues(r));
    }
    return success;
}

int cmd_bench(const RunConfig &rc, std::ostream &out, std::ostream &err) {
    if (rc.repeats < 1) {
        throw input_error{ "--repeats must be at least 1" };
    }
    out << report::timing_header();
    std::string kv;
    bool failed = false;
    for (std::size_t i = 0; i < rc.datasets.size(); ++i) {
        try {
            const MultiLabelDataset ds = load(rc, i);
            const auto [train_set, test_set] = data::split(ds, rc.test_fraction, rc.seed);
            const ElmConfig config = make_config(rc, train_set);
            report::TimingReport t{ ds.name, train_set.samples(), test_set.samples(), config.hidden_neurons, 0.0, 0.0, {}, {} };
            for (std::size_t rep = 0; rep < rc.repeats; ++rep) {
                const Stopwatch train_watch;
                const ElmModel model = elm::train(train_set, config);
                t.train_runs.push_back(train_watch.seconds());
                DenseMatrix scores;
                const Stopwatch test_watch;
                const LabelMatrix predicted = predict(model, test_set.features, scores);
                t.test_runs.push_back(test_watch.seconds());
            }
            t.train_seconds = report::median(t.train_runs);
            t.test_seconds = report::median(t.test_runs);
            out << report::timing_row(t);
            kv += report::timing_keyvalues(t);
        } catch (const std::exception &e) {
            failed = true;
            const std::string name = fs::path{ rc.datasets[i] }.stem().string();
            out << name << "\tFAILED\n";
            err << "error: " << name << ": " << e.what() << '\n';
        }
    }
    if (!rc.report.empty()) {
        write_text(rc.report, kv);
    }
    return failed ? operational_error : success;
}

void add_dataset_options(CLI::App &sub, RunConfig &rc, bool many) {
    if (many) {
        sub.add_option("--dataset", rc.datasets, "Dataset files (.arff or delimited), repeatable")->required();
        sub.add_option("--labels", rc.label_counts, "Label count per dataset, or one count for all");
    } else {
        sub.add_option("--dataset", rc.datasets, "Dataset file (.arff or delimited)")->required()->expected(1);
        sub.add_option("--labels", rc.label_counts, "Number of label attributes")->expected(1);
    }
    sub.add_flag("--labels-first", rc.labels_first, "Labels are the first attributes instead of the last");
    sub.add_option("--delimiter", rc.delimiter, "Column delimiter for delimited files");
}

void add_model_options(CLI::App &sub, RunConfig &rc) {
    sub.add_option("--hidden", rc.hidden, "Hidden neurons (default min(1000, 10*labels + 2*features))");
    sub.add_option("--activation", rc.activation, "sigmoid | tanh | hardlimit")->check(CLI::IsMember({ "sigmoid", "tanh", "hardlimit" }));
    sub.add_option("--ridge", rc.ridge, "Ridge on the Gram diagonal: auto or a value >= 0");
    sub.add_option("--seed", rc.seed, "Random seed");
    sub.add_option("--threshold", rc.threshold, "auto | fixed:<value>");
    sub.add_flag("--top1-fallback", rc.top1_fallback, "Predict the best label when no score passes the threshold");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig rc;
    CLI::App app{ "Extreme learning machine for multi-label classification", "mlelm" };
    app.require_subcommand(1);

    auto *stats = app.add_subcommand("stats", "Dataset statistics and optional shape verification");
    add_dataset_options(*stats, rc, false);
    stats->add_option("--expected", rc.expected, "key=value file with the expected shape");
    stats->add_option("--expected-builtin", rc.expected_builtin, "Verify against a built-in benchmark shape (emotions, yeast, ...)");
    stats->add_option("--report", rc.report, "Write key=value statistics here");

    auto *train = app.add_subcommand("train", "Train a model and write it to --model");
    add_dataset_options(*train, rc, false);
    add_model_options(*train, rc);
    train->add_option("--model", rc.model, "Output model file")->required();
    train->add_option("--report", rc.report, "Write key=value model summary here");

    auto *predict_cmd = app.add_subcommand("predict", "Predict label sets for a feature file");
    predict_cmd->add_option("--model", rc.model, "Model file")->required();
    add_dataset_options(*predict_cmd, rc, false);
    predict_cmd->add_option("--out", rc.out, "Prediction file (default: standard output)");
    predict_cmd->add_flag("--scores", rc.scores, "Append raw scores after a tab");

    auto *evaluate = app.add_subcommand("evaluate", "Score a model (or a prediction file) on a labeled dataset");
    add_dataset_options(*evaluate, rc, false);
    auto *model_opt = evaluate->add_option("--model", rc.model, "Model file");
    auto *pred_opt = evaluate->add_option("--predictions", rc.predictions, "Prediction file instead of a model");
    model_opt->excludes(pred_opt);
    evaluate->add_option("--report", rc.report, "Write key=value metrics here");

    auto *crossval = app.add_subcommand("crossval", "k-fold cross-validation");
    add_dataset_options(*crossval, rc, false);
    add_model_options(*crossval, rc);
    crossval->add_option("--k", rc.k, "Number of folds");
    crossval->add_option("--report", rc.report, "Write key=value per-fold report here");

    auto *bench = app.add_subcommand("bench", "Median train/test wall-clock time per dataset");
    add_dataset_options(*bench, rc, true);
    add_model_options(*bench, rc);
    bench->add_option("--repeats", rc.repeats, "Measurements per dataset (median reported)");
    bench->add_option("--test-fraction", rc.test_fraction, "Held-out fraction for timing prediction");
    bench->add_option("--report", rc.report, "Write key=value raw timings here");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : operational_error;
    }

    try {
        const std::pair<CLI::App *, Command> commands[] = { { stats, Command::stats },       { train, Command::train },
                                                            { predict_cmd, Command::predict }, { evaluate, Command::evaluate },
                                                            { crossval, Command::crossval }, { bench, Command::bench } };
        for (const auto &[sub, command] : commands) {
            if (sub->parsed()) {
                rc.command = command;
            }
        }
        // Validate every path before any compute.
        for (const auto &d : rc.datasets) {
            require_file(d, "dataset");
        }
        if (rc.command == Command::predict || (rc.command == Command::evaluate && rc.predictions.empty())) {
            require_file(rc.model, "model");
        }
        if (!rc.predictions.empty()) {
            require_file(rc.predictions, "prediction file");
        }
        if (!rc.expected.empty()) {
            require_file(rc.expected, "expected-spec file");
        }
        if (rc.command == Command::train) {
            require_writable(rc.model);
        }
        require_writable(rc.out);
        require_writable(rc.report);

        switch (rc.command) {
            case Command::stats:
                return cmd_stats(rc, out);
            case Command::train:
                return cmd_train(rc, out, err);
            case Command::predict:
                return cmd_predict(rc, out, err);
            case Command::evaluate:
                return cmd_evaluate(rc, out, err);
            case Command::crossval:
                return cmd_crossval(rc, out);
            case Command::bench:
                return cmd_bench(rc, out, err);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return operational_error;
    }
    return operational_error;
}

}  // namespace mlelm::cli
