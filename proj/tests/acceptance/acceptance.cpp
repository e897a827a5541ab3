// Acceptance gate: one PASS / FAIL / BLOCKED line per criterion.
//
//   acceptance                 run everything; exit 1 if any criterion fails
//   acceptance --public-only   only the checks that need the public benchmark
//                              datasets; exit 77 (skipped) when they are absent
//
// Public datasets are looked up in $MLELM_DATA_DIR as <name>.arff with the
// labels as the last attributes (MULAN layout).

#include "mlelm/cli.hpp"
#include "mlelm/cv.hpp"
#include "mlelm/data.hpp"
#include "mlelm/elm.hpp"
#include "mlelm/linalg.hpp"
#include "mlelm/metrics.hpp"
#include "mlelm/multilabel.hpp"
#include "mlelm/random.hpp"
#include "oracles.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using mlelm::DenseMatrix;
using mlelm::LabelMatrix;
using mlelm::MultiLabelDataset;

namespace {

enum class Outcome { pass, fail, blocked };

struct Verdict {
    Outcome outcome;
    std::string detail;
};

const fs::path fixtures{ MLELM_FIXTURE_DIR };

double now() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---- public datasets -----------------------------------------------------

std::optional<fs::path> data_dir() {
    const char *env = std::getenv("MLELM_DATA_DIR");
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    return fs::path{ env };
}

std::optional<fs::path> public_file(const std::string &name) {
    const auto dir = data_dir();
    if (!dir) {
        return std::nullopt;
    }
    const auto path = *dir / (name + ".arff");
    return fs::exists(path) ? std::optional{ path } : std::nullopt;
}

bool all_public_present() {
    for (const auto &spec : mlelm::data::benchmark_specs()) {
        if (!public_file(spec.name)) {
            return false;
        }
    }
    return true;
}

MultiLabelDataset load_public(const std::string &name) {
    const auto spec = mlelm::data::benchmark_spec(name).value();
    return mlelm::data::load_arff(public_file(name).value(), spec.labels);
}

int run_cli(const std::vector<std::string> &args, std::string *out = nullptr) {
    std::ostringstream o;
    std::ostringstream e;
    const int code = mlelm::cli::run(args, o, e);
    if (out != nullptr) {
        *out = o.str();
    }
    return code;
}

// ---- synthetic data ------------------------------------------------------

/// Random dense features with a label matrix of the given density.
MultiLabelDataset shaped(const std::string &name, std::size_t n, std::size_t d, std::size_t m, double density, std::uint64_t seed) {
    auto ds = mlelm::make_dataset(oracle::random_matrix(n, d, seed), oracle::random_labels(n, m, seed + 1, density), name);
    return ds;
}

/// Linearly generated labels with a fraction of cells flipped.
MultiLabelDataset noisy_synthetic(std::size_t n, std::size_t d, std::size_t m, double flip, std::uint64_t seed) {
    auto ds = oracle::separable_dataset(n, d, m, seed);
    std::mt19937_64 gen{ seed + 99 };
    std::bernoulli_distribution coin{ flip };
    std::vector<std::uint8_t> cells(ds.labels.values().begin(), ds.labels.values().end());
    for (auto &c : cells) {
        if (coin(gen)) {
            c ^= 1;
        }
    }
    ds.labels = LabelMatrix(n, m, cells);
    return ds;
}

double sample_stddev(const std::vector<double> &v) {
    double mean = 0.0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// ---- criteria ------------------------------------------------------------

Verdict interpolation() {
    const double start = now();
    double worst = 0.0;
    int reproduced = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto d = mlelm::make_dataset(oracle::random_matrix(50, 10, 1000 + s), oracle::random_labels(50, 4, 2000 + s, 0.4));
        mlelm::ElmConfig c;
        c.hidden_neurons = 100;
        c.seed = s;
        c.ridge = 0.0;
        c.activation = mlelm::Activation::sigmoid;
        const auto model = mlelm::elm::train(d, c);
        const DenseMatrix h = mlelm::elm::hidden_output(mlelm::elm::normalize(d.features, model.normalization), model.input_weights, model.biases, model.activation);
        const DenseMatrix y = mlelm::multilabel::encode_bipolar(d.labels);
        const double residual = mlelm::frobenius_norm(mlelm::subtract(oracle::naive_matmul(h, model.output_weights), y)) / mlelm::frobenius_norm(y);
        worst = std::max(worst, residual);
        reproduced += mlelm::multilabel::predict_labels(model, d.features) == d.labels ? 1 : 0;
    }
    const double secs = now() - start;
    const bool ok = worst <= 1e-6 && reproduced == 20 && secs < 10.0;
    return { ok ? Outcome::pass : Outcome::fail, fmt("max relative residual %.3g (<= 1e-6), labels reproduced %d/20, %.2f s (< 10 s)", worst, reproduced, secs) };
}

Verdict pseudoinverse() {
    const double start = now();
    std::mt19937_64 gen{ 42 };
    double worst = 0.0;
    int tall = 0;
    int wide = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        std::size_t big = 1 + gen() % 50;
        std::size_t small = 1 + gen() % 30;
        if (small > big) {
            std::swap(small, big);
        }
        const bool is_tall = s % 2 == 0;
        const DenseMatrix h = is_tall ? oracle::random_matrix(big, small, 7000 + s) : oracle::random_matrix(small, big, 7000 + s);
        (is_tall ? tall : wide) += 1;
        worst = std::max(worst, oracle::penrose_violation(h, mlelm::linalg::pseudoinverse(h, 0.0)));
    }
    const double secs = now() - start;
    const bool ok = worst <= 1e-8 && secs < 5.0;
    return { ok ? Outcome::pass : Outcome::fail, fmt("%d tall + %d wide, worst Penrose violation %.3g (<= 1e-8), %.2f s (< 5 s)", tall, wide, worst, secs) };
}

Verdict metric_oracle() {
    const double start = now();
    std::mt19937_64 gen{ 3 };
    int mismatches = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const std::size_t n = 1 + gen() % 30;
        const std::size_t m = 1 + gen() % 10;
        const double density = static_cast<double>(gen() % 101) / 100.0;
        const LabelMatrix p = oracle::random_labels(n, m, 10 * s, density);
        const LabelMatrix t = oracle::random_labels(n, m, 10 * s + 1, density);
        const bool same = mlelm::metrics::example_based_metrics(p, t) == oracle::brute_force_metrics(p, t)
                          && mlelm::metrics::hamming_loss(p, t) == oracle::brute_force_hamming(p, t);
        mismatches += same ? 0 : 1;
    }
    const double secs = now() - start;
    const bool ok = mismatches == 0 && secs < 5.0;
    return { ok ? Outcome::pass : Outcome::fail, fmt("1000 pairs, %d mismatches against exact set-arithmetic oracle, %.2f s (< 5 s)", mismatches, secs) };
}

Verdict dataset_stats() {
    int passed = 0;
    int total = 0;
    std::string failures;
    if (all_public_present()) {
        for (const auto &spec : mlelm::data::benchmark_specs()) {
            ++total;
            const int code = run_cli({ "stats", "--dataset", public_file(spec.name)->string(), "--labels", std::to_string(spec.labels), "--expected-builtin", spec.name });
            passed += code == 0 ? 1 : 0;
            failures += code == 0 ? "" : " " + spec.name;
        }
        return { passed == total ? Outcome::pass : Outcome::fail, fmt("public datasets: %d/%d match the published shapes%s", passed, total, failures.c_str()) };
    }
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        { "emotions_like", { "--labels", "6" } },
        { "medical_like", { "--labels", "45" } },
        { "mixed", { "--labels", "3", "--labels-first" } },
    };
    for (const auto &[name, extra] : cases) {
        ++total;
        std::vector<std::string> args{ "stats", "--dataset", (fixtures / (name + ".arff")).string(), "--expected", (fixtures / (name + ".spec")).string() };
        args.insert(args.end(), extra.begin(), extra.end());
        const int code = run_cli(args);
        passed += code == 0 ? 1 : 0;
        failures += code == 0 ? "" : " " + name;
    }
    // the shape fixtures also sit inside the published tolerance bands
    for (const auto &[name, builtin, labels] : { std::tuple{ "emotions_like", "emotions", "6" }, std::tuple{ "medical_like", "medical", "45" } }) {
        ++total;
        const int code = run_cli({ "stats", "--dataset", (fixtures / (std::string{ name } + ".arff")).string(), "--labels", labels, "--expected-builtin", builtin });
        passed += code == 0 ? 1 : 0;
        failures += code == 0 ? "" : std::string{ " " } + name + "~" + builtin;
    }
    return { passed == total ? Outcome::pass : Outcome::fail,
             fmt("public datasets absent; bundled fixtures %d/%d match their known stats%s", passed, total, failures.c_str()) };
}

Verdict hamming_reproduction() {
    const std::map<std::string, double> published{ { "emotions", 0.2509 }, { "yeast", 0.1911 }, { "scene", 0.0851 } };
    for (const auto &[name, _] : published) {
        if (!public_file(name)) {
            return { Outcome::blocked, "needs emotions/yeast/scene ARFF files in $MLELM_DATA_DIR" };
        }
    }
    std::string detail;
    bool ok = true;
    for (const auto &[name, target] : published) {
        const auto d = load_public(name);
        double best = 1.0;
        std::size_t best_hidden = 0;
        for (std::size_t hidden : { 250, 500, 1000, 2000 }) {
            mlelm::ElmConfig c;
            c.hidden_neurons = hidden;
            c.seed = 1;
            const auto r = mlelm::cv::cross_validate(d, c, 10, 1);
            if (r.mean.hamming_loss < best) {
                best = r.mean.hamming_loss;
                best_hidden = hidden;
            }
        }
        const bool within = std::abs(best - target) <= 0.03;
        ok = ok && within;
        detail += fmt("%s %.4f at hidden=%zu vs %.4f%s; ", name.c_str(), best, best_hidden, target, within ? "" : " OUT OF BAND");
    }
    return { ok ? Outcome::pass : Outcome::fail, detail + "tolerance +-0.03" };
}

Verdict consistency(bool public_only) {
    MultiLabelDataset d;
    std::string source;
    if (public_file("emotions")) {
        d = load_public("emotions");
        source = "emotions";
    } else if (public_only) {
        return { Outcome::blocked, "needs emotions.arff in $MLELM_DATA_DIR" };
    } else {
        // emotions-like label space: 6 linear labels with 10% of cells flipped
        d = noisy_synthetic(200, 10, 6, 0.1, 5);
        source = "200-sample synthetic (public data absent)";
    }
    mlelm::ElmConfig c;
    c.hidden_neurons = mlelm::default_hidden_neurons(d.feature_count(), d.label_count());
    c.ridge = 1.0;
    std::vector<double> means;
    for (std::uint64_t run = 1; run <= 5; ++run) {
        c.seed = run;
        means.push_back(mlelm::cv::cross_validate(d, c, 10, run).mean.hamming_loss);
    }
    const double sd = sample_stddev(means);
    std::string runs;
    for (double m : means) {
        runs += fmt(" %.4f", m);
    }
    return { sd <= 0.01 ? Outcome::pass : Outcome::fail,
             fmt("%s, hidden=%zu ridge=1: run means%s, stddev %.4f (<= 0.01)", source.c_str(), c.hidden_neurons, runs.c_str(), sd) };
}

Verdict threshold_calibration() {
    const double start = now();
    std::mt19937_64 gen{ 11 };
    int mismatches = 0;
    int checked = 0;
    for (std::uint64_t s = 0; checked < 500; ++s) {
        const std::size_t rows = 1 + gen() % 12;
        const std::size_t cols = 1 + gen() % 8;
        DenseMatrix scores = oracle::random_matrix(rows, cols, 40000 + s, -1.5, 1.5);
        if (s % 4 == 0) {
            for (double &v : scores.values()) {
                v = std::round(v * 5.0) / 5.0;
            }
        }
        if (s % 5 == 1) {
            // separable: shift positive cells up
            const LabelMatrix t = oracle::random_labels(rows, cols, 50000 + s, 0.4);
            for (std::size_t i = 0; i < scores.size(); ++i) {
                scores.values()[i] += t.values()[i] != 0 ? 3.0 : 0.0;
            }
        }
        const LabelMatrix truth = oracle::random_labels(rows, cols, 50000 + s, 0.4);
        const auto on = std::count(truth.values().begin(), truth.values().end(), 1);
        if (on == 0 || on == static_cast<long>(truth.values().size())) {
            continue;
        }
        ++checked;
        const auto got = mlelm::multilabel::calibrate_threshold(scores, truth);
        const auto want = oracle::exhaustive_cut_scan(scores, truth);
        mismatches += got.threshold == want.threshold && got.misclassified == want.misclassified ? 0 : 1;
    }
    const double secs = now() - start;
    const bool ok = mismatches == 0 && secs < 2.0;
    return { ok ? Outcome::pass : Outcome::fail, fmt("%d score/label pairs, %d mismatches against exhaustive cut scan, %.2f s (< 2 s)", checked, mismatches, secs) };
}

struct Timing {
    double train;
    double test;
};

Timing time_train_test(const MultiLabelDataset &d, std::size_t hidden, int repeats) {
    const auto [train, test] = mlelm::data::split(d, 0.3, 1);
    mlelm::ElmConfig c;
    c.hidden_neurons = hidden;
    c.seed = 1;
    std::vector<double> tr;
    std::vector<double> te;
    for (int r = 0; r < repeats; ++r) {
        double t0 = now();
        const auto model = mlelm::elm::train(train, c);
        tr.push_back(now() - t0);
        t0 = now();
        const auto predicted = mlelm::multilabel::predict_labels(model, test.features);
        te.push_back(now() - t0);
    }
    std::sort(tr.begin(), tr.end());
    std::sort(te.begin(), te.end());
    return { tr[tr.size() / 2], te[te.size() / 2] };
}

double median_train_seconds(const MultiLabelDataset &d, std::size_t hidden, int repeats) {
    mlelm::ElmConfig c;
    c.hidden_neurons = hidden;
    c.seed = 1;
    std::vector<double> tr;
    for (int r = 0; r < repeats; ++r) {
        const double t0 = now();
        const auto model = mlelm::elm::train(d, c);
        tr.push_back(now() - t0);
    }
    std::sort(tr.begin(), tr.end());
    return tr[tr.size() / 2];
}

Verdict speed_ordering(bool public_only) {
    const bool have_public = all_public_present();
    if (public_only && !have_public) {
        return { Outcome::blocked, "needs the six public datasets in $MLELM_DATA_DIR" };
    }
    std::string detail = have_public ? "public datasets: " : "benchmark-shaped synthetic data: ";
    bool ordered = true;
    MultiLabelDataset yeast;
    std::uint64_t seed = 100;
    for (const auto &spec : mlelm::data::benchmark_specs()) {
        MultiLabelDataset d = have_public ? load_public(spec.name) : shaped(spec.name, spec.samples, spec.features, spec.labels, spec.label_density, seed++);
        const std::size_t hidden = mlelm::default_hidden_neurons(d.feature_count(), d.label_count());
        const auto t = time_train_test(d, hidden, 3);
        const bool ok = t.test < t.train;
        ordered = ordered && ok;
        detail += fmt("%s %.3f/%.3f s%s, ", spec.name.c_str(), t.train, t.test, ok ? "" : " (test >= train)");
        if (spec.name == "yeast") {
            yeast = std::move(d);
        }
    }

    // Fixed hidden size small enough that every subsample uses the same (tall) solve.
    const std::size_t hidden = mlelm::default_hidden_neurons(yeast.feature_count(), yeast.label_count());
    std::vector<std::size_t> order(yeast.samples());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    mlelm::Rng rng{ 5 };
    rng.shuffle(std::span<std::size_t>(order));
    std::vector<double> secs;
    for (double fraction : { 0.25, 0.5, 1.0 }) {
        const auto n = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(yeast.samples())));
        std::vector<std::size_t> idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n));
        std::sort(idx.begin(), idx.end());
        secs.push_back(median_train_seconds(mlelm::select_rows(yeast, idx), hidden, 5));
    }
    bool linear = true;
    for (std::size_t i = 1; i < 3; ++i) {
        const double expected = static_cast<double>(1u << i);  // 2x, 4x the 25% time
        const double ratio = secs[i] / secs[0];
        linear = linear && ratio >= expected / 3.0 && ratio <= expected * 3.0;
    }
    detail += fmt("yeast train at hidden=%zu: 25%%/50%%/100%% = %.4f/%.4f/%.4f s (ratios %.2f, %.2f; linear 2, 4; allowed within 3x)", hidden, secs[0], secs[1],
                  secs[2], secs[1] / secs[0], secs[2] / secs[0]);
    return { ordered && linear ? Outcome::pass : Outcome::fail, detail };
}

/// Drops the last two (timing) columns of each bench row.
std::string without_timing(const std::string &table) {
    std::istringstream in{ table };
    std::string out;
    for (std::string line; std::getline(in, line);) {
        for (int k = 0; k < 2; ++k) {
            const auto tab = line.rfind('\t');
            if (tab != std::string::npos) {
                line.resize(tab);
            }
        }
        out += line + '\n';
    }
    return out;
}

Verdict determinism() {
    const auto dir = oracle::temp_dir("acceptance_determinism");
    const std::string data = (fixtures / "emotions_like.arff").string();
    const std::string spec = (fixtures / "emotions_like.spec").string();
    const auto at = [&](const std::string &file) { return (dir / file).string(); };

    struct Command {
        std::string name;
        std::vector<std::string> args;
        std::vector<std::string> files;
        bool timing_table;
    };
    // train runs first so later commands read its model; every command writes the same paths twice
    const std::vector<Command> commands = {
        { "stats", { "stats", "--dataset", data, "--labels", "6", "--expected", spec, "--report", at("stats.txt") }, { "stats.txt" }, false },
        { "train", { "train", "--dataset", data, "--labels", "6", "--seed", "3", "--model", at("model.bin"), "--report", at("train.txt") }, { "model.bin", "train.txt" }, false },
        { "predict", { "predict", "--model", at("model.bin"), "--dataset", data, "--labels", "6", "--scores", "--out", at("pred.txt") }, { "pred.txt" }, false },
        { "evaluate", { "evaluate", "--model", at("model.bin"), "--dataset", data, "--labels", "6", "--report", at("eval.txt") }, { "eval.txt" }, false },
        { "crossval", { "crossval", "--dataset", data, "--labels", "6", "--k", "5", "--seed", "9", "--report", at("cv.txt") }, { "cv.txt" }, false },
        { "bench", { "bench", "--dataset", data, "--labels", "6", "--repeats", "2" }, {}, true },
    };

    const int saved_threads = omp_get_max_threads();
    std::string detail;
    bool ok = true;
    for (const auto &cmd : commands) {
        std::string out[2];
        std::map<std::string, std::string> files[2];
        int codes[2];
        for (int r = 0; r < 2; ++r) {
            omp_set_num_threads(r == 0 ? saved_threads : 3);  // second run on a different thread count
            codes[r] = run_cli(cmd.args, &out[r]);
            for (const auto &f : cmd.files) {
                files[r][f] = oracle::read_bytes(dir / f);
            }
        }
        bool same = codes[0] == 0 && codes[1] == 0;
        same = same && (cmd.timing_table ? without_timing(out[0]) == without_timing(out[1]) : out[0] == out[1]);
        same = same && files[0] == files[1];
        for (const auto &[name, bytes] : files[0]) {
            same = same && !bytes.empty();
        }
        ok = ok && same;
        detail += cmd.name + (same ? " identical" : " DIFFERS") + (cmd.timing_table ? " (timing columns excluded)" : "") + ", ";
    }
    omp_set_num_threads(saved_threads);
    detail += "second run on 3 OpenMP threads";
    return { ok ? Outcome::pass : Outcome::fail, detail };
}

const char *label(Outcome o) {
    switch (o) {
        case Outcome::pass:
            return "PASS";
        case Outcome::fail:
            return "FAIL";
        case Outcome::blocked:
            return "BLOCKED";
    }
    return "?";
}

}  // namespace

int main(int argc, char **argv) {
    const bool public_only = argc > 1 && std::string{ argv[1] } == "--public-only";

    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria;
    if (public_only) {
        if (!all_public_present()) {
            std::printf("SKIP public benchmark datasets not found (set MLELM_DATA_DIR to a directory with emotions.arff, yeast.arff, scene.arff, corel5k.arff, enron.arff, medical.arff)\n");
            return 77;
        }
        criteria = {
            { "4 dataset statistics", dataset_stats },
            { "5 hamming-loss reproduction", hamming_reproduction },
            { "6 consistency", [] { return consistency(true); } },
            { "8 speed ordering", [] { return speed_ordering(true); } },
        };
    } else {
        criteria = {
            { "1 interpolation", interpolation },
            { "2 pseudoinverse", pseudoinverse },
            { "3 metric oracle", metric_oracle },
            { "4 dataset statistics", dataset_stats },
            { "5 hamming-loss reproduction", hamming_reproduction },
            { "6 consistency", [] { return consistency(false); } },
            { "7 threshold calibration", threshold_calibration },
            { "8 speed ordering", [] { return speed_ordering(false); } },
            { "9 determinism", determinism },
        };
    }

    bool failed = false;
    for (const auto &[name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception &e) {
            v = { Outcome::fail, std::string{ "exception: " } + e.what() };
        }
        failed = failed || v.outcome == Outcome::fail;
        std::printf("%-7s criterion %s: %s\n", label(v.outcome), name.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
