#include "mlelm/model_io.hpp"

#include "mlelm/errors.hpp"

#include <algorithm>
#include <limits>
#include <bit>
#include <fstream>
#include <iterator>
#include <string>

namespace mlelm {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

class Writer {
  public:
    void u8(std::uint8_t v) { out_.push_back(v); }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void f64s(std::span<const double> vs) {
        for (double v : vs) {
            f64(v);
        }
    }

    void bytes(std::string_view s) { out_.insert(out_.end(), s.begin(), s.end()); }

    std::vector<std::uint8_t> finish() && {
        const std::uint64_t sum = fnv1a64(out_);
        u64(sum);
        return std::move(out_);
    }

  private:
    std::vector<std::uint8_t> out_;
};

class Reader {
  public:
    explicit Reader(std::span<const std::uint8_t> in) :
        in_{ in } {}

    std::uint8_t u8() { return take(1)[0]; }

    std::uint32_t u32() {
        const auto b = take(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
        }
        return v;
    }

    std::uint64_t u64() {
        const auto b = take(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
        }
        return v;
    }

    double f64() { return std::bit_cast<double>(u64()); }

    std::vector<double> f64s(std::uint64_t n) {
        if (n > remaining() / 8) {
            throw format_error{ "model file is truncated" };
        }
        std::vector<double> v(n);
        for (double &x : v) {
            x = f64();
        }
        return v;
    }

    std::string string(std::size_t n) {
        const auto b = take(n);
        return { b.begin(), b.end() };
    }

    [[nodiscard]] std::size_t remaining() const noexcept { return in_.size() - pos_; }

  private:
    std::span<const std::uint8_t> take(std::size_t n) {
        if (n > remaining()) {
            throw format_error{ "model file is truncated" };
        }
        const auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_{ 0 };
};

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw format_error{ "model dimensions overflow" };
    }
    return a * b;
}

}  // namespace

std::vector<std::uint8_t> serialize_model(const ElmModel &model) {
    validate(model);
    Writer w;
    w.bytes(model_magic);
    w.u64(model.feature_count());
    w.u64(model.hidden_neurons());
    w.u64(model.label_count());
    w.u32(static_cast<std::uint32_t>(model.activation));
    w.f64(model.threshold);
    w.u8(static_cast<std::uint8_t>(model.threshold_method));
    w.u8(model.config.top1_fallback ? 1 : 0);
    w.u64(model.config.seed);
    w.f64(model.ridge_used);
    w.u8(model.config.ridge ? 1 : 0);
    w.f64(model.config.weight_range.lower);
    w.f64(model.config.weight_range.upper);
    w.f64(model.config.bias_range.lower);
    w.f64(model.config.bias_range.upper);
    w.u8(model.config.fixed_threshold ? 1 : 0);
    for (const FeatureScaling &s : model.normalization) {
        w.f64(s.shift);
        w.f64(s.scale);
    }
    for (const std::string &name : model.label_names) {
        w.u32(static_cast<std::uint32_t>(name.size()));
        w.bytes(name);
    }
    w.f64s(model.input_weights.values());
    w.f64s(model.biases);
    w.f64s(model.output_weights.values());
    return std::move(w).finish();
}

ElmModel deserialize_model(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < model_magic.size() + 8 || !std::equal(model_magic.begin(), model_magic.end(), bytes.begin())) {
        throw format_error{ "not an MLELM1 model file" };
    }
    const auto body = bytes.first(bytes.size() - 8);
    Reader tail{ bytes.last(8) };
    if (tail.u64() != fnv1a64(body)) {
        throw format_error{ "model file checksum mismatch" };
    }

    Reader r{ body.subspan(model_magic.size()) };
    const std::uint64_t features = r.u64();
    const std::uint64_t hidden = r.u64();
    const std::uint64_t labels = r.u64();

    ElmModel m;
    const std::uint32_t activation = r.u32();
    if (activation > static_cast<std::uint32_t>(Activation::hardlimit)) {
        throw format_error{ "unknown activation id " + std::to_string(activation) };
    }
    m.activation = static_cast<Activation>(activation);
    m.threshold = r.f64();
    const std::uint8_t method = r.u8();
    if (method > static_cast<std::uint8_t>(ThresholdMethod::midpoint_calibrated)) {
        throw format_error{ "unknown threshold method id" };
    }
    m.threshold_method = static_cast<ThresholdMethod>(method);

    m.config.hidden_neurons = hidden;
    m.config.activation = m.activation;
    m.config.top1_fallback = r.u8() != 0;
    m.config.seed = r.u64();
    m.ridge_used = r.f64();
    if (r.u8() != 0) {
        m.config.ridge = m.ridge_used;
    }
    m.config.weight_range.lower = r.f64();
    m.config.weight_range.upper = r.f64();
    m.config.bias_range.lower = r.f64();
    m.config.bias_range.upper = r.f64();
    if (r.u8() != 0) {
        m.config.fixed_threshold = m.threshold;
    }

    const auto scaling = r.f64s(checked_product(features, 2));
    m.normalization.resize(features);
    for (std::size_t d = 0; d < features; ++d) {
        m.normalization[d] = { scaling[2 * d], scaling[2 * d + 1] };
    }
    for (std::uint64_t l = 0; l < labels; ++l) {
        m.label_names.push_back(r.string(r.u32()));
    }
    m.input_weights = DenseMatrix(hidden, features, r.f64s(checked_product(hidden, features)));
    m.biases = r.f64s(hidden);
    m.output_weights = DenseMatrix(hidden, labels, r.f64s(checked_product(hidden, labels)));
    if (r.remaining() != 0) {
        throw format_error{ "trailing bytes in model file" };
    }
    validate(m);
    return m;
}

void save_model(const ElmModel &model, const std::filesystem::path &path) {
    const auto bytes = serialize_model(model);
    std::ofstream out{ path, std::ios::binary | std::ios::trunc };
    if (!out) {
        throw error{ "cannot open '" + path.string() + "' for writing" };
    }
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw error{ "failed writing '" + path.string() + "'" };
    }
}

ElmModel load_model(const std::filesystem::path &path) {
    std::ifstream in{ path, std::ios::binary };
    if (!in) {
        throw error{ "cannot open model file '" + path.string() + "'" };
    }
    const std::vector<std::uint8_t> bytes{ std::istreambuf_iterator<char>{ in }, std::istreambuf_iterator<char>{} };
    return deserialize_model(bytes);
}

}  // namespace mlelm
