#include "mlelm/metrics.hpp"

#include "mlelm/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>

namespace mlelm::metrics {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void check_pair(const LabelMatrix &predicted, const LabelMatrix &truth) {
    if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
        throw shape_error{ "predicted and true label matrices differ in shape" };
    }
}

// Correctly rounded (nearest, ties to even) value of a non-negative rational.
double to_double(const cpp_rational &q) {
    cpp_int num = boost::multiprecision::numerator(q);
    cpp_int den = boost::multiprecision::denominator(q);
    if (num == 0) {
        return 0.0;
    }
    // Scale so the integer quotient carries 55 or 56 significant bits.
    const long shift = 55 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
    if (shift > 0) {
        num <<= static_cast<unsigned>(shift);
    } else {
        den <<= static_cast<unsigned>(-shift);
    }
    cpp_int quotient;
    cpp_int remainder;
    divide_qr(num, den, quotient, remainder);
    const unsigned excess = static_cast<unsigned>(msb(quotient)) + 1 - 53;
    const cpp_int dropped = quotient & ((cpp_int{ 1 } << excess) - 1);
    cpp_int mantissa = quotient >> excess;
    const cpp_int half = cpp_int{ 1 } << (excess - 1);
    if (dropped > half || (dropped == half && (remainder != 0 || bit_test(mantissa, 0)))) {
        ++mantissa;
    }
    return std::ldexp(mantissa.convert_to<double>(), static_cast<int>(excess) - static_cast<int>(shift));
}

}  // namespace

double hamming_loss(const LabelMatrix &predicted, const LabelMatrix &truth) {
    check_pair(predicted, truth);
    if (truth.rows() == 0 || truth.cols() == 0) {
        throw input_error{ "hamming loss of an empty label matrix" };
    }
    const auto p = predicted.values();
    const auto t = truth.values();
    std::uint64_t mismatches = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        mismatches += p[i] != t[i] ? 1 : 0;
    }
    return static_cast<double>(mismatches) / static_cast<double>(p.size());
}

MetricsReport example_based_metrics(const LabelMatrix &predicted, const LabelMatrix &truth) {
    check_pair(predicted, truth);
    const std::size_t n = truth.rows();
    if (n == 0 || truth.cols() == 0) {
        throw input_error{ "metrics of an empty label matrix" };
    }
    cpp_rational accuracy{ 0 };
    cpp_rational precision{ 0 };
    cpp_rational recall{ 0 };
    cpp_rational f1{ 0 };
    for (std::size_t r = 0; r < n; ++r) {
        const auto z = predicted.row(r);
        const auto y = truth.row(r);
        long both = 0;
        long in_y = 0;
        long in_z = 0;
        for (std::size_t c = 0; c < y.size(); ++c) {
            both += (y[c] & z[c]);
            in_y += y[c];
            in_z += z[c];
        }
        const long either = in_y + in_z - both;
        if (in_y == 0 && in_z == 0) {
            accuracy += 1;
            precision += 1;
            recall += 1;
            f1 += 1;
            continue;
        }
        accuracy += cpp_rational{ both, either };
        if (in_z != 0) {
            precision += cpp_rational{ both, in_z };
        }
        if (in_y != 0) {
            recall += cpp_rational{ both, in_y };
        }
        f1 += cpp_rational{ 2 * both, in_y + in_z };
    }
    const cpp_rational samples{ static_cast<long long>(n) };
    MetricsReport report;
    report.sample_count = n;
    report.hamming_loss = hamming_loss(predicted, truth);
    report.accuracy = to_double(accuracy / samples);
    report.precision = to_double(precision / samples);
    report.recall = to_double(recall / samples);
    report.f1 = to_double(f1 / samples);
    return report;
}

DatasetStats dataset_stats(const LabelMatrix &labels, std::size_t features) {
    if (labels.rows() == 0 || labels.cols() == 0) {
        throw input_error{ "dataset statistics need at least one sample and one label" };
    }
    std::uint64_t total = 0;
    for (std::uint8_t v : labels.values()) {
        total += v;
    }
    DatasetStats s;
    s.samples = labels.rows();
    s.labels = labels.cols();
    s.features = features;
    s.label_cardinality = static_cast<double>(total) / static_cast<double>(s.samples);
    s.label_density = s.label_cardinality / static_cast<double>(s.labels);
    return s;
}

}  // namespace mlelm::metrics
