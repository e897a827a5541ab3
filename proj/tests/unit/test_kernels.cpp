#include "mlelm/kernels.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <omp.h>

using mlelm::DenseMatrix;
using mlelm::kernels::Activation;
namespace k = mlelm::kernels;

namespace {

std::vector<double> random_biases(std::size_t n, std::uint64_t seed) {
    const DenseMatrix b = oracle::random_matrix(1, n, seed, 0.0, 1.0);
    return { b.values().begin(), b.values().end() };
}

}  // namespace

TEST_CASE("activation functions") {
    CHECK(k::activate(Activation::sigmoid, 0.0) == 0.5);
    CHECK(k::activate(Activation::sigmoid, 2.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-15));
    CHECK(k::activate(Activation::tanh, 0.7) == doctest::Approx(std::tanh(0.7)).epsilon(1e-15));
    CHECK(k::activate(Activation::hardlimit, -0.3) == 0.0);
    CHECK(k::activate(Activation::hardlimit, 0.3) == 1.0);
    CHECK(k::activate(Activation::hardlimit, 0.0) == 1.0);
}

TEST_CASE("serial kernels match the naive oracle") {
    const DenseMatrix a = oracle::random_matrix(9, 7, 1);
    const DenseMatrix b = oracle::random_matrix(7, 5, 2);
    DenseMatrix c(9, 5);
    k::serial::matmul(a, b, c);
    CHECK(oracle::max_abs_diff(c, oracle::naive_matmul(a, b)) <= 1e-13);

    const DenseMatrix bt = oracle::random_matrix(4, 7, 3);
    DenseMatrix ct(9, 4);
    k::serial::matmul_transposed(a, bt, ct);
    CHECK(oracle::max_abs_diff(ct, oracle::naive_matmul(a, oracle::index_swap_transpose(bt))) <= 1e-13);

    DenseMatrix gc(7, 7);
    k::serial::gram_columns(a, gc);
    CHECK(oracle::max_abs_diff(gc, oracle::naive_matmul(oracle::index_swap_transpose(a), a)) <= 1e-13);

    DenseMatrix gr(9, 9);
    k::serial::gram_rows(a, gr);
    CHECK(oracle::max_abs_diff(gr, oracle::naive_matmul(a, oracle::index_swap_transpose(a))) <= 1e-13);
}

TEST_CASE("hidden layer evaluates g(w.x + b)") {
    const DenseMatrix x = oracle::random_matrix(6, 3, 4);
    const DenseMatrix w = oracle::random_matrix(5, 3, 5);
    const auto bias = random_biases(5, 6);
    DenseMatrix h(6, 5);
    k::serial::hidden_layer(x, w, bias, Activation::sigmoid, h);
    for (std::size_t j = 0; j < 6; ++j) {
        for (std::size_t i = 0; i < 5; ++i) {
            double z = bias[i];
            for (std::size_t d = 0; d < 3; ++d) {
                z += w(i, d) * x(j, d);
            }
            CHECK(h(j, i) == doctest::Approx(1.0 / (1.0 + std::exp(-z))).epsilon(1e-14));
        }
    }
}

TEST_CASE("parallel kernels are bit-identical to serial ones") {
    const int saved = omp_get_max_threads();
    for (int threads : { 1, 2, 3, 8 }) {
        omp_set_num_threads(threads);
        for (std::uint64_t s = 0; s < 4; ++s) {
            const std::size_t n = 17 + 13 * s;
            const std::size_t m = 5 + 11 * s;
            const DenseMatrix a = oracle::random_matrix(n, m, s);
            const DenseMatrix b = oracle::random_matrix(m, 9, s + 50);
            const DenseMatrix bt = oracle::random_matrix(12, m, s + 60);
            const auto bias = random_biases(12, s + 70);

            DenseMatrix c1(n, 9), c2(n, 9);
            k::serial::matmul(a, b, c1);
            k::parallel::matmul(a, b, c2);
            CHECK(c1 == c2);

            DenseMatrix t1(n, 12), t2(n, 12);
            k::serial::matmul_transposed(a, bt, t1);
            k::parallel::matmul_transposed(a, bt, t2);
            CHECK(t1 == t2);

            DenseMatrix g1(m, m), g2(m, m);
            k::serial::gram_columns(a, g1);
            k::parallel::gram_columns(a, g2);
            CHECK(g1 == g2);

            DenseMatrix r1(n, n), r2(n, n);
            k::serial::gram_rows(a, r1);
            k::parallel::gram_rows(a, r2);
            CHECK(r1 == r2);

            for (auto g : { Activation::sigmoid, Activation::tanh, Activation::hardlimit }) {
                DenseMatrix h1(n, 12), h2(n, 12);
                k::serial::hidden_layer(a, bt, bias, g, h1);
                k::parallel::hidden_layer(a, bt, bias, g, h2);
                CHECK(h1 == h2);
            }
        }
    }
    omp_set_num_threads(saved);
}

TEST_CASE("gram matrices are exactly symmetric") {
    const DenseMatrix a = oracle::random_matrix(23, 11, 9);
    DenseMatrix g(11, 11);
    k::parallel::gram_columns(a, g);
    CHECK(g == oracle::index_swap_transpose(g));
    DenseMatrix r(23, 23);
    k::parallel::gram_rows(a, r);
    CHECK(r == oracle::index_swap_transpose(r));
}
