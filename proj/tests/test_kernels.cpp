#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "weightseq/kernels.hpp"

using namespace wseq;

namespace {
std::vector<double> random_convex(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> step(0.0, 1.0);
    std::vector<double> t{0.0};
    double q = step(rng);
    for (std::size_t p = 1; p < n; ++p) {
        t.push_back(t.back() + q);
        q += step(rng);
    }
    return t;
}
}  // namespace

TEST_CASE("serial and parallel kernels agree exactly") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto m = random_convex(rng, 400), n = random_convex(rng, 400);
        const auto a = kernels::lambda_profile_serial(m, n, 0.3, 399);
        const auto b = kernels::lambda_profile_omp(m, n, 0.3, 399);
        CHECK(a == b);

        std::vector<double> x(399);
        std::uniform_real_distribution<double> u(-2.0, 5.0);
        for (auto& v : x) v = u(rng);
        const auto e1 = kernels::exhaustive_min_serial(n, x), e2 = kernels::exhaustive_min_omp(n, x);
        REQUIRE(e1.size() == e2.size());
        for (std::size_t i = 0; i < e1.size(); ++i) {
            CHECK(e1[i].value == e2[i].value);
            CHECK(e1[i].argmin == e2[i].argmin);
            CHECK(e1[i].argmin <= i);
        }

        std::vector<double> lt(300);
        for (std::size_t i = 0; i < lt.size(); ++i) lt[i] = -1.0 + 0.02 * i;
        CHECK(kernels::legendre_max_serial(m, lt) == kernels::legendre_max_omp(m, lt));
    }
}

TEST_CASE("kernel values by hand") {
    const std::vector<double> n{0.0, 1.0, 3.0};
    const std::vector<double> m{0.0, 2.0, 5.0};
    const auto l = kernels::lambda_profile_serial(m, n, 0.0, 2);
    CHECK(l[0] == 2.0);
    CHECK(l[1] == std::max(5.0 / 2.0, 4.0));
    const std::vector<double> x{0.5, 0.5};
    const auto e = kernels::exhaustive_min_serial(n, x);
    CHECK(e[0].value == 0.5);
    CHECK(e[1].value == 1.0);
    CHECK(e[1].argmin == 0);
    const std::vector<double> lt{-1.0, std::log(2.0)};
    const auto w = kernels::legendre_max_serial(n, lt);
    CHECK(w[0] == 0.0);
    CHECK(w[1] == 0.0);  // log 2 < nu_1 = e
}

TEST_CASE("thread configuration") { CHECK(kernels::max_threads() >= 1); }
