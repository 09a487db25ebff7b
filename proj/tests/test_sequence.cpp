#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "weightseq/sequence.hpp"

using namespace wseq;

TEST_CASE("from_quotients basics") {
    const auto W = WeightSequence::from_quotients(std::vector<double>(10, 0.0), UnknownTail{}, "ones");
    CHECK(W.horizon() == 10);
    CHECK(W.log_term(10) == 0.0);
    CHECK(W.log_quotient(3) == 0.0);
    CHECK_FALSE(tail_known(W.tail()));

    std::vector<double> q;
    for (int k = 1; k <= 16; ++k) q.push_back(std::log(double(k) * k));
    const auto G = WeightSequence::from_quotients(q, PowerTail{1.0, 2.0, 1}, "g2");
    CHECK(G.log_term(16) == doctest::Approx(2.0 * oracle::log_fact(16)).epsilon(1e-14));
}

TEST_CASE("from_quotients rejects bad input") {
    std::vector<double> q(10, 0.0);
    q[0] = -0.1;
    CHECK(throws_kind([&] { WeightSequence::from_quotients(q, UnknownTail{}, "x"); }, ErrorKind::NotNormalized));
    q[0] = 0.0;
    q[4] = NAN;
    CHECK(throws_kind([&] { WeightSequence::from_quotients(q, UnknownTail{}, "x"); }, ErrorKind::NonFinite));
    std::vector<double> r(10, 0.0);
    CHECK(throws_kind([&] { WeightSequence::from_quotients(r, PowerTail{1.0, 2.0, 1}, "x"); }, ErrorKind::TailMismatch));
    CHECK(throws_kind([&] { WeightSequence::from_quotients(r, RatioTail{2.0, 1}, "x"); }, ErrorKind::TailMismatch));
    CHECK(throws_kind([&] { WeightSequence::from_quotients({}, UnknownTail{}, "x"); }, ErrorKind::InvalidArgument));
}

TEST_CASE("gevrey values") {
    const auto G = gevrey(2.0, 64);
    CHECK(G.log_term(3) == doctest::Approx(3.583519).epsilon(1e-6));
    CHECK(G.log_quotient(5) == doctest::Approx(3.218876).epsilon(1e-6));
    CHECK(G.log_term(4) == doctest::Approx(6.356108).epsilon(1e-6));
    CHECK(G.log_root(4) == doctest::Approx(1.589027).epsilon(1e-6));
    CHECK(little_m(G, 4) == doctest::Approx(3.178054).epsilon(1e-6));
    CHECK(little_m(gevrey(1.0, 32), 17) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(little_m(constant_one(8), 3) == doctest::Approx(-1.791759).epsilon(1e-6));
    CHECK(throws_kind([] { gevrey(2.0, 7); }, ErrorKind::InvalidArgument));
    CHECK(throws_kind([] { gevrey(0.5, 16); }, ErrorKind::InvalidArgument));
}

TEST_CASE("extension past the horizon follows the tail model") {
    const auto G = gevrey(2.0, 8);
    // 2 log 12! = 39.974430...
    CHECK(G.log_term(12) == doctest::Approx(2.0 * oracle::log_fact(12)).epsilon(1e-13));
    CHECK(G.log_term(12) == doctest::Approx(39.97443).epsilon(1e-6));
    const auto W = WeightSequence::from_quotients(std::vector<double>(8, 0.0), UnknownTail{}, "x");
    CHECK(throws_kind([&] { (void)W.log_term(9); }, ErrorKind::BeyondHorizon));
    CHECK(constant_one(8).log_term(10) == 0.0);
}

TEST_CASE("log factorial table and lgamma agree") {
    for (std::size_t p = 0; p <= 60; ++p) CHECK(log_factorial(p) == doctest::Approx(oracle::log_fact(p)).epsilon(1e-13));
}

TEST_CASE("power and rescale") {
    const auto G = gevrey(2.0, 32);
    const auto half = power(G, 0.5);
    const auto g1 = gevrey(1.0, 32);
    for (std::size_t p = 1; p <= 40; ++p) CHECK(half.log_term(p) == doctest::Approx(g1.log_term(p)).epsilon(1e-13));
    const auto back = power(power(G, 2.0), 0.5);
    for (std::size_t p = 1; p <= 32; ++p) CHECK(std::fabs(back.log_quotient(p) - G.log_quotient(p)) <= 1e-12);
    const auto same = power(G, 1.0);
    for (std::size_t p = 1; p <= 32; ++p) CHECK(same.log_term(p) == G.log_term(p));

    // nu_p = 4 p^2 stays normalized after dividing by 2^p; gevrey(2) would not
    const auto F = power_tail_family(4.0, 2.0, 32);
    const auto R = geometric_rescale(F, 2.0);
    for (std::size_t p = 1; p <= 32; ++p) {
        CHECK(R.log_quotient(p) == doctest::Approx(std::log(2.0 * p * p)).epsilon(1e-13));
        CHECK(R.log_term(p) == doctest::Approx(F.log_term(p) - p * std::log(2.0)).epsilon(1e-13));
        CHECK(F.log_root(p) - R.log_root(p) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    CHECK(R.log_term(40) == doctest::Approx(F.log_term(40) - 40 * std::log(2.0)).epsilon(1e-13));
    CHECK(check_LC(R).log_convex_defect == check_LC(F).log_convex_defect);
    const auto I = geometric_rescale(G, 1.0);
    for (std::size_t p = 1; p <= 32; ++p) CHECK(I.log_term(p) == G.log_term(p));
    CHECK(throws_kind([&] { geometric_rescale(G, 2.0); }, ErrorKind::NotNormalized));
}

TEST_CASE("check_LC") {
    const auto r = check_LC(gevrey(2.0, 64));
    CHECK(r.normalized);
    CHECK(r.log_convex_defect <= 0.0);
    CHECK(r.quotients_unbounded);
    CHECK(r.in_lc.verdict == Verdict::Holds);
    // Stirling: log_root(64) ~ 2 (log 64 - 1)
    CHECK(r.roots_increasing_to == doctest::Approx(2.0 * (std::log(64.0) - 1.0)).epsilon(0.06));

    const auto c = check_LC(constant_one(16));
    CHECK(c.log_convex_defect <= 0.0);
    CHECK(c.in_lc.verdict != Verdict::Holds);

    std::vector<double> q{0.0, std::log(3.0), std::log(2.0), 1.0, 1.1, 1.2, 1.3, 1.4};
    const auto d = check_LC(WeightSequence::from_quotients(q, UnknownTail{}, "dip"));
    CHECK(d.log_convex_defect == doctest::Approx(std::log(3.0) - std::log(2.0)));
    CHECK_FALSE(is_log_convex(WeightSequence::from_quotients(q, UnknownTail{}, "dip")));
}

TEST_CASE("property: roots nondecreasing and below quotients for random log-convex input") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> step(0.0, 0.7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> q{step(rng)};
        for (int k = 1; k < 64; ++k) q.push_back(q.back() + step(rng));
        const auto W = WeightSequence::from_quotients(q, UnknownTail{}, "rand");
        double sum = 0.0;
        for (std::size_t p = 1; p <= 64; ++p) {
            sum += q[p - 1];
            CHECK(W.log_term(p) == sum);
            CHECK(W.log_root(p) <= W.log_quotient(p) + 1e-12);
            if (p > 1) CHECK(W.log_root(p) >= W.log_root(p - 1) - 1e-12);
        }
        const auto again = WeightSequence::from_quotients(
            std::vector<double>(W.log_quotients().begin(), W.log_quotients().end()), UnknownTail{}, "again");
        for (std::size_t p = 0; p <= 64; ++p) CHECK(again.log_term(p) == W.log_term(p));
    }
}

TEST_CASE("from_log_terms keeps terms verbatim") {
    std::vector<double> t{0.0, 0.3, 0.1, 2.0, 2.5, 3.0, 4.0, 6.0, 9.0};
    const auto W = WeightSequence::from_log_terms(t, UnknownTail{}, "terms");
    CHECK(W.built_from_terms());
    for (std::size_t p = 0; p < t.size(); ++p) CHECK(W.log_term(p) == t[p]);
    CHECK(W.log_quotient(2) == doctest::Approx(-0.2));
}
