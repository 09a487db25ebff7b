#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "weightseq/sequence.hpp"
#include "weightseq/tails.hpp"

using namespace wseq;


TEST_CASE("tail sums against the Basel value") {
    const double target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    const Interval I = tail_sum(gevrey(2.0, 64), 2);
    CHECK(I.contains(target));
    CHECK(I.width() < 1.0 / (65.0 * 65.0) + 1e-12);
    const Interval J = tail_sum(gevrey(2.0, 256), 2);
    CHECK(J.contains(target));
    CHECK(J.width() <= 1e-4);
    CHECK(J.contains(oracle::power_tail(2.0, 2)));
}

TEST_CASE("divergent and unknown tails") {
    const Interval h = tail_sum(gevrey(1.0, 64), 1);
    CHECK(h.hi == kInf);
    CHECK(h.lo > 4.0);  // harmonic number H_64
    CHECK(is_nonquasianalytic(gevrey(1.0, 64)).verdict == Verdict::Fails);
    const auto U = WeightSequence::from_quotients(std::vector<double>(16, 1.0), UnknownTail{}, "u");
    CHECK(tail_sum(U, 1).hi == kInf);
    CHECK(is_nonquasianalytic(U).verdict == Verdict::Inconclusive);
    CHECK(gamma1_profile(constant_one(16), 3).hi == kInf);
}

TEST_CASE("ratio tail") {
    std::vector<double> g;
    for (int k = 1; k <= 16; ++k) g.push_back(k * std::log(2.0));
    const auto G = WeightSequence::from_quotients(g, RatioTail{2.0, 1}, "geo");
    double want = 0.0;
    for (int k = 1; k < 1000; ++k) want += std::ldexp(1.0, -k);
    CHECK(tail_sum(G, 1).contains(want));
    CHECK(is_nonquasianalytic(G).verdict == Verdict::Holds);
}

TEST_CASE("gamma1 profile values") {
    const auto G = gevrey(2.0, 64);
    const Interval v = gamma1_profile(G, 8);
    const double want = 8.0 * oracle::power_tail(2.0, 8);
    CHECK(v.contains(want));
    CHECK(want == doctest::Approx(1.0651).epsilon(1e-4));
    for (std::size_t p = 2; p <= 64; ++p) {
        const Interval g = gamma1_profile(G, p);
        CHECK(g.lo >= 1.0 - 1e-12);
        CHECK(g.hi <= 2.0);
    }
}

TEST_CASE("nongamma2 profile") {
    const auto G = gevrey(2.0, 128);
    const Interval v = nongamma2_profile(G, 8);
    CHECK(v.contains(8.0 * oracle::power_tail(2.0, 16)));
    CHECK(v.mid() == doctest::Approx(0.5161).epsilon(2e-3));
    CHECK(nongamma2_profile(G, 128).mid() == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(nongamma2_profile(gevrey(1.0, 64), 4).hi == kInf);
    const auto U = WeightSequence::from_quotients(std::vector<double>(16, 1.0), UnknownTail{}, "u");
    CHECK(throws_kind([&] { (void)nongamma2_profile(U, 9); }, ErrorKind::BeyondHorizon));
    for (std::size_t p = 1; p <= 64; ++p) CHECK(nongamma2_profile(G, p).hi <= gamma1_profile(G, p).hi);
}

TEST_CASE("property: telescoping and oracle agreement") {
    for (double s : {1.5, 2.0, 3.0}) {
        const auto W = gevrey(s, 128);
        const TailTable T(W);
        for (std::size_t p = 1; p <= 128; ++p) {
            const Interval a = T.at(p), b = T.at(p + 1);
            const double inv = std::exp(-W.log_quotient(p));
            CHECK(a.lo <= b.lo + inv + 1e-12 * a.lo);
            CHECK(std::fabs(a.lo - (b.lo + inv)) <= 1e-12 * a.lo);
            CHECK(std::fabs(a.hi - (b.hi + inv)) <= 1e-12 * a.hi);
            CHECK(b.lo <= a.lo);
        }
        for (std::size_t p : {1, 5, 17, 64}) {
            const double want = oracle::power_tail(s, p);
            CHECK(T.at(p).widened(1e-12).contains(want));
        }
    }
}
