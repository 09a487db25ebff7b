#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "weightseq/conditions.hpp"
#include "weightseq/constructions.hpp"
#include "weightseq/tails.hpp"

using namespace wseq;

namespace {
double profile_max_hi(const ConditionReport& r) {
    double m = -INFINITY;
    for (const auto& pt : r.profile) m = std::max(m, pt.value.hi);
    return m;
}
}  // namespace

TEST_CASE("gamma1 verdicts") {
    const auto r = check_gamma1(gevrey(2.0, 128));
    CHECK(r.verdict.verdict == Verdict::Holds);
    CHECK(r.verdict.bound >= 1.0);
    CHECK(r.verdict.bound <= 2.0);
    CHECK(r.running_sup.hi >= profile_max_hi(r));
    CHECK(r.profile.back().value.mid() == doctest::Approx(1.0).epsilon(0.01));

    CHECK(check_gamma1(gevrey(1.0, 128)).verdict.verdict == Verdict::Fails);

    // nu_p = p (1 + floor(log2 p))^2 with no tail information: sup grows like log p
    std::vector<double> q;
    for (std::size_t p = 1; p <= 1024; ++p) {
        const double l = 1.0 + std::floor(std::log2(double(p)));
        q.push_back(std::log(double(p) * l * l));
    }
    const auto W = WeightSequence::from_quotients(q, UnknownTail{}, "plog");
    const auto u = check_gamma1(W);
    CHECK(u.verdict.verdict == Verdict::Inconclusive);
    CHECK(std::isfinite(u.verdict.bound));
    for (std::size_t i = 0; i < u.witnesses.size(); ++i) CHECK(u.witnesses[i] < u.profile.size());
}

TEST_CASE("moderate growth") {
    const auto r = check_mg(gevrey(2.0, 128));
    CHECK(r.verdict.verdict == Verdict::Holds);
    for (const auto& pt : r.profile) CHECK(pt.value.mid() == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    const auto c = check_mg(constant_one(16));
    CHECK(c.verdict.verdict == Verdict::Holds);
    for (const auto& pt : c.profile) CHECK(pt.value.mid() == 0.0);
    std::vector<double> g;
    for (int k = 1; k <= 16; ++k) g.push_back(k * std::log(2.0));
    CHECK(check_mg(WeightSequence::from_quotients(g, RatioTail{2.0, 1}, "geo")).verdict.verdict == Verdict::Fails);
}

TEST_CASE("lambda_ps") {
    const auto N = gevrey(2.0, 64);
    for (std::size_t p = 1; p <= 64; ++p) CHECK(lambda_ps(N, N, p, 1) <= N.log_quotient(p) + 1e-12);
    std::vector<double> t(65);
    for (std::size_t p = 0; p <= 64; ++p) t[p] = N.log_term(p) - double(p);
    const auto M = WeightSequence::from_log_terms(t, UnknownTail{}, "shift");
    for (std::size_t p = 1; p <= 64; ++p) {
        CHECK(lambda_ps(M, N, p, 1) <= lambda_ps(N, N, p, 1) - 1.0 + 1e-12);
        // brute force
        double best = -INFINITY;
        for (std::size_t j = 0; j < p; ++j) best = std::max(best, (t[p] - N.log_term(j)) / double(p - j));
        CHECK(lambda_ps(M, N, p, 1) == doctest::Approx(best).epsilon(1e-14));
    }
    CHECK(lambda_ps(N, N, 1, 3) == doctest::Approx(N.log_term(1) - std::log(3.0)));
}

TEST_CASE("SV checks") {
    const auto N = gevrey(2.0, 64);
    const auto L = optimal_sequence(N, 1, 1.0);
    const auto sv = check_SV(L.sequence, N, 1);
    for (std::size_t i = 0; i < sv.profile.size(); ++i)
        CHECK(sv.profile[i].value.hi <= 1.0 + 1e-6 + L.log_term_enclosure[i].width() + sv.profile[i].value.width());

    const auto self = check_SV(N, N, 1);
    CHECK(std::isfinite(self.running_sup.hi));
    CHECK(self.running_sup.hi <= check_gamma1(N).running_sup.hi + 1e-12);
    CHECK(self.verdict.verdict == Verdict::Holds);

    const auto q = check_SV(gevrey(1.0, 64), gevrey(1.0, 64), 1);
    CHECK(q.verdict.verdict == Verdict::Fails);
    for (const auto& pt : q.profile) CHECK(pt.value.hi == kInf);
}

TEST_CASE("mixed gamma1 and ramified reductions") {
    const auto N = gevrey(2.0, 64);
    const auto a = check_mixed_gamma1(N, N), b = check_gamma1(N);
    REQUIRE(a.profile.size() == b.profile.size());
    for (std::size_t i = 0; i < a.profile.size(); ++i) {
        CHECK(a.profile[i].value.lo == doctest::Approx(b.profile[i].value.lo).epsilon(1e-14));
        CHECK(a.profile[i].value.hi == doctest::Approx(b.profile[i].value.hi).epsilon(1e-14));
    }
    CHECK(check_mixed_gamma1(gevrey(1.0, 64), gevrey(1.0, 64)).running_sup.hi == kInf);

    const auto L = optimal_sequence(N, 1, 1.0).sequence;
    const auto s1 = check_SV(L, N, 1), r1 = check_SV_ramified(L, N, 1, 1);
    for (std::size_t i = 0; i < s1.profile.size(); ++i)
        CHECK(r1.profile[i].value.hi == doctest::Approx(s1.profile[i].value.hi).epsilon(1e-13));
    const auto g1 = check_mixed_gamma_r(N, N, 1);
    for (std::size_t i = 0; i < g1.profile.size(); ++i)
        CHECK(g1.profile[i].value.hi == doctest::Approx(a.profile[i].value.hi).epsilon(1e-13));

    const auto G4 = gevrey(4.0, 64);
    const auto rr = check_SV_ramified(ramified_optimal(G4, 2, 1), G4, 2, 1);
    for (const auto& pt : rr.profile) CHECK(pt.value.hi <= 1.0 + 1e-6 + 2.0 * pt.value.width() + 1e-3);
    CHECK(check_SV_ramified(N, N, 2, 1).verdict.verdict == Verdict::Fails);
}

TEST_CASE("lemma24 estimates") {
    const auto N = gevrey(2.0, 64);
    const auto L = optimal_sequence(N, 1, 1.0).sequence;
    // (i): M <= C N termwise with log C = sup (log M_p - log N_p)
    const auto M = modified_descendant(N).sequence;
    double logC = 0.0;
    for (std::size_t p = 0; p <= 64; ++p) logC = std::max(logC, M.log_term(p) - N.log_term(p));
    for (std::size_t p = 1; p <= 64; ++p)
        for (int s : {1, 2, 3}) {
            CHECK(lambda_ps(M, N, p, s) <= logC + N.log_quotient(p) + 1e-12);
            CHECK(lambda_ps(M, N, p, s) <= logC + std::min(M.log_quotient(p), N.log_quotient(p)) + 1e-12);
        }
    // (iii): M_p C^p with parameter sC gives the same profile as M with s
    for (int c : {2, 4}) {
        const auto a = check_SV(M, N, 1), b = check_SV(geometric_rescale(M, 1.0 / c), N, c);
        for (std::size_t i = 0; i < a.profile.size(); ++i)
            CHECK(std::fabs(a.profile[i].value.hi - b.profile[i].value.hi) <= 1e-10 * std::max(1.0, a.profile[i].value.hi));
    }
    // antitone in s
    const auto s1 = check_SV(L, N, 1), s2 = check_SV(L, N, 2);
    const auto r2 = check_SV_real(L, N, 2.0);
    for (std::size_t i = 0; i < s1.profile.size(); ++i) CHECK(r2.profile[i].value.hi == s2.profile[i].value.hi);
    for (std::size_t i = 0; i < s1.profile.size(); ++i) CHECK(s2.profile[i].value.hi <= s1.profile[i].value.hi);
    // mixed gamma1 bound carries over to SV profile-wise
    const auto mg = check_mixed_gamma1(M, N), sv = check_SV(M, N, 1);
    CHECK(sv.running_sup.hi <= std::exp(logC) * mg.running_sup.hi + 1e-9);
}

TEST_CASE("mg implies a positive nongamma2 liminf on gevrey") {
    for (double s : {1.5, 2.0, 3.0}) {
        const auto N = gevrey(s, 256);
        REQUIRE(check_mg(N).verdict.verdict == Verdict::Holds);
        double mn = INFINITY;
        for (std::size_t p = 128; p <= 256; ++p) mn = std::min(mn, nongamma2_profile(N, p).lo);
        CHECK(mn > 0.0);
    }
}

TEST_CASE("directed defects") {
    const auto N = power_tail_family(4.0, 2.0, 64);
    CHECK(preceq_defect(N, N).defect == 0.0);
    const auto R = geometric_rescale(N, 2.0);
    CHECK(preceq_defect(R, N).defect == doctest::Approx(-std::log(2.0)));
    CHECK(preceq_defect(N, R).defect == doctest::Approx(std::log(2.0)));
}

TEST_CASE("almost increasing defect") {
    const std::vector<double> v{0.0, 1.0, 0.2, 2.0};
    const auto a = almost_increasing_defect(v);
    CHECK(a.defect == doctest::Approx(0.8));
    CHECK(a.p == 2);
    CHECK(a.q == 3);
    const std::vector<double> inc{0.0, 0.5, 0.5, 3.0};
    CHECK(almost_increasing_defect(inc).defect <= 0.0);
}
