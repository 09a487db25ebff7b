#include "weightseq/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "weightseq/error.hpp"
#include "weightseq/kernels.hpp"
#include "weightseq/tails.hpp"

namespace wseq {

namespace {

constexpr std::size_t kCrosscheckLimit = 64;

void require_lc_normalized(const WeightSequence& N, const char* op) {
    const LcReport lc = check_LC(N);
    if (!lc.normalized) fail(ErrorKind::NotNormalized, std::string(op) + ": input is not normalized");
    if (lc.log_convex_defect > kLogConvexTol)
        fail(ErrorKind::Precondition, std::string(op) + ": input is not log-convex (quotients drop at p = " +
                                          std::to_string(lc.defect_at) + ")");
}

void require_nonquasianalytic(const WeightSequence& N, const char* op) {
    const TriState nq = is_nonquasianalytic(N);
    if (nq.verdict == Verdict::Fails) fail(ErrorKind::Quasianalytic, std::string(op) + ": " + nq.reason);
    if (nq.verdict == Verdict::Inconclusive) fail(ErrorKind::Inconclusive, std::string(op) + ": " + nq.reason);
}

// Minimal j in [0, p-1] with log nu_{j+1} > x, else p-1. Quotients must be nondecreasing.
std::size_t crossing_index(std::span<const double> q, double x, std::size_t p) {
    const auto first = q.begin();
    const auto last = q.begin() + static_cast<std::ptrdiff_t>(p - 1);
    return static_cast<std::size_t>(std::upper_bound(first, last, x) - first);
}

double min_value(std::span<const double> terms, std::span<const double> q, double x, std::size_t p,
                 std::size_t* argmin) {
    const std::size_t j = crossing_index(q, x, p);
    if (argmin) *argmin = j;
    return static_cast<double>(p - j) * x + terms[j];
}

}  // namespace

DescendantResult descendant(const WeightSequence& N) {
    require_lc_normalized(N, "descendant");
    require_nonquasianalytic(N, "descendant");
    const std::size_t H = N.horizon();
    const TailTable T(N);
    std::vector<Interval> tau(H), sigma(H);
    for (std::size_t p = 1; p <= H; ++p) {
        const double head = static_cast<double>(p) * std::exp(-N.log_quotient(p));
        const Interval t = T.at(p);
        tau[p - 1] = Interval{head + t.lo, head + t.hi}.widened(4e-16);
    }
    const Interval tau1 = tau[0];
    std::vector<double> logq(H);
    sigma[0] = Interval::point(1.0);
    logq[0] = 0.0;
    for (std::size_t p = 2; p <= H; ++p) {
        const double pd = static_cast<double>(p);
        const Interval& tp = tau[p - 1];
        sigma[p - 1] = Interval{tau1.lo * pd / tp.hi, tau1.hi * pd / tp.lo}.widened(4e-16);
        logq[p - 1] = std::log(sigma[p - 1].mid());
    }
    WeightSequence seq = WeightSequence::from_quotients(std::move(logq), UnknownTail{}, N.label() + "/descendant");
    return DescendantResult{std::move(seq), std::move(tau), tau1, std::move(sigma)};
}

ModifiedDescendant modified_descendant(const WeightSequence& N) {
    const DescendantResult d = descendant(N);
    const std::size_t H = N.horizon();
    double sup = 0.0;
    for (std::size_t p = 1; p <= H; ++p)
        sup = std::max(sup, d.sigma[p - 1].hi / std::exp(N.log_quotient(p)));
    const double C = std::max(1.0, std::ceil(sup));
    std::size_t pC = 0;
    for (std::size_t p = 1; p <= H && pC == 0; ++p)
        if (d.sigma[p - 1].mid() >= C) pC = p;
    if (pC == 0)
        fail(ErrorKind::HorizonTooSmall, "sigma_p < C = " + std::to_string(static_cast<long long>(C)) +
                                             " for every p <= H");
    const double lC = std::log(C);
    std::vector<double> logq(H, 0.0);
    for (std::size_t p = pC; p <= H; ++p) logq[p - 1] = d.sequence.log_quotient(p) - lC;
    WeightSequence seq =
        WeightSequence::from_quotients(std::move(logq), UnknownTail{}, N.label() + "/modified-descendant");
    return ModifiedDescendant{std::move(seq), C, pC, sup};
}

OptimalSequenceResult optimal_sequence(const WeightSequence& N, int s, double C) {
    if (s < 1) fail(ErrorKind::InvalidArgument, "optimal_sequence needs s >= 1");
    if (!(C >= 1.0) || !std::isfinite(C)) fail(ErrorKind::InvalidArgument, "optimal_sequence needs C >= 1");
    require_lc_normalized(N, "optimal_sequence");
    require_nonquasianalytic(N, "optimal_sequence");
    const std::size_t H = N.horizon();
    const TailTable T(N);
    const auto q = N.log_quotients();
    const auto terms = N.log_terms();
    const double ls = std::log(static_cast<double>(s));
    const double lC = std::log(C);

    std::vector<double> x(H), out(H + 1, 0.0);
    std::vector<std::size_t> argmin(H);
    std::vector<Interval> enc(H);
    for (std::size_t p = 1; p <= H; ++p) {
        const Interval t = T.at(p);
        const double base = lC + std::log(static_cast<double>(p));
        const double pls = static_cast<double>(p) * ls;
        x[p - 1] = base - std::log(t.mid());
        out[p] = pls + min_value(terms, q, x[p - 1], p, &argmin[p - 1]);
        // The min is nondecreasing in x, and x is decreasing in T.
        const double lo = pls + min_value(terms, q, base - std::log(t.hi), p, nullptr);
        const double hi = pls + min_value(terms, q, base - std::log(t.lo), p, nullptr);
        enc[p - 1] = {std::min(lo, out[p]), std::max(hi, out[p])};
    }

    const std::size_t P = std::min(H, kCrosscheckLimit);
    const auto exh = kernels::exhaustive_min_omp(terms, std::span<const double>(x).first(P));
    double dev = 0.0;
    for (std::size_t p = 1; p <= P; ++p) {
        const double crit = out[p] - static_cast<double>(p) * ls;
        dev = std::max(dev, std::fabs(crit - exh[p - 1].value));
    }

    char label[96];
    std::snprintf(label, sizeof label, "/optimal:s=%d:C=%.17g", s, C);
    WeightSequence seq = WeightSequence::from_log_terms(std::move(out), UnknownTail{}, N.label() + label);
    return OptimalSequenceResult{std::move(seq), std::move(argmin), std::move(enc), s, C, dev};
}

Envelope lower_convex_envelope(std::span<const double> y) {
    Envelope e;
    const std::size_t n = y.size();
    e.values.assign(y.begin(), y.end());
    if (n == 0) return e;
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        const double ax = static_cast<double>(a) - static_cast<double>(o), ay = y[a] - y[o];
        const double bx = static_cast<double>(b) - static_cast<double>(o), by = y[b] - y[o];
        return ax * by - ay * bx;
    };
    for (std::size_t i = 0; i < n; ++i) {
        while (e.hull.size() >= 2 && turn(e.hull[e.hull.size() - 2], e.hull.back(), i) <= 0.0) e.hull.pop_back();
        e.hull.push_back(i);
    }
    for (std::size_t h = 0; h + 1 < e.hull.size(); ++h) {
        const std::size_t a = e.hull[h], b = e.hull[h + 1];
        const double slope = (y[b] - y[a]) / static_cast<double>(b - a);
        for (std::size_t i = a + 1; i < b; ++i) e.values[i] = y[a] + static_cast<double>(i - a) * slope;
    }
    return e;
}

MinorantResult log_convex_minorant(const WeightSequence& W, std::size_t p_max) {
    if (p_max < 1 || p_max > W.horizon())
        fail(ErrorKind::InvalidArgument, "minorant needs 1 <= p_max <= H");
    const auto terms = W.log_terms().first(p_max + 1);
    Envelope e = lower_convex_envelope(terms);
    const std::size_t valid = e.hull.size() >= 2 ? e.hull[e.hull.size() - 2] : 0;
    WeightSequence seq = WeightSequence::from_log_terms(std::move(e.values), UnknownTail{}, W.label() + "/minorant");
    return MinorantResult{std::move(seq), std::move(e.hull), valid};
}

WeightSequence ramified_root(const WeightSequence& N, int r) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "ramification needs r >= 1");
    if (r == 1) return N;
    return power(N, 1.0 / r);
}

WeightSequence ramified_optimal(const WeightSequence& N, int r, int s) {
    const WeightSequence root = ramified_root(N, r);
    if (r == 1) return optimal_sequence(root, s, 1.0).sequence;
    return power(optimal_sequence(root, s, 1.0).sequence, r);
}

WeightSequence ramified_descendant(const WeightSequence& N, int r) {
    const WeightSequence root = ramified_root(N, r);
    if (r == 1) return descendant(root).sequence;
    return power(descendant(root).sequence, r);
}

}  // namespace wseq
