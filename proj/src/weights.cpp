#include "weightseq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <queue>
#include <string>

#include "weightseq/error.hpp"
#include "weightseq/kernels.hpp"

namespace wseq {

namespace {

constexpr std::size_t kCrosscheckHorizon = 64;

// 1 - (1 + h) e^{-h}, accurate for small h.
double first_moment_factor(double h) {
    if (h < 0.1) {
        // sum_{n >= 2} (-1)^n (n - 1) h^n / n!
        double term = 1.0, sum = 0.0;
        for (int n = 1; n <= 14; ++n) {
            term *= h / n;
            if (n >= 2) sum += ((n % 2 == 0) ? 1.0 : -1.0) * (n - 1) * term;
        }
        return sum;
    }
    return -std::expm1(-h) - h * std::exp(-h);
}

double log_sum_exp(std::span<const double> x) {
    double m = -kInf;
    for (double v : x) m = std::max(m, v);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : x) s += std::exp(v - m);
    return m + std::log(s);
}

void require_lc_normalized(const WeightSequence& M, const char* op) {
    const LcReport lc = check_LC(M);
    if (!lc.normalized || lc.log_convex_defect > kLogConvexTol)
        fail(ErrorKind::Precondition, std::string(op) + ": sequence must be normalized and log-convex");
}

}  // namespace

OmegaEvaluator::OmegaEvaluator(const WeightSequence& M) : M_(&M), lc_(is_log_convex(M)) {}

double OmegaEvaluator::exhaustive_on_horizon(double log_t) const {
    const auto terms = M_->log_terms();
    double best = 0.0;
    for (std::size_t p = 1; p < terms.size(); ++p)
        best = std::max(best, static_cast<double>(p) * log_t - terms[p]);
    return best;
}

OmegaEvaluator::Value OmegaEvaluator::beyond_horizon(double log_t) const {
    const std::size_t H = M_->horizon();
    const TailModel& tail = M_->tail();
    double guess = 0.0;
    if (const auto* pt = std::get_if<PowerTail>(&tail)) {
        if (pt->s == 0.0)
            fail(ErrorKind::Precondition, "omega is infinite: quotients stay at c <= t forever");
        guess = std::exp((log_t - std::log(pt->c)) / pt->s);
    } else if (const auto* rt = std::get_if<RatioTail>(&tail)) {
        guess = static_cast<double>(H) + (log_t - M_->log_quotient(H)) / std::log(rt->q);
    } else {
        fail(ErrorKind::TailRequired, "log t reaches log nu_H and the tail is unknown");
    }
    if (!(guess < 1e15)) fail(ErrorKind::Overflow, "maximizing index exceeds 1e15");
    std::size_t k = std::max<std::size_t>(H, static_cast<std::size_t>(guess));
    while (k > H && M_->log_quotient(k) > log_t) --k;
    while (M_->log_quotient(k + 1) <= log_t) ++k;
    return {static_cast<double>(k) * log_t - M_->log_term(k), k};
}

OmegaEvaluator::Value OmegaEvaluator::at_log(double log_t) const {
    const auto q = M_->log_quotients();
    const auto terms = M_->log_terms();
    const std::size_t H = q.size();
    if (lc_) {
        const std::size_t count = static_cast<std::size_t>(std::upper_bound(q.begin(), q.end(), log_t) - q.begin());
        if (count == H) return beyond_horizon(log_t);
        const Value v{static_cast<double>(count) * log_t - terms[count], count};
        if (H <= kCrosscheckHorizon) {
            const double ex = exhaustive_on_horizon(log_t);
            if (std::fabs(ex - v.omega) > 1e-9 * std::max(1.0, std::fabs(ex)))
                fail(ErrorKind::VerificationFailed, "omega: quotient crossing disagrees with exhaustive sup");
        }
        return v;
    }
    // Not log-convex: exhaustive on the horizon, model beyond.
    Value best{0.0, 0};
    for (std::size_t p = 1; p <= H; ++p) {
        const double v = static_cast<double>(p) * log_t - terms[p];
        if (v > best.omega) best = {v, p};
    }
    if (log_t >= q[H - 1]) {
        const Value b = beyond_horizon(log_t);
        if (b.omega > best.omega) best = b;
    }
    return best;
}

double omega(const WeightSequence& M, double t) {
    if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "omega needs t > 0");
    if (t <= 1.0 && M.normalized()) return 0.0;
    return OmegaEvaluator(M).at_log(std::log(t)).omega;
}

WeightFunctionSamples omega_samples(const WeightSequence& M, std::span<const double> t_grid) {
    const OmegaEvaluator ev(M);
    WeightFunctionSamples out;
    out.t.assign(t_grid.begin(), t_grid.end());
    out.values.resize(t_grid.size());
    std::exception_ptr err;
    const long long n = static_cast<long long>(t_grid.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        try {
            out.values[i] = t_grid[i] <= 1.0 ? 0.0 : ev.at_log(std::log(t_grid[i])).omega;
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

std::vector<double> log_grid(double t_min, double t_max, int per_decade) {
    std::vector<double> g;
    if (!(t_min > 0.0) || !(t_max >= t_min) || per_decade < 1) return g;
    const double lo = std::log10(t_min), hi = std::log10(t_max);
    const long n = static_cast<long>(std::floor((hi - lo) * per_decade + 1e-9));
    for (long i = 0; i <= n; ++i) g.push_back(std::pow(10.0, lo + static_cast<double>(i) / per_decade));
    return g;
}

double recover_sequence(const WeightSequence& M, std::size_t p) {
    if (p == 0) return 0.0;
    const OmegaEvaluator ev(M);
    const std::size_t H = M.horizon();
    auto lq = [&](std::size_t k) {
        if (k <= H || tail_known(M.tail())) return M.log_quotient(k);
        return M.log_quotient(H);
    };
    const double pd = static_cast<double>(p);
    auto g = [&](double u) { return pd * u - (u <= 0.0 ? 0.0 : ev.at_log(u).omega); };

    double u_hi = std::max({0.0, lq(p + 1), lq(std::min(p, H))});
    if (!tail_known(M.tail())) u_hi = std::min(u_hi, std::nextafter(M.log_quotient(H), -kInf));
    std::vector<double> cand;
    const double step = std::log(10.0) / 64.0;
    for (double u = 0.0; u < u_hi; u += step) cand.push_back(u);
    cand.push_back(u_hi);
    for (std::size_t k : {p, p + 1})
        if (k >= 1 && (k <= H || tail_known(M.tail()))) {
            const double c = lq(k);
            if (c >= 0.0 && c <= u_hi) cand.push_back(c);
        }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::size_t best = 0;
    double best_v = -kInf;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double v = g(cand[i]);
        if (v > best_v) best_v = v, best = i;
    }
    // g is concave: ternary refinement between the neighbours of the best node.
    double a = cand[best > 0 ? best - 1 : 0];
    double b = cand[std::min(best + 1, cand.size() - 1)];
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(b)); ++it) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (g(m1) < g(m2))
            a = m1;
        else
            b = m2;
    }
    return std::max(best_v, g(0.5 * (a + b)));
}

Interval kappa(const WeightSequence& N, double t, double y_max) {
    if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "kappa needs t > 0");
    if (!(y_max > 1.0)) fail(ErrorKind::InvalidArgument, "kappa needs y_max > 1");
    require_lc_normalized(N, "kappa");
    const auto* pt = std::get_if<PowerTail>(&N.tail());
    const auto* rt = std::get_if<RatioTail>(&N.tail());
    if (!(pt && pt->s > 1.0) && !rt)
        fail(ErrorKind::RemainderUnbounded, "kappa needs a power tail with s > 1 or a ratio tail");

    const OmegaEvaluator ev(N);
    const double lt = std::log(t);
    auto eval = [&](double u) -> OmegaEvaluator::Value {
        if (lt + u <= 0.0) return {0.0, 0};
        return ev.at_log(lt + u);
    };

    struct Panel {
        double a, b, lo, hi;
        OmegaEvaluator::Value va, vb;
        bool operator<(const Panel& o) const { return hi - lo < o.hi - o.lo; }
    };
    auto make = [](double a, double b, OmegaEvaluator::Value va, OmegaEvaluator::Value vb) {
        const double h = b - a;
        const double ea = std::exp(-a);
        const double i0 = ea * -std::expm1(-h);
        const double i1 = ea * first_moment_factor(h);
        const double chord = (vb.omega - va.omega) / h;
        const double lo = va.omega * i0 + std::min(static_cast<double>(va.count), chord) * i1;
        const double hi = va.omega * i0 + chord * i1;
        return Panel{a, b, lo, std::max(lo, hi), va, vb};
    };

    const double U = std::log(y_max);
    const int initial = 256;
    std::priority_queue<Panel> heap;
    OmegaEvaluator::Value prev = eval(0.0);
    for (int i = 0; i < initial; ++i) {
        const double a = U * i / initial, b = (i + 1 == initial) ? U : U * (i + 1) / initial;
        const OmegaEvaluator::Value next = eval(b);
        heap.push(make(a, b, prev, next));
        prev = next;
    }
    const OmegaEvaluator::Value vY = prev;

    double lo = 0.0, hi = 0.0;
    std::vector<Panel> done;
    auto totals = [&] {
        double l = 0.0, h = 0.0;
        auto tmp = heap;
        while (!tmp.empty()) l += tmp.top().lo, h += tmp.top().hi, tmp.pop();
        return std::pair{l, h};
    };
    {
        auto [l, h] = totals();
        lo = l, hi = h;
    }
    constexpr std::size_t kMaxPanels = 200000;
    while (heap.size() < kMaxPanels && hi - lo > 1e-10 * std::max(lo, 1e-300)) {
        const Panel w = heap.top();
        heap.pop();
        if (w.hi - w.lo <= 0.0) {
            heap.push(w);
            break;
        }
        const double m = 0.5 * (w.a + w.b);
        const OmegaEvaluator::Value vm = eval(m);
        const Panel left = make(w.a, m, w.va, vm), right = make(m, w.b, vm, w.vb);
        lo += left.lo + right.lo - w.lo;
        hi += left.hi + right.hi - w.hi;
        heap.push(left);
        heap.push(right);
    }
    {
        auto [l, h] = totals();  // re-sum to drop incremental drift
        lo = l, hi = h;
    }

    // Remainder over [y_max, inf): tangent below, tail-model growth of omega above.
    const double rem_lo = (vY.omega + static_cast<double>(vY.count)) / y_max;
    double rem_hi = 0.0;
    if (pt) {
        const double k0 = static_cast<double>(pt->k0);
        const double growth = pt->s / (pt->s - 1.0) * std::exp((lt + U - std::log(pt->c)) / pt->s);
        rem_hi = (vY.omega + (k0 - 1.0) + growth) / y_max * (1.0 + 1e-8);
    } else {
        const double H = static_cast<double>(N.horizon());
        const double a0 = std::max(0.0, lt + U - N.log_quotient(N.horizon()));
        rem_hi = (vY.omega + H + (a0 + 1.0) / std::log(rt->q)) / y_max * (1.0 + 1e-8);
    }
    rem_hi = std::max(rem_hi, rem_lo);
    return Interval{lo + rem_lo, hi + rem_hi}.widened(1e-12);
}

ConditionReport check_snq(const WeightSequence& M, const WeightSequence& N, std::span<const double> t_grid) {
    for (const WeightSequence* W : {&M, &N}) {
        const LcReport lc = check_LC(*W);
        if (lc.in_lc.verdict == Verdict::Fails)
            fail(ErrorKind::Precondition, "check_snq: " + W->label() + " is not in LC (" + lc.in_lc.reason + ")");
    }
    std::vector<double> grid(t_grid.begin(), t_grid.end());
    if (grid.empty()) {
        double t_max = std::exp(N.log_quotient(N.horizon()));
        if (!tail_known(M.tail())) t_max = std::min(t_max, std::exp(M.log_quotient(M.horizon())) * (1 - 1e-12));
        grid = log_grid(1.0, t_max);
    }
    const OmegaEvaluator em(M);
    ConditionReport rep;
    rep.name = "snq-weights";
    rep.profile.resize(grid.size());
    std::exception_ptr err;
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < n; ++i) {
        try {
            const double t = grid[i];
            const Interval k = kappa(N, t, 1e6);
            const double w = t <= 1.0 ? 0.0 : em.at_log(std::log(t)).omega;
            rep.profile[i] = {t, Interval{k.lo / (w + 1.0), k.hi / (w + 1.0)}};
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    finalize(rep);
    rep.verdict = TriState::inconclusive(rep.running_sup.hi, "observed sup over the t-grid is the candidate constant");
    return rep;
}

Interval theta_jet(const WeightSequence& N, std::size_t j, std::size_t K) {
    if (K < j) fail(ErrorKind::TruncationTooSmall, "theta_jet needs K >= j");
    const LcReport lc = check_LC(N);
    if (!lc.normalized || lc.log_convex_defect > kLogConvexTol)
        fail(ErrorKind::Precondition, "theta_jet needs nondecreasing quotients and normalization");
    const double l2 = std::log(2.0);
    std::vector<double> terms(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        const double e = static_cast<double>(j) - static_cast<double>(k);
        terms[k] = N.log_term(k) + e * (l2 + (k == 0 ? 0.0 : N.log_quotient(k)));
    }
    const double partial = log_sum_exp(terms);
    const double last = terms[K];
    const double m = std::max(partial, last);
    const double upper = m + std::log(std::exp(partial - m) + std::exp(last - m));
    return {partial, upper};
}

}  // namespace wseq
