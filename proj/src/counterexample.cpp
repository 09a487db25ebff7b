#include "weightseq/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "weightseq/error.hpp"
#include "weightseq/kernels.hpp"
#include "weightseq/tails.hpp"

namespace wseq {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kExactLimit = 4503599627370496.0;  // 2^52
constexpr double kLogLimit = 1e300;

double lae(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// log(e^a - e^b) for a > b.
double lse_sub(double a, double b) {
    if (b == -kInf) return a;
    return a + std::log1p(-std::exp(b - a));
}

double lf(std::uint64_t n) { return log_factorial(static_cast<std::size_t>(n)); }

double dbl(std::uint64_t n) { return static_cast<double>(n); }

double log_of(std::uint64_t n) { return std::log(dbl(n)); }

// log(p_next - m) where p_next may be known only in log domain.
double log_next_minus(const BlockRecord& r, double m) {
    if (r.p_next != 0) return dbl(r.p_next) > m ? std::log(dbl(r.p_next) - m) : -kInf;
    return lse_sub(r.log_p_next, std::log(m));
}

double rhs_basic(std::uint64_t p, std::uint64_t q) {
    const double pd = dbl(p), qd = dbl(q);
    return lf(p) * (qd - pd) / (pd * qd) - (lf(q) - lf(p)) / qd;
}

// Right-hand side of the C_{i+1} requirement, log domain.
double rhs_next_C(const BlockRecord& prev, std::uint64_t p1, std::uint64_t q1, double log_N_p0, double log_N_p1,
                  std::size_t i) {
    const double p0 = dbl(prev.p), q0 = dbl(prev.q), pn = dbl(p1), qn = dbl(q1);
    const double expo_C = q0 * (qn - pn) / (qn * (q0 - p0));
    const double inner = std::log(prev.a) + lf(p1) / pn + log_N_p0 / p0 - lf(prev.p) / p0 - log_N_p1 / pn +
                         static_cast<double>(i + 2) * kLn2 + std::log(qn - pn) - std::log(pn - 2.0);
    return expo_C * prev.log_C + (qn - pn) / qn * inner;
}

double log_nu_inner_formula(std::uint64_t p, std::uint64_t q, double log_C, double log_N_p) {
    const double pd = dbl(p), qd = dbl(q);
    return qd / (qd - pd) * log_C + log_N_p / pd - lf(p) / pd + (lf(q) - lf(p)) / (qd - pd);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate(const CounterexampleConfig& c) {
    if (c.num_blocks < 2) fail(ErrorKind::InvalidArgument, "at least two blocks are required");
    if (!(c.a.slope > 0.0) || !(c.b.slope > 0.0))
        fail(ErrorKind::ScheduleInvalid, "schedules must be strictly increasing and unbounded");
    if (!(c.a.at(1) > 1.0)) fail(ErrorKind::ScheduleInvalid, "a_1 must exceed 1");
    if (!(c.b.at(1) >= 1.0)) fail(ErrorKind::ScheduleInvalid, "b_1 must be at least 1 so that A_i >= 1");
    if (c.p1 <= 2) fail(ErrorKind::ScheduleInvalid, "p_1 must exceed 2");
    if (c.q1 < 2 * c.p1 - 1) fail(ErrorKind::ScheduleInvalid, "q_1 must be at least 2 p_1 - 1");
    if (c.max_index < c.q1) fail(ErrorKind::InvalidArgument, "max_index below q_1");
}

}  // namespace

CounterexampleResult build_counterexample(const CounterexampleConfig& config) {
    validate(config);
    std::vector<BlockRecord> blocks;
    bool overflow = false;
    std::string reason;

    std::uint64_t p = config.p1, q = config.q1;
    double log_N_p = 0.0;  // nu_k = 1 for k <= p_1
    double log_C = std::max(0.0, rhs_basic(p, q) + std::log1p(1e-6));

    for (std::size_t i = 1; i <= config.num_blocks; ++i) {
        BlockRecord r;
        r.i = i;
        r.p = p;
        r.q = q;
        r.a = config.a.at(i);
        r.b = config.b.at(i);
        r.log_C = log_C;
        r.log_nu_inner = log_nu_inner_formula(p, q, log_C, log_N_p);
        r.log_nu_outer = std::log(r.a) + r.log_nu_inner;
        r.log_A = dbl(q) * (log_C + std::log(r.b));
        const double log_N_q = log_N_p + dbl(q - p) * r.log_nu_inner;

        // Smallest integer with p_next - q > a (A q - 1).
        const double log_Aq = r.log_A + log_of(q);
        const double log_X = lae(std::log(r.a) + lse_sub(log_Aq, 0.0), log_of(q));
        // Only representable in log domain: round up by 1 + 1e-9 so (II) keeps a resolvable margin.
        r.log_p_next = log_X + std::log1p(1e-9);
        if (log_X < std::log(kExactLimit)) {
            const double X = dbl(q) + r.a * (std::exp(log_Aq) - 1.0);
            r.p_next = static_cast<std::uint64_t>(std::floor(X)) + 1;
            r.log_p_next = log_of(r.p_next);
        }
        if (!std::isfinite(r.log_A) || std::fabs(r.log_A) > kLogLimit || std::fabs(log_N_q) > kLogLimit) {
            overflow = true;
            reason = "block " + std::to_string(i) + ": log-domain quantities exceed 1e300";
            break;
        }
        blocks.push_back(r);
        if (i == config.num_blocks) break;

        if (r.p_next == 0 || r.p_next > config.max_index) {
            overflow = true;
            reason = "block " + std::to_string(i + 1) + ": p_" + std::to_string(i + 1) + " = exp(" +
                     num(r.log_p_next) + ") exceeds the materializable index limit " +
                     std::to_string(config.max_index) + "; log N at that index is about exp(" +
                     num(r.log_p_next + std::log(std::max(1.0, r.log_nu_outer))) + ")";
            break;
        }
        const std::uint64_t pn = r.p_next, qn = 2 * pn - 1;
        const double log_N_pn = log_N_q + dbl(pn - q) * r.log_nu_outer;
        log_C = std::max(0.0, rhs_next_C(r, pn, qn, log_N_p, log_N_pn, i) + std::log1p(1e-6));
        p = pn;
        q = qn;
        log_N_p = log_N_pn;
    }
    WeightSequence seq = materialize_blocks(blocks);
    return CounterexampleResult{std::move(seq), std::move(blocks), overflow, std::move(reason)};
}

WeightSequence materialize_blocks(const std::vector<BlockRecord>& blocks) {
    if (blocks.empty()) fail(ErrorKind::InvalidArgument, "no blocks");
    const std::size_t H = static_cast<std::size_t>(blocks.back().q);
    std::vector<double> logq(H, 0.0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const BlockRecord& r = blocks[b];
        const std::size_t end = b + 1 < blocks.size() ? static_cast<std::size_t>(blocks[b + 1].p) : H;
        if (r.q > H || r.p >= r.q || (b + 1 < blocks.size() && blocks[b + 1].p <= r.q))
            fail(ErrorKind::VerificationFailed, "block " + std::to_string(r.i) + ": indices out of order");
        for (std::size_t k = r.p + 1; k <= r.q; ++k) logq[k - 1] = r.log_nu_inner;
        for (std::size_t k = r.q + 1; k <= end; ++k) logq[k - 1] = r.log_nu_outer;
    }
    return WeightSequence::from_quotients(std::move(logq), UnknownTail{}, "counterexample");
}

BlockSequenceView::BlockSequenceView(const WeightSequence& sequence, const std::vector<BlockRecord>& blocks)
    : W_(&sequence) {
    const std::size_t H = sequence.horizon();
    suffix_lse_.assign(H + 2, -kInf);
    for (std::size_t p = H; p >= 1; --p) suffix_lse_[p] = lae(suffix_lse_[p + 1], -sequence.log_quotient(p));
    if (tail_known(sequence.tail())) {
        model_tail_ = true;
    } else {
        if (blocks.empty()) fail(ErrorKind::TailRequired, "unknown tail and no block records to extend it");
        const BlockRecord& last = blocks.back();
        log_plateau_nu_ = last.log_nu_outer;
        p_end_ = last.p_next;
        log_p_end_ = last.log_p_next;
    }
}

Interval BlockSequenceView::log_tail(std::size_t k) const {
    const std::size_t H = W_->horizon();
    if (k < 1 || k > H + 1) fail(ErrorKind::BeyondHorizon, "log_tail needs 1 <= k <= H+1");
    const double finite = suffix_lse_[k];
    const double slack = static_cast<double>(H + 4) * 2.3e-16;
    if (model_tail_) {
        const Interval rem = TailTable(*W_).remainder_from(H + 1);
        const double lo = lae(finite, rem.lo > 0.0 ? std::log(rem.lo) : -kInf);
        const double hi = rem.bounded() ? lae(finite, std::log(rem.hi)) : kInf;
        return {lo - slack, hi + slack};
    }
    // Plateau nu = exp(log_plateau_nu_) on (H, p_end], then any completion growing at least by doubling.
    double log_count = -kInf;
    if (p_end_ != 0) {
        if (p_end_ > H) log_count = std::log(dbl(p_end_ - H));
    } else {
        log_count = lse_sub(log_p_end_, std::log(static_cast<double>(H)));
    }
    const double lo = lae(finite, log_count - log_plateau_nu_);
    const double hi = lae(lo, -log_plateau_nu_);
    return {lo - slack, hi + slack};
}

Interval BlockSequenceView::log_gamma1(std::size_t k) const {
    const Interval t = log_tail(k);
    const double shift = W_->log_quotient(k) - std::log(static_cast<double>(k));
    return {t.lo + shift, t.hi + shift};
}

double BlockSequenceView::log_optimal(std::size_t p) const {
    const Interval t = log_tail(p);
    const double log_mid = t.lo + std::log(0.5 * (1.0 + std::exp(t.hi - t.lo)));
    const double x = std::log(static_cast<double>(p)) - log_mid;
    double best = kInf;
    for (std::size_t j = 0; j < p; ++j)
        best = std::min(best, static_cast<double>(p - j) * x + W_->log_term(j));
    return best;
}

std::vector<double> BlockSequenceView::log_optimal_terms() const {
    const std::size_t H = W_->horizon();
    std::vector<double> x(H);
    for (std::size_t p = 1; p <= H; ++p) {
        const Interval t = log_tail(p);
        x[p - 1] = std::log(static_cast<double>(p)) - (t.lo + std::log(0.5 * (1.0 + std::exp(t.hi - t.lo))));
    }
    const auto mins = kernels::exhaustive_min_omp(W_->log_terms(), x);
    std::vector<double> out(H + 1, 0.0);
    for (std::size_t p = 1; p <= H; ++p) out[p] = mins[p - 1].value;
    return out;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BlockCheck& c) { return c.passed; });
}

const BlockCheck* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

VerificationReport verify_blocks(const WeightSequence& W, const std::vector<BlockRecord>& blocks) {
    VerificationReport rep;
    if (blocks.empty()) fail(ErrorKind::InvalidArgument, "no blocks to verify");
    const std::size_t H = W.horizon();
    const BlockSequenceView view(W, blocks);
    auto add = [&](std::size_t i, std::string name, bool ok, double lhs, double rhs, std::string detail = {}) {
        rep.checks.push_back({i, std::move(name), ok, lhs, rhs, std::move(detail)});
    };
    auto rel_eq = [](double a, double b, double tol) { return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b)); };

    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const BlockRecord& r = blocks[b];
        const std::size_t i = r.i;
        const double pd = dbl(r.p), qd = dbl(r.q);
        const bool in_range = r.q <= H;

        add(i, "q-at-least-2p-1", r.q >= 2 * r.p - 1 && (b > 0 || r.p > 2), 2 * pd - 1, qd, "q >= 2p - 1, p_1 > 2");
        const double air_lhs = log_next_minus(r, 2.0);
        const double air_rhs = std::log(r.a) + std::log(qd - pd);
        add(i, "p-next-bound", air_lhs < air_rhs, air_lhs, air_rhs, "log(p_next - 2) < log(a (q - p))");
        add(i, "outer-quotient", rel_eq(r.log_nu_outer, std::log(r.a) + r.log_nu_inner, 1e-12), r.log_nu_outer,
            std::log(r.a) + r.log_nu_inner, "outer = a * inner");
        add(i, "A-definition", rel_eq(r.log_A, qd * (r.log_C + std::log(r.b)), 1e-12), r.log_A,
            qd * (r.log_C + std::log(r.b)), "A = (C b)^q");
        add(i, "C>=1", r.log_C >= 0.0, 0.0, r.log_C, "log C >= 0");
        if (b + 1 < blocks.size()) {
            const bool linked = blocks[b + 1].p == r.p_next && r.p_next != 0;
            add(i, "order", linked && r.p < r.q && r.q < r.p_next, qd, dbl(r.p_next), "p < q < p_next = next p");
        }
        if (!in_range) {
            add(i, "horizon", false, qd, static_cast<double>(H), "block beyond the sequence horizon");
            continue;
        }

        // Stored quotients against the record.
        bool quot_ok = true;
        std::size_t bad = 0;
        if (b == 0)
            for (std::size_t k = 1; k <= r.p && quot_ok; ++k)
                if (W.log_quotient(k) != 0.0) quot_ok = false, bad = k;
        const std::size_t end = b + 1 < blocks.size() ? std::min<std::size_t>(blocks[b + 1].p, H) : H;
        for (std::size_t k = r.p + 1; k <= end && quot_ok; ++k) {
            const double want = k <= r.q ? r.log_nu_inner : r.log_nu_outer;
            if (!rel_eq(W.log_quotient(k), want, 1e-12)) quot_ok = false, bad = k;
        }
        add(i, "quotients", quot_ok, static_cast<double>(bad), 0.0,
            quot_ok ? "sequence matches the record" : "first mismatch at index " + std::to_string(bad));

        const double log_N_p = W.log_term(r.p);
        if (b == 0) {
            const double rhs = rhs_basic(r.p, r.q);
            add(i, "C1-lower-bound", r.log_C >= rhs - 1e-12, rhs, r.log_C, "log C_1 >= rhs");
        } else {
            const BlockRecord& prev = blocks[b - 1];
            const double rhs = rhs_next_C(prev, r.p, r.q, W.log_term(prev.p), log_N_p, prev.i);
            add(i, "C-lower-bound", r.log_C >= rhs - 1e-12 * std::max(1.0, std::fabs(rhs)), rhs, r.log_C,
                "log C_i >= rhs");
        }

        const double lhs3 = little_m(W, r.q);
        const double rhs3 = qd / pd * little_m(W, r.p) + qd * r.log_C;
        add(i, "ansatz-identity", rel_eq(lhs3, rhs3, 1e-9), lhs3, rhs3, "log n_q = (q/p) log n_p + q log C");

        const double prev_nu = b == 0 ? 0.0 : W.log_quotient(r.p);
        add(i, "LC-junction", W.log_quotient(r.p + 1) >= prev_nu - 1e-12 * std::max(1.0, std::fabs(prev_nu)),
            prev_nu, W.log_quotient(r.p + 1), "nu_p <= nu_{p+1}");
        add(i, "LC-block", r.log_nu_outer >= r.log_nu_inner, r.log_nu_inner, r.log_nu_outer, "inner <= outer");

        const Interval g1 = view.log_gamma1(r.p);
        add(i, "gamma1-small-at-p", g1.hi < 0.0, g1.hi, 0.0, "log gamma1 profile at p_i < 0");
        const Interval g2 = view.log_gamma1(r.q);
        add(i, "gamma1-large-at-q", r.log_A < g2.lo, r.log_A, g2.lo, "log A_i < log gamma1 profile at q_i");

        if (i >= 2) {
            const double target = std::log(pd - 2.0) - static_cast<double>(i + 1) * kLn2 - W.log_quotient(r.p);
            const double alpha = std::log(qd - pd) - r.log_nu_inner;
            add(i, "alpha-target", alpha < target, alpha, target, "log alpha_i < log target");
            const double beta = log_next_minus(r, qd) - r.log_nu_outer;
            add(i, "beta-target", beta < target, beta, target, "log beta_i < log target");
            const double l1 = log_next_minus(r, 2.0) - r.log_nu_outer;
            const double r1 = std::log(pd - 2.0) - W.log_quotient(r.p);
            add(i, "plateau-ratio", l1 < r1, l1, r1, "log((p_next - 2)/nu_p_next) < log((p - 2)/nu_p)");
        }

        // (log L_p - p log p)/p should drop by at least log(A^{1/q}/C) = log b from p_i to q_i.
        const double fp = view.log_optimal(r.p) / pd - std::log(pd);
        const double fq = view.log_optimal(r.q) / qd - std::log(qd);
        add(i, "almost-increasing-violated", fp - fq >= std::log(r.b) - 1e-9, std::log(r.b), fp - fq,
            "f(p_i) - f(q_i) >= log(A_i^{1/q_i} / C_i)");
    }
    return rep;
}

ConditionReport check_mg_blocks(const WeightSequence& sequence, const std::vector<BlockRecord>& blocks) {
    ConditionReport rep = check_mg(sequence);
    std::vector<std::size_t> witnesses;
    bool certified = blocks.size() >= 2;
    for (const BlockRecord& r : blocks) {
        // 2 q_i <= p_{i+1}, so nu_{2 q_i} sits on the outer plateau.
        const bool plateau = r.p_next == 0 || 2 * r.q <= r.p_next;
        certified = certified && plateau;
        if (r.q <= rep.profile.size()) witnesses.push_back(static_cast<std::size_t>(r.q) - 1);
    }
    for (std::size_t b = 1; b < blocks.size(); ++b) certified = certified && blocks[b].a > blocks[b - 1].a;
    if (certified)
        rep.verdict = TriState::fails("nu_{2q_i} / nu_{q_i} = a_i grows without bound along the schedule", witnesses);
    return rep;
}

void throw_if_failed(const VerificationReport& report) {
    if (const BlockCheck* c = report.first_failure())
        fail(ErrorKind::VerificationFailed, "block " + std::to_string(c->block) + ": " + c->name + " (lhs " +
                                                num(c->lhs) + ", rhs " + num(c->rhs) + ")");
}

}  // namespace wseq
