#include "weightseq/sequence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "weightseq/error.hpp"
#include "weightseq/interval.hpp"

namespace wseq {

namespace {

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}

void require_finite(std::span<const double> v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            fail(ErrorKind::NonFinite, std::string(what) + " entry " + std::to_string(i) + " is not finite");
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

double log_factorial(std::size_t p) {
    static const std::array<double, 21> table = [] {
        std::array<double, 21> t{};
        double f = 1.0;
        t[0] = 0.0;
        for (int k = 1; k <= 20; ++k) {
            f *= k;  // exact: 20! fits in the mantissa after removing powers of two
            t[k] = std::log(f);
        }
        return t;
    }();
    if (p <= 20) return table[p];
    return std::lgamma(static_cast<double>(p) + 1.0);
}

double log_factorial(double p) {
    if (p <= 20.0 && p == std::floor(p)) return log_factorial(static_cast<std::size_t>(p));
    return std::lgamma(p + 1.0);
}

WeightSequence WeightSequence::from_quotients(std::vector<double> log_quotients, TailModel tail,
                                              std::string label, bool allow_unnormalized) {
    if (log_quotients.empty()) fail(ErrorKind::InvalidArgument, "empty quotient array");
    require_finite(log_quotients, "log_quotients");
    if (!allow_unnormalized && log_quotients.front() < -kNormalizationTol)
        fail(ErrorKind::NotNormalized, "log nu_1 = " + fmt_double(log_quotients.front()) + " < 0");
    WeightSequence w;
    w.log_terms_.resize(log_quotients.size() + 1);
    w.log_terms_[0] = 0.0;
    for (std::size_t p = 1; p <= log_quotients.size(); ++p)
        w.log_terms_[p] = w.log_terms_[p - 1] + log_quotients[p - 1];
    w.log_q_ = std::move(log_quotients);
    w.tail_ = tail;
    w.label_ = std::move(label);
    w.check_tail();
    return w;
}

WeightSequence WeightSequence::from_log_terms(std::vector<double> log_terms, TailModel tail, std::string label) {
    if (log_terms.size() < 2) fail(ErrorKind::InvalidArgument, "need terms for p = 0..H with H >= 1");
    require_finite(log_terms, "log_terms");
    if (log_terms[0] != 0.0) fail(ErrorKind::InvalidArgument, "log N_0 must be 0");
    WeightSequence w;
    w.log_q_.resize(log_terms.size() - 1);
    for (std::size_t p = 1; p < log_terms.size(); ++p) w.log_q_[p - 1] = log_terms[p] - log_terms[p - 1];
    w.log_terms_ = std::move(log_terms);
    w.tail_ = tail;
    w.label_ = std::move(label);
    w.from_terms_ = true;
    w.check_tail();
    return w;
}

void WeightSequence::check_tail() const {
    const std::size_t H = horizon();
    if (const auto* pt = std::get_if<PowerTail>(&tail_)) {
        if (!(pt->c > 0.0) || !std::isfinite(pt->c) || !(pt->s >= 0.0) || !std::isfinite(pt->s))
            fail(ErrorKind::InvalidArgument, "PowerTail needs c > 0 and s >= 0");
        if (pt->k0 < 1 || pt->k0 > H + 1) fail(ErrorKind::InvalidArgument, "PowerTail k0 must lie in [1, H+1]");
        const double lc = std::log(pt->c);
        for (std::size_t k = pt->k0; k <= H; ++k) {
            const double model = lc + pt->s * std::log(static_cast<double>(k));
            if (!close_rel(log_q_[k - 1], model, kTailTol))
                fail(ErrorKind::TailMismatch, "PowerTail disagrees with log nu_" + std::to_string(k) + ": stored " +
                                                  fmt_double(log_q_[k - 1]) + ", model " + fmt_double(model));
        }
    } else if (const auto* rt = std::get_if<RatioTail>(&tail_)) {
        if (!(rt->q > 1.0) || !std::isfinite(rt->q)) fail(ErrorKind::InvalidArgument, "RatioTail needs q > 1");
        if (rt->k0 < 1 || rt->k0 > H) fail(ErrorKind::InvalidArgument, "RatioTail k0 must lie in [1, H]");
        const double lq = std::log(rt->q);
        for (std::size_t k = rt->k0; k < H; ++k) {
            const double step = log_q_[k] - log_q_[k - 1];
            if (step < lq - kTailTol * std::max(1.0, std::fabs(log_q_[k])))
                fail(ErrorKind::TailMismatch, "RatioTail violated between nu_" + std::to_string(k) + " and nu_" +
                                                  std::to_string(k + 1));
        }
    }
}

double WeightSequence::log_quotient(std::size_t p) const {
    if (p == 0) return 0.0;
    const std::size_t H = horizon();
    if (p <= H) return log_q_[p - 1];
    if (const auto* pt = std::get_if<PowerTail>(&tail_))
        return std::log(pt->c) + pt->s * std::log(static_cast<double>(p));
    if (const auto* rt = std::get_if<RatioTail>(&tail_))
        return log_q_[H - 1] + static_cast<double>(p - H) * std::log(rt->q);
    fail(ErrorKind::BeyondHorizon, "index " + std::to_string(p) + " beyond horizon " + std::to_string(H) +
                                       " and tail is unknown");
}

double WeightSequence::log_term(std::size_t p) const {
    const std::size_t H = horizon();
    if (p <= H) return log_terms_[p];
    const double n = static_cast<double>(p - H);
    if (const auto* pt = std::get_if<PowerTail>(&tail_))
        return log_terms_[H] + n * std::log(pt->c) + pt->s * (log_factorial(p) - log_factorial(H));
    if (const auto* rt = std::get_if<RatioTail>(&tail_))
        return log_terms_[H] + n * log_q_[H - 1] + std::log(rt->q) * n * (n + 1.0) / 2.0;
    fail(ErrorKind::BeyondHorizon, "index " + std::to_string(p) + " beyond horizon " + std::to_string(H) +
                                       " and tail is unknown");
}

double WeightSequence::log_root(std::size_t p) const {
    if (p == 0) fail(ErrorKind::InvalidArgument, "log_root needs p >= 1");
    return log_term(p) / static_cast<double>(p);
}

WeightSequence gevrey(double s, std::size_t H) {
    if (!(s >= 1.0)) fail(ErrorKind::InvalidArgument, "gevrey needs s >= 1");
    if (H < kMinHorizon) fail(ErrorKind::InvalidArgument, "horizon must be at least 8");
    std::vector<double> q(H);
    for (std::size_t p = 1; p <= H; ++p) q[p - 1] = s * std::log(static_cast<double>(p));
    char label[64];
    std::snprintf(label, sizeof label, "gevrey:%.17g:%zu", s, H);
    return WeightSequence::from_quotients(std::move(q), PowerTail{1.0, s, 1}, label);
}

WeightSequence power_tail_family(double c, double s, std::size_t H) {
    if (!(c > 0.0) || !(s >= 0.0)) fail(ErrorKind::InvalidArgument, "power-tail needs c > 0, s >= 0");
    if (H < kMinHorizon) fail(ErrorKind::InvalidArgument, "horizon must be at least 8");
    const double lc = std::log(c);
    std::vector<double> q(H);
    for (std::size_t p = 1; p <= H; ++p) q[p - 1] = lc + s * std::log(static_cast<double>(p));
    char label[96];
    std::snprintf(label, sizeof label, "power-tail:%.17g:%.17g:%zu", c, s, H);
    return WeightSequence::from_quotients(std::move(q), PowerTail{c, s, 1}, label);
}

WeightSequence constant_one(std::size_t H) {
    if (H < kMinHorizon) fail(ErrorKind::InvalidArgument, "horizon must be at least 8");
    return WeightSequence::from_quotients(std::vector<double>(H, 0.0), PowerTail{1.0, 0.0, 1},
                                          "constant:" + std::to_string(H));
}

WeightSequence power(const WeightSequence& W, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidArgument, "power needs r > 0");
    TailModel tail = W.tail();
    if (auto* pt = std::get_if<PowerTail>(&tail)) {
        pt->c = std::pow(pt->c, r);
        pt->s *= r;
    } else if (auto* rt = std::get_if<RatioTail>(&tail)) {
        rt->q = std::pow(rt->q, r);
    }
    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "^%.17g", r);
    if (W.built_from_terms()) {
        std::vector<double> t(W.log_terms().begin(), W.log_terms().end());
        for (double& v : t) v *= r;
        return WeightSequence::from_log_terms(std::move(t), tail, W.label() + suffix);
    }
    std::vector<double> q(W.log_quotients().begin(), W.log_quotients().end());
    for (double& v : q) v *= r;
    return WeightSequence::from_quotients(std::move(q), tail, W.label() + suffix, !W.normalized());
}

WeightSequence geometric_rescale(const WeightSequence& W, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::InvalidArgument, "geometric_rescale needs c > 0");
    const double lc = std::log(c);
    if (W.log_quotient(1) - lc < -kNormalizationTol)
        fail(ErrorKind::NotNormalized, "rescaled log nu_1 = " + fmt_double(W.log_quotient(1) - lc) + " < 0");
    TailModel tail = W.tail();
    if (auto* pt = std::get_if<PowerTail>(&tail)) pt->c /= c;
    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "/%.17g^p", c);
    if (W.built_from_terms()) {
        std::vector<double> t(W.log_terms().begin(), W.log_terms().end());
        for (std::size_t p = 0; p < t.size(); ++p) t[p] -= static_cast<double>(p) * lc;
        return WeightSequence::from_log_terms(std::move(t), tail, W.label() + suffix);
    }
    std::vector<double> q(W.log_quotients().begin(), W.log_quotients().end());
    for (double& v : q) v -= lc;
    return WeightSequence::from_quotients(std::move(q), tail, W.label() + suffix);
}

double little_m(const WeightSequence& W, std::size_t p) { return W.log_term(p) - log_factorial(p); }

LcReport check_LC(const WeightSequence& W) {
    LcReport r;
    const auto q = W.log_quotients();
    const std::size_t H = q.size();
    r.normalized = W.normalized();
    r.log_convex_defect = -kInf;
    for (std::size_t p = 1; p < H; ++p) {
        const double d = q[p - 1] - q[p];
        if (d > r.log_convex_defect) {
            r.log_convex_defect = d;
            r.defect_at = p;
        }
    }
    if (H < 2) r.log_convex_defect = 0.0;
    r.roots_increasing_to = W.log_root(H);
    if (const auto* pt = std::get_if<PowerTail>(&W.tail()))
        r.quotients_unbounded = pt->s > 0.0;
    else if (std::holds_alternative<RatioTail>(W.tail()))
        r.quotients_unbounded = true;

    const bool lc = r.log_convex_defect <= kLogConvexTol;
    if (!r.normalized)
        r.in_lc = TriState::fails("not normalized");
    else if (!lc)
        r.in_lc = TriState::fails("quotients decrease at p = " + std::to_string(r.defect_at), {r.defect_at});
    else if (r.quotients_unbounded)
        r.in_lc = TriState::holds(r.roots_increasing_to, "tail model certifies nu_p -> infinity");
    else if (const auto* pt = std::get_if<PowerTail>(&W.tail()); pt && pt->s == 0.0)
        r.in_lc = TriState::fails("tail model has constant quotients, roots stay bounded");
    else
        r.in_lc = TriState::inconclusive(r.roots_increasing_to, "tail unknown, root growth not certified");
    return r;
}

}  // namespace wseq
