#include "weightseq/tails.hpp"

#include <cmath>
#include <string>

#include "weightseq/error.hpp"

namespace wseq {

namespace {
constexpr double kEps = 2.3e-16;
}

TailTable::TailTable(const WeightSequence& W) : W_(&W), H_(W.horizon()), finite_(W.horizon() + 2, 0.0) {
    const auto q = W.log_quotients();
    for (std::size_t p = H_; p >= 1; --p) finite_[p] = finite_[p + 1] + std::exp(-q[p - 1]);
    rest_ = remainder_from(H_ + 1);
}

Interval TailTable::remainder_from(std::size_t m) const {
    const double md = static_cast<double>(m);
    if (const auto* pt = std::get_if<PowerTail>(&W_->tail())) {
        if (pt->s <= 1.0) return {0.0, kInf};
        // 1/(c k^s) is decreasing: integral comparison on [m, inf).
        const double integral = std::exp((1.0 - pt->s) * std::log(md)) / (pt->c * (pt->s - 1.0));
        const double first = std::exp(-pt->s * std::log(md)) / pt->c;
        return Interval{integral, integral + first}.widened(8 * kEps);
    }
    if (const auto* rt = std::get_if<RatioTail>(&W_->tail())) {
        const double lq = std::log(rt->q);
        const double log_first = W_->log_quotient(H_) + (md - static_cast<double>(H_)) * lq;
        const double hi = std::exp(-log_first) / (1.0 - 1.0 / rt->q);
        return Interval{0.0, hi}.widened(8 * kEps);
    }
    return {0.0, kInf};
}

Interval TailTable::at(std::size_t p) const {
    if (p == 0) fail(ErrorKind::InvalidArgument, "tail sums start at p = 1");
    if (p > H_ + 1) return remainder_from(p);
    const double f = finite_[p];
    const double slack = static_cast<double>(H_ - p + 3) * kEps * f;
    return {f - slack + rest_.lo, rest_.bounded() ? f + slack + rest_.hi : kInf};
}

Interval tail_sum(const WeightSequence& W, std::size_t p) { return TailTable(W).at(p); }

TriState is_nonquasianalytic(const WeightSequence& W) {
    const Interval t1 = tail_sum(W, 1);
    if (const auto* pt = std::get_if<PowerTail>(&W.tail())) {
        if (pt->s <= 1.0) return TriState::fails("power tail with exponent <= 1: sum of 1/nu_k diverges");
        return TriState::holds(t1.hi, "power tail with exponent > 1: sum enclosed");
    }
    if (std::holds_alternative<RatioTail>(W.tail()))
        return TriState::holds(t1.hi, "ratio tail: geometric remainder");
    return TriState::inconclusive(t1.lo, "tail unknown: only the partial sum is known");
}

Interval gamma1_profile(const WeightSequence& W, const TailTable& T, std::size_t p) {
    if (p == 0 || p > W.horizon())
        fail(ErrorKind::BeyondHorizon, "gamma1 profile needs 1 <= p <= H, got " + std::to_string(p));
    const double f = std::exp(W.log_quotient(p)) / static_cast<double>(p);
    const Interval t = T.at(p);
    return {t.lo * f * (1 - 2 * kEps), t.bounded() ? t.hi * f * (1 + 2 * kEps) : kInf};
}

Interval gamma1_profile(const WeightSequence& W, std::size_t p) { return gamma1_profile(W, TailTable(W), p); }

Interval nongamma2_profile(const WeightSequence& W, const TailTable& T, std::size_t p) {
    if (p == 0) fail(ErrorKind::InvalidArgument, "p must be >= 1");
    if (2 * p > W.horizon() + 1 && !tail_known(W.tail()))
        fail(ErrorKind::BeyondHorizon, "index 2p beyond horizon with unknown tail");
    const double f = std::exp(W.log_quotient(p)) / static_cast<double>(p);
    const Interval t = T.at(2 * p);
    return {t.lo * f * (1 - 2 * kEps), t.bounded() ? t.hi * f * (1 + 2 * kEps) : kInf};
}

Interval nongamma2_profile(const WeightSequence& W, std::size_t p) {
    return nongamma2_profile(W, TailTable(W), p);
}

}  // namespace wseq
