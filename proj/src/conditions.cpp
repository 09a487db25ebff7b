#include "weightseq/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "weightseq/constructions.hpp"
#include "weightseq/error.hpp"
#include "weightseq/kernels.hpp"
#include "weightseq/tails.hpp"

namespace wseq {

namespace {

constexpr double kRound = 8e-16;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Interval times(Interval t, double f) {
    return {t.lo * f * (1 - kRound), t.bounded() ? t.hi * f * (1 + kRound) : kInf};
}

// Largest p beyond which hi is infinite, for Fails witnesses.
std::vector<std::size_t> unbounded_positions(const ConditionReport& r) {
    std::vector<std::size_t> w;
    for (std::size_t i = 0; i < r.profile.size(); ++i)
        if (!r.profile[i].value.bounded()) w.push_back(i);
    return w;
}

bool tail_diverges(const WeightSequence& N) {
    const auto* pt = std::get_if<PowerTail>(&N.tail());
    return pt && pt->s <= 1.0;
}

// Bound on (mu_p/p) T_p(N) for p > H from the tail models, if the models certify one.
// Sets *fails when the models certify unboundedness.
std::optional<double> mixed_tail_bound(const WeightSequence& M, const WeightSequence& N, std::size_t H,
                                       bool* fails, std::string* why) {
    *fails = false;
    const double H1 = static_cast<double>(H + 1);
    if (tail_diverges(N)) {
        *fails = true;
        *why = "sum of 1/nu_k diverges under the power tail of N";
        return std::nullopt;
    }
    const auto* mp = std::get_if<PowerTail>(&M.tail());
    const auto* mr = std::get_if<RatioTail>(&M.tail());
    const auto* np = std::get_if<PowerTail>(&N.tail());
    const auto* nr = std::get_if<RatioTail>(&N.tail());
    if (mp && np) {
        if (mp->s > np->s) {
            *fails = true;
            *why = "mu_p / nu_p grows like p^(" + num(mp->s - np->s) + ") under the power tails";
            return std::nullopt;
        }
        // (c_M/c_N) p^(s_M - s_N) (1/p + 1/(s_N - 1)) is nonincreasing in p.
        *why = "power tails with s_M <= s_N bound the profile beyond the horizon";
        return (mp->c / np->c) * std::pow(H1, mp->s - np->s) * (1.0 / H1 + 1.0 / (np->s - 1.0));
    }
    if (mr && np) {
        *fails = true;
        *why = "mu grows geometrically while nu grows polynomially";
        return std::nullopt;
    }
    if (mp && nr) {
        // T_p <= q / ((q-1) nu_p) and nu_p >= nu_H q^(p-H): bound c p^(s-1) q/((q-1) nu_H q^(p-H)).
        const double lq = std::log(nr->q);
        const double lnuH = N.log_quotient(H);
        const double peak = (mp->s - 1.0) / lq;
        double best = 0.0;
        const std::size_t last = std::max<std::size_t>(H + 1, static_cast<std::size_t>(std::max(0.0, peak)) + 2);
        for (std::size_t p = H + 1; p <= last; ++p) {
            const double pd = static_cast<double>(p);
            const double v = std::exp(std::log(mp->c) + (mp->s - 1.0) * std::log(pd) - lnuH -
                                      (pd - static_cast<double>(H)) * lq) *
                             nr->q / (nr->q - 1.0);
            best = std::max(best, v);
        }
        *why = "power tail against ratio tail: geometric decay beyond the horizon";
        return best * (1 + 1e-12);
    }
    if (mr && nr && &M == &N) {
        *why = "ratio tail: nu_p T_p <= q/(q-1)";
        return nr->q / ((nr->q - 1.0) * H1) * (1 + 1e-12);
    }
    *why = "tail models do not certify the profile beyond the horizon";
    return std::nullopt;
}

TriState verdict_from(const ConditionReport& r, std::optional<double> tail_bound, bool fails, const std::string& why) {
    if (fails) {
        auto w = unbounded_positions(r);
        if (w.empty() && !r.profile.empty()) w.push_back(r.profile.size() - 1);
        return TriState::fails(why, std::move(w));
    }
    // No upper enclosure: report the sup of the truncated (lower) profile as the observed value.
    if (!r.running_sup.bounded())
        return TriState::inconclusive(r.running_sup.lo, "no finite upper enclosure, bound is the observed lower sup: " + why);
    if (tail_bound) return TriState::holds(std::max(r.running_sup.hi, *tail_bound), why);
    return TriState::inconclusive(r.running_sup.hi, why);
}

ConditionReport sv_profile(const WeightSequence& M, const WeightSequence& N, const WeightSequence& Ntail,
                           double log_s, double r, std::string name) {
    const std::size_t H = std::min(M.horizon(), N.horizon());
    const TailTable T(Ntail);
    const auto lambda = kernels::lambda_profile_omp(M.log_terms(), N.log_terms(), log_s, H);
    ConditionReport rep;
    rep.name = std::move(name);
    rep.profile.reserve(H);
    for (std::size_t p = 1; p <= H; ++p) {
        const double f = std::exp(lambda[p - 1] / r - std::log(static_cast<double>(p)));
        rep.profile.push_back({static_cast<double>(p), times(T.at(p), f)});
    }
    finalize(rep);
    return rep;
}

ConditionReport mixed_profile(const WeightSequence& M, const WeightSequence& Ntail, double r, std::string name) {
    const std::size_t H = std::min(M.horizon(), Ntail.horizon());
    const TailTable T(Ntail);
    ConditionReport rep;
    rep.name = std::move(name);
    rep.profile.reserve(H);
    for (std::size_t p = 1; p <= H; ++p) {
        const double f = std::exp(M.log_quotient(p) / r) / static_cast<double>(p);
        rep.profile.push_back({static_cast<double>(p), times(T.at(p), f)});
    }
    finalize(rep);
    return rep;
}

// M_j <= N_j for every j, observed on the horizon and certified beyond it by power tails.
bool termwise_dominated(const WeightSequence& M, const WeightSequence& N) {
    const std::size_t H = std::min(M.horizon(), N.horizon());
    for (std::size_t j = 1; j <= H; ++j)
        if (M.log_term(j) > N.log_term(j) + 1e-12 * std::max(1.0, std::fabs(N.log_term(j)))) return false;
    const auto* mp = std::get_if<PowerTail>(&M.tail());
    const auto* np = std::get_if<PowerTail>(&N.tail());
    if (!mp || !np || mp->s > np->s) return false;
    if (M.horizon() != N.horizon()) return false;
    const double H1 = static_cast<double>(H + 1);
    return std::log(mp->c) + mp->s * std::log(H1) <= std::log(np->c) + np->s * std::log(H1);
}

ConditionReport sv_with_verdict(const WeightSequence& M, const WeightSequence& N, double log_s, double r,
                                std::string name) {
    const WeightSequence Mr = r == 1.0 ? M : power(M, 1.0 / r);
    const WeightSequence Nr = r == 1.0 ? N : power(N, 1.0 / r);
    ConditionReport rep = sv_profile(M, N, Nr, log_s, r, std::move(name));
    if (tail_diverges(Nr)) {
        rep.verdict = verdict_from(rep, std::nullopt, true, "tail sum of N diverges");
    } else if (termwise_dominated(Mr, Nr)) {
        // lambda_{p,s} <= log mu_p - log s when M <= N termwise; reduce to the mixed gamma_1 bound.
        bool fails = false;
        std::string why;
        auto b = mixed_tail_bound(Mr, Nr, std::min(M.horizon(), N.horizon()), &fails, &why);
        if (b) *b *= std::exp(-log_s / r);
        rep.verdict = verdict_from(rep, b, fails, "M <= N termwise; " + why);
    } else {
        rep.verdict = verdict_from(rep, std::nullopt, false, "no tail certificate for lambda beyond the horizon");
    }
    rep.witnesses = rep.verdict.verdict == Verdict::Fails ? rep.verdict.witnesses : rep.witnesses;
    return rep;
}

}  // namespace

void finalize(ConditionReport& r) {
    r.running_sup = {-kInf, -kInf};
    r.witnesses.clear();
    for (std::size_t i = 0; i < r.profile.size(); ++i) {
        const Interval v = r.profile[i].value;
        if (v.hi > r.running_sup.hi || r.witnesses.empty()) r.witnesses.push_back(i);
        r.running_sup.lo = std::max(r.running_sup.lo, v.lo);
        r.running_sup.hi = std::max(r.running_sup.hi, v.hi);
    }
}

ConditionReport check_nq(const WeightSequence& W) {
    const TailTable T(W);
    ConditionReport rep;
    rep.name = "nq";
    for (std::size_t p = 1; p <= W.horizon(); ++p) rep.profile.push_back({static_cast<double>(p), T.at(p)});
    finalize(rep);
    rep.verdict = is_nonquasianalytic(W);
    if (rep.verdict.verdict == Verdict::Fails) rep.verdict.witnesses = {0};
    return rep;
}

ConditionReport check_gamma1(const WeightSequence& N) {
    ConditionReport rep = mixed_profile(N, N, 1.0, "gamma1");
    bool fails = false;
    std::string why;
    const auto b = mixed_tail_bound(N, N, N.horizon(), &fails, &why);
    rep.verdict = verdict_from(rep, b, fails, why);
    return rep;
}

ConditionReport check_mg(const WeightSequence& M) {
    ConditionReport rep;
    rep.name = "mg";
    const std::size_t H = M.horizon();
    const bool lc = is_log_convex(M);
    if (lc) {
        for (std::size_t p = 1; 2 * p <= H; ++p)
            rep.profile.push_back({static_cast<double>(p), Interval::point(M.log_quotient(2 * p) - M.log_quotient(p))});
    } else {
        // Sample the defining inequality: max_{j+k=p} (log M_p - log M_j - log M_k) / p.
        for (std::size_t p = 2; p <= H; ++p) {
            double best = -kInf;
            for (std::size_t j = 1; 2 * j <= p; ++j)
                best = std::max(best, M.log_term(p) - M.log_term(j) - M.log_term(p - j));
            rep.profile.push_back({static_cast<double>(p), Interval::point(best / static_cast<double>(p))});
        }
    }
    finalize(rep);
    double gap = -kInf;
    for (std::size_t j = 1; j <= H; ++j) gap = std::max(gap, M.log_quotient(j) - M.log_root(j));
    rep.notes.emplace_back("roots_vs_quotients_gap", gap);

    const double observed = rep.running_sup.hi;
    if (!lc) {
        rep.verdict = TriState::inconclusive(observed, "not log-convex: defining inequality sampled only");
    } else if (const auto* pt = std::get_if<PowerTail>(&M.tail())) {
        rep.verdict = TriState::holds(std::max(observed, pt->s * std::log(2.0)),
                                      "power tail: log mu_2p - log mu_p = s log 2 beyond the horizon");
    } else if (std::holds_alternative<RatioTail>(M.tail())) {
        rep.verdict = TriState::fails("ratio tail: mu_2p / mu_p >= q^p is unbounded",
                                      {rep.witnesses.empty() ? 0 : rep.witnesses.back()});
    } else {
        rep.verdict = TriState::inconclusive(observed, "tail unknown");
    }
    return rep;
}

ConditionReport check_lc(const WeightSequence& W) {
    const LcReport lc = check_LC(W);
    ConditionReport rep;
    rep.name = "lc";
    const auto q = W.log_quotients();
    for (std::size_t p = 1; p < q.size(); ++p)
        rep.profile.push_back({static_cast<double>(p), Interval::point(q[p - 1] - q[p])});
    finalize(rep);
    rep.verdict = lc.in_lc;
    if (rep.verdict.verdict == Verdict::Fails && lc.defect_at > 0) rep.verdict.witnesses = {lc.defect_at - 1};
    rep.notes.emplace_back("normalized", lc.normalized ? 1.0 : 0.0);
    rep.notes.emplace_back("log_convex_defect", lc.log_convex_defect);
    rep.notes.emplace_back("roots_increasing_to", lc.roots_increasing_to);
    return rep;
}

double lambda_ps(const WeightSequence& M, const WeightSequence& N, std::size_t p, int s) {
    if (s < 1) fail(ErrorKind::InvalidArgument, "s must be a positive integer");
    if (p < 1 || p > std::min(M.horizon(), N.horizon()))
        fail(ErrorKind::BeyondHorizon, "lambda needs 1 <= p <= H");
    const double top = M.log_term(p) - static_cast<double>(p) * std::log(static_cast<double>(s));
    double best = -kInf;
    for (std::size_t j = 0; j < p; ++j)
        best = std::max(best, (top - N.log_term(j)) / static_cast<double>(p - j));
    return best;
}

ConditionReport check_SV(const WeightSequence& M, const WeightSequence& N, int s) {
    if (s < 1) fail(ErrorKind::InvalidArgument, "s must be a positive integer");
    return sv_with_verdict(M, N, std::log(static_cast<double>(s)), 1.0, "sv");
}

ConditionReport check_SV_real(const WeightSequence& M, const WeightSequence& N, double s) {
    if (!(s > 0.0)) fail(ErrorKind::InvalidArgument, "s must be positive");
    return sv_with_verdict(M, N, std::log(s), 1.0, "sv");
}

ConditionReport check_mixed_gamma1(const WeightSequence& M, const WeightSequence& N) {
    ConditionReport rep = mixed_profile(M, N, 1.0, "mixed-gamma1");
    bool fails = false;
    std::string why;
    const auto b = mixed_tail_bound(M, N, std::min(M.horizon(), N.horizon()), &fails, &why);
    rep.verdict = verdict_from(rep, b, fails, why);
    return rep;
}

ConditionReport check_SV_ramified(const WeightSequence& M, const WeightSequence& N, int r, int s) {
    if (r < 1 || s < 1) fail(ErrorKind::InvalidArgument, "r and s must be positive integers");
    return sv_with_verdict(M, N, std::log(static_cast<double>(s)), static_cast<double>(r), "sv-r");
}

ConditionReport check_mixed_gamma_r(const WeightSequence& M, const WeightSequence& N, int r) {
    if (r < 1) fail(ErrorKind::InvalidArgument, "r must be a positive integer");
    const WeightSequence Nr = ramified_root(N, r);
    ConditionReport rep = mixed_profile(M, Nr, static_cast<double>(r), "gamma-r");
    const WeightSequence Mr = ramified_root(M, r);
    bool fails = false;
    std::string why;
    const auto b = mixed_tail_bound(Mr, Nr, std::min(M.horizon(), N.horizon()), &fails, &why);
    rep.verdict = verdict_from(rep, b, fails, why);
    return rep;
}

DirectedDefect preceq_defect(const WeightSequence& M, const WeightSequence& N) {
    const std::size_t H = std::min(M.horizon(), N.horizon());
    DirectedDefect d{-kInf, 0};
    for (std::size_t p = 1; p <= H; ++p) {
        const double v = (M.log_term(p) - N.log_term(p)) / static_cast<double>(p);
        if (v > d.defect) d = {v, p};
    }
    return d;
}

AlmostIncreasing almost_increasing_defect(std::span<const double> values) {
    AlmostIncreasing r;
    if (values.empty()) return r;
    std::size_t best_p = 0;
    for (std::size_t q = 0; q < values.size(); ++q) {
        if (values[q] > values[best_p]) best_p = q;
        const double d = values[best_p] - values[q];
        if (d > r.defect || r.p == 0) r = {d, best_p + 1, q + 1};
    }
    return r;
}

}  // namespace wseq
