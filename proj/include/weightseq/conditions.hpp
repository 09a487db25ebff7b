#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weightseq/interval.hpp"
#include "weightseq/sequence.hpp"
#include "weightseq/verdict.hpp"

namespace wseq {

struct ProfilePoint {
    double x;  // index p, or t for weight-function profiles
    Interval value;
};

struct ConditionReport {
    std::string name;
    std::vector<ProfilePoint> profile;
    Interval running_sup{-kInf, -kInf};
    TriState verdict;
    std::vector<std::size_t> witnesses;  // positions in profile where the running sup of hi increases
    std::vector<std::pair<std::string, double>> notes;
};

/// Fills running_sup and witnesses from the profile.
void finalize(ConditionReport& r);

ConditionReport check_nq(const WeightSequence& W);
ConditionReport check_gamma1(const WeightSequence& N);
ConditionReport check_mg(const WeightSequence& M);
ConditionReport check_lc(const WeightSequence& W);

/// max_{0 <= j < p} (log M_p - p log s - log N_j) / (p - j).
double lambda_ps(const WeightSequence& M, const WeightSequence& N, std::size_t p, int s);

ConditionReport check_SV(const WeightSequence& M, const WeightSequence& N, int s);
/// check_SV with a real parameter s > 0 (used by rescaling arguments).
ConditionReport check_SV_real(const WeightSequence& M, const WeightSequence& N, double s);
ConditionReport check_mixed_gamma1(const WeightSequence& M, const WeightSequence& N);
ConditionReport check_SV_ramified(const WeightSequence& M, const WeightSequence& N, int r, int s);
ConditionReport check_mixed_gamma_r(const WeightSequence& M, const WeightSequence& N, int r);

struct DirectedDefect {
    double defect;
    std::size_t argmax;
};

/// max_{1 <= p <= H} (log M_p - log N_p) / p.
DirectedDefect preceq_defect(const WeightSequence& M, const WeightSequence& N);

struct AlmostIncreasing {
    double defect = 0.0;
    std::size_t p = 0, q = 0;  // 1-based
};

/// max_{1 <= p <= q <= n} values[p] - values[q].
AlmostIncreasing almost_increasing_defect(std::span<const double> values);

}  // namespace wseq
