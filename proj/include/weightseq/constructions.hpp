#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weightseq/interval.hpp"
#include "weightseq/sequence.hpp"

namespace wseq {

struct DescendantResult {
    WeightSequence sequence;    // quotients log sigma_p (midpoints)
    std::vector<Interval> tau;  // tau_p, p = 1..H
    Interval tau1;
    std::vector<Interval> sigma;  // sigma_p, p = 1..H
};

/// tau_p = p/nu_p + T_p, sigma_p = tau_1 p / tau_p.
DescendantResult descendant(const WeightSequence& N);

struct ModifiedDescendant {
    WeightSequence sequence;
    double C = 1.0;  // integer-valued
    std::size_t p_C = 1;
    double sigma_over_nu_sup = 0.0;  // max_p sigma_p.hi / nu_p
};

ModifiedDescendant modified_descendant(const WeightSequence& N);

struct OptimalSequenceResult {
    WeightSequence sequence;                  // log-terms of L^{s,C}, not normalized in general
    std::vector<std::size_t> argmin;          // index p-1
    std::vector<Interval> log_term_enclosure;  // from the tail enclosure, index p-1
    int s = 1;
    double C = 1.0;
    double crosscheck_deviation = 0.0;  // monotone criterion vs exhaustive min, p <= 64
};

/// log L_p = p log s + min_{0<=j<p} [(p-j)(log(Cp) - log T_p) + log N_j].
OptimalSequenceResult optimal_sequence(const WeightSequence& N, int s, double C = 1.0);

struct Envelope {
    std::vector<double> values;      // envelope at x = 0..n-1
    std::vector<std::size_t> hull;   // vertex abscissae, increasing
};

/// Lower convex envelope of (i, y[i]) by the monotone chain.
Envelope lower_convex_envelope(std::span<const double> y);

struct MinorantResult {
    WeightSequence sequence;  // horizon p_max, tail unknown
    std::vector<std::size_t> hull;
    std::size_t valid_through = 0;  // indices above this are boundary-affected
};

MinorantResult log_convex_minorant(const WeightSequence& W, std::size_t p_max);

WeightSequence ramified_root(const WeightSequence& N, int r);
WeightSequence ramified_optimal(const WeightSequence& N, int r, int s);
WeightSequence ramified_descendant(const WeightSequence& N, int r);

}  // namespace wseq
