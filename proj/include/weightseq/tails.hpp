#pragma once

#include <cstddef>
#include <vector>

#include "weightseq/interval.hpp"
#include "weightseq/sequence.hpp"
#include "weightseq/verdict.hpp"

namespace wseq {

/// Precomputed enclosures of T_p = sum_{k >= p} 1/nu_k for all p.
class TailTable {
public:
    explicit TailTable(const WeightSequence& W);

    /// Enclosure of T_p, p >= 1. Beyond H+1 only the model remainder is used.
    Interval at(std::size_t p) const;
    /// Enclosure of sum_{k >= m} 1/nu_k for m > H, from the tail model alone.
    Interval remainder_from(std::size_t m) const;

    std::size_t horizon() const { return H_; }

private:
    const WeightSequence* W_;
    std::size_t H_;
    std::vector<double> finite_;  // finite_[p] = sum_{k=p}^{H} 1/nu_k, p = 1..H+1
    Interval rest_;               // remainder past H
};

Interval tail_sum(const WeightSequence& W, std::size_t p);

TriState is_nonquasianalytic(const WeightSequence& W);

/// (nu_p / p) * T_p, p <= H.
Interval gamma1_profile(const WeightSequence& W, std::size_t p);
Interval gamma1_profile(const WeightSequence& W, const TailTable& T, std::size_t p);

/// (nu_p / p) * T_{2p}; needs 2p <= H+1 or a known tail.
Interval nongamma2_profile(const WeightSequence& W, std::size_t p);
Interval nongamma2_profile(const WeightSequence& W, const TailTable& T, std::size_t p);

}  // namespace wseq
