#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weightseq/conditions.hpp"
#include "weightseq/interval.hpp"
#include "weightseq/sequence.hpp"

namespace wseq {

/// j -> slope * j + offset.
struct LinearSchedule {
    double slope = 1.0;
    double offset = 0.0;
    double at(std::size_t j) const { return slope * static_cast<double>(j) + offset; }
};

struct CounterexampleConfig {
    std::size_t num_blocks = 2;
    LinearSchedule a{1.0, 2.0};
    LinearSchedule b{1.0, 1.0};
    std::uint64_t p1 = 3;
    std::uint64_t q1 = 5;
    std::uint64_t max_index = 1000000;  // largest p_i that is still materialized
};

/// One block: nu = exp(log_nu_inner) on (p, q], exp(log_nu_outer) on (q, p_next].
struct BlockRecord {
    std::size_t i = 0;
    std::uint64_t p = 0, q = 0;
    double a = 0.0, b = 0.0;
    double log_C = 0.0;
    double log_A = 0.0;
    double log_nu_inner = 0.0;
    double log_nu_outer = 0.0;
    double log_p_next = 0.0;
    std::uint64_t p_next = 0;  // 0 when p_next is only known in log domain
};

struct CounterexampleResult {
    WeightSequence sequence;  // materialized through q_n, tail unknown
    std::vector<BlockRecord> blocks;
    bool overflow = false;
    std::string overflow_reason;
};

CounterexampleResult build_counterexample(const CounterexampleConfig& config);

/// Rebuilds the materialized prefix (through q_n) from block records.
WeightSequence materialize_blocks(const std::vector<BlockRecord>& blocks);

struct BlockCheck {
    std::size_t block;
    std::string name;
    bool passed;
    double lhs;  // requirement reads lhs < rhs (or <=, ==) in log domain unless noted
    double rhs;
    std::string detail;
};

struct VerificationReport {
    std::vector<BlockCheck> checks;
    bool passed() const;
    const BlockCheck* first_failure() const;
};

/// Re-checks every inequality of the construction. Sums are explicit in log domain;
/// a known tail model of the sequence is used beyond its horizon, otherwise the last
/// outer plateau through p_next followed by a doubling completion.
VerificationReport verify_blocks(const WeightSequence& sequence, const std::vector<BlockRecord>& blocks);

/// Throws VerificationFailed naming the first failing block and check.
void throw_if_failed(const VerificationReport& report);

/// check_mg on the materialized prefix, with the verdict taken from the construction:
/// nu_{2 q_i} / nu_{q_i} = a_i is unbounded along the schedule.
ConditionReport check_mg_blocks(const WeightSequence& sequence, const std::vector<BlockRecord>& blocks);

/// Log-domain evaluation of tail sums and the optimal sequence on a block sequence,
/// including indices past the materialized horizon.
class BlockSequenceView {
public:
    BlockSequenceView(const WeightSequence& sequence, const std::vector<BlockRecord>& blocks);

    /// Enclosure of log T_k for k <= H+1.
    Interval log_tail(std::size_t k) const;
    /// log of the gamma_1 profile (nu_k/k) T_k.
    Interval log_gamma1(std::size_t k) const;
    /// log L^1_p for p <= H (tail at the midpoint of the log enclosure).
    double log_optimal(std::size_t p) const;
    /// All of log L^1_p for p = 0..H.
    std::vector<double> log_optimal_terms() const;

    const WeightSequence& sequence() const { return *W_; }

private:
    const WeightSequence* W_;
    std::vector<double> suffix_lse_;  // log sum_{k=p}^{H} 1/nu_k
    bool model_tail_ = false;
    double log_plateau_nu_ = 0.0;
    double log_p_end_ = 0.0;
    std::uint64_t p_end_ = 0;
};

}  // namespace wseq
