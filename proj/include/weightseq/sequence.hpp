#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "weightseq/verdict.hpp"

namespace wseq {

/// nu_k = c * k^s for k >= k0. s <= 1 is accepted and means the tail sum diverges.
struct PowerTail {
    double c = 1.0;
    double s = 2.0;
    std::size_t k0 = 1;
};

/// nu_{k+1} >= q * nu_k for k >= k0. Beyond the horizon quotients are extrapolated
/// as the minimal growth nu_H * q^(k-H).
struct RatioTail {
    double q = 2.0;
    std::size_t k0 = 1;
};

struct UnknownTail {};

using TailModel = std::variant<UnknownTail, PowerTail, RatioTail>;

inline bool tail_known(const TailModel& t) { return !std::holds_alternative<UnknownTail>(t); }

inline constexpr std::size_t kMinHorizon = 8;
inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kLogConvexTol = 1e-12;
inline constexpr double kTailTol = 1e-9;

/// Positive sequence N_0 = 1, N_p = nu_1 ... nu_p, stored in log domain up to a horizon H.
class WeightSequence {
public:
    /// Requires log nu_1 >= -1e-12 unless allow_unnormalized.
    static WeightSequence from_quotients(std::vector<double> log_quotients, TailModel tail,
                                         std::string label, bool allow_unnormalized = false);

    /// Terms indexed p = 0..H with log_terms[0] == 0. Terms are kept verbatim (no re-summation),
    /// so derived sequences like the optimal sequence keep exact per-index values.
    /// Normalization is not required.
    static WeightSequence from_log_terms(std::vector<double> log_terms, TailModel tail, std::string label);

    std::size_t horizon() const { return log_q_.size(); }
    const std::string& label() const { return label_; }
    const TailModel& tail() const { return tail_; }

    /// log nu_p for p >= 1; beyond H via the tail model.
    double log_quotient(std::size_t p) const;
    /// log N_p for p >= 0; beyond H via the tail model.
    double log_term(std::size_t p) const;
    double log_root(std::size_t p) const;

    std::span<const double> log_quotients() const { return log_q_; }
    std::span<const double> log_terms() const { return log_terms_; }

    bool normalized() const { return log_q_.front() >= -kNormalizationTol; }
    bool built_from_terms() const { return from_terms_; }

private:
    WeightSequence() = default;
    void check_tail() const;

    std::vector<double> log_q_;      // index p-1
    std::vector<double> log_terms_;  // index p
    TailModel tail_;
    std::string label_;
    bool from_terms_ = false;
};

double log_factorial(std::size_t p);
double log_factorial(double p);

WeightSequence gevrey(double s, std::size_t H);
/// nu_p = c * p^s; c >= 1 keeps it normalized.
WeightSequence power_tail_family(double c, double s, std::size_t H);
/// nu_p = 1 for all p, tail PowerTail{1, 0, 1}.
WeightSequence constant_one(std::size_t H);

WeightSequence power(const WeightSequence& W, double r);
WeightSequence geometric_rescale(const WeightSequence& W, double c);
double little_m(const WeightSequence& W, std::size_t p);

struct LcReport {
    bool normalized = false;
    double log_convex_defect = 0.0;
    std::size_t defect_at = 0;
    double roots_increasing_to = 0.0;
    bool quotients_unbounded = false;  // certified by the tail model
    TriState in_lc;
};

LcReport check_LC(const WeightSequence& W);

inline bool is_log_convex(const WeightSequence& W) {
    return check_LC(W).log_convex_defect <= kLogConvexTol;
}

}  // namespace wseq
