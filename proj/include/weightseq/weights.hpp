#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weightseq/conditions.hpp"
#include "weightseq/interval.hpp"
#include "weightseq/sequence.hpp"

namespace wseq {

/// Evaluates omega_M(t) = sup_p (p log t - log M_p) in terms of u = log t.
class OmegaEvaluator {
public:
    explicit OmegaEvaluator(const WeightSequence& M);

    struct Value {
        double omega;
        std::size_t count;  // maximizing p = #{k : nu_k <= t} for log-convex M
    };

    Value at_log(double log_t) const;
    double operator()(double t) const { return at_log(std::log(t)).omega; }

    /// Exhaustive sup over p <= H (no tail).
    double exhaustive_on_horizon(double log_t) const;

    bool log_convex() const { return lc_; }
    const WeightSequence& sequence() const { return *M_; }

private:
    Value beyond_horizon(double log_t) const;

    const WeightSequence* M_;
    bool lc_;
};

double omega(const WeightSequence& M, double t);

struct WeightFunctionSamples {
    std::vector<double> t;
    std::vector<double> values;
};

WeightFunctionSamples omega_samples(const WeightSequence& M, std::span<const double> t_grid);

/// 64 log-spaced points per decade on [t_min, t_max].
std::vector<double> log_grid(double t_min, double t_max, int per_decade = 64);

/// sup_t (p log t - omega_M(t)) over a log grid plus the stationary candidates, refined by ternary search.
double recover_sequence(const WeightSequence& M, std::size_t p);

/// Enclosure of the integral over [1, inf) of omega_N(t y) / y^2 dy.
Interval kappa(const WeightSequence& N, double t, double y_max = 1e6);

/// Profile t -> kappa_N(t).hi / (omega_M(t) + 1). Empty grid selects the default grid.
ConditionReport check_snq(const WeightSequence& M, const WeightSequence& N, std::span<const double> t_grid = {});

/// Log-domain enclosure of s_j = sum_k 2^(j-k) N_k nu_k^(j-k), truncated at K.
Interval theta_jet(const WeightSequence& N, std::size_t j, std::size_t K);

}  // namespace wseq
