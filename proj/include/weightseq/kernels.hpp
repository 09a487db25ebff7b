#pragma once

// Data-parallel kernels. Each has a serial reference and an OpenMP variant;
// both must return identical results (same per-index arithmetic, no reductions
// across indices).

#include <cstddef>
#include <span>
#include <vector>

namespace wseq::kernels {

/// lambda[p-1] = max_{0 <= j < p} (m_terms[p] - p*log_s - n_terms[j]) / (p - j), p = 1..P.
std::vector<double> lambda_profile_serial(std::span<const double> m_terms, std::span<const double> n_terms,
                                          double log_s, std::size_t P);
std::vector<double> lambda_profile_omp(std::span<const double> m_terms, std::span<const double> n_terms,
                                       double log_s, std::size_t P);

struct MinResult {
    double value;
    std::size_t argmin;
};

/// out[p-1] = min_{0 <= j < p} (p - j) * x[p-1] + n_terms[j], smallest minimizing j. p = 1..x.size().
std::vector<MinResult> exhaustive_min_serial(std::span<const double> n_terms, std::span<const double> x);
std::vector<MinResult> exhaustive_min_omp(std::span<const double> n_terms, std::span<const double> x);

/// out[i] = max_{0 <= p < terms.size()} p*log_t[i] - terms[p] (>= 0 through p = 0).
std::vector<double> legendre_max_serial(std::span<const double> terms, std::span<const double> log_t);
std::vector<double> legendre_max_omp(std::span<const double> terms, std::span<const double> log_t);

/// Apply WEIGHTSEQ_THREADS (if set) as the OpenMP thread cap. Returns the cap in effect.
int configure_threads_from_env();
int max_threads();

}  // namespace wseq::kernels
