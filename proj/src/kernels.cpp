#include "weightseq/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wseq::kernels {

namespace {

inline double lambda_at(std::span<const double> m, std::span<const double> n, double log_s, std::size_t p) {
    const double top = m[p] - static_cast<double>(p) * log_s;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < p; ++j) {
        const double v = (top - n[j]) / static_cast<double>(p - j);
        if (v > best) best = v;
    }
    return best;
}

inline MinResult min_at(std::span<const double> n, double x, std::size_t p) {
    MinResult r{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t j = 0; j < p; ++j) {
        const double v = static_cast<double>(p - j) * x + n[j];
        if (v < r.value) r = {v, j};
    }
    return r;
}

inline double legendre_at(std::span<const double> terms, double lt) {
    double best = 0.0;
    for (std::size_t p = 1; p < terms.size(); ++p) {
        const double v = static_cast<double>(p) * lt - terms[p];
        if (v > best) best = v;
    }
    return best;
}

}  // namespace

std::vector<double> lambda_profile_serial(std::span<const double> m_terms, std::span<const double> n_terms,
                                          double log_s, std::size_t P) {
    std::vector<double> out(P);
    for (std::size_t p = 1; p <= P; ++p) out[p - 1] = lambda_at(m_terms, n_terms, log_s, p);
    return out;
}

std::vector<double> lambda_profile_omp(std::span<const double> m_terms, std::span<const double> n_terms,
                                       double log_s, std::size_t P) {
    std::vector<double> out(P);
    const long long n = static_cast<long long>(P);
    // Cost grows with p; dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) out[i] = lambda_at(m_terms, n_terms, log_s, static_cast<std::size_t>(i) + 1);
    return out;
}

std::vector<MinResult> exhaustive_min_serial(std::span<const double> n_terms, std::span<const double> x) {
    std::vector<MinResult> out(x.size());
    for (std::size_t p = 1; p <= x.size(); ++p) out[p - 1] = min_at(n_terms, x[p - 1], p);
    return out;
}

std::vector<MinResult> exhaustive_min_omp(std::span<const double> n_terms, std::span<const double> x) {
    std::vector<MinResult> out(x.size());
    const long long n = static_cast<long long>(x.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) out[i] = min_at(n_terms, x[i], static_cast<std::size_t>(i) + 1);
    return out;
}

std::vector<double> legendre_max_serial(std::span<const double> terms, std::span<const double> log_t) {
    std::vector<double> out(log_t.size());
    for (std::size_t i = 0; i < log_t.size(); ++i) out[i] = legendre_at(terms, log_t[i]);
    return out;
}

std::vector<double> legendre_max_omp(std::span<const double> terms, std::span<const double> log_t) {
    std::vector<double> out(log_t.size());
    const long long n = static_cast<long long>(log_t.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) out[i] = legendre_at(terms, log_t[i]);
    return out;
}

int configure_threads_from_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("WEIGHTSEQ_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) omp_set_num_threads(static_cast<int>(v));
    }
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wseq::kernels
