// Serial vs OpenMP timings for the data-parallel kernels.
//   bench_kernels [--quick]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "weightseq/kernels.hpp"
#include "weightseq/sequence.hpp"

using namespace wseq;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

std::vector<double> terms(const WeightSequence& W) {
    return {W.log_terms().begin(), W.log_terms().end()};
}

}  // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    const int threads = kernels::configure_threads_from_env();
    const std::size_t H = quick ? 512 : 8192;
    const int reps = quick ? 1 : 5;
    const auto N = gevrey(2.0, H), M = gevrey(2.5, H);
    const auto n = terms(N), m = terms(M);

    std::vector<double> x(H);
    for (std::size_t p = 1; p <= H; ++p) x[p - 1] = std::log(double(p)) + 0.1;
    std::vector<double> lt(quick ? 2000 : 200000);
    for (std::size_t i = 0; i < lt.size(); ++i) lt[i] = 0.001 * double(i);

    std::printf("threads %d, horizon %zu\n", threads, H);
    std::printf("%-16s %12s %12s %8s %s\n", "kernel", "serial[s]", "omp[s]", "speedup", "match");
    int mismatches = 0;
    auto row = [&](const char* name, double ts, double to, bool match) {
        mismatches += match ? 0 : 1;
        std::printf("%-16s %12.5f %12.5f %8.2f %s\n", name, ts, to, ts / to, match ? "yes" : "NO");
    };

    std::vector<double> ls, lo;
    const double t1 = best_of(reps, [&] { ls = kernels::lambda_profile_serial(m, n, 0.0, H); });
    const double t2 = best_of(reps, [&] { lo = kernels::lambda_profile_omp(m, n, 0.0, H); });
    row("lambda_profile", t1, t2, ls == lo);

    std::vector<kernels::MinResult> es, eo;
    const double t3 = best_of(reps, [&] { es = kernels::exhaustive_min_serial(n, x); });
    const double t4 = best_of(reps, [&] { eo = kernels::exhaustive_min_omp(n, x); });
    bool same = es.size() == eo.size();
    for (std::size_t i = 0; same && i < es.size(); ++i) same = es[i].value == eo[i].value && es[i].argmin == eo[i].argmin;
    row("exhaustive_min", t3, t4, same);

    std::vector<double> ws, wo;
    const double t5 = best_of(reps, [&] { ws = kernels::legendre_max_serial(n, lt); });
    const double t6 = best_of(reps, [&] { wo = kernels::legendre_max_omp(n, lt); });
    row("legendre_max", t5, t6, ws == wo);

    return mismatches == 0 ? 0 : 1;
}
