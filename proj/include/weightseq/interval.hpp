#pragma once

#include <cmath>
#include <limits>

namespace wseq {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed enclosure [lo, hi]. hi may be +inf ("unbounded above").
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    static Interval point(double v) { return {v, v}; }

    bool bounded() const { return std::isfinite(hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    double mid() const { return bounded() ? 0.5 * (lo + hi) : kInf; }
    double width() const { return hi - lo; }

    // Outward relative widening, used to absorb summation rounding.
    Interval widened(double rel) const {
        Interval r{lo - std::fabs(lo) * rel, hi + std::fabs(hi) * rel};
        return r;
    }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }

// For nonnegative operands only.
inline Interval scale(Interval a, double f) { return {a.lo * f, a.hi * f}; }

}  // namespace wseq
