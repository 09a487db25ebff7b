#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace wseq {

enum class Verdict { Holds, Fails, Inconclusive };

std::string_view to_string(Verdict v);

struct TriState {
    Verdict verdict = Verdict::Inconclusive;
    double bound = std::numeric_limits<double>::quiet_NaN();  // certificate for Holds, observed sup otherwise
    std::vector<std::size_t> witnesses;
    std::string reason;

    static TriState holds(double bound, std::string reason) {
        return {Verdict::Holds, bound, {}, std::move(reason)};
    }
    static TriState fails(std::string reason, std::vector<std::size_t> witnesses = {}) {
        return {Verdict::Fails, std::numeric_limits<double>::infinity(), std::move(witnesses), std::move(reason)};
    }
    static TriState inconclusive(double observed, std::string reason) {
        return {Verdict::Inconclusive, observed, {}, std::move(reason)};
    }
};

}  // namespace wseq
