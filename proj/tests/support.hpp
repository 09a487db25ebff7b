#pragma once
#include <functional>

#include "weightseq/error.hpp"

// Returns true when f throws wseq::Error of the given kind.
inline bool throws_kind(const std::function<void()>& f, wseq::ErrorKind kind) {
    try {
        f();
    } catch (const wseq::Error& e) {
        return e.kind() == kind;
    }
    return false;
}
