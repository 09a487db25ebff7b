#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wseq {

enum class ErrorKind {
    InvalidArgument,
    NonFinite,
    TailMismatch,
    NotNormalized,
    BeyondHorizon,
    Quasianalytic,
    Inconclusive,
    HorizonTooSmall,
    TailRequired,
    RemainderUnbounded,
    TruncationTooSmall,
    Precondition,
    Overflow,
    ScheduleInvalid,
    VerificationFailed,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace wseq
