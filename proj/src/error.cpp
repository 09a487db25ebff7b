#include "weightseq/error.hpp"
#include "weightseq/verdict.hpp"

namespace wseq {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::TailMismatch: return "TailMismatch";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::BeyondHorizon: return "BeyondHorizon";
        case ErrorKind::Quasianalytic: return "Quasianalytic";
        case ErrorKind::Inconclusive: return "Inconclusive";
        case ErrorKind::HorizonTooSmall: return "HorizonTooSmall";
        case ErrorKind::TailRequired: return "TailRequired";
        case ErrorKind::RemainderUnbounded: return "RemainderUnbounded";
        case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorKind::Precondition: return "Precondition";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::ScheduleInvalid: return "ScheduleInvalid";
        case ErrorKind::VerificationFailed: return "VerificationFailed";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace wseq
