#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace safeseq {

enum class ErrorKind {
    CycleDetected,
    MultipleSources,
    MultipleSinks,
    UnreachableNode,
    NoPath,
    PathExplosion,
    Infeasible,
    InvalidK,
    TooManySequences,
    ParseError,
    Internal,
};

// All library failures are reported through this type. `subject` carries the
// offending node/arc id or input line number where that makes sense, -1 otherwise.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg, std::int64_t subject = -1)
        : std::runtime_error(msg), kind(kind), subject(subject) {}

    ErrorKind kind;
    std::int64_t subject;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg, std::int64_t subject = -1) {
    throw Error(kind, msg, subject);
}

// Internal consistency check. Unlike assert() this stays on in release builds;
// these guard algorithmic invariants whose violation would silently corrupt results.
inline void require(bool cond, const char* what) {
    if (!cond) fail(ErrorKind::Internal, std::string("internal invariant violated: ") + what);
}

} // namespace safeseq
