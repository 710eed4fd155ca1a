#pragma once

#include <stdexcept>
#include <string>

namespace kst {

enum class ErrorCode {
    invalid_argument,
    cap_exceeded,
    budget_exceeded,
    uncertified,
    precondition,
    field_mismatch,
    io,
    internal,
};

/// Single exception type for the library; the code lets callers (the CLI in
/// particular) tell validation problems apart from resource limits.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace kst
