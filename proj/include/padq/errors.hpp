#pragma once

#include <stdexcept>
#include <string>

namespace padq {

enum class ErrorCode {
    InvalidArgument = 1,
    DivisionByZero,
    PrecisionLost,
    Uncertified,
    Indeterminate,
    Incompatible,
    MalformedModule,
    Divergence,
    Certification,
    Parse,
    ResourceLimit,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode c) noexcept;

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(ErrorCode::InvalidArgument, msg);
}

}  // namespace padq
