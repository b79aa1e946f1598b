#pragma once

#include <stdexcept>
#include <string>

namespace mv {

// Error categories; the C API and CLI exit codes map 1:1 onto these.
enum class ErrorCode {
    Usage = 1,
    Parse = 2,
    Schema = 3,
    Integrity = 4,
    NotFound = 5,
    Io = 6,
    Locked = 7,
    OracleMismatch = 8,
    Internal = 9,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

const char* error_code_name(ErrorCode code);

} // namespace mv
