#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvg {

enum class ErrorCode {
    InvalidParams,
    InvalidConfig,
    TooShort,
    RateMismatch,
    IndexOutOfRange,
    Disconnected,
    DegenerateBaseline,
    InsufficientSupport,
    ParseError,
    IoError,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code lets
/// callers (the CLI, the sweep runner) classify errors without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DisconnectedError : public Error {
public:
    explicit DisconnectedError(std::size_t components);

    [[nodiscard]] std::size_t components() const noexcept { return components_; }

private:
    std::size_t components_;
};

}  // namespace pvg
