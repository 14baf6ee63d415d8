#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stablectl {

// Values double as CLI exit codes.
enum class ErrorCode : int {
    Parse = 2,
    InvalidInput = 3,
    CapExceeded = 4,
    Internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + reason), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(ErrorCode::InvalidInput, what) {}
};

class CapExceeded : public Error {
public:
    CapExceeded(std::size_t needed, std::size_t cap)
        : Error(ErrorCode::CapExceeded,
                "enumeration cap exceeded: " + std::to_string(needed) + " > " + std::to_string(cap)) {}
};

// A broken internal invariant; never a verdict.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace stablectl
