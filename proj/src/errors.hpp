#pragma once

#include <stdexcept>
#include <string>

namespace mj {

// Coarse failure categories. The C API and the CLI exit codes are derived
// from these, so new categories need a mapping in both places.
enum class ErrorKind {
    InvalidArgument,  // caller passed something unusable
    Config,           // bad or missing configuration
    Data,             // dataset/schema problems
    Io,               // file system failures
    Transport,        // network failure after retries
    Request,          // endpoint rejected the request (HTTP 4xx)
    Contract,         // violated precondition of an operation
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace mj
