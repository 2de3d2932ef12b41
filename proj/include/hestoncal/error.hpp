#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hestoncal {

enum class ErrorKind {
    InvalidArgument,
    DegenerateParams,
    NumericRange,
    QuadratureFailure,
    OutOfRange,
    DegenerateCf,
    NoConvergence,
    ParseError,
    EmptyFile,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the categories above so
/// that callers (the CLI in particular) can report it without parsing text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the category prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

} // namespace hestoncal
