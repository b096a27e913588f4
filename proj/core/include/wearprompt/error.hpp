#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wearprompt {

enum class ErrorKind {
    Format,
    Io,
    Precondition,
    EmptyInput,
    Dimension,
    Parse,
    Invariant,
    Statistics,
    Config,
};

std::string_view to_string(ErrorKind kind);

// Every error raised by the library. `kind` lets the CLI map failures onto
// machine-readable messages without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Schema errors carry a JSON pointer to the offending field.
class ParseError : public Error {
public:
    ParseError(std::string pointer, const std::string& message)
        : Error(ErrorKind::Parse, pointer + ": " + message), pointer_(std::move(pointer)) {}

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

}  // namespace wearprompt
