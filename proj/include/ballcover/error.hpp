#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ballcover {

enum class ErrorKind {
    InvalidArgument,
    Constraint,
    Degenerate,
    Precondition,
    Resource,
    Parse,
    EmptyTarget,
    Undefined,
    InconsistentWitness,
    InconsistentTrace,
    NoContact,
    DistinctnessViolation,
    NotApplicable,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what failed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ballcover
