#pragma once

#include <stdexcept>
#include <string>

namespace nomapop {

enum class ErrorKind {
    InvalidInput,
    NotDifferentiable,
    NoFeasibleAllocation,
    ValidationFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Process exit code used by the CLI for each error kind.
int exit_code(ErrorKind kind) noexcept;

}  // namespace nomapop
