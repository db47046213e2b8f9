// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ifpt {

enum class ErrorKind {
    DomainError,
    NoSignChange,
    MaxIterations,
    QuadratureFailure,
    NoSolution,
    DegenerateSample,
    InfeasibleMass,
    MassOverflow,
    NumericalFailure,
    LengthMismatch,
    ParseError,
    ValidationError,
    ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `knot()` is set when the failure is
/// tied to a grid index of a solver (1-based, as in the output files).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what,
          std::optional<std::size_t> knot = std::nullopt);

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<std::size_t> knot() const noexcept { return knot_; }

    /// Copy of this error tagged with a knot index (keeps an existing tag).
    Error at_knot(std::size_t knot) const;

private:
    ErrorKind kind_;
    std::optional<std::size_t> knot_;
};

}  // namespace ifpt
