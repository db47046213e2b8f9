// SPDX-License-Identifier: MIT
#include "ifpt/error.hpp"

namespace ifpt {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::InfeasibleMass: return "InfeasibleMass";
    case ErrorKind::MassOverflow: return "MassOverflow";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> knot)
    : std::runtime_error(what), kind_(kind), knot_(knot)
{}

Error Error::at_knot(std::size_t knot) const
{
    return Error(kind_, what(), knot_ ? knot_ : std::optional<std::size_t>(knot));
}

}  // namespace ifpt
