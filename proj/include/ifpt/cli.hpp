// SPDX-License-Identifier: MIT
#pragma once

#include "ifpt/config.hpp"
#include "ifpt/error.hpp"

#include <ostream>

namespace ifpt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// 2 for configuration problems, 3 for everything the solvers raise.
int exit_code_for(ErrorKind kind);

/// Executes a validated configuration. The summary line goes to `out`,
/// diagnostics and errors to `err`. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One-line small-time report, e.g. "Finite, kappa=1, c=-2.5310242469692907".
std::string limits_report(const RunConfig& cfg);

}  // namespace ifpt
