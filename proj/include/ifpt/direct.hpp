// SPDX-License-Identifier: MIT
//
// Forward first-passage solvers used as oracles for the inverse methods.
#pragma once

#include "ifpt/boundaries.hpp"
#include "ifpt/densities.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ifpt {

struct DirectResult {
    std::vector<double> grid;              // t_1..t_n, t_0 = 0 implicit
    std::vector<double> interval_masses;   // P(tau in (t_{i-1}, t_i])
    std::optional<std::vector<double>> density_values;
    std::optional<std::vector<double>> std_errors;
    double surviving_mass = 0.0;           // mean weight left after t_n (MC only)

    /// Density values as a table with the point (0, 0) prepended.
    TabulatedDensity as_density() const;
};

/// Chords of b on {0} + grid, M weighted paths, crossing mass per interval.
DirectResult direct_fpt_mc(const Boundary& b, const std::vector<double>& grid, std::size_t m,
                           std::uint64_t seed);

/// Second-kind Volterra equation with a nonsingular kernel, trapezoidal
/// weights. Verifies itself on first use and refuses to run if the check fails.
DirectResult direct_fpt_vie(const Boundary& b, const std::vector<double>& grid);

/// k(t | y, tau) of the direct equation.
double direct_kernel(const Boundary& b, double t, double y, double tau);

/// Uniform grid h, 2h, ..., n h with n = round(t_max / h).
std::vector<double> uniform_grid(double h, double t_max);

}  // namespace ifpt
