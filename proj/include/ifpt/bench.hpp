// SPDX-License-Identifier: MIT
//
// Error measures, empirical convergence orders and the reference benchmark
// runs (Daniels and oscillating boundaries, the exponential density).
#pragma once

#include "ifpt/boundaries.hpp"
#include "ifpt/densities.hpp"
#include "ifpt/plmc.hpp"
#include "ifpt/vie.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ifpt {

struct ErrorReport {
    std::vector<double> per_knot_error;  // b(t_j) - b_hat(t_j), signed
    double sigma = 0.0;
    double max_abs_error = 0.0;
    std::size_t n = 0;  // knots with t > 0
};

/// sigma = (1/n) sum_j (b(t_j) - b_hat(t_j))^2 over every given knot, where n
/// counts the knots with t > 0; a knot at t = 0 compares against b(0+).
ErrorReport mean_square_deviation(const Boundary& truth, std::span<const double> grid,
                                  std::span<const double> estimate);

/// max |error| over knots with t >= t_min.
double max_abs_error_from(const ErrorReport& report, std::span<const double> grid, double t_min);

struct OrderEstimate {
    std::vector<double> h_values;
    std::vector<double> errors;
    double slope = 0.0;
};

/// Least-squares slope of log(error) against log(h).
OrderEstimate convergence_order(std::vector<double> h_values, std::vector<double> errors);

/// Runs `max_error(h)` for every h (strictly decreasing, at least three).
OrderEstimate convergence_order(const std::function<double(double)>& max_error, std::vector<double> h_values);

/// Knots (0, b0) followed by (t_i, b_i).
PiecewiseLinearBoundary knots_to_boundary(double b0, std::span<const double> grid, std::span<const double> levels);

struct RoundTripReport {
    std::size_t covered = 0;
    std::size_t total = 0;
    double fraction() const { return total ? static_cast<double>(covered) / static_cast<double>(total) : 0.0; }
};

/// Forward Monte Carlo on a recovered boundary against the target masses.
/// Interval i is covered when |mass_mc - target| <= 3 sqrt(se_mc^2 + se_i^2) + root_tol.
RoundTripReport round_trip(const PiecewiseLinearBoundary& recovered, std::span<const double> target_masses,
                           std::span<const double> solver_std_errors, std::size_t m, std::uint64_t seed,
                           double root_tol);

struct BenchCell {
    std::string case_name;
    std::string method;
    double h = 0.0;
    std::optional<std::size_t> m;
    std::vector<double> t;
    std::vector<double> b_true;
    std::vector<double> b_hat;
    ErrorReport report;
    double runtime_seconds = 0.0;
    std::vector<std::string> notes;
};

struct BenchCase {
    std::string name;
    Boundary truth;
    std::optional<FptDensity> density;  // empty: generated by the direct solver
};

/// The four reference cases: Daniels (1, 0.5, 0.5), (1, 1, 0.5); oscillating
/// (1, 0.5, 2), (1, 1, 2); all on [0, 2].
std::vector<BenchCase> reference_cases();

/// Target density for a case; oscillating cases use direct_fpt_vie on a
/// grid of spacing h_table.
FptDensity case_density(const BenchCase& c, double h_table = 0.0025);

BenchCell run_plmc_cell(const BenchCase& c, const FptDensity& d, double h, std::size_t m, std::uint64_t seed,
                        double t_max = 2.0);
BenchCell run_vie_cell(const BenchCase& c, const FptDensity& d, double h, VieScheme scheme = VieScheme::Euler,
                       double t_max = 2.0);

/// All 8 cells with the reference settings (PLMC h = 0.2, M = 1e4; VIE Euler h = 0.01).
std::vector<BenchCell> run_reference_suite(std::uint64_t seed);

/// Per-cell CSV (t, b_true, b_hat, err) plus the summary CSV under `dir`.
void write_bench(const std::vector<BenchCell>& cells, const std::filesystem::path& dir,
                 const std::string& summary_name);

std::string cell_csv(const BenchCell& cell);

struct ShiryaevReport {
    std::vector<double> t;  // common knots t_1..t_n
    std::vector<double> b_plmc;
    std::vector<double> b_vie;
    double max_discrepancy = 0.0;  // over t in [0.1, horizon]
    bool plmc_rise_then_fall = false;
    bool vie_rise_then_fall = false;
    bool both_positive = false;
};

/// Peak strictly inside the sequence, with both ends below it.
bool rise_then_fall(std::span<const double> b);

ShiryaevReport shiryaev_compare(double h, double horizon, std::size_t m, std::uint64_t seed);

}  // namespace ifpt
