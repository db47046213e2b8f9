// SPDX-License-Identifier: MIT
//
// Piecewise-linear Monte Carlo inverse solver: one slope per interval chosen
// so the weighted-path crossing mass matches the target interval mass.
#pragma once

#include "ifpt/boundaries.hpp"
#include "ifpt/bridge.hpp"
#include "ifpt/densities.hpp"
#include "ifpt/numerics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ifpt {

enum class PlmcStartup { Standard, PeskirG };

struct PlmcConfig {
    double h = 0.2;
    std::size_t n_steps = 10;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 0;
    double confidence = 0.95;
    double root_tol = 1e-10;
    std::optional<double> b0;
    bool b0_is_guess = false;  // b0 supplied as a guess rather than known b(0+)
    PlmcStartup startup = PlmcStartup::Standard;

    std::vector<std::string> violations() const;
};

struct SlopeInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool clipped = false;  // an end hit the attainable range instead of a root
};

struct PlmcResult {
    PiecewiseLinearBoundary boundary;
    std::vector<double> slopes;         // beta_1..beta_n
    std::vector<double> intercepts;     // alpha_1..alpha_n, continuity recursion
    std::vector<SlopeInterval> ci;      // empty interval for closed-form steps
    std::vector<double> ess_per_step;
    std::vector<double> std_errors;
    std::vector<double> target_masses;  // k_1..k_n
    bool truncated = false;
    std::vector<std::string> notes;
};

/// beta with H(beta; 0, alpha1, t1) = k1.
double plmc_step1(double k1, double alpha1, double t1, double root_tol = kDefaultRootTol);

struct StepSolution {
    double beta = 0.0;
    SlopeInterval ci;
    McEstimate estimate;
};

/// Slope for the interval after the ensemble's current knot (c_n, with
/// paths already extended through it). Common random numbers: every beta
/// trial reuses the same paths.
StepSolution plmc_step_n(const PathEnsemble& paths, double c_n, double dt, double k_next,
                         double beta_prev, double confidence, double root_tol);

PlmcResult plmc_solve(const FptDensity& d, const PlmcConfig& cfg);

/// Two-sided normal quantile z with P(|Z| <= z) = confidence.
double normal_quantile_two_sided(double confidence);

}  // namespace ifpt
