// SPDX-License-Identifier: MIT
//
// Absorbed-path machinery for piecewise-linear boundaries: bridge survival
// weights, the closed-form segment crossing mass H and weighted-path
// Monte Carlo estimates.
#pragma once

#include "ifpt/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ifpt {

/// Probability that a Brownian bridge from y0 to y1 over dt stays below the
/// chord from c0 to c1; 0 when either end lies above its level.
double bridge_weight(double y0, double y1, double c0, double c1, double dt);

/// Crossing probability within dt of the line c_n + beta s for a path at x_n:
/// Psi((beta dt + d)/sqrt dt) + e^{-2 beta d} Phi((beta dt - d)/sqrt dt), d = c_n - x_n.
/// Returns 1 when d <= 0.
double segment_cross_mass_H(double beta, double x_n, double c_n, double dt);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double ess = 0.0;
};

inline constexpr double kEssThreshold = 10.0;
inline constexpr std::size_t kReductionBlock = 4096;

/// Worker count from IFPT_THREADS, else hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(b) for b in [0, blocks). Blocks are independent; callers reduce
/// per-block results in index order so the outcome never depends on threads.
void parallel_blocks(std::size_t blocks, const std::function<void(std::size_t)>& body);

/// M persistent weighted paths started at 0. Only the current position is
/// kept; paths whose weight reaches 0 are dropped but still count in M.
class PathEnsemble {
public:
    PathEnsemble(std::size_t m, std::uint64_t seed, std::uint64_t stream = 0);

    std::size_t total() const noexcept { return m_; }
    std::size_t alive() const noexcept { return x_.size(); }
    std::size_t steps() const noexcept { return step_; }
    const std::vector<double>& positions() const noexcept { return x_; }
    const std::vector<double>& weights() const noexcept { return w_; }

    /// Adds one N(0, dt) increment per path and multiplies its weight by
    /// I(x_new <= c_new) and, when `use_bridge`, the bridge weight against
    /// the chord c_prev -> c_new. Returns per-path lost weight summed over
    /// the ensemble divided by M, with its standard error.
    McEstimate extend(double c_prev, double c_new, double dt, bool use_bridge = true);

    /// Sum of weights / M.
    double mean_weight() const;

    /// (sum w)^2 / sum w^2 over all paths.
    double ess() const;

    /// Mean over all M paths of w_j * H(beta; x_j) with c_n the current level.
    McEstimate estimate(double beta, double c_n, double dt) const;

    /// Mean only, for root finding.
    double estimate_mean(double beta, double c_n, double dt) const;

private:
    void compact();

    std::size_t m_;
    CounterRng rng_;
    std::size_t step_ = 0;
    std::vector<double> x_;
    std::vector<double> w_;
    std::vector<std::uint64_t> id_;
};

/// Same quantity as PathEnsemble::estimate, raising DegenerateSample when the
/// ensemble's effective sample size is below kEssThreshold.
McEstimate estimate_lhs(const PathEnsemble& paths, double beta, double c_n, double dt);

}  // namespace ifpt
