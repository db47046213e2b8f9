// SPDX-License-Identifier: MIT
//
// Volterra-integral-equation inverse solver. Knot i solves
//   G_i(b) = Psi(b/sqrt t_i) - h sum_j w_ij Psi((b - b_j)/sqrt(t_i - t_j)) f(t_j) = 0
// using only the earlier knots (the system is lower triangular).
#pragma once

#include "ifpt/densities.hpp"
#include "ifpt/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ifpt {

enum class VieScheme { Euler, Trapezoid };

struct VieConfig {
    double h = 0.01;
    std::size_t n = 200;
    VieScheme scheme = VieScheme::Euler;
    std::optional<double> b0;
    double root_tol = kDefaultRootTol;
    std::size_t flux_correction_knots = 0;
    double flux_epsilon = 0.05;
    std::optional<double> bracket_halfwidth;  // default 5 sqrt(h) + 0.5

    std::vector<std::string> violations() const;
};

enum class DiagnosticKind { MultiRoot, Tangency, FluxMismatch };

struct KnotDiagnostic {
    std::size_t knot;  // 1-based
    DiagnosticKind kind;
    std::string message;
};

std::string to_string(DiagnosticKind kind);

struct VieResult {
    std::vector<double> grid;
    std::vector<double> b_star;
    std::vector<double> residuals;
    std::size_t corrected_knots = 0;
    std::vector<KnotDiagnostic> diagnostics;

    /// True when knot i (1-based) is a tangency point, exempt from the residual bound.
    bool is_tangency(std::size_t knot) const;
};

/// b*(t_1) = sqrt(t_1) Psi^{-1}(weight f1 t_1); weight 1/2 is the Euler form.
double vie_first_knot(double f1, double t1, double weight = 0.5);

/// The discretized system for one density and configuration.
class VieSystem {
public:
    VieSystem(const FptDensity& d, const VieConfig& cfg);

    std::size_t size() const noexcept { return t_.size(); }
    double t(std::size_t knot) const { return t_.at(knot - 1); }
    double f(std::size_t knot) const { return f_.at(knot - 1); }
    double f0() const noexcept { return f0_; }

    /// G_knot(b) given earlier knots prior[0..knot-2].
    double residual(const std::vector<double>& prior, std::size_t knot, double b) const;

    struct KnotSolve {
        double b;
        std::optional<KnotDiagnostic> diagnostic;
    };

    /// Solves knot `knot` from prior[0..knot-2] alone.
    KnotSolve solve_knot(const std::vector<double>& prior, std::size_t knot) const;

private:
    double diag_weight() const;

    VieConfig cfg_;
    std::vector<double> t_;
    std::vector<double> f_;
    std::vector<double> sqrt_t_;
    double f0_ = 0.0;
};

/// Solves every knot; applies flux correction when cfg.flux_correction_knots > 0.
VieResult vie_solve(const FptDensity& d, const VieConfig& cfg);

/// Replaces the first cfg.flux_correction_knots knots by the small-time flux
/// solution and re-solves the rest.
VieResult vie_flux_correct(const VieResult& result, const FptDensity& d, const VieConfig& cfg);

}  // namespace ifpt
