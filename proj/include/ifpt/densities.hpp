// SPDX-License-Identifier: MIT
//
// Target first-passage densities, interval masses and the small-time limits.
#pragma once

#include "ifpt/boundaries.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ifpt {

/// Bachelier-Levy density of the crossing of alpha + beta (t - t0) by a path
/// started at x0 at time t0.
struct LinearBoundaryDensity {
    double alpha = 1.0;
    double beta = 0.0;
    double x0 = 0.0;
    double t0 = 0.0;
};

struct DanielsDensity {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 1.0;

    DanielsBoundary boundary() const { return {alpha, beta, gamma}; }
};

struct ExponentialDensity {
    double lambda = 1.0;
};

/// Density known on a grid, linearly interpolated in (t, f).
class TabulatedDensity {
public:
    TabulatedDensity() = default;
    TabulatedDensity(std::vector<double> t, std::vector<double> f);

    /// CSV with header `t,f`, strictly increasing t.
    static TabulatedDensity load_csv(const std::filesystem::path& path);
    static TabulatedDensity parse_csv(const std::string& text);

    const std::vector<double>& times() const noexcept { return t_; }
    const std::vector<double>& values() const noexcept { return f_; }

    double eval(double t) const;
    /// Exact integral of the interpolant over [s, t].
    double integral(double s, double t) const;
    /// Linear extrapolation of the first two knots to t = 0, clamped at 0.
    double value_at_zero() const;

private:
    std::vector<double> t_;
    std::vector<double> f_;
};

using FptDensity = std::variant<LinearBoundaryDensity, DanielsDensity, ExponentialDensity, TabulatedDensity>;

enum class SmallTimeKind { Zero, Infinite, Finite };

struct SmallTimeClass {
    SmallTimeKind kind = SmallTimeKind::Zero;
    double kappa = 0.0;  // f(0+), only for Finite
};

std::string to_string(SmallTimeKind kind);

double fpt_density_linear(double t, double alpha, double beta, double x0 = 0.0, double t0 = 0.0);

/// P(tau <= t) for the line alpha + beta t and a path from the origin:
/// Psi((alpha + beta t)/sqrt t) + e^{-2 alpha beta} Phi((beta t - alpha)/sqrt t).
double fpt_cdf_linear(double t, double alpha, double beta);

double fpt_density_daniels(double t, double alpha, double beta, double gamma);

/// Pointwise value. DomainError outside the density's support.
double density(const FptDensity& d, double t);

/// Integral of the density over [s, t].
double interval_mass(const FptDensity& d, double s, double t);

std::vector<std::string> violations(const FptDensity& d);
std::string kind_name(const FptDensity& d);

/// Adaptive Simpson rule with absolute tolerance `tol`; QuadratureFailure
/// when a panel still misses its share of the tolerance at `max_depth`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 20);

/// f_g(0+) = e^{-c/2}/sqrt(4 pi) for the boundary g with constant c.
double peskir_limit(double c);

/// Inverse of peskir_limit: c = -2 log(kappa sqrt(4 pi)).
double c_from_kappa(double kappa);

/// Solves f_val = b/sqrt(2 pi t^3) e^{-b^2/(2t)} on the branch b >= sqrt t.
double flux_small_time_solve(double f_val, double t, double b_max = 10.0);

/// Right side of the small-time flux relation for a given level.
double flux_density(double b, double t);

SmallTimeClass classify_small_time(const FptDensity& d);
SmallTimeClass classify_small_time(const Boundary& b);

/// f(0+) as a number (0 for Zero, +inf for Infinite).
double density_at_zero(const FptDensity& d);

}  // namespace ifpt
