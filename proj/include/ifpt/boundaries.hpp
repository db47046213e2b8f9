// SPDX-License-Identifier: MIT
//
// Boundary families t -> level for the Wiener first-passage problem.
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ifpt {

/// c(t) = alpha + beta t. Nondegenerate for a path started at x0 when alpha > x0.
struct LinearBoundary {
    double alpha = 0.0;
    double beta = 0.0;

    double eval(double t) const { return alpha + beta * t; }
    double derivative(double) const { return beta; }
    std::vector<std::string> violations() const;
};

/// d(t) = alpha/2 - (t/alpha) log(beta/2 + sqrt(beta^2/4 + gamma e^{-alpha^2/t})),
/// with alpha > 0, beta >= 0 and gamma > -beta^2/4.
struct DanielsBoundary {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 1.0;

    double eval(double t) const;
    double derivative(double t) const;
    std::vector<std::string> violations() const;
};

/// alpha + beta cos(gamma t), gamma in radians per unit time.
struct OscillatingBoundary {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;

    double eval(double t) const;
    double derivative(double t) const;
    std::vector<std::string> violations() const;
};

/// g(t) = sqrt(2t log(1/t) + t log log(1/t) + c t) on (0, delta_c).
/// Lies between the f(0+) = 0 and f(0+) = +inf envelopes near zero.
struct PeskirGBoundary {
    double c = 0.0;
    double delta_c = 0.1;

    /// delta_c = min(0.1, last point of a log-spaced scan of (0, 0.1] before
    /// the square-root argument turns non-positive).
    static PeskirGBoundary with_default_domain(double c);

    double eval(double t) const;
    double derivative(double t) const;
    std::vector<std::string> violations() const;
};

struct Knot {
    double t;
    double level;
};

struct SegmentCoeffs {
    double alpha;  // intercept of the segment line, level = alpha + beta t
    double beta;   // slope
};

/// Continuous piecewise-linear boundary through strictly increasing knots.
class PiecewiseLinearBoundary {
public:
    PiecewiseLinearBoundary() = default;
    explicit PiecewiseLinearBoundary(std::vector<Knot> knots);

    const std::vector<Knot>& knots() const noexcept { return knots_; }
    std::size_t segment_count() const noexcept { return knots_.empty() ? 0 : knots_.size() - 1; }

    /// Coefficients of segment i (1-based, between knots i-1 and i).
    SegmentCoeffs segment_coeffs(std::size_t i) const;

    void append(Knot k);

    double eval(double t) const;
    double derivative(double t) const;

private:
    std::size_t segment_containing(double t) const;

    std::vector<Knot> knots_;
};

using Boundary = std::variant<LinearBoundary, DanielsBoundary, OscillatingBoundary,
                              PeskirGBoundary, PiecewiseLinearBoundary>;

double eval(const Boundary& b, double t);
double derivative(const Boundary& b, double t);

/// b(0+). Daniels tends to alpha/2 when beta > 0 and to alpha when beta = 0.
double level_at_zero(const Boundary& b);

/// Invariant violations of the parameters, empty when valid.
std::vector<std::string> violations(const Boundary& b);

std::string kind_name(const Boundary& b);

/// Chords of b on the grid: knots (t_i, b(t_i)).
PiecewiseLinearBoundary pl_from_sampling(const Boundary& b, std::span<const double> grid);

}  // namespace ifpt
