// SPDX-License-Identifier: MIT
#include "ifpt/boundaries.hpp"

#include "ifpt/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace ifpt {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive_time(double t, const char* who)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(ErrorKind::DomainError, std::string(who) + " boundary is defined for t > 0, got " + fmt(t));
    }
}

double central_difference(const auto& fn, double t, double lower)
{
    double step = 1e-6 * std::max(1.0, t);
    if (t - step <= lower) step = 0.5 * (t - lower);
    return (fn(t + step) - fn(t - step)) / (2.0 * step);
}

double peskir_argument(double c, double t)
{
    const double l = std::log(1.0 / t);
    return t * (2.0 * l + std::log(l) + c);
}

}  // namespace

std::vector<std::string> LinearBoundary::violations() const
{
    std::vector<std::string> v;
    if (!std::isfinite(alpha)) v.emplace_back("alpha must be finite");
    if (!std::isfinite(beta)) v.emplace_back("beta must be finite");
    return v;
}

double DanielsBoundary::eval(double t) const
{
    require_positive_time(t, "Daniels");
    double log_term;
    if (beta == 0.0) {
        // gamma e^{-alpha^2/t} under a square root with nothing to add:
        // take the logarithm analytically instead of letting the exponential underflow.
        log_term = 0.5 * std::log(gamma) - alpha * alpha / (2.0 * t);
    } else {
        const double u = gamma * std::exp(-alpha * alpha / t);
        log_term = std::log(0.5 * beta + std::sqrt(0.25 * beta * beta + u));
    }
    return 0.5 * alpha - (t / alpha) * log_term;
}

double DanielsBoundary::derivative(double t) const
{
    require_positive_time(t, "Daniels");
    return central_difference([this](double s) { return eval(s); }, t, 0.0);
}

std::vector<std::string> DanielsBoundary::violations() const
{
    std::vector<std::string> v;
    if (!(alpha > 0.0)) v.emplace_back("Daniels boundary requires alpha > 0");
    if (!(beta >= 0.0)) v.emplace_back("Daniels boundary requires beta >= 0");
    if (!(gamma > -0.25 * beta * beta)) v.emplace_back("Daniels boundary requires γ > −β²/4");
    return v;
}

double OscillatingBoundary::eval(double t) const
{
    return alpha + beta * std::cos(gamma * t);
}

double OscillatingBoundary::derivative(double t) const
{
    return -beta * gamma * std::sin(gamma * t);
}

std::vector<std::string> OscillatingBoundary::violations() const
{
    std::vector<std::string> v;
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma)) {
        v.emplace_back("oscillating boundary parameters must be finite");
    }
    return v;
}

PeskirGBoundary PeskirGBoundary::with_default_domain(double c)
{
    constexpr int n = 2000;
    constexpr double t_min = 1e-12;
    constexpr double t_max = 0.1;
    double last_ok = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / n);
        if (peskir_argument(c, t) <= 0.0) break;
        last_ok = t;
    }
    if (last_ok == 0.0) {
        throw Error(ErrorKind::DomainError, "g has an empty domain for c = " + fmt(c));
    }
    return PeskirGBoundary{c, std::min(0.1, last_ok)};
}

double PeskirGBoundary::eval(double t) const
{
    if (!(t > 0.0) || !(t < delta_c)) {
        throw Error(ErrorKind::DomainError,
                    "g is defined on (0, " + fmt(delta_c) + "), got t = " + fmt(t));
    }
    const double arg = peskir_argument(c, t);
    if (arg < 0.0) {
        throw Error(ErrorKind::DomainError, "square-root argument of g is negative at t = " + fmt(t));
    }
    return std::sqrt(arg);
}

double PeskirGBoundary::derivative(double t) const
{
    if (!(t > 0.0) || !(t < delta_c)) {
        throw Error(ErrorKind::DomainError, "g is defined on (0, " + fmt(delta_c) + ")");
    }
    double step = 1e-6 * std::max(1.0, t);
    step = std::min({step, 0.5 * t, 0.5 * (delta_c - t)});
    return (eval(t + step) - eval(t - step)) / (2.0 * step);
}

std::vector<std::string> PeskirGBoundary::violations() const
{
    std::vector<std::string> v;
    if (!std::isfinite(c)) v.emplace_back("g requires a finite c");
    if (!(delta_c > 0.0 && delta_c < std::exp(-1.0))) {
        v.emplace_back("g requires 0 < delta_c < 1/e");
    } else if (std::isfinite(c)) {
        // the argument/t decreases in t, so checking the right end covers (0, delta_c]
        if (peskir_argument(c, delta_c) < 0.0) {
            v.emplace_back("square-root argument of g is negative before delta_c");
        }
    }
    return v;
}

PiecewiseLinearBoundary::PiecewiseLinearBoundary(std::vector<Knot> knots)
{
    for (const Knot& k : knots) append(k);
}

void PiecewiseLinearBoundary::append(Knot k)
{
    if (!std::isfinite(k.t) || !std::isfinite(k.level)) {
        throw Error(ErrorKind::DomainError, "knots must be finite");
    }
    if (knots_.empty() && k.t < 0.0) {
        throw Error(ErrorKind::DomainError, "first knot must satisfy t_0 >= 0");
    }
    if (!knots_.empty() && !(k.t > knots_.back().t)) {
        throw Error(ErrorKind::DomainError, "knot times must be strictly increasing");
    }
    knots_.push_back(k);
}

SegmentCoeffs PiecewiseLinearBoundary::segment_coeffs(std::size_t i) const
{
    if (i == 0 || i >= knots_.size()) {
        throw Error(ErrorKind::DomainError, "segment index out of range: " + std::to_string(i));
    }
    const Knot& a = knots_[i - 1];
    const Knot& b = knots_[i];
    const double beta = (b.level - a.level) / (b.t - a.t);
    return {a.level - beta * a.t, beta};
}

std::size_t PiecewiseLinearBoundary::segment_containing(double t) const
{
    if (knots_.size() < 2) {
        throw Error(ErrorKind::DomainError, "piecewise-linear boundary needs two knots");
    }
    const double tol = 1e-12 * std::max(1.0, std::fabs(t));
    if (t < knots_.front().t - tol || t > knots_.back().t + tol) {
        throw Error(ErrorKind::DomainError,
                    "t = " + fmt(t) + " outside [" + fmt(knots_.front().t) + ", " + fmt(knots_.back().t) + "]");
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const Knot& k) { return v < k.t; });
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    return std::clamp<std::size_t>(i, 1, knots_.size() - 1);
}

double PiecewiseLinearBoundary::eval(double t) const
{
    if (knots_.size() == 1) {
        if (t == knots_.front().t) return knots_.front().level;
        throw Error(ErrorKind::DomainError, "single-knot boundary evaluated away from its knot");
    }
    const std::size_t i = segment_containing(t);
    const Knot& a = knots_[i - 1];
    const Knot& b = knots_[i];
    if (t == b.t) return b.level;
    const double w = (t - a.t) / (b.t - a.t);
    return a.level + w * (b.level - a.level);
}

double PiecewiseLinearBoundary::derivative(double t) const
{
    return segment_coeffs(segment_containing(t)).beta;
}

double eval(const Boundary& b, double t)
{
    return std::visit([t](const auto& v) { return v.eval(t); }, b);
}

double derivative(const Boundary& b, double t)
{
    return std::visit([t](const auto& v) { return v.derivative(t); }, b);
}

double level_at_zero(const Boundary& b)
{
    struct Visitor {
        double operator()(const LinearBoundary& v) const { return v.alpha; }
        double operator()(const DanielsBoundary& v) const { return v.beta > 0.0 ? 0.5 * v.alpha : v.alpha; }
        double operator()(const OscillatingBoundary& v) const { return v.alpha + v.beta; }
        double operator()(const PeskirGBoundary&) const { return 0.0; }
        double operator()(const PiecewiseLinearBoundary& v) const
        {
            if (v.knots().empty() || v.knots().front().t != 0.0) {
                throw Error(ErrorKind::DomainError, "piecewise-linear boundary has no knot at t = 0");
            }
            return v.knots().front().level;
        }
    };
    return std::visit(Visitor{}, b);
}

std::vector<std::string> violations(const Boundary& b)
{
    if (const auto* pl = std::get_if<PiecewiseLinearBoundary>(&b)) {
        if (pl->knots().size() < 2) return {"piecewise-linear boundary needs at least two knots"};
        return {};
    }
    return std::visit(
        [](const auto& v) -> std::vector<std::string> {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PiecewiseLinearBoundary>) {
                return {};
            } else {
                return v.violations();
            }
        },
        b);
}

std::string kind_name(const Boundary& b)
{
    struct Visitor {
        std::string operator()(const LinearBoundary&) const { return "linear"; }
        std::string operator()(const DanielsBoundary&) const { return "daniels"; }
        std::string operator()(const OscillatingBoundary&) const { return "oscillating"; }
        std::string operator()(const PeskirGBoundary&) const { return "peskir_g"; }
        std::string operator()(const PiecewiseLinearBoundary&) const { return "piecewise_linear"; }
    };
    return std::visit(Visitor{}, b);
}

PiecewiseLinearBoundary pl_from_sampling(const Boundary& b, std::span<const double> grid)
{
    std::vector<Knot> knots;
    knots.reserve(grid.size());
    for (double t : grid) knots.push_back({t, eval(b, t)});
    return PiecewiseLinearBoundary(std::move(knots));
}

}  // namespace ifpt
