// SPDX-License-Identifier: MIT
#include "ifpt/densities.hpp"

#include "ifpt/error.hpp"
#include "ifpt/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace ifpt {

namespace {

constexpr double kSqrt4Pi = 3.544907701811032054596334966682;  // sqrt(4 pi)

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& field, std::size_t line)
{
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || field.empty()) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ": not a number: '" + field + "'");
    }
    return v;
}

double simpson_panel(double a, double fa, double fm, double b, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double fa,
                       double m, double fm, double b, double fb, double whole,
                       double tol, int depth)
{
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_panel(a, fa, flm, m, fm);
    const double right = simpson_panel(m, fm, frm, b, fb);
    const double diff = left + right - whole;
    // roundoff floor: a difference at the level of the sum's own ulp is converged
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::fabs(left + right);
    if (std::fabs(diff) <= 15.0 * std::max(tol, floor)) {
        return left + right + diff / 15.0;
    }
    if (depth <= 0) {
        throw Error(ErrorKind::QuadratureFailure,
                    "adaptive Simpson did not reach tolerance on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
    }
    return simpson_recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

std::string to_string(SmallTimeKind kind)
{
    switch (kind) {
    case SmallTimeKind::Zero: return "Zero";
    case SmallTimeKind::Infinite: return "Infinite";
    case SmallTimeKind::Finite: return "Finite";
    }
    return "Unknown";
}

TabulatedDensity::TabulatedDensity(std::vector<double> t, std::vector<double> f)
    : t_(std::move(t)), f_(std::move(f))
{
    if (t_.size() != f_.size()) {
        throw Error(ErrorKind::LengthMismatch, "tabulated density: t and f lengths differ");
    }
    if (t_.size() < 2) {
        throw Error(ErrorKind::ValidationError, "tabulated density needs at least two knots");
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
        if (!std::isfinite(t_[i]) || !std::isfinite(f_[i])) {
            throw Error(ErrorKind::ValidationError, "tabulated density has a non-finite entry");
        }
        if (f_[i] < 0.0) {
            throw Error(ErrorKind::ValidationError, "tabulated density has a negative value at t = " + std::to_string(t_[i]));
        }
        if (i == 0 && t_[i] < 0.0) {
            throw Error(ErrorKind::ValidationError, "tabulated density starts before t = 0");
        }
        if (i > 0 && !(t_[i] > t_[i - 1])) {
            throw Error(ErrorKind::ValidationError,
                        "tabulated density: t must be strictly increasing (row " + std::to_string(i + 1) + ")");
        }
    }
}

TabulatedDensity TabulatedDensity::parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> t;
    std::vector<double> f;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string s = trim(line);
        if (s.empty()) continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected two columns");
        }
        const std::string a = trim(std::string_view(s).substr(0, comma));
        const std::string b = trim(std::string_view(s).substr(comma + 1));
        if (!header_seen) {
            if (a != "t" || b != "f") {
                throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected header 't,f'");
            }
            header_seen = true;
            continue;
        }
        t.push_back(parse_number(a, line_no));
        f.push_back(parse_number(b, line_no));
    }
    if (!header_seen) throw Error(ErrorKind::ParseError, "empty density table");
    return TabulatedDensity(std::move(t), std::move(f));
}

TabulatedDensity TabulatedDensity::load_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ValidationError, "cannot open density table " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

double TabulatedDensity::eval(double t) const
{
    const double tol = 1e-12 * std::max(1.0, std::fabs(t));
    if (t < t_.front() - tol || t > t_.back() + tol) {
        throw Error(ErrorKind::DomainError, "t = " + std::to_string(t) + " outside the tabulated range");
    }
    if (t <= t_.front()) return f_.front();
    if (t >= t_.back()) return f_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin());
    const double w = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
    return f_[i - 1] + w * (f_[i] - f_[i - 1]);
}

double TabulatedDensity::integral(double s, double t) const
{
    if (s == t) return 0.0;
    const double lo = std::max(s, t_.front());
    const double hi = std::min(t, t_.back());
    eval(s);
    eval(t);
    double sum = 0.0;
    double a = lo;
    double fa = eval(a);
    auto it = std::upper_bound(t_.begin(), t_.end(), a);
    for (; it != t_.end() && *it < hi; ++it) {
        const double b = *it;
        const double fb = f_[static_cast<std::size_t>(it - t_.begin())];
        sum += 0.5 * (fa + fb) * (b - a);
        a = b;
        fa = fb;
    }
    sum += 0.5 * (fa + eval(hi)) * (hi - a);
    return sum;
}

double TabulatedDensity::value_at_zero() const
{
    if (t_.front() == 0.0) return f_.front();
    const double slope = (f_[1] - f_[0]) / (t_[1] - t_[0]);
    return std::max(0.0, f_[0] - slope * t_[0]);
}

double fpt_density_linear(double t, double alpha, double beta, double x0, double t0)
{
    if (!(t > t0)) {
        throw Error(ErrorKind::DomainError, "linear-boundary density requires t > t0");
    }
    const double s = t - t0;
    const double a = alpha - x0;
    return a / (s * std::sqrt(s)) * std_normal_pdf((a + beta * s) / std::sqrt(s));
}

double fpt_cdf_linear(double t, double alpha, double beta)
{
    if (!(t > 0.0)) return 0.0;
    if (!(alpha > 0.0)) return 1.0;
    const double rt = std::sqrt(t);
    const double v = survival((alpha + beta * t) / rt) + exp_times_cdf(-2.0 * alpha * beta, (beta * t - alpha) / rt);
    return std::clamp(v, 0.0, 1.0);
}

double fpt_density_daniels(double t, double alpha, double beta, double gamma)
{
    if (!(t > 0.0)) {
        throw Error(ErrorKind::DomainError, "Daniels density requires t > 0");
    }
    const double d = DanielsBoundary{alpha, beta, gamma}.eval(t);
    const double rt = std::sqrt(t);
    const double v = (std_normal_pdf(d / rt) - 0.5 * beta * std_normal_pdf((d - alpha) / rt)) / (t * rt);
    return std::max(0.0, v);
}

double density(const FptDensity& d, double t)
{
    struct Visitor {
        double t;
        double operator()(const LinearBoundaryDensity& v) const
        {
            return fpt_density_linear(t, v.alpha, v.beta, v.x0, v.t0);
        }
        double operator()(const DanielsDensity& v) const
        {
            return fpt_density_daniels(t, v.alpha, v.beta, v.gamma);
        }
        double operator()(const ExponentialDensity& v) const
        {
            if (t < 0.0) throw Error(ErrorKind::DomainError, "exponential density requires t >= 0");
            return v.lambda * std::exp(-v.lambda * t);
        }
        double operator()(const TabulatedDensity& v) const { return v.eval(t); }
    };
    return std::visit(Visitor{t}, d);
}

double interval_mass(const FptDensity& d, double s, double t)
{
    if (!(s >= 0.0) || !(t >= s)) {
        throw Error(ErrorKind::DomainError, "interval_mass requires 0 <= s <= t");
    }
    if (s == t) return 0.0;
    struct Visitor {
        double s;
        double t;
        double operator()(const LinearBoundaryDensity& v) const
        {
            const double a = v.alpha - v.x0;
            return fpt_cdf_linear(t - v.t0, a, v.beta) - fpt_cdf_linear(s - v.t0, a, v.beta);
        }
        double operator()(const DanielsDensity& v) const
        {
            auto f = [&v](double x) { return fpt_density_daniels(x, v.alpha, v.beta, v.gamma); };
            // dyadic pieces past t = 1 keep long horizons within the depth limit
            double lo = std::max(s, 1e-12);
            double sum = 0.0;
            while (lo < t) {
                const double hi = lo < 1.0 ? std::min(t, 1.0) : std::min(t, 2.0 * lo);
                sum += adaptive_simpson(f, lo, hi);
                lo = hi;
            }
            return sum;
        }
        double operator()(const ExponentialDensity& v) const
        {
            return std::exp(-v.lambda * s) * -std::expm1(-v.lambda * (t - s));
        }
        double operator()(const TabulatedDensity& v) const { return v.integral(s, t); }
    };
    return std::visit(Visitor{s, t}, d);
}

std::vector<std::string> violations(const FptDensity& d)
{
    struct Visitor {
        std::vector<std::string> operator()(const LinearBoundaryDensity& v) const
        {
            std::vector<std::string> out;
            if (!(v.alpha > v.x0)) out.emplace_back("linear-boundary density requires alpha > x0");
            if (!std::isfinite(v.beta)) out.emplace_back("beta must be finite");
            if (!(v.t0 >= 0.0)) out.emplace_back("t0 must be >= 0");
            return out;
        }
        std::vector<std::string> operator()(const DanielsDensity& v) const { return v.boundary().violations(); }
        std::vector<std::string> operator()(const ExponentialDensity& v) const
        {
            if (!(v.lambda > 0.0) || !std::isfinite(v.lambda)) return {"exponential density requires lambda > 0"};
            return {};
        }
        std::vector<std::string> operator()(const TabulatedDensity&) const { return {}; }
    };
    return std::visit(Visitor{}, d);
}

std::string kind_name(const FptDensity& d)
{
    struct Visitor {
        std::string operator()(const LinearBoundaryDensity&) const { return "linear_boundary"; }
        std::string operator()(const DanielsDensity&) const { return "daniels"; }
        std::string operator()(const ExponentialDensity&) const { return "exponential"; }
        std::string operator()(const TabulatedDensity&) const { return "tabulated"; }
    };
    return std::visit(Visitor{}, d);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth)
{
    if (a == b) return 0.0;
    // an initial split keeps narrow peaks from slipping between three samples
    constexpr int panels = 32;
    const double width = (b - a) / panels;
    double sum = 0.0;
    double x0 = a;
    double f0 = f(x0);
    for (int i = 0; i < panels; ++i) {
        const double x2 = i + 1 == panels ? b : a + (i + 1) * width;
        const double x1 = 0.5 * (x0 + x2);
        const double f1 = f(x1);
        const double f2 = f(x2);
        const double whole = simpson_panel(x0, f0, f1, x2, f2);
        sum += simpson_recurse(f, x0, f0, x1, f1, x2, f2, whole, tol / panels, max_depth);
        x0 = x2;
        f0 = f2;
    }
    return sum;
}

double peskir_limit(double c)
{
    return std::exp(-0.5 * c) / kSqrt4Pi;
}

double c_from_kappa(double kappa)
{
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw Error(ErrorKind::DomainError, "c_from_kappa requires kappa > 0");
    }
    return -2.0 * std::log(kappa * kSqrt4Pi);
}

double flux_density(double b, double t)
{
    return b / std::sqrt(2.0 * std::numbers::pi * t * t * t) * std::exp(-b * b / (2.0 * t));
}

double flux_small_time_solve(double f_val, double t, double b_max)
{
    if (!(t > 0.0)) throw Error(ErrorKind::DomainError, "flux equation requires t > 0");
    if (!(f_val > 0.0)) throw Error(ErrorKind::DomainError, "flux equation requires a positive density");
    const double lo = std::sqrt(t);
    const double peak = flux_density(lo, t);
    if (f_val > peak) {
        if (f_val <= peak * (1.0 + 1e-12)) return lo;
        throw Error(ErrorKind::NoSolution,
                    "density " + std::to_string(f_val) + " exceeds the flux maximum " + std::to_string(peak) +
                        " at t = " + std::to_string(t));
    }
    if (!(b_max > lo) || flux_density(b_max, t) > f_val) {
        throw Error(ErrorKind::NoSolution, "flux equation has no sign change on [sqrt t, b_max]");
    }
    auto g = [f_val, t](double b) { return flux_density(b, t) - f_val; };
    return find_root_midpoint(g, {lo, b_max}, 1e-15, 400);
}

SmallTimeClass classify_small_time(const FptDensity& d)
{
    struct Visitor {
        SmallTimeClass operator()(const LinearBoundaryDensity&) const { return {}; }
        SmallTimeClass operator()(const DanielsDensity&) const { return {}; }
        SmallTimeClass operator()(const ExponentialDensity& v) const { return {SmallTimeKind::Finite, v.lambda}; }
        SmallTimeClass operator()(const TabulatedDensity& v) const
        {
            const double f0 = v.value_at_zero();
            if (f0 < 1e-8) return {};
            return {SmallTimeKind::Finite, f0};
        }
    };
    return std::visit(Visitor{}, d);
}

SmallTimeClass classify_small_time(const Boundary& b)
{
    if (const auto* g = std::get_if<PeskirGBoundary>(&b)) {
        return {SmallTimeKind::Finite, peskir_limit(g->c)};
    }
    if (level_at_zero(b) > 0.0) return {};
    return {SmallTimeKind::Infinite, 0.0};
}

double density_at_zero(const FptDensity& d)
{
    const SmallTimeClass cls = classify_small_time(d);
    switch (cls.kind) {
    case SmallTimeKind::Zero: return 0.0;
    case SmallTimeKind::Finite: return cls.kappa;
    case SmallTimeKind::Infinite: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

}  // namespace ifpt
