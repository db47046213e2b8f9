// SPDX-License-Identifier: MIT
#include "ifpt/vie.hpp"

#include "ifpt/error.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ifpt {

namespace {

constexpr int kScanIntervals = 64;
constexpr int kMaxDoublings = 20;
// Below this |G| a bracket-interior minimum without a sign change is read as
// a tangency of G with zero rather than as a missing root. The Euler defect of
// G along the true boundary is O(h) times the local mass, so near-tangencies
// can sit a few 1e-4 above zero at h = 0.01.
constexpr double kTangencyLevel = 1e-3;

double psi(double x)
{
    if (x > 38.0) return 0.0;
    if (x < -38.0) return 1.0;
    return survival(x);
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Scan {
    std::vector<double> x;
    std::vector<double> g;
};

Scan scan(const auto& g, double lo, double hi)
{
    Scan s;
    s.x.resize(kScanIntervals + 1);
    s.g.resize(kScanIntervals + 1);
    for (int k = 0; k <= kScanIntervals; ++k) {
        s.x[k] = k == kScanIntervals ? hi : lo + (hi - lo) * k / kScanIntervals;
        s.g[k] = g(s.x[k]);
    }
    return s;
}

std::vector<int> sign_changes(const Scan& s)
{
    std::vector<int> idx;
    for (int k = 0; k < kScanIntervals; ++k) {
        if (s.g[k] == 0.0 || (s.g[k] < 0.0) != (s.g[k + 1] < 0.0)) idx.push_back(k);
    }
    return idx;
}

}  // namespace

std::string to_string(DiagnosticKind kind)
{
    switch (kind) {
    case DiagnosticKind::MultiRoot: return "MultiRoot";
    case DiagnosticKind::Tangency: return "Tangency";
    case DiagnosticKind::FluxMismatch: return "FluxMismatch";
    }
    return "Unknown";
}

bool VieResult::is_tangency(std::size_t knot) const
{
    return std::any_of(diagnostics.begin(), diagnostics.end(), [knot](const KnotDiagnostic& d) {
        return d.knot == knot && d.kind == DiagnosticKind::Tangency;
    });
}

std::vector<std::string> VieConfig::violations() const
{
    std::vector<std::string> v;
    if (!(h > 0.0) || !std::isfinite(h)) v.emplace_back("h must be > 0");
    if (!(root_tol > 0.0)) v.emplace_back("root_tol must be > 0");
    if (!(flux_epsilon > 0.0)) v.emplace_back("flux_epsilon must be > 0");
    if (bracket_halfwidth && !(*bracket_halfwidth > 0.0)) v.emplace_back("bracket_halfwidth must be > 0");
    if (flux_correction_knots > n) v.emplace_back("flux_correction_knots exceeds the number of knots");
    for (std::size_t i = 1; i <= flux_correction_knots && i <= n; ++i) {
        if (!(static_cast<double>(i) * h < flux_epsilon)) {
            v.emplace_back("corrected knot " + std::to_string(i) + " lies at t >= flux_epsilon");
            break;
        }
    }
    return v;
}

double vie_first_knot(double f1, double t1, double weight)
{
    const double p = weight * f1 * t1;
    if (!(p > 0.0 && p < 1.0)) {
        throw Error(ErrorKind::DomainError,
                    "first-knot equation has no solution: Psi argument " + num(p) + " outside (0, 1)", 1);
    }
    return std::sqrt(t1) * survival_inv(p);
}

VieSystem::VieSystem(const FptDensity& d, const VieConfig& cfg) : cfg_(cfg)
{
    if (const auto v = cfg.violations(); !v.empty()) {
        std::string msg = "invalid VIE configuration:";
        for (const auto& s : v) msg += " " + s + ";";
        throw Error(ErrorKind::ConfigError, msg);
    }
    t_.resize(cfg.n);
    f_.resize(cfg.n);
    sqrt_t_.resize(cfg.n + 1);
    sqrt_t_[0] = 0.0;
    for (std::size_t i = 1; i <= cfg.n; ++i) {
        t_[i - 1] = static_cast<double>(i) * cfg.h;
        sqrt_t_[i] = std::sqrt(t_[i - 1]);
        try {
            f_[i - 1] = density(d, t_[i - 1]);
        } catch (const Error& e) {
            throw e.at_knot(i);
        }
    }
    if (cfg.scheme == VieScheme::Trapezoid) {
        f0_ = density_at_zero(d);
        if (!std::isfinite(f0_)) {
            throw Error(ErrorKind::ConfigError, "trapezoid scheme needs a finite f(0+)");
        }
        if (f0_ > 0.0 && !cfg.b0) {
            throw Error(ErrorKind::ConfigError, "trapezoid scheme with f(0+) > 0 requires b0");
        }
    }
}

double VieSystem::diag_weight() const
{
    // quadrature weight of the j = i node times Psi(0) = 1/2
    return cfg_.scheme == VieScheme::Euler ? 0.5 : 0.25;
}

double VieSystem::residual(const std::vector<double>& prior, std::size_t knot, double b) const
{
    const double h = cfg_.h;
    const std::size_t i = knot;
    double sum = 0.0;
    for (std::size_t j = 1; j < i; ++j) {
        sum += psi((b - prior[j - 1]) / sqrt_t_[i - j]) * f_[j - 1];
    }
    double g = psi(b / sqrt_t_[i]) - h * sum - diag_weight() * h * f_[i - 1];
    if (cfg_.scheme == VieScheme::Trapezoid && f0_ > 0.0) {
        g -= 0.5 * h * f0_ * psi((b - *cfg_.b0) / sqrt_t_[i]);
    }
    return g;
}

VieSystem::KnotSolve VieSystem::solve_knot(const std::vector<double>& prior, std::size_t knot) const
{
    if (knot == 0 || knot > size() || prior.size() + 1 < knot) {
        throw Error(ErrorKind::DomainError, "knot index out of range", knot);
    }
    const bool closed_first = cfg_.scheme == VieScheme::Euler || f0_ == 0.0;
    if (knot == 1 && closed_first) {
        return {vie_first_knot(f_[0], t_[0], diag_weight()), std::nullopt};
    }

    const double h = cfg_.h;
    double mass = 0.0;
    for (std::size_t j = 1; j < knot; ++j) mass += f_[j - 1];
    mass += (cfg_.scheme == VieScheme::Euler ? 1.0 : 0.5) * f_[knot - 1];
    if (cfg_.scheme == VieScheme::Trapezoid) mass += 0.5 * f0_;
    if (h * mass >= 1.0) {
        throw Error(ErrorKind::MassOverflow,
                    "discretized mass " + num(h * mass) + " reaches 1: the knot equation has no root", knot);
    }

    auto g = [&](double b) { return residual(prior, knot, b); };
    const double center = knot == 1 ? *cfg_.b0 : prior[knot - 2];
    double w = cfg_.bracket_halfwidth.value_or(5.0 * std::sqrt(h) + 0.5);
    const double tol = std::max(1e-15, 1e-4 * cfg_.root_tol);

    auto pick = [&](const Scan& s, const std::vector<int>& idx) -> KnotSolve {
        int best = idx.front();
        for (int k : idx) {
            const double dk = std::fabs(0.5 * (s.x[k] + s.x[k + 1]) - center);
            const double db = std::fabs(0.5 * (s.x[best] + s.x[best + 1]) - center);
            if (dk < db) best = k;
        }
        KnotSolve out;
        out.b = s.g[best] == 0.0 ? s.x[best] : find_root_midpoint(g, {s.x[best], s.x[best + 1]}, tol, 400);
        if (idx.size() > 1) {
            std::string roots;
            for (int k : idx) roots += " " + num(0.5 * (s.x[k] + s.x[k + 1]));
            out.diagnostic = KnotDiagnostic{knot, DiagnosticKind::MultiRoot,
                                            std::to_string(idx.size()) + " sign changes near" + roots};
        }
        return out;
    };

    Scan s = scan(g, center - w, center + w);
    std::vector<int> idx = sign_changes(s);
    if (!idx.empty()) return pick(s, idx);

    // no sign change next to the previous knot: a near-zero local minimum of
    // |G| means G touches zero there; take the one nearest the previous knot
    int kmin = -1;
    for (int k = 1; k < kScanIntervals; ++k) {
        const double a = std::fabs(s.g[k]);
        if (a > kTangencyLevel || a > std::fabs(s.g[k - 1]) || a > std::fabs(s.g[k + 1])) continue;
        if (kmin < 0 || std::fabs(s.x[k] - center) < std::fabs(s.x[kmin] - center)) kmin = k;
    }
    if (kmin > 0) {
        const auto [bmin, gmin] = boost::math::tools::brent_find_minima(
            [&](double b) { return std::fabs(g(b)); }, s.x[kmin - 1], s.x[kmin + 1],
            std::numeric_limits<double>::digits / 2);
        return {bmin, KnotDiagnostic{knot, DiagnosticKind::Tangency,
                                     "no sign change; |G| minimised to " + num(gmin) + " at b = " + num(bmin)}};
    }

    for (int k = 0; k < kMaxDoublings; ++k) {
        w *= 2.0;
        s = scan(g, center - w, center + w);
        idx = sign_changes(s);
        if (!idx.empty()) return pick(s, idx);
    }
    throw Error(ErrorKind::NoSignChange, "no root of the knot equation within +-" + num(w) + " of " + num(center),
                knot);
}

namespace {

VieResult solve_with_prefix(const VieSystem& sys, const VieConfig& cfg, std::vector<double> prefix)
{
    VieResult r;
    r.corrected_knots = prefix.size();
    r.b_star = std::move(prefix);
    r.b_star.reserve(sys.size());
    for (std::size_t knot = r.b_star.size() + 1; knot <= sys.size(); ++knot) {
        try {
            auto ks = sys.solve_knot(r.b_star, knot);
            r.b_star.push_back(ks.b);
            if (ks.diagnostic) r.diagnostics.push_back(*ks.diagnostic);
        } catch (const Error& e) {
            throw e.at_knot(knot);
        }
    }
    r.grid.resize(sys.size());
    r.residuals.resize(sys.size());
    for (std::size_t knot = 1; knot <= sys.size(); ++knot) {
        r.grid[knot - 1] = sys.t(knot);
        r.residuals[knot - 1] = sys.residual(r.b_star, knot, r.b_star[knot - 1]);
    }
    // reliability of the small-time relation at the corrected knots
    for (std::size_t knot = 1; knot <= r.corrected_knots; ++knot) {
        const double t = sys.t(knot);
        const double b = r.b_star[knot - 1];
        double slope = 0.0;
        if (sys.size() >= 2) {
            slope = knot < sys.size() ? (r.b_star[knot] - b) / cfg.h : (b - r.b_star[knot - 2]) / cfg.h;
        }
        const double f_hat = (b / t - slope) * std_normal_pdf(b / std::sqrt(t)) / std::sqrt(t);
        const double rel = std::fabs(f_hat - sys.f(knot)) / sys.f(knot);
        if (rel > 0.05) {
            r.diagnostics.push_back({knot, DiagnosticKind::FluxMismatch,
                                     "small-time relation off by " + num(100.0 * rel) + "% at t = " + num(t)});
        }
    }
    std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(),
                     [](const KnotDiagnostic& a, const KnotDiagnostic& b) { return a.knot < b.knot; });
    return r;
}

}  // namespace

VieResult vie_solve(const FptDensity& d, const VieConfig& cfg)
{
    if (cfg.flux_correction_knots > 0) return vie_flux_correct(VieResult{}, d, cfg);
    const VieSystem sys(d, cfg);
    return solve_with_prefix(sys, cfg, {});
}

VieResult vie_flux_correct(const VieResult& result, const FptDensity& d, const VieConfig& cfg)
{
    if (cfg.flux_correction_knots == 0) return result;
    const VieSystem sys(d, cfg);
    std::vector<double> prefix;
    for (std::size_t knot = 1; knot <= cfg.flux_correction_knots; ++knot) {
        try {
            prefix.push_back(flux_small_time_solve(sys.f(knot), sys.t(knot)));
        } catch (const Error& e) {
            throw e.at_knot(knot);
        }
    }
    return solve_with_prefix(sys, cfg, std::move(prefix));
}

}  // namespace ifpt
