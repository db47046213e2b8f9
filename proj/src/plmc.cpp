// SPDX-License-Identifier: MIT
#include "ifpt/plmc.hpp"

#include "ifpt/error.hpp"
#include "ifpt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace ifpt {

namespace {

constexpr int kMaxDoublings = 60;
constexpr double kMassCeiling = 1.0 - 1e-9;

double initial_halfwidth(double dt, double beta_prev)
{
    return std::max(5.0, 5.0 / std::sqrt(dt)) * (1.0 + std::fabs(beta_prev));
}

// Expands [-B, B] until g(-B) >= 0 >= g(B) for the decreasing function g.
Bracket expand(const auto& g, double b)
{
    for (int k = 0; k <= kMaxDoublings; ++k) {
        const bool low_ok = g(-b) >= 0.0;
        const bool high_ok = g(b) <= 0.0;
        if (low_ok && high_ok) return {-b, b};
        if (k == kMaxDoublings) {
            throw Error(low_ok ? ErrorKind::NoSignChange : ErrorKind::InfeasibleMass,
                        low_ok ? "target mass too small: slope escapes every bracket"
                               : "target mass exceeds what any slope can produce");
        }
        b *= 2.0;
    }
    return {-b, b};
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::vector<std::string> PlmcConfig::violations() const
{
    std::vector<std::string> v;
    if (!(h > 0.0) || !std::isfinite(h)) v.emplace_back("h must be > 0");
    if (mc_samples < 1000) v.emplace_back("mc_samples must be >= 1000");
    if (!(root_tol > 0.0)) v.emplace_back("root_tol must be > 0");
    if (!(confidence > 0.0 && confidence < 1.0)) v.emplace_back("confidence must lie in (0, 1)");
    if (startup == PlmcStartup::Standard && !b0) v.emplace_back("standard startup requires b0");
    if (b0 && !std::isfinite(*b0)) v.emplace_back("b0 must be finite");
    return v;
}

double normal_quantile_two_sided(double confidence)
{
    return survival_inv(0.5 * (1.0 - confidence));
}

double plmc_step1(double k1, double alpha1, double t1, double root_tol)
{
    if (k1 >= 1.0) throw Error(ErrorKind::InfeasibleMass, "first interval mass must be < 1, got " + num(k1));
    if (!(k1 > 0.0)) throw Error(ErrorKind::NoSignChange, "first interval mass must be > 0, got " + num(k1));
    if (!(alpha1 > 0.0)) throw Error(ErrorKind::DomainError, "first knot level must be > 0");
    auto g = [&](double beta) { return segment_cross_mass_H(beta, 0.0, alpha1, t1) - k1; };
    return find_root_midpoint(g, expand(g, initial_halfwidth(t1, 0.0)), root_tol, 400);
}

StepSolution plmc_step_n(const PathEnsemble& paths, double c_n, double dt, double k_next, double beta_prev,
                         double confidence, double root_tol)
{
    const double ess = paths.ess();
    if (ess < kEssThreshold) {
        throw Error(ErrorKind::DegenerateSample,
                    "effective sample size " + num(ess) + " below " + num(kEssThreshold));
    }
    const double ceiling = paths.mean_weight();
    if (k_next >= ceiling) {
        throw Error(ErrorKind::InfeasibleMass,
                    "target mass " + num(k_next) + " exceeds the attainable " + num(ceiling));
    }
    if (!(k_next > 0.0)) throw Error(ErrorKind::NoSignChange, "target mass must be > 0");

    auto lhs = [&](double beta) { return paths.estimate_mean(beta, c_n, dt); };
    auto g = [&](double beta) { return lhs(beta) - k_next; };
    const Bracket br = expand(g, initial_halfwidth(dt, beta_prev));

    StepSolution s;
    s.beta = find_root_midpoint(g, br, root_tol, 400);
    s.estimate = paths.estimate(s.beta, c_n, dt);

    const double delta = normal_quantile_two_sided(confidence) * s.estimate.std_error;
    // lhs decreases in beta: the larger mass gives the lower slope
    auto solve_shift = [&](double target, double fallback, bool& clipped) {
        auto gs = [&](double beta) { return lhs(beta) - target; };
        if (target >= ceiling || target <= 0.0 || gs(br.lo) < 0.0 || gs(br.hi) > 0.0) {
            clipped = true;
            return fallback;
        }
        return find_root_midpoint(gs, br, root_tol, 400);
    };
    bool clip_lo = false;
    bool clip_hi = false;
    s.ci.lo = std::min(s.beta, solve_shift(k_next + delta, br.lo, clip_lo));
    s.ci.hi = std::max(s.beta, solve_shift(k_next - delta, br.hi, clip_hi));
    s.ci.clipped = clip_lo || clip_hi;
    return s;
}

PlmcResult plmc_solve(const FptDensity& d, const PlmcConfig& cfg)
{
    if (const auto v = cfg.violations(); !v.empty()) {
        std::string msg = "invalid PLMC configuration:";
        for (const auto& s : v) msg += " " + s + ";";
        throw Error(ErrorKind::ConfigError, msg);
    }
    const double h = cfg.h;
    PlmcResult r;
    PathEnsemble paths(cfg.mc_samples, cfg.seed);

    double c_prev = 0.0;
    double alpha_prev = 0.0;
    double beta_prev = 0.0;
    double cumulative = 0.0;
    std::size_t first_mc_step = 1;

    auto push_segment = [&](std::size_t n, double beta, double k) {
        const double t_prev = static_cast<double>(n - 1) * h;
        const double t_n = static_cast<double>(n) * h;
        const double alpha = n == 1 ? c_prev : alpha_prev + (beta_prev - beta) * t_prev;
        const double c_n = c_prev + beta * (t_n - t_prev);
        r.slopes.push_back(beta);
        r.intercepts.push_back(alpha);
        r.target_masses.push_back(k);
        r.boundary.append({t_n, c_n});
        alpha_prev = alpha;
        beta_prev = beta;
        return c_n;
    };

    if (cfg.startup == PlmcStartup::Standard) {
        c_prev = *cfg.b0;
        r.boundary.append({0.0, c_prev});
        if (cfg.b0_is_guess) {
            r.notes.emplace_back("b0 is a guess: the boundary error does not fall below the b0 error");
        }
    } else {
        const SmallTimeClass cls = classify_small_time(d);
        if (cls.kind != SmallTimeKind::Finite) {
            throw Error(ErrorKind::ConfigError, "the g startup needs a density with finite positive f(0+)");
        }
        const PeskirGBoundary g = PeskirGBoundary::with_default_domain(c_from_kappa(cls.kappa));
        if (!(h < g.delta_c)) {
            throw Error(ErrorKind::ConfigError, "h = " + num(h) + " is outside the domain of g (0, " + num(g.delta_c) + ")");
        }
        r.boundary.append({0.0, 0.0});
        if (cfg.n_steps == 0) return r;
        const double k1 = interval_mass(d, 0.0, h);
        const double c1 = g.eval(h);
        cumulative += k1;
        c_prev = push_segment(1, c1 / h, k1);
        r.ci.push_back({c1 / h, c1 / h, false});
        r.std_errors.push_back(0.0);
        // crossings inside (0, t_1) are disregarded: only the endpoint indicator applies
        paths.extend(0.0, c_prev, h, false);
        r.ess_per_step.push_back(paths.ess());
        first_mc_step = 2;
    }

    for (std::size_t n = first_mc_step; n <= cfg.n_steps; ++n) {
        const double t_prev = static_cast<double>(n - 1) * h;
        const double t_n = static_cast<double>(n) * h;
        const double k = interval_mass(d, t_prev, t_n);
        if (cumulative + k > kMassCeiling) {
            r.truncated = true;
            r.notes.emplace_back("stopped before knot " + std::to_string(n) +
                                 ": cumulative target mass reaches 1");
            break;
        }
        cumulative += k;
        try {
            if (n == 1) {
                const double beta = plmc_step1(k, c_prev, h, cfg.root_tol);
                const double c0 = c_prev;
                const double c1 = push_segment(1, beta, k);
                r.ci.push_back({beta, beta, false});
                r.std_errors.push_back(0.0);
                paths.extend(c0, c1, h);
                r.ess_per_step.push_back(static_cast<double>(cfg.mc_samples));
                c_prev = c1;
                continue;
            }
            const StepSolution s = plmc_step_n(paths, c_prev, h, k, beta_prev, cfg.confidence, cfg.root_tol);
            const double c0 = c_prev;
            const double c1 = push_segment(n, s.beta, k);
            r.ci.push_back(s.ci);
            r.std_errors.push_back(s.estimate.std_error);
            r.ess_per_step.push_back(s.estimate.ess);
            paths.extend(c0, c1, h);
            c_prev = c1;
        } catch (const Error& e) {
            throw e.at_knot(n);
        }
    }
    return r;
}

}  // namespace ifpt
