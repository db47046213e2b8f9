// SPDX-License-Identifier: MIT
#include "ifpt/direct.hpp"

#include "ifpt/bridge.hpp"
#include "ifpt/error.hpp"
#include "ifpt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace ifpt {

namespace {

constexpr std::uint64_t kDirectStream = 0x5eed0d1ecULL;

void check_grid(const std::vector<double>& grid)
{
    if (grid.empty()) throw Error(ErrorKind::DomainError, "direct solver needs a non-empty grid");
    double prev = 0.0;
    for (double t : grid) {
        if (!(t > prev)) throw Error(ErrorKind::DomainError, "grid times must be positive and strictly increasing");
        prev = t;
    }
}

DirectResult solve_vie(const Boundary& b, const std::vector<double>& grid);

// Runs once per process. Exact line reproduction, then the Daniels closed form.
void verify_kernel()
{
    static std::once_flag once;
    static bool ok = false;
    static std::string why;
    std::call_once(once, [] {
        try {
            const auto g = uniform_grid(0.05, 2.0);
            const DirectResult lin = solve_vie(LinearBoundary{1.0, 0.3}, g);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double exact = fpt_density_linear(g[i], 1.0, 0.3);
                if (std::fabs((*lin.density_values)[i] - exact) > 1e-10) {
                    why = "linear-boundary exactness failed at t = " + std::to_string(g[i]);
                    return;
                }
            }
            const auto gd = uniform_grid(0.01, 2.0);
            const DirectResult dan = solve_vie(DanielsBoundary{1.0, 0.5, 0.5}, gd);
            for (std::size_t i = 0; i < gd.size(); ++i) {
                if (gd[i] < 0.2 - 1e-12) continue;
                const double exact = fpt_density_daniels(gd[i], 1.0, 0.5, 0.5);
                if (std::fabs((*dan.density_values)[i] - exact) > 0.01 * exact) {
                    why = "Daniels check failed at t = " + std::to_string(gd[i]);
                    return;
                }
            }
            ok = true;
        } catch (const std::exception& e) {
            why = e.what();
        }
    });
    if (!ok) {
        throw Error(ErrorKind::NumericalFailure, "direct integral-equation solver failed self-verification: " + why);
    }
}

DirectResult solve_vie(const Boundary& b, const std::vector<double>& grid)
{
    check_grid(grid);
    if (!(level_at_zero(b) > 0.0)) {
        throw Error(ErrorKind::DomainError, "direct integral-equation solver requires b(0+) > 0");
    }
    const std::size_t n = grid.size();
    std::vector<double> level(n);
    for (std::size_t i = 0; i < n; ++i) level[i] = eval(b, grid[i]);

    // trapezoid weights on 0 = t_0 < t_1 < ... ; the t_0 term carries f(0) = 0
    // and the diagonal kernel value is 0, so only 1 <= j < i contribute.
    std::vector<double> f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid[i];
        double acc = -2.0 * direct_kernel(b, t, 0.0, 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            const double left = j == 0 ? 0.0 : grid[j - 1];
            const double w = 0.5 * (grid[j + 1] - left);
            acc += 2.0 * w * f[j] * direct_kernel(b, t, level[j], grid[j]);
        }
        if (acc < 0.0) {
            if (acc > -1e-10) {
                acc = 0.0;
            } else {
                throw Error(ErrorKind::NumericalFailure,
                            "negative density " + std::to_string(acc) + " at t = " + std::to_string(t), i + 1);
            }
        }
        f[i] = acc;
    }

    DirectResult r;
    r.grid = grid;
    r.interval_masses.resize(n);
    double prev_t = 0.0;
    double prev_f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.interval_masses[i] = 0.5 * (prev_f + f[i]) * (grid[i] - prev_t);
        prev_t = grid[i];
        prev_f = f[i];
    }
    r.density_values = std::move(f);
    return r;
}

}  // namespace

TabulatedDensity DirectResult::as_density() const
{
    if (!density_values) throw Error(ErrorKind::DomainError, "direct result carries no density values");
    std::vector<double> t{0.0};
    std::vector<double> f{0.0};
    t.insert(t.end(), grid.begin(), grid.end());
    f.insert(f.end(), density_values->begin(), density_values->end());
    return TabulatedDensity(std::move(t), std::move(f));
}

std::vector<double> uniform_grid(double h, double t_max)
{
    if (!(h > 0.0) || !(t_max > 0.0)) throw Error(ErrorKind::DomainError, "grid needs h > 0 and t_max > 0");
    const auto n = static_cast<std::size_t>(std::llround(t_max / h));
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) * h;
    return g;
}

double direct_kernel(const Boundary& b, double t, double y, double tau)
{
    const double dt = t - tau;
    const double gap = eval(b, t) - y;
    const double s = std::sqrt(dt);
    return 0.5 * (derivative(b, t) - gap / dt) * std_normal_pdf(gap / s) / s;
}

DirectResult direct_fpt_mc(const Boundary& b, const std::vector<double>& grid, std::size_t m, std::uint64_t seed)
{
    check_grid(grid);
    if (m < 1000) throw Error(ErrorKind::DomainError, "direct Monte Carlo needs at least 1000 paths");
    PathEnsemble paths(m, seed, kDirectStream);
    DirectResult r;
    r.grid = grid;
    r.interval_masses.reserve(grid.size());
    std::vector<double> se;
    se.reserve(grid.size());
    double t_prev = 0.0;
    double c_prev = level_at_zero(b);
    for (double t : grid) {
        const double c = eval(b, t);
        const McEstimate lost = paths.extend(c_prev, c, t - t_prev);
        r.interval_masses.push_back(lost.mean);
        se.push_back(lost.std_error);
        t_prev = t;
        c_prev = c;
    }
    r.std_errors = std::move(se);
    r.surviving_mass = paths.mean_weight();
    return r;
}

DirectResult direct_fpt_vie(const Boundary& b, const std::vector<double>& grid)
{
    verify_kernel();
    return solve_vie(b, grid);
}

}  // namespace ifpt
