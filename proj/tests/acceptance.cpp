// SPDX-License-Identifier: MIT
//
// End-to-end acceptance checks. `acceptance --criterion N` runs one check and
// prints a single PASS/FAIL line; without arguments every check runs.
#include "oracles.hpp"

#include "ifpt/bench.hpp"
#include "ifpt/boundaries.hpp"
#include "ifpt/bridge.hpp"
#include "ifpt/densities.hpp"
#include "ifpt/direct.hpp"
#include "ifpt/error.hpp"
#include "ifpt/io.hpp"
#include "ifpt/numerics.hpp"
#include "ifpt/plmc.hpp"
#include "ifpt/vie.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ifpt;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) pass = false;
        detail << (ok ? "" : "[x] ") << what << "; ";
    }
};

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

VieConfig vie_config(double h, double t_max, VieScheme scheme = VieScheme::Euler)
{
    VieConfig c;
    c.h = h;
    c.n = static_cast<std::size_t>(std::llround(t_max / h));
    c.scheme = scheme;
    return c;
}

PlmcConfig plmc_config(double h, double t_max, std::size_t m, std::uint64_t seed, double b0)
{
    PlmcConfig c;
    c.h = h;
    c.n_steps = static_cast<std::size_t>(std::llround(t_max / h));
    c.mc_samples = m;
    c.seed = seed;
    c.b0 = b0;
    return c;
}

std::vector<double> pl_times(const PlmcResult& r)
{
    std::vector<double> t;
    for (const Knot& k : r.boundary.knots()) t.push_back(k.t);
    return t;
}

std::vector<double> pl_levels(const PlmcResult& r)
{
    std::vector<double> b;
    for (const Knot& k : r.boundary.knots()) b.push_back(k.level);
    return b;
}

double plmc_sigma(const Boundary& truth, const PlmcResult& r)
{
    return mean_square_deviation(truth, pl_times(r), pl_levels(r)).sigma;
}

const DanielsDensity kDaniels[] = {{1.0, 0.5, 0.5}, {1.0, 1.0, 0.5}};

// reference VIE errors for the two Daniels sets
const double kVieSigma[] = {4.3e-5, 4.6e-5};

Verdict criterion1()
{
    Verdict v;
    for (int i = 0; i < 2; ++i) {
        const DanielsDensity& d = kDaniels[i];
        const VieResult r = vie_solve(d, vie_config(0.01, 2.0));
        const double s = mean_square_deviation(d.boundary(), r.grid, r.b_star).sigma;
        v.require(s <= 3.0 * kVieSigma[i] && s >= kVieSigma[i] / 3.0,
                  "daniels beta=" + fmt(d.beta) + " sigma=" + fmt(s) + " ref=" + fmt(kVieSigma[i]));
    }
    return v;
}

Verdict criterion2()
{
    Verdict v;
    for (const DanielsDensity& d : kDaniels) {
        const PlmcResult r = plmc_solve(d, plmc_config(0.2, 2.0, 10000, 0, d.alpha / 2.0));
        const double s = plmc_sigma(d.boundary(), r);
        v.require(s < 5e-4, "daniels beta=" + fmt(d.beta) + " sigma=" + fmt(s));
    }
    return v;
}

Verdict criterion3()
{
    Verdict v;
    for (const BenchCase& c : reference_cases()) {
        if (c.density) continue;
        const FptDensity d = case_density(c);
        const BenchCell p = run_plmc_cell(c, d, 0.2, 10000, 0);
        const BenchCell e = run_vie_cell(c, d, 0.01);
        v.require(p.report.sigma < 5e-2, c.name + " plmc sigma=" + fmt(p.report.sigma));
        v.require(e.report.sigma < 5e-2, c.name + " vie sigma=" + fmt(e.report.sigma));
    }
    return v;
}

Verdict criterion4()
{
    Verdict v;
    const std::vector<double> hs{0.04, 0.02, 0.01};
    for (const DanielsDensity& d : kDaniels) {
        const Boundary truth = d.boundary();
        auto max_err = [&](VieScheme s) {
            return [&, s](double h) {
                // max-knot error past the small-time zone
                const VieResult r = vie_solve(d, vie_config(h, 2.0, s));
                return max_abs_error_from(mean_square_deviation(truth, r.grid, r.b_star), r.grid, 0.5);
            };
        };
        const double se = convergence_order(max_err(VieScheme::Euler), hs).slope;
        const double st = convergence_order(max_err(VieScheme::Trapezoid), hs).slope;
        const std::string tag = "daniels beta=" + fmt(d.beta);
        v.require(se >= 0.7 && se <= 1.3, tag + " euler slope=" + fmt(se));
        v.require(st >= 1.6 && st <= 2.4, tag + " trapezoid slope=" + fmt(st));
    }
    return v;
}

Verdict criterion5()
{
    Verdict v;
    const DanielsDensity d = kDaniels[0];
    const Boundary truth = d.boundary();
    const double b0 = d.alpha / 2.0;
    const std::size_t m = 1000000;

    auto max_err = [&](double h, double start) {
        const PlmcResult r = plmc_solve(d, plmc_config(h, 2.0, m, 0, start));
        return mean_square_deviation(truth, pl_times(r), pl_levels(r));
    };
    const double e1 = max_err(0.2, b0).max_abs_error;
    const double e2 = max_err(0.1, b0).max_abs_error;
    v.require(e1 / e2 >= 2.5, "exact b0 error h=0.2 " + fmt(e1) + " h=0.1 " + fmt(e2) + " ratio=" + fmt(e1 / e2));

    const double delta = 0.05;
    for (double h : {0.2, 0.1, 0.05}) {
        const ErrorReport r = max_err(h, b0 + delta);
        const double last = std::fabs(r.per_knot_error.back());
        v.require(last >= 0.2 * delta, "perturbed h=" + fmt(h) + " final error=" + fmt(last));
    }
    return v;
}

Verdict criterion6()
{
    Verdict v;
    // slope confidence intervals on a straight-line target, first Monte Carlo step
    const LinearBoundaryDensity line{1.0, 0.3};
    int covered = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const PlmcResult r = plmc_solve(line, plmc_config(0.2, 0.4, 10000, seed, 1.0));
        const SlopeInterval& ci = r.ci.at(1);
        if (ci.lo <= line.beta && line.beta <= ci.hi) ++covered;
    }
    v.require(covered >= 16, "ci coverage " + std::to_string(covered) + "/20");

    // the kernel vanishes on straight lines, so the direct solve is exact
    double worst = 0.0;
    for (const auto& [a, b] : {std::pair{1.0, 0.3}, std::pair{0.8, -0.4}, std::pair{1.5, 0.0}}) {
        const std::vector<double> grid = uniform_grid(0.01, 2.0);
        const DirectResult r = direct_fpt_vie(LinearBoundary{a, b}, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst, std::fabs((*r.density_values)[i] - oracle::bachelier(grid[i], a, b)));
        }
    }
    v.require(worst <= 1e-10, "direct vie on lines max diff=" + fmt(worst));
    return v;
}

Verdict criterion7()
{
    Verdict v;
    for (double kappa : {0.1, 1.0, 5.0}) {
        const double back = peskir_limit(c_from_kappa(kappa));
        v.require(std::fabs(back - kappa) <= 1e-12, "kappa=" + fmt(kappa) + " diff=" + fmt(std::fabs(back - kappa)));
    }
    const double c1 = c_from_kappa(1.0);
    const double expected = -std::log(4.0 * M_PI);
    v.require(std::fabs(c1 - expected) <= 1e-12, "c(1)=" + fmt(c1) + " vs -log(4 pi)");
    return v;
}

Verdict criterion8()
{
    Verdict v;
    const ShiryaevReport r = shiryaev_compare(0.01, 1.0, 10000, 0);
    v.require(r.max_discrepancy <= 0.05, "max discrepancy on [0.1, 1]=" + fmt(r.max_discrepancy));
    v.require(r.plmc_rise_then_fall, "plmc rise then fall");
    v.require(r.vie_rise_then_fall, "vie rise then fall");
    return v;
}

Verdict criterion9()
{
    Verdict v;
    const std::size_t m = 100000;
    for (const DanielsDensity& d : kDaniels) {
        const std::string tag = "daniels beta=" + fmt(d.beta);
        const VieResult r = vie_solve(d, vie_config(0.01, 2.0));
        std::vector<double> masses;
        double prev = 0.0;
        for (double t : r.grid) {
            masses.push_back(interval_mass(d, prev, t));
            prev = t;
        }
        const RoundTripReport rv =
            round_trip(knots_to_boundary(d.alpha / 2.0, r.grid, r.b_star), masses, {}, m, 7, kDefaultRootTol);
        v.require(rv.fraction() >= 0.95, tag + " vie covered " + std::to_string(rv.covered) + "/" + std::to_string(rv.total));

        const PlmcResult p = plmc_solve(d, plmc_config(0.2, 2.0, 10000, 0, d.alpha / 2.0));
        const RoundTripReport rp = round_trip(p.boundary, p.target_masses, p.std_errors, m, 7, kDefaultRootTol);
        v.require(rp.fraction() >= 0.95,
                  tag + " plmc covered " + std::to_string(rp.covered) + "/" + std::to_string(rp.total));
    }
    return v;
}

Verdict criterion10()
{
    Verdict v;
    std::mt19937_64 rng(2024);
    auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

    double normal_gap = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double x = u(-10.0, 10.0);
        normal_gap = std::max(normal_gap, std::fabs(std_normal_cdf(x) + survival(x) - 1.0));
        normal_gap = std::max(normal_gap, std::fabs(survival(x) - oracle::Psi(x)));
    }
    v.require(normal_gap <= 1e-14, "normal identities gap=" + fmt(normal_gap));

    bool bridge_ok = true;
    bool h_ok = true;
    for (int i = 0; i < 2000; ++i) {
        const double c0 = u(-1.0, 2.0), c1 = u(-1.0, 2.0), dt = u(1e-4, 1.0);
        const double w = bridge_weight(c0 - u(0.0, 2.0), c1 - u(0.0, 2.0), c0, c1, dt);
        bridge_ok = bridge_ok && w >= 0.0 && w <= 1.0;
        const double x = c0 - u(1e-3, 2.0), beta = u(-20.0, 20.0);
        h_ok = h_ok && segment_cross_mass_H(beta + u(1e-3, 5.0), x, c0, dt) <= segment_cross_mass_H(beta, x, c0, dt) + 1e-14;
    }
    v.require(bridge_ok, "bridge weight in [0, 1]");
    v.require(h_ok, "crossing mass decreasing in slope");

    const DanielsDensity d = kDaniels[0];
    const PlmcResult p = plmc_solve(d, plmc_config(0.2, 2.0, 5000, 3, 0.5));
    double continuity = 0.0;
    // segment i is alpha_i + beta_i t; neighbours meet at their shared knot
    const auto& knots = p.boundary.knots();
    for (std::size_t n = 0; n < p.intercepts.size(); ++n) {
        const double t = knots[n + 1].t;
        continuity = std::max(continuity, std::fabs(p.intercepts[n] + p.slopes[n] * t - knots[n + 1].level));
        if (n + 1 < p.intercepts.size()) {
            const double next = p.intercepts[n] + (p.slopes[n] - p.slopes[n + 1]) * t;
            continuity = std::max(continuity, std::fabs(p.intercepts[n + 1] - next));
        }
    }
    v.require(continuity <= 1e-12, "intercept continuity gap=" + fmt(continuity));

    const VieConfig vc = vie_config(0.01, 2.0);
    const VieResult r = vie_solve(d, vc);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        if (!r.is_tangency(i + 1)) worst = std::max(worst, std::fabs(r.residuals[i]));
    }
    v.require(worst <= vc.root_tol, "vie residual max=" + fmt(worst));

    auto csv_of = [&](const char* threads) {
        ::setenv("IFPT_THREADS", threads, 1);
        const PlmcResult q = plmc_solve(d, plmc_config(0.2, 2.0, 20000, 9, 0.5));
        CsvWriter csv({"t", "b_hat"});
        for (const Knot& k : q.boundary.knots()) csv.row({format_double(k.t), format_double(k.level)});
        return csv.str();
    };
    const std::string one = csv_of("1");
    const std::string four = csv_of("4");
    const std::string again = csv_of("1");
    ::unsetenv("IFPT_THREADS");
    v.require(one == four && one == again, "csv identical across reruns and thread counts");
    return v;
}

const std::function<Verdict()> kCriteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                              criterion6, criterion7, criterion8, criterion9, criterion10};

bool run_one(int n)
{
    Verdict v;
    try {
        v = kCriteria[n - 1]();
    } catch (const Error& e) {
        v.pass = false;
        v.detail << "error kind=" << to_string(e.kind()) << ": " << e.what();
    }
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail.str() << ")" << std::endl;
    return v.pass;
}

}  // namespace

int main(int argc, char** argv)
{
    if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
        const int n = std::atoi(argv[2]);
        if (n < 1 || n > 10) {
            std::cerr << "criterion must be 1..10\n";
            return 2;
        }
        return run_one(n) ? 0 : 1;
    }
    if (argc != 1) {
        std::cerr << "usage: acceptance [--criterion N]\n";
        return 2;
    }
    bool all = true;
    for (int n = 1; n <= 10; ++n) all = run_one(n) && all;
    return all ? 0 : 1;
}
