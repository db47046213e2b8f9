// SPDX-License-Identifier: MIT
//
// Randomized invariants. Each case draws a few hundred inputs from a fixed
// mt19937_64 seed so failures reproduce.
#include "ifpt/boundaries.hpp"
#include "ifpt/bridge.hpp"
#include "ifpt/densities.hpp"
#include "ifpt/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ifpt;

namespace {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
};

}  // namespace

TEST_CASE("cdf and survival are complementary and monotone")
{
    Gen g(1);
    for (int i = 0; i < 500; ++i) {
        const double x = g.uniform(-8.0, 8.0);
        const double y = x + g.uniform(1e-6, 2.0);
        CHECK(std::fabs(std_normal_cdf(x) + survival(x) - 1.0) < 1e-15);
        CHECK(std_normal_cdf(y) >= std_normal_cdf(x));
        CHECK(survival(y) <= survival(x));
    }
}

TEST_CASE("bridge weight is a probability and decreases as the paths approach the line")
{
    Gen g(2);
    for (int i = 0; i < 500; ++i) {
        const double c0 = g.uniform(-1.0, 2.0);
        const double c1 = g.uniform(-1.0, 2.0);
        const double dt = g.uniform(1e-4, 1.0);
        const double y0 = c0 - g.uniform(0.0, 2.0);
        const double y1 = c1 - g.uniform(0.0, 2.0);
        const double w = bridge_weight(y0, y1, c0, c1, dt);
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
        CHECK(bridge_weight(y0 - 0.1, y1, c0, c1, dt) >= w);
        CHECK(bridge_weight(y0, y1, c0, c1, dt * 2.0) <= w + 1e-15);
    }
}

TEST_CASE("segment crossing mass is monotone in the slope")
{
    Gen g(3);
    for (int i = 0; i < 300; ++i) {
        const double c = g.uniform(0.0, 2.0);
        const double x = c - g.uniform(1e-3, 2.0);
        const double dt = g.uniform(1e-3, 1.0);
        const double b1 = g.uniform(-20.0, 20.0);
        const double b2 = b1 + g.uniform(1e-3, 5.0);
        const double h1 = segment_cross_mass_H(b1, x, c, dt);
        const double h2 = segment_cross_mass_H(b2, x, c, dt);
        CHECK(h1 >= 0.0);
        CHECK(h1 <= 1.0);
        CHECK(h2 <= h1 + 1e-14);
    }
}

TEST_CASE("interval masses add up")
{
    Gen g(4);
    const FptDensity ds[] = {LinearBoundaryDensity{1.0, 0.3}, DanielsDensity{1.0, 0.5, 0.5}, ExponentialDensity{2.0}};
    for (const FptDensity& d : ds) {
        for (int i = 0; i < 20; ++i) {
            const double s = g.uniform(0.01, 1.0);
            const double m = s + g.uniform(0.01, 1.0);
            const double t = m + g.uniform(0.01, 1.0);
            const double whole = interval_mass(d, s, t);
            CHECK(std::fabs(interval_mass(d, s, m) + interval_mass(d, m, t) - whole) < 1e-8);
            CHECK(density(d, s) >= 0.0);
            CHECK(density(d, t) >= 0.0);
        }
    }
}

TEST_CASE("linear cdf differentiates to the density")
{
    Gen g(5);
    for (int i = 0; i < 200; ++i) {
        const double a = g.uniform(0.2, 2.0);
        const double b = g.uniform(-1.0, 1.0);
        const double t = g.uniform(0.05, 3.0);
        const double e = 1e-5;
        const double num = (fpt_cdf_linear(t + e, a, b) - fpt_cdf_linear(t - e, a, b)) / (2 * e);
        CHECK(std::fabs(num - fpt_density_linear(t, a, b)) < 1e-6 * std::max(1.0, fpt_density_linear(t, a, b)));
    }
}

TEST_CASE("piecewise linear boundary interpolates its knots continuously")
{
    Gen g(6);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Knot> knots{{0.0, g.uniform(0.5, 1.5)}};
        for (int i = 0; i < 8; ++i) knots.push_back({knots.back().t + g.uniform(0.05, 0.5), g.uniform(-1.0, 2.0)});
        const PiecewiseLinearBoundary pl(knots);
        for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
            const double t = knots[i].t;
            CHECK(std::fabs(pl.eval(t) - knots[i].level) < 1e-13);
            CHECK(std::fabs(pl.eval(t - 1e-10) - pl.eval(t + 1e-10)) < 1e-7);
        }
    }
}

TEST_CASE("path estimator decreases in the slope")
{
    PathEnsemble paths(4000, 21);
    paths.extend(1.0, 1.1, 0.2);
    double prev = 2.0;
    for (double beta = -10.0; beta <= 10.0; beta += 0.5) {
        const double v = paths.estimate_mean(beta, 1.1, 0.2);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}
