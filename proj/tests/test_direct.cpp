// SPDX-License-Identifier: MIT
#include "oracles.hpp"

#include "ifpt/direct.hpp"
#include "ifpt/error.hpp"

#include <doctest.h>

using namespace ifpt;

TEST_CASE("direct Monte Carlo on a constant boundary")
{
    const std::vector<double> grid{0.5, 1.0};
    const DirectResult r = direct_fpt_mc(Boundary{LinearBoundary{1.0, 0.0}}, grid, 100000, 1);
    const double m1 = 2.0 * oracle::Psi(1.0 / std::sqrt(0.5));
    const double m2 = 2.0 * oracle::Psi(1.0) - m1;
    CHECK(std::fabs(r.interval_masses[0] - m1) <= 3.0 * (*r.std_errors)[0]);
    CHECK(std::fabs(r.interval_masses[1] - m2) <= 3.0 * (*r.std_errors)[1]);
    CHECK(r.interval_masses[0] + r.interval_masses[1] + r.surviving_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direct Monte Carlo with a far boundary")
{
    const DirectResult r = direct_fpt_mc(Boundary{LinearBoundary{1e9, 0.0}}, uniform_grid(0.1, 1.0), 1000, 2);
    for (double m : r.interval_masses) CHECK(m == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("direct Monte Carlo on the Daniels boundary")
{
    const auto grid = uniform_grid(0.05, 2.0);
    const DirectResult r = direct_fpt_mc(Boundary{DanielsBoundary{1.0, 0.5, 0.5}}, grid, 1000000, 3);
    int within = 0;
    double prev = 0.0;
    double total = r.surviving_mass;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double exact = oracle::integrate([](double t) { return oracle::daniels_density(t, 1, 0.5, 0.5); },
                                               std::max(prev, 1e-12), grid[i]);
        // chord bias: O(h^2) in level, proportional to the interval mass
        if (std::fabs(r.interval_masses[i] - exact) <= 3.0 * (*r.std_errors)[i] + 0.02 * exact) ++within;
        prev = grid[i];
        total += r.interval_masses[i];
    }
    CHECK(within >= 38);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("direct integral equation is exact on lines")
{
    const auto grid = uniform_grid(0.01, 2.0);
    for (const auto [a, b] : {std::pair{1.0, 0.0}, std::pair{1.0, 0.3}, std::pair{2.0, -0.4}}) {
        const DirectResult r = direct_fpt_vie(Boundary{LinearBoundary{a, b}}, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::fabs((*r.density_values)[i] - oracle::bachelier(grid[i], a, b)) <= 1e-10);
        }
    }
    const std::vector<double> one{1.0};
    CHECK((*direct_fpt_vie(Boundary{LinearBoundary{1.0, 0.0}}, one).density_values)[0] ==
          doctest::Approx(0.24197072451914337).epsilon(1e-14));
}

TEST_CASE("direct integral equation on the Daniels boundary")
{
    auto max_rel = [](double h) {
        const auto grid = uniform_grid(h, 2.0);
        const DirectResult r = direct_fpt_vie(Boundary{DanielsBoundary{1.0, 0.5, 0.5}}, grid);
        double m = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] < 0.2 - 1e-12) continue;
            const double exact = oracle::daniels_density(grid[i], 1, 0.5, 0.5);
            m = std::max(m, std::fabs((*r.density_values)[i] - exact) / exact);
        }
        return m;
    };
    const double e02 = max_rel(0.02);
    const double e01 = max_rel(0.01);
    const double e005 = max_rel(0.005);
    CHECK(e01 < 0.01);
    CHECK(e02 / e01 >= 2.0);
    CHECK(e02 / e01 <= 6.0);
    CHECK(e01 / e005 >= 2.0);
    CHECK(e01 / e005 <= 6.0);
}

TEST_CASE("direct integral equation guards")
{
    CHECK_THROWS_AS(direct_fpt_vie(Boundary{LinearBoundary{0.0, 1.0}}, uniform_grid(0.1, 1.0)), Error);
    CHECK_THROWS_AS(direct_fpt_mc(Boundary{LinearBoundary{1.0, 0.0}}, {0.5, 0.4}, 1000, 0), Error);
    const DirectResult r = direct_fpt_vie(Boundary{OscillatingBoundary{1.0, 0.5, 2.0}}, uniform_grid(0.01, 2.0));
    for (double f : *r.density_values) CHECK(f >= 0.0);
    const TabulatedDensity tab = r.as_density();
    CHECK(tab.times().front() == 0.0);
    CHECK(tab.values().front() == 0.0);
}
