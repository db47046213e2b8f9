// SPDX-License-Identifier: MIT
#include "ifpt/bench.hpp"

#include "ifpt/direct.hpp"
#include "ifpt/error.hpp"
#include "ifpt/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace ifpt {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ErrorReport mean_square_deviation(const Boundary& truth, std::span<const double> grid,
                                  std::span<const double> estimate)
{
    if (grid.size() != estimate.size()) {
        throw Error(ErrorKind::LengthMismatch, "grid has " + std::to_string(grid.size()) + " knots, estimate " +
                                                   std::to_string(estimate.size()));
    }
    ErrorReport r;
    r.per_knot_error.reserve(grid.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double b = grid[j] == 0.0 ? level_at_zero(truth) : eval(truth, grid[j]);
        const double e = b - estimate[j];
        r.per_knot_error.push_back(e);
        sum += e * e;
        r.max_abs_error = std::max(r.max_abs_error, std::fabs(e));
        if (grid[j] > 0.0) ++r.n;
    }
    r.sigma = r.n ? sum / static_cast<double>(r.n) : 0.0;
    return r;
}

double max_abs_error_from(const ErrorReport& report, std::span<const double> grid, double t_min)
{
    double m = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (grid[j] >= t_min - 1e-12) m = std::max(m, std::fabs(report.per_knot_error.at(j)));
    }
    return m;
}

OrderEstimate convergence_order(std::vector<double> h_values, std::vector<double> errors)
{
    if (h_values.size() != errors.size()) throw Error(ErrorKind::LengthMismatch, "h and error lists differ");
    if (h_values.size() < 3) throw Error(ErrorKind::DomainError, "order estimate needs at least three h values");
    for (std::size_t i = 1; i < h_values.size(); ++i) {
        if (!(h_values[i] < h_values[i - 1])) throw Error(ErrorKind::DomainError, "h values must strictly decrease");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(h_values.size());
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        if (!(errors[i] > 0.0)) throw Error(ErrorKind::DomainError, "errors must be positive for a log-log fit");
        const double x = std::log(h_values[i]);
        const double y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    OrderEstimate o;
    o.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    o.h_values = std::move(h_values);
    o.errors = std::move(errors);
    return o;
}

OrderEstimate convergence_order(const std::function<double(double)>& max_error, std::vector<double> h_values)
{
    std::vector<double> errors;
    for (double h : h_values) {
        try {
            errors.push_back(max_error(h));
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " (h = " + format_double(h) + ")", e.knot());
        }
    }
    return convergence_order(std::move(h_values), std::move(errors));
}

PiecewiseLinearBoundary knots_to_boundary(double b0, std::span<const double> grid, std::span<const double> levels)
{
    if (grid.size() != levels.size()) throw Error(ErrorKind::LengthMismatch, "grid and levels differ in length");
    std::vector<Knot> k{{0.0, b0}};
    for (std::size_t i = 0; i < grid.size(); ++i) k.push_back({grid[i], levels[i]});
    return PiecewiseLinearBoundary(std::move(k));
}

RoundTripReport round_trip(const PiecewiseLinearBoundary& recovered, std::span<const double> target_masses,
                           std::span<const double> solver_std_errors, std::size_t m, std::uint64_t seed,
                           double root_tol)
{
    const auto& knots = recovered.knots();
    if (knots.size() != target_masses.size() + 1) {
        throw Error(ErrorKind::LengthMismatch, "one target mass per recovered segment expected");
    }
    std::vector<double> grid;
    for (std::size_t i = 1; i < knots.size(); ++i) grid.push_back(knots[i].t);
    const DirectResult mc = direct_fpt_mc(Boundary{recovered}, grid, m, seed);
    RoundTripReport r;
    r.total = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double se_solver = i < solver_std_errors.size() ? solver_std_errors[i] : 0.0;
        const double se = std::hypot((*mc.std_errors)[i], se_solver);
        if (std::fabs(mc.interval_masses[i] - target_masses[i]) <= 3.0 * se + root_tol) ++r.covered;
    }
    return r;
}

std::vector<BenchCase> reference_cases()
{
    return {
        {"daniels_1_0.5_0.5", DanielsBoundary{1.0, 0.5, 0.5}, FptDensity{DanielsDensity{1.0, 0.5, 0.5}}},
        {"daniels_1_1_0.5", DanielsBoundary{1.0, 1.0, 0.5}, FptDensity{DanielsDensity{1.0, 1.0, 0.5}}},
        {"oscillating_1_0.5_2", OscillatingBoundary{1.0, 0.5, 2.0}, std::nullopt},
        {"oscillating_1_1_2", OscillatingBoundary{1.0, 1.0, 2.0}, std::nullopt},
    };
}

FptDensity case_density(const BenchCase& c, double h_table)
{
    if (c.density) return *c.density;
    return direct_fpt_vie(c.truth, uniform_grid(h_table, 2.0)).as_density();
}

BenchCell run_plmc_cell(const BenchCase& c, const FptDensity& d, double h, std::size_t m, std::uint64_t seed,
                        double t_max)
{
    const auto start = std::chrono::steady_clock::now();
    PlmcConfig cfg;
    cfg.h = h;
    cfg.n_steps = static_cast<std::size_t>(std::llround(t_max / h));
    cfg.mc_samples = m;
    cfg.seed = seed;
    cfg.b0 = level_at_zero(c.truth);
    const PlmcResult r = plmc_solve(d, cfg);

    BenchCell cell;
    cell.case_name = c.name;
    cell.method = "plmc";
    cell.h = h;
    cell.m = m;
    for (const Knot& k : r.boundary.knots()) {
        cell.t.push_back(k.t);
        cell.b_hat.push_back(k.level);
        cell.b_true.push_back(k.t == 0.0 ? level_at_zero(c.truth) : eval(c.truth, k.t));
    }
    cell.report = mean_square_deviation(c.truth, cell.t, cell.b_hat);
    cell.notes = r.notes;
    cell.runtime_seconds = seconds_since(start);
    return cell;
}

BenchCell run_vie_cell(const BenchCase& c, const FptDensity& d, double h, VieScheme scheme, double t_max)
{
    const auto start = std::chrono::steady_clock::now();
    VieConfig cfg;
    cfg.h = h;
    cfg.n = static_cast<std::size_t>(std::llround(t_max / h));
    cfg.scheme = scheme;
    cfg.b0 = level_at_zero(c.truth);
    const VieResult r = vie_solve(d, cfg);

    BenchCell cell;
    cell.case_name = c.name;
    cell.method = scheme == VieScheme::Euler ? "vie" : "vie_trapezoid";
    cell.h = h;
    cell.t = r.grid;
    cell.b_hat = r.b_star;
    for (double t : r.grid) cell.b_true.push_back(eval(c.truth, t));
    cell.report = mean_square_deviation(c.truth, cell.t, cell.b_hat);
    for (const auto& diag : r.diagnostics) {
        cell.notes.push_back("knot " + std::to_string(diag.knot) + " " + to_string(diag.kind) + ": " + diag.message);
    }
    cell.runtime_seconds = seconds_since(start);
    return cell;
}

std::vector<BenchCell> run_reference_suite(std::uint64_t seed)
{
    std::vector<BenchCell> cells;
    for (const BenchCase& c : reference_cases()) {
        const FptDensity d = case_density(c);
        cells.push_back(run_plmc_cell(c, d, 0.2, 10000, seed));
        cells.push_back(run_vie_cell(c, d, 0.01));
    }
    return cells;
}

std::string cell_csv(const BenchCell& cell)
{
    CsvWriter csv({"t", "b_true", "b_hat", "err"});
    for (std::size_t i = 0; i < cell.t.size(); ++i) {
        csv.row({format_double(cell.t[i]), format_double(cell.b_true[i]), format_double(cell.b_hat[i]),
                 format_double(cell.report.per_knot_error[i])});
    }
    return csv.str();
}

void write_bench(const std::vector<BenchCell>& cells, const std::filesystem::path& dir,
                 const std::string& summary_name)
{
    CsvWriter summary({"case", "method", "h", "M", "sigma", "max_abs_err", "runtime_seconds"});
    for (const BenchCell& cell : cells) {
        write_file_atomic(dir / (cell.case_name + "_" + cell.method + ".csv"), cell_csv(cell));
        summary.row({cell.case_name, cell.method, format_double(cell.h), cell.m ? std::to_string(*cell.m) : "",
                     format_double(cell.report.sigma), format_double(cell.report.max_abs_error),
                     format_double(cell.runtime_seconds)});
    }
    write_file_atomic(dir / summary_name, summary.str());
}

bool rise_then_fall(std::span<const double> b)
{
    if (b.size() < 3) return false;
    const auto peak = std::max_element(b.begin(), b.end());
    return peak != b.begin() && peak != b.end() - 1 && *peak > b.front() && *peak > b.back();
}

ShiryaevReport shiryaev_compare(double h, double horizon, std::size_t m, std::uint64_t seed)
{
    if (!(h > 0.0 && h <= 0.01 + 1e-15)) throw Error(ErrorKind::ConfigError, "the exponential comparison needs h <= 0.01");
    const FptDensity d = ExponentialDensity{1.0};
    const auto n = static_cast<std::size_t>(std::llround(horizon / h));

    PlmcConfig pc;
    pc.h = h;
    pc.n_steps = n;
    pc.mc_samples = m;
    pc.seed = seed;
    pc.startup = PlmcStartup::PeskirG;
    const PlmcResult pr = plmc_solve(d, pc);

    VieConfig vc;
    vc.h = h;
    vc.n = n;
    const VieResult vr = vie_solve(d, vc);

    ShiryaevReport rep;
    const auto& knots = pr.boundary.knots();
    const std::size_t common = std::min(knots.size() - 1, vr.b_star.size());
    rep.both_positive = true;
    for (std::size_t i = 0; i < common; ++i) {
        const double t = vr.grid[i];
        rep.t.push_back(t);
        rep.b_plmc.push_back(knots[i + 1].level);
        rep.b_vie.push_back(vr.b_star[i]);
        if (t >= 0.1 - 1e-12) {
            rep.max_discrepancy = std::max(rep.max_discrepancy, std::fabs(knots[i + 1].level - vr.b_star[i]));
        }
        if (!(knots[i + 1].level > 0.0) || !(vr.b_star[i] > 0.0)) rep.both_positive = false;
    }
    rep.plmc_rise_then_fall = rise_then_fall(rep.b_plmc);
    rep.vie_rise_then_fall = rise_then_fall(rep.b_vie);
    return rep;
}

}  // namespace ifpt
