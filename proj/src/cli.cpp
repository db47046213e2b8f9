// SPDX-License-Identifier: MIT
#include "ifpt/cli.hpp"

#include "ifpt/bench.hpp"
#include "ifpt/direct.hpp"
#include "ifpt/io.hpp"

namespace ifpt {

namespace {

void report_error(const Error& e, std::ostream& err)
{
    err << "error kind=" << to_string(e.kind());
    if (e.knot()) err << " knot=" << *e.knot();
    err << ": " << e.what() << '\n';
}

int run_inverse(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const FptDensity& d = *cfg.density;
    if (cfg.method.name == "plmc") {
        const PlmcResult r = plmc_solve(d, to_plmc_config(cfg));
        CsvWriter csv({"t", "b_hat", "beta", "ci_lo", "ci_hi", "ess"});
        const auto& knots = r.boundary.knots();
        for (std::size_t i = 0; i < r.slopes.size(); ++i) {
            csv.row({format_double(knots[i + 1].t), format_double(knots[i + 1].level), format_double(r.slopes[i]),
                     format_double(r.ci[i].lo), format_double(r.ci[i].hi), format_double(r.ess_per_step[i])});
            if (r.ci[i].clipped) err << "warn knot=" << i + 1 << " kind=ClippedInterval\n";
        }
        for (const auto& note : r.notes) err << "note: " << note << '\n';
        write_file_atomic(cfg.output, csv.str());
        out << "inverse plmc: " << r.slopes.size() << " knots written to " << cfg.output.string() << '\n';
        return kExitOk;
    }
    const VieResult r = vie_solve(d, to_vie_config(cfg));
    CsvWriter csv({"t", "b_hat"});
    for (std::size_t i = 0; i < r.grid.size(); ++i) csv.row({format_double(r.grid[i]), format_double(r.b_star[i])});
    for (const auto& diag : r.diagnostics) {
        err << "warn knot=" << diag.knot << " kind=" << to_string(diag.kind) << ": " << diag.message << '\n';
    }
    write_file_atomic(cfg.output, csv.str());
    out << "inverse vie: " << r.grid.size() << " knots written to " << cfg.output.string() << '\n';
    return kExitOk;
}

int run_direct(const RunConfig& cfg, std::ostream& out)
{
    const auto grid = uniform_grid(cfg.method.h, static_cast<double>(cfg.method.steps) * cfg.method.h);
    if (cfg.method.name == "mc") {
        const DirectResult r = direct_fpt_mc(*cfg.boundary, grid, cfg.method.mc_samples, cfg.method.seed);
        CsvWriter csv({"t", "mass", "std_err"});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv.row({format_double(grid[i]), format_double(r.interval_masses[i]), format_double((*r.std_errors)[i])});
        }
        write_file_atomic(cfg.output, csv.str());
    } else {
        const DirectResult r = direct_fpt_vie(*cfg.boundary, grid);
        CsvWriter csv({"t", "f_hat", "mass"});
        for (std::size_t i = 0; i < grid.size(); ++i) {
            csv.row({format_double(grid[i]), format_double((*r.density_values)[i]),
                     format_double(r.interval_masses[i])});
        }
        write_file_atomic(cfg.output, csv.str());
    }
    out << "direct " << cfg.method.name << ": " << grid.size() << " intervals written to " << cfg.output.string()
        << '\n';
    return kExitOk;
}

int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.bench.suite == "reference") {
        const auto cells = run_reference_suite(cfg.bench.seed);
        for (const auto& c : cells) {
            for (const auto& n : c.notes) err << "note case=" << c.case_name << " method=" << c.method << ": " << n << '\n';
        }
        write_bench(cells, cfg.output, "reference_summary.csv");
        out << "bench reference: " << cells.size() << " cells written to " << cfg.output.string() << '\n';
        return kExitOk;
    }
    const ShiryaevReport r = shiryaev_compare(cfg.bench.h, cfg.bench.horizon, cfg.bench.mc_samples, cfg.bench.seed);
    CsvWriter csv({"t", "b_plmc", "b_vie"});
    for (std::size_t i = 0; i < r.t.size(); ++i) {
        csv.row({format_double(r.t[i]), format_double(r.b_plmc[i]), format_double(r.b_vie[i])});
    }
    write_file_atomic(cfg.output / "shiryaev.csv", csv.str());
    out << "bench shiryaev: max_discrepancy=" << format_double(r.max_discrepancy)
        << " plmc_rise_then_fall=" << (r.plmc_rise_then_fall ? "yes" : "no")
        << " vie_rise_then_fall=" << (r.vie_rise_then_fall ? "yes" : "no") << '\n';
    return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::ConfigError:
        return kExitConfig;
    default:
        return kExitNumerical;
    }
}

std::string limits_report(const RunConfig& cfg)
{
    const SmallTimeClass cls = cfg.density ? classify_small_time(*cfg.density) : classify_small_time(*cfg.boundary);
    std::string s = to_string(cls.kind);
    if (cls.kind == SmallTimeKind::Finite) {
        s += ", kappa=" + format_double(cls.kappa) + ", c=" + format_double(c_from_kappa(cls.kappa));
    }
    return s;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.subcommand) {
        case Subcommand::Inverse: return run_inverse(cfg, out, err);
        case Subcommand::Direct: return run_direct(cfg, out);
        case Subcommand::Bench: return run_bench(cfg, out, err);
        case Subcommand::Limits: out << limits_report(cfg) << '\n'; return kExitOk;
        }
    } catch (const Error& e) {
        report_error(e, err);
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error kind=NumericalFailure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace ifpt
