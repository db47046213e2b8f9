// SPDX-License-Identifier: MIT
#include "ifpt/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>

int main(int argc, char** argv)
{
    CLI::App app{"Boundary reconstruction from first-passage-time densities of a Wiener process"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;

    for (const char* name : {"inverse", "direct", "bench", "limits"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output file (directory for bench)");
        sub->add_option("--seed", seed, "random seed, overrides the configuration");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ifpt::kExitConfig;
    }

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        ifpt::RunConfig cfg = ifpt::load_config(config_path, ifpt::parse_subcommand(name));
        if (!out_path.empty()) cfg.output = out_path;
        if (seed) {
            cfg.method.seed = *seed;
            cfg.bench.seed = *seed;
        }
        return ifpt::run(cfg, std::cout, std::cerr);
    } catch (const ifpt::Error& e) {
        std::cerr << "error kind=" << ifpt::to_string(e.kind()) << ": " << e.what() << '\n';
        return ifpt::exit_code_for(e.kind());
    }
}
