// SPDX-License-Identifier: MIT
//
// Run configuration: a JSON document validated in full before any solver runs.
#pragma once

#include "ifpt/boundaries.hpp"
#include "ifpt/densities.hpp"
#include "ifpt/plmc.hpp"
#include "ifpt/vie.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace ifpt {

enum class Subcommand { Inverse, Direct, Bench, Limits };

Subcommand parse_subcommand(const std::string& name);
std::string to_string(Subcommand s);

struct MethodSpec {
    std::string name;  // plmc | vie (inverse), mc | vie (direct)
    VieScheme scheme = VieScheme::Euler;
    double h = 0.0;
    std::size_t steps = 0;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 0;
    double confidence = 0.95;
    std::optional<double> b0;
    bool b0_is_guess = false;
    std::size_t flux_correction_knots = 0;
    double flux_epsilon = 0.05;
    double root_tol = kDefaultRootTol;
    std::optional<PlmcStartup> startup;
    std::optional<double> bracket_halfwidth;
};

struct BenchSpec {
    std::string suite = "reference";  // reference | shiryaev
    std::uint64_t seed = 0;
    double h = 0.01;
    double horizon = 1.0;
    std::size_t mc_samples = 10000;
};

struct RunConfig {
    Subcommand subcommand = Subcommand::Inverse;
    std::optional<FptDensity> density;
    std::optional<Boundary> boundary;
    MethodSpec method;
    BenchSpec bench;
    std::filesystem::path output;
};

/// Parses and validates. ParseError carries the line of malformed JSON;
/// ValidationError lists every violated field. Relative table paths resolve
/// against `base_dir`.
RunConfig parse_config(const std::string& text, Subcommand subcommand,
                       const std::filesystem::path& base_dir = {});

RunConfig load_config(const std::filesystem::path& path, Subcommand subcommand);

PlmcConfig to_plmc_config(const RunConfig& cfg);
VieConfig to_vie_config(const RunConfig& cfg);

}  // namespace ifpt
