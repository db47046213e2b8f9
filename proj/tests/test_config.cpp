// SPDX-License-Identifier: MIT
#include "ifpt/config.hpp"
#include "ifpt/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace ifpt;

namespace {

std::string message_of(const std::string& text, Subcommand sub, ErrorKind expected,
                       const std::filesystem::path& base = {})
{
    try {
        parse_config(text, sub, base);
    } catch (const Error& e) {
        CHECK(e.kind() == expected);
        return e.what();
    }
    FAIL("expected an error");
    return {};
}

}  // namespace

TEST_CASE("minimal inverse configuration takes the defaults")
{
    const RunConfig c = parse_config(R"({"density": {"kind": "exponential"}, "method": {"name": "vie"}})",
                                     Subcommand::Inverse);
    REQUIRE(c.density);
    CHECK(std::holds_alternative<ExponentialDensity>(*c.density));
    CHECK(std::get<ExponentialDensity>(*c.density).lambda == 1.0);
    CHECK(c.method.h == 0.01);
    CHECK(c.method.steps == 200);
    CHECK(c.method.scheme == VieScheme::Euler);
    CHECK(c.method.root_tol == 1e-10);
    CHECK(c.output == "inverse.csv");
    const VieConfig v = to_vie_config(c);
    CHECK(v.n == 200);
    CHECK(v.h == 0.01);
}

TEST_CASE("plmc defaults and startup selection")
{
    const RunConfig c = parse_config(R"({"density": {"kind": "exponential"}, "method": {"name": "plmc"}})",
                                     Subcommand::Inverse);
    CHECK(c.method.h == 0.2);
    CHECK(c.method.steps == 10);
    CHECK(c.method.mc_samples == 10000);
    CHECK(c.method.startup == PlmcStartup::PeskirG);
    const RunConfig d = parse_config(
        R"({"density": {"kind": "daniels", "alpha": 1, "beta": 0.5, "gamma": 0.5}, "method": {"name": "plmc", "b0": 0.5}})",
        Subcommand::Inverse);
    CHECK(d.method.startup == PlmcStartup::Standard);
    const std::string msg = message_of(
        R"({"density": {"kind": "daniels", "alpha": 1, "beta": 0.5, "gamma": 0.5}, "method": {"name": "plmc"}})",
        Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("requires b0") != std::string::npos);
}

TEST_CASE("out-of-range Daniels parameter names the field")
{
    const std::string msg = message_of(
        R"({"density": {"kind": "daniels", "alpha": 1, "beta": 1, "gamma": -0.3}, "method": {"name": "vie"}})",
        Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("field 'density'") != std::string::npos);
    CHECK(msg.find("γ > −β²/4") != std::string::npos);
}

TEST_CASE("every violation is reported at once")
{
    const std::string msg = message_of(
        R"({"density": {"kind": "exponential", "lambda": 1, "colour": 3},
            "method": {"name": "vie", "h": -1, "confidence": 2}})",
        Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("field 'density.colour': unknown key") != std::string::npos);
    CHECK(msg.find("field 'method.h'") != std::string::npos);
    CHECK(msg.find("field 'method.confidence'") != std::string::npos);
}

TEST_CASE("unknown top-level keys and misplaced sections")
{
    std::string msg = message_of(R"({"density": {"kind": "exponential"}, "method": {"name": "vie"}, "extra": 1})",
                                 Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("field 'extra': unknown key") != std::string::npos);
    msg = message_of(R"({"boundary": {"kind": "linear", "alpha": 1}, "method": {"name": "vie"}})",
                     Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("field 'density': is required") != std::string::npos);
    CHECK(msg.find("field 'boundary': not used") != std::string::npos);
}

TEST_CASE("malformed JSON reports its line")
{
    const std::string msg = message_of("{\n  \"density\": {\"kind\": \"exponential\"},\n  \"method\": {\"name\" \"vie\"}\n}",
                                       Subcommand::Inverse, ErrorKind::ParseError);
    CHECK(msg.rfind("line 3", 0) == 0);
}

TEST_CASE("tabulated density from a file")
{
    const auto dir = std::filesystem::temp_directory_path() / "ifpt_test_config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "good.csv") << "t,f\n0,0\n1,0.5\n2,0.25\n";
        std::ofstream(dir / "bad.csv") << "t,f\n0,0\n1,0.5\n0.5,0.25\n";
    }
    const RunConfig c = parse_config(R"({"density": {"kind": "tabulated", "path": "good.csv"},
                                         "method": {"name": "vie"}})",
                                     Subcommand::Inverse, dir);
    CHECK(std::get<TabulatedDensity>(*c.density).times().size() == 3);
    const std::string msg = message_of(R"({"density": {"kind": "tabulated", "path": "bad.csv"},
                                           "method": {"name": "vie"}})",
                                       Subcommand::Inverse, ErrorKind::ValidationError, dir);
    CHECK(msg.find("field 'density.path'") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("trapezoid with f(0+) > 0 needs b0")
{
    const std::string msg = message_of(
        R"({"density": {"kind": "exponential"}, "method": {"name": "vie", "scheme": "trapezoid"}})",
        Subcommand::Inverse, ErrorKind::ValidationError);
    CHECK(msg.find("method.b0") != std::string::npos);
    CHECK_NOTHROW(parse_config(
        R"({"density": {"kind": "exponential"}, "method": {"name": "vie", "scheme": "trapezoid", "b0": 0}})",
        Subcommand::Inverse));
}

TEST_CASE("direct, bench and limits sections")
{
    const RunConfig d = parse_config(R"({"boundary": {"kind": "oscillating", "alpha": 1, "beta": 0.5, "gamma": 2},
                                         "method": {"name": "mc", "mc_samples": 2000, "t_max": 1}})",
                                     Subcommand::Direct);
    CHECK(d.method.steps == 100);
    CHECK(d.method.mc_samples == 2000);

    const RunConfig b = parse_config(R"({"bench": {"suite": "shiryaev", "h": 0.005}})", Subcommand::Bench);
    CHECK(b.bench.suite == "shiryaev");
    CHECK(b.output == "bench_out");
    message_of(R"({"bench": {"suite": "shiryaev", "h": 0.05}})", Subcommand::Bench, ErrorKind::ValidationError);

    message_of(R"({"density": {"kind": "exponential"}, "boundary": {"kind": "linear", "alpha": 1}})",
               Subcommand::Limits, ErrorKind::ValidationError);
    CHECK_NOTHROW(parse_config(R"({"boundary": {"kind": "peskir_g", "c": 1}})", Subcommand::Limits));
    CHECK_THROWS_AS(parse_subcommand("frobnicate"), Error);
}
