// SPDX-License-Identifier: MIT
#include "ifpt/config.hpp"

#include "ifpt/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ifpt {

namespace {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed so that
// anything left over can be reported as unknown.
class Fields {
public:
    Fields(const json& obj, std::string path, std::vector<std::string>& errors)
        : obj_(obj), path_(std::move(path)), errors_(errors)
    {
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    std::optional<double> number(const std::string& key)
    {
        used_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_number() || !std::isfinite(v.get<double>())) {
            fail(key, "expected a finite number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback)
    {
        return number(key).value_or(fallback);
    }

    double required_number(const std::string& key)
    {
        if (!obj_.contains(key)) {
            used_.insert(key);
            fail(key, "is required");
            return 0.0;
        }
        return number(key).value_or(0.0);
    }

    std::optional<std::uint64_t> count(const std::string& key)
    {
        used_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        const json& v = obj_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            fail(key, "expected a non-negative integer");
            return std::nullopt;
        }
        return v.get<std::uint64_t>();
    }

    std::optional<bool> boolean(const std::string& key)
    {
        used_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        if (!obj_.at(key).is_boolean()) {
            fail(key, "expected true or false");
            return std::nullopt;
        }
        return obj_.at(key).get<bool>();
    }

    std::optional<std::string> string(const std::string& key)
    {
        used_.insert(key);
        if (!obj_.contains(key)) return std::nullopt;
        if (!obj_.at(key).is_string()) {
            fail(key, "expected a string");
            return std::nullopt;
        }
        return obj_.at(key).get<std::string>();
    }

    const json* raw(const std::string& key)
    {
        used_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    void fail(const std::string& key, const std::string& what)
    {
        const std::string name = path_.empty() ? key : (key.empty() ? path_ : path_ + "." + key);
        errors_.push_back("field '" + name + "': " + what);
    }

    void finish()
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!used_.count(it.key())) fail(it.key(), "unknown key");
        }
    }

    const std::string& path() const { return path_; }

private:
    const json& obj_;
    std::string path_;
    std::vector<std::string>& errors_;
    std::set<std::string> used_;
};

void report_violations(const std::vector<std::string>& v, const std::string& path,
                       std::vector<std::string>& errors)
{
    for (const auto& s : v) errors.push_back("field '" + path + "': " + s);
}

std::optional<FptDensity> parse_density(const json& j, const std::filesystem::path& base,
                                        std::vector<std::string>& errors)
{
    if (!j.is_object()) {
        errors.emplace_back("field 'density': expected an object");
        return std::nullopt;
    }
    Fields f(j, "density", errors);
    const auto kind = f.string("kind");
    std::optional<FptDensity> d;
    if (!kind) {
        f.fail("kind", "is required (exponential, linear_boundary, daniels, tabulated)");
    } else if (*kind == "exponential") {
        d = ExponentialDensity{f.number_or("lambda", 1.0)};
    } else if (*kind == "linear_boundary") {
        d = LinearBoundaryDensity{f.required_number("alpha"), f.number_or("beta", 0.0), f.number_or("x0", 0.0),
                                  f.number_or("t0", 0.0)};
    } else if (*kind == "daniels") {
        d = DanielsDensity{f.required_number("alpha"), f.required_number("beta"), f.required_number("gamma")};
    } else if (*kind == "tabulated") {
        const auto path = f.string("path");
        if (!path) {
            f.fail("path", "is required for a tabulated density");
        } else {
            std::filesystem::path p(*path);
            if (p.is_relative() && !base.empty()) p = base / p;
            try {
                d = TabulatedDensity::load_csv(p);
            } catch (const Error& e) {
                f.fail("path", std::string(e.what()));
            }
        }
    } else {
        f.fail("kind", "unknown density kind '" + *kind + "'");
    }
    f.finish();
    if (d) report_violations(violations(*d), "density", errors);
    return d;
}

std::optional<Boundary> parse_boundary(const json& j, std::vector<std::string>& errors)
{
    if (!j.is_object()) {
        errors.emplace_back("field 'boundary': expected an object");
        return std::nullopt;
    }
    Fields f(j, "boundary", errors);
    const auto kind = f.string("kind");
    std::optional<Boundary> b;
    if (!kind) {
        f.fail("kind", "is required (linear, daniels, oscillating, piecewise_linear, peskir_g)");
    } else if (*kind == "linear") {
        b = LinearBoundary{f.required_number("alpha"), f.number_or("beta", 0.0)};
    } else if (*kind == "daniels") {
        b = DanielsBoundary{f.required_number("alpha"), f.required_number("beta"), f.required_number("gamma")};
    } else if (*kind == "oscillating") {
        b = OscillatingBoundary{f.required_number("alpha"), f.required_number("beta"), f.required_number("gamma")};
    } else if (*kind == "peskir_g") {
        const double c = f.required_number("c");
        const auto delta = f.number("delta_c");
        if (delta) {
            b = PeskirGBoundary{c, *delta};
        } else {
            try {
                b = PeskirGBoundary::with_default_domain(c);
            } catch (const Error& e) {
                f.fail("c", e.what());
            }
        }
    } else if (*kind == "piecewise_linear") {
        const json* knots = f.raw("knots");
        if (!knots || !knots->is_array()) {
            f.fail("knots", "expected an array of [t, level] pairs");
        } else {
            std::vector<Knot> k;
            bool ok = true;
            for (const json& e : *knots) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                    ok = false;
                    break;
                }
                k.push_back({e[0].get<double>(), e[1].get<double>()});
            }
            if (!ok) {
                f.fail("knots", "expected an array of [t, level] pairs");
            } else {
                try {
                    b = PiecewiseLinearBoundary(std::move(k));
                } catch (const Error& e) {
                    f.fail("knots", e.what());
                }
            }
        }
    } else {
        f.fail("kind", "unknown boundary kind '" + *kind + "'");
    }
    f.finish();
    if (b) report_violations(violations(*b), "boundary", errors);
    return b;
}

void parse_method(const json& j, Subcommand sub, MethodSpec& m, std::vector<std::string>& errors)
{
    if (!j.is_object()) {
        errors.emplace_back("field 'method': expected an object");
        return;
    }
    Fields f(j, "method", errors);
    m.name = f.string("name").value_or("");
    const bool inverse = sub == Subcommand::Inverse;
    if (inverse && m.name != "plmc" && m.name != "vie") f.fail("name", "expected plmc or vie");
    if (!inverse && m.name != "mc" && m.name != "vie") f.fail("name", "expected mc or vie");

    const double default_h = inverse && m.name == "plmc" ? 0.2 : 0.01;
    m.h = f.number_or("h", default_h);
    if (!(m.h > 0.0)) f.fail("h", "must be > 0");

    const auto steps = f.count("steps");
    const auto t_max = f.number("t_max");
    if (steps && t_max) f.fail("steps", "give either steps or t_max, not both");
    if (steps) {
        m.steps = *steps;
    } else {
        const double horizon = t_max.value_or(2.0);
        if (!(horizon > 0.0)) f.fail("t_max", "must be > 0");
        if (m.h > 0.0) m.steps = static_cast<std::size_t>(std::llround(horizon / m.h));
    }

    if (const auto s = f.string("scheme")) {
        if (*s == "euler") m.scheme = VieScheme::Euler;
        else if (*s == "trapezoid") m.scheme = VieScheme::Trapezoid;
        else f.fail("scheme", "expected euler or trapezoid");
    }
    m.mc_samples = f.count("mc_samples").value_or(10000);
    if (m.mc_samples < 1000) f.fail("mc_samples", "must be >= 1000");
    m.seed = f.count("seed").value_or(0);
    m.confidence = f.number_or("confidence", 0.95);
    if (!(m.confidence > 0.0 && m.confidence < 1.0)) f.fail("confidence", "must lie in (0, 1)");
    m.b0 = f.number("b0");
    m.b0_is_guess = f.boolean("b0_is_guess").value_or(false);
    m.flux_correction_knots = f.count("flux_correction_knots").value_or(0);
    m.flux_epsilon = f.number_or("flux_epsilon", 0.05);
    if (!(m.flux_epsilon > 0.0)) f.fail("flux_epsilon", "must be > 0");
    m.root_tol = f.number_or("root_tol", kDefaultRootTol);
    if (!(m.root_tol > 0.0)) f.fail("root_tol", "must be > 0");
    if (const auto s = f.string("startup")) {
        if (*s == "standard") m.startup = PlmcStartup::Standard;
        else if (*s == "peskir_g") m.startup = PlmcStartup::PeskirG;
        else f.fail("startup", "expected standard or peskir_g");
    }
    m.bracket_halfwidth = f.number("bracket_halfwidth");
    if (m.bracket_halfwidth && !(*m.bracket_halfwidth > 0.0)) f.fail("bracket_halfwidth", "must be > 0");
    for (std::size_t i = 1; i <= m.flux_correction_knots; ++i) {
        if (!(static_cast<double>(i) * m.h < m.flux_epsilon)) {
            f.fail("flux_correction_knots", "knot " + std::to_string(i) + " lies at t >= flux_epsilon");
            break;
        }
    }
    f.finish();
}

void parse_bench(const json& j, BenchSpec& b, std::vector<std::string>& errors)
{
    if (!j.is_object()) {
        errors.emplace_back("field 'bench': expected an object");
        return;
    }
    Fields f(j, "bench", errors);
    b.suite = f.string("suite").value_or("reference");
    if (b.suite != "reference" && b.suite != "shiryaev") f.fail("suite", "expected reference or shiryaev");
    b.seed = f.count("seed").value_or(0);
    b.h = f.number_or("h", 0.01);
    if (!(b.h > 0.0 && b.h <= 0.01 + 1e-15)) f.fail("h", "must lie in (0, 0.01]");
    b.horizon = f.number_or("horizon", 1.0);
    if (!(b.horizon > 0.0)) f.fail("horizon", "must be > 0");
    b.mc_samples = f.count("mc_samples").value_or(10000);
    if (b.mc_samples < 1000) f.fail("mc_samples", "must be >= 1000");
    f.finish();
}

std::size_t line_of(const std::string& text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

Subcommand parse_subcommand(const std::string& name)
{
    if (name == "inverse") return Subcommand::Inverse;
    if (name == "direct") return Subcommand::Direct;
    if (name == "bench") return Subcommand::Bench;
    if (name == "limits") return Subcommand::Limits;
    throw Error(ErrorKind::ConfigError, "unknown subcommand '" + name + "'");
}

std::string to_string(Subcommand s)
{
    switch (s) {
    case Subcommand::Inverse: return "inverse";
    case Subcommand::Direct: return "direct";
    case Subcommand::Bench: return "bench";
    case Subcommand::Limits: return "limits";
    }
    return "unknown";
}

RunConfig parse_config(const std::string& text, Subcommand sub, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                               ": " + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::ParseError, "line 1: the configuration must be a JSON object");

    RunConfig cfg;
    cfg.subcommand = sub;
    std::vector<std::string> errors;
    Fields top(doc, "", errors);

    const json* density = top.raw("density");
    const json* boundary = top.raw("boundary");
    const json* method = top.raw("method");
    const json* bench = top.raw("bench");
    const json* output = top.raw("output");

    auto forbid = [&](const json* p, const char* key) {
        if (p) errors.push_back(std::string("field '") + key + "': not used by the " + to_string(sub) + " subcommand");
    };

    switch (sub) {
    case Subcommand::Inverse:
        if (!density) errors.emplace_back("field 'density': is required");
        if (!method) errors.emplace_back("field 'method': is required");
        forbid(boundary, "boundary");
        forbid(bench, "bench");
        break;
    case Subcommand::Direct:
        if (!boundary) errors.emplace_back("field 'boundary': is required");
        if (!method) errors.emplace_back("field 'method': is required");
        forbid(density, "density");
        forbid(bench, "bench");
        break;
    case Subcommand::Bench:
        forbid(density, "density");
        forbid(boundary, "boundary");
        forbid(method, "method");
        break;
    case Subcommand::Limits:
        if ((density != nullptr) == (boundary != nullptr)) {
            errors.emplace_back("field 'density'/'boundary': exactly one is required");
        }
        forbid(method, "method");
        forbid(bench, "bench");
        break;
    }

    if (density) cfg.density = parse_density(*density, base_dir, errors);
    if (boundary) cfg.boundary = parse_boundary(*boundary, errors);
    if (method) parse_method(*method, sub, cfg.method, errors);
    if (bench) parse_bench(*bench, cfg.bench, errors);
    if (output) {
        if (!output->is_object()) {
            errors.emplace_back("field 'output': expected an object");
        } else {
            Fields f(*output, "output", errors);
            if (auto p = f.string("path")) cfg.output = *p;
            f.finish();
        }
    }
    // the keys of the top level were consumed above; finish() reports extras
    top.finish();

    if (sub == Subcommand::Inverse && cfg.density && errors.empty()) {
        MethodSpec& m = cfg.method;
        if (m.name == "plmc") {
            if (!m.startup) {
                m.startup = classify_small_time(*cfg.density).kind == SmallTimeKind::Finite ? PlmcStartup::PeskirG
                                                                                           : PlmcStartup::Standard;
            }
            report_violations(to_plmc_config(cfg).violations(), "method", errors);
        } else {
            report_violations(to_vie_config(cfg).violations(), "method", errors);
            if (m.scheme == VieScheme::Trapezoid && density_at_zero(*cfg.density) > 0.0 && !m.b0) {
                errors.emplace_back("field 'method.b0': trapezoid scheme with f(0+) > 0 requires b0");
            }
        }
    }
    if (sub == Subcommand::Direct && cfg.boundary && errors.empty()) {
        try {
            if (!(level_at_zero(*cfg.boundary) > 0.0) && cfg.method.name == "vie") {
                errors.emplace_back("field 'boundary': the integral-equation solver requires b(0+) > 0");
            }
        } catch (const Error& e) {
            errors.push_back(std::string("field 'boundary': ") + e.what());
        }
    }

    if (!errors.empty()) {
        std::string msg = "invalid configuration";
        for (const auto& e : errors) msg += "\n  " + e;
        throw Error(ErrorKind::ValidationError, msg);
    }
    if (cfg.output.empty()) {
        cfg.output = sub == Subcommand::Bench ? std::filesystem::path("bench_out")
                                              : std::filesystem::path(to_string(sub) + ".csv");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Subcommand sub)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open configuration " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), sub, path.parent_path());
}

PlmcConfig to_plmc_config(const RunConfig& cfg)
{
    const MethodSpec& m = cfg.method;
    PlmcConfig p;
    p.h = m.h;
    p.n_steps = m.steps;
    p.mc_samples = m.mc_samples;
    p.seed = m.seed;
    p.confidence = m.confidence;
    p.root_tol = m.root_tol;
    p.b0 = m.b0;
    p.b0_is_guess = m.b0_is_guess;
    p.startup = m.startup.value_or(PlmcStartup::Standard);
    return p;
}

VieConfig to_vie_config(const RunConfig& cfg)
{
    const MethodSpec& m = cfg.method;
    VieConfig v;
    v.h = m.h;
    v.n = m.steps;
    v.scheme = m.scheme;
    v.b0 = m.b0;
    v.root_tol = m.root_tol;
    v.flux_correction_knots = m.flux_correction_knots;
    v.flux_epsilon = m.flux_epsilon;
    v.bracket_halfwidth = m.bracket_halfwidth;
    return v;
}

}  // namespace ifpt
