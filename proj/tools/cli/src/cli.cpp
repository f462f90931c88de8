#include "corostab/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "corostab/error.hpp"
#include "corostab/format.hpp"
#include "corostab/rates.hpp"

namespace corostab::cli {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommands{{
    {Command::Sweep, "sweep"},
    {Command::Moduli, "moduli"},
    {Command::Check, "check"},
    {Command::Scan, "scan"},
    {Command::RateVerify, "rate-verify"},
}};

// Inline parameter flags and the parameter key each one sets.
constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kParameterFlags{{
    {"--mu", "mu"},
    {"--lambda-lame", "lambda"},
    {"--E", "E"},
    {"--nu", "nu"},
    {"--k", "k"},
    {"--khat", "khat"},
    {"--kappa", "kappa"},
}};

double parse_double(const std::string& text, const std::string& field) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError(field + ": '" + text + "' is not a number");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to the file named by config.out, or to `fallback` when absent.
template <class Fn>
void emit(const std::optional<std::string>& path, std::ostream& fallback, Fn&& write) {
    if (!path) {
        write(fallback);
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        throw ConfigError("out: cannot open '" + *path + "' for writing");
    }
    write(file);
    if (!file) {
        throw ConfigError("out: failed writing '" + *path + "'");
    }
}

int run_sweep(const RunConfig& config, const MaterialModel& model, std::ostream& out) {
    const Protocol protocol = Protocol::for_model(model, config.protocol);
    const CurveTable table = sweep(model, protocol, config.sweep_grid);
    emit(config.out, out, [&](std::ostream& os) { write_curve_csv(os, table); });
    return 0;
}

int run_moduli(const RunConfig& config, const MaterialModel& model, std::ostream& out) {
    const Protocol protocol = Protocol::for_model(model, config.protocol);
    const ClosureSolution sol = lateral_closure(model, protocol, config.at);
    const Moduli m = incremental_moduli(model, protocol, config.at, sol.lateral);
    emit(config.out, out, [&](std::ostream& os) {
        os << "lambda1,lambda_lateral,modulus_incr,modulus_incr_log\n"
           << format_number(config.at) << ',' << format_number(sol.lateral) << ',' << format_number(m.incr) << ','
           << format_number(m.incr_log) << '\n';
    });
    return 0;
}

int run_check(const RunConfig& config, const MaterialModel& model, std::ostream& out) {
    const Protocol protocol = Protocol::for_model(model, config.protocol);
    const ClosureSolution sol = lateral_closure(model, protocol, config.at);
    const Vec3& l = sol.state.stretches();
    const SymTensor3 v = SymTensor3::diag(l);
    const double csp = stability_tangent(model, v).min_eigenvalue();
    const double hill = hill_tangent(model, v * std::pow(sol.state.J(), -1.0 / 3.0)).min_eigenvalue();
    const BeTeResult bete = be_te_check(model, sol.state);
    const LhProbeResult lh = lh_ellipticity_probe(model, sol.state);
    const bool stable = csp > -kHoldsTol && hill > -kHoldsTol && bete.be_ok && bete.te_ok;

    emit(config.out, out, [&](std::ostream& os) {
        os << "model," << to_string(model.kind()) << '\n'
           << "protocol," << to_string(config.protocol) << '\n'
           << "lambda1," << format_number(l[0]) << '\n'
           << "lambda2," << format_number(l[1]) << '\n'
           << "lambda3," << format_number(l[2]) << '\n'
           << "csp_min_eig," << format_number(csp) << '\n'
           << "hill_min_eig," << format_number(hill) << '\n'
           << "be_margin," << format_number(bete.be_margin) << '\n'
           << "te_margin," << format_number(bete.te_margin) << '\n'
           << "lh_min," << format_number(lh.min_value) << '\n'
           << "verdict," << (stable ? "stable" : "unstable") << '\n';
    });
    return config.expect_stable && !stable ? 2 : 0;
}

int run_scan(const RunConfig& config, const MaterialModel& model, std::ostream& out) {
    ScanOptions options;
    options.grid = config.scan_grid;
    options.seed = config.seed;
    options.pair_samples = config.pair_samples;
    const StabilityReport report = region_scan(model, options);
    const std::string summary = scan_summary_json(report);

    if (config.out) {
        std::filesystem::path jsonPath(*config.out);
        if (jsonPath.extension() == ".json") {
            throw UsageError("out: scan writes CSV to --out and the JSON summary next to it; use a .csv path");
        }
        jsonPath.replace_extension(".json");
        emit(config.out, out, [&](std::ostream& os) { write_scan_csv(os, report); });
        emit(jsonPath.string(), out, [&](std::ostream& os) { os << summary << '\n'; });
    } else {
        out << summary << '\n';
    }
    return config.expect_stable && !report.constitutively_stable() ? 2 : 0;
}

int run_rate_verify(const RunConfig& config, const MaterialModel& model, std::ostream& out, std::ostream& err) {
    const Protocol protocol = Protocol::for_model(model, config.protocol);
    const StretchPath path = closure_path(model, protocol, 1.0, 1.0);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    std::ostringstream csv;
    csv << "lambda1,csp_lhs,csp_rhs,csp_residual,power_referential,power_spatial,work_referential,work_spatial,"
           "work_direct\n";
    for (double l1 : config.sweep_grid.points()) {
        const double t = l1 - 1.0;
        const RateForm rf = csp_rate_form(model, path, t);
        ok = ok && rf.residual <= 1e-6 * std::max(1.0, std::abs(rf.lhs));
        PowerIdentity pw{nan, nan};
        SecondOrderWork sw{nan, nan, nan, nan};
        if (!model.incompressible()) {
            const MotionSample motion = motion_from_stretch_path(path, t);
            pw = internal_power(model, motion);
            sw = second_order_work_identity(model, motion);
            ok = ok && std::abs(pw.referential - pw.spatial) <= 1e-8 * std::max(1.0, std::abs(pw.spatial));
            ok = ok && sw.residual <= 1e-5 * std::max(1.0, std::abs(sw.spatial));
        }
        csv << format_number(l1) << ',' << format_number(rf.lhs) << ',' << format_number(rf.rhs) << ','
            << format_number(rf.residual) << ',' << format_number(pw.referential) << ','
            << format_number(pw.spatial) << ',' << format_number(sw.referential) << ','
            << format_number(sw.spatial) << ',' << format_number(sw.direct) << '\n';
    }
    emit(config.out, out, [&](std::ostream& os) { os << csv.str(); });
    if (!ok) {
        err << "rate-verify: an identity residual exceeded its tolerance\n";
        return 1;
    }
    return 0;
}

}  // namespace

std::string_view to_string(Command command) {
    for (const auto& [c, name] : kCommands) {
        if (c == command) {
            return name;
        }
    }
    return "unknown";
}

ScanGrid parse_scan_grid(const std::string& text) {
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw ConfigError("grid: expected a:b:n, got '" + text + "'");
    }
    ScanGrid g;
    g.lo = parse_double(text.substr(0, first), "grid");
    g.hi = parse_double(text.substr(first + 1, second - first - 1), "grid");
    const std::string count = text.substr(second + 1);
    const auto res = std::from_chars(count.data(), count.data() + count.size(), g.n);
    if (res.ec != std::errc{} || res.ptr != count.data() + count.size()) {
        throw ConfigError("grid: point count '" + count + "' is not an integer");
    }
    g.validate();
    return g;
}

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Finite-strain hyperelastic protocol sweeps and constitutive stability checks", "corostab"};
    app.set_help_flag();

    RunConfig config;
    std::string command;
    std::optional<std::string> model;
    std::optional<std::string> configPath;
    std::string protocol = "uniaxial";
    std::optional<double> lambdaMin;
    std::optional<double> lambdaMax;
    std::optional<int> steps;
    std::optional<std::string> grid;
    std::optional<std::uint64_t> seed;
    std::optional<int> pairs;
    std::array<std::optional<double>, kParameterFlags.size()> params;

    app.add_option("command", command, "sweep | moduli | check | scan | rate-verify")->required();
    auto* modelOpt = app.add_option("--model", model, "catalog model name");
    auto* configOpt = app.add_option("--config", configPath, "JSON material configuration file");
    modelOpt->excludes(configOpt);
    app.add_option("--protocol", protocol, "uniaxial | equibiaxial | planar | hydrostatic");
    auto* minOpt = app.add_option("--lambda-min", lambdaMin, "smallest lambda1 of the sweep grid");
    auto* maxOpt = app.add_option("--lambda-max", lambdaMax, "largest lambda1 of the sweep grid");
    auto* stepsOpt = app.add_option("--steps", steps, "number of sweep grid points");
    auto* gridOpt = app.add_option("--grid", grid, "scan grid a:b:n");
    gridOpt->excludes(minOpt)->excludes(maxOpt)->excludes(stepsOpt);
    app.add_option("--at", config.at, "lambda1 for moduli and check");
    app.add_option("--out", config.out, "output path");
    app.add_option("--seed", seed, "seed for sampled pair checks (default 0)");
    app.add_option("--pairs", pairs, "number of sampled state pairs in scan (default 500)");
    app.add_flag("--expect-stable", config.expect_stable, "exit with status 2 when a constitutive check fails");
    for (std::size_t i = 0; i < kParameterFlags.size(); ++i) {
        app.add_option(std::string(kParameterFlags[i].first), params[i],
                       "material parameter " + std::string(kParameterFlags[i].second));
    }
    bool help = false;
    app.add_flag("-h,--help", help, "print this help");

    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    if (std::find(reversed.begin(), reversed.end(), "-h") != reversed.end() ||
        std::find(reversed.begin(), reversed.end(), "--help") != reversed.end()) {
        throw HelpRequested(app.help());
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string("command line: ") + e.what());
    }

    bool known = false;
    for (const auto& [c, name] : kCommands) {
        if (name == command) {
            config.command = c;
            known = true;
        }
    }
    if (!known) {
        throw UsageError("command: unknown command '" + command + "'");
    }
    if (!model && !configPath) {
        throw UsageError("model: one of --model or --config is required");
    }
    config.model.name = model;
    config.model.config_path = configPath;
    for (std::size_t i = 0; i < kParameterFlags.size(); ++i) {
        if (params[i]) {
            config.model.overrides[std::string(kParameterFlags[i].second)] = *params[i];
        }
    }
    config.protocol = parse_protocol_kind(protocol);
    if (lambdaMin) {
        config.sweep_grid.lambda_min = *lambdaMin;
    }
    if (lambdaMax) {
        config.sweep_grid.lambda_max = *lambdaMax;
    }
    if (steps) {
        config.sweep_grid.steps = *steps;
    }
    config.sweep_grid.validate();
    if (grid) {
        config.scan_grid = parse_scan_grid(*grid);
    }
    config.seed = seed.value_or(0);
    if (pairs) {
        if (*pairs < 0) {
            throw ConfigError("pairs: must be non-negative");
        }
        config.pair_samples = *pairs;
    }
    return config;
}

MaterialModel model_from_json(const std::string& jsonText, const ParameterMap& overrides,
                              const std::optional<std::string>& kindOverride) {
    json doc;
    try {
        doc = json::parse(jsonText);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be an object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "kind" && key != "parameters" && key != "incompressible") {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    std::string kindName;
    if (kindOverride) {
        kindName = *kindOverride;
    } else if (doc.contains("kind")) {
        if (!doc["kind"].is_string()) {
            throw ConfigError("kind: must be a string");
        }
        kindName = doc["kind"].get<std::string>();
    } else {
        throw ConfigError("kind: missing");
    }
    const ModelKind kind = parse_model_kind(kindName);

    ParameterMap params;
    if (doc.contains("parameters")) {
        const json& p = doc["parameters"];
        if (!p.is_object()) {
            throw ConfigError("parameters: must be an object");
        }
        for (const auto& [key, value] : p.items()) {
            if (!value.is_number()) {
                throw ConfigError("parameters." + key + ": must be a number");
            }
            params[key] = value.get<double>();
        }
    }
    for (const auto& [key, value] : overrides) {
        params[key] = value;
    }
    if (doc.contains("incompressible")) {
        if (!doc["incompressible"].is_boolean()) {
            throw ConfigError("incompressible: must be a boolean");
        }
        if (doc["incompressible"].get<bool>() != is_incompressible(kind)) {
            throw ConfigError("incompressible: does not match kind '" + kindName + "'");
        }
    }
    return instantiate_model(kind, params);
}

MaterialModel resolve_model(const ModelSource& source) {
    if (source.config_path) {
        return model_from_json(read_file(*source.config_path), source.overrides, source.name);
    }
    if (!source.name) {
        throw UsageError("model: one of --model or --config is required");
    }
    return instantiate_model(parse_model_kind(*source.name), source.overrides);
}

std::string scan_summary_json(const StabilityReport& report) {
    json doc;
    doc["model"] = {{"kind", report.model}, {"parameters", json(report.parameters)}};
    doc["grid"] = {{"lambda_min", report.grid.lo}, {"lambda_max", report.grid.hi}, {"n", report.grid.n}};
    doc["seed"] = report.seed;
    doc["states_checked"] = report.states.size();
    doc["pairs_checked"] = report.pairs_checked;
    doc["violation_counts"] = report.violation_counts();
    doc["constitutively_stable"] = report.constitutively_stable();
    json violations = json::array();
    for (const Witness& w : report.witnesses) {
        json v = {{"state", w.state}, {"check", w.check}, {"margin", w.margin}};
        if (w.pair) {
            v["pair"] = {(*w.pair)[0].entries(), (*w.pair)[1].entries()};
        }
        if (w.directions) {
            v["xi"] = (*w.directions)[0];
            v["eta"] = (*w.directions)[1];
        }
        violations.push_back(std::move(v));
    }
    doc["violations"] = std::move(violations);
    return doc.dump(2);
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const MaterialModel model = resolve_model(config.model);
    switch (config.command) {
        case Command::Sweep: return run_sweep(config, model, out);
        case Command::Moduli: return run_moduli(config, model, out);
        case Command::Check: return run_check(config, model, out);
        case Command::Scan: return run_scan(config, model, out);
        case Command::RateVerify: return run_rate_verify(config, model, out, err);
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return execute(parse_args(args), out, err);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const SolverError& e) {
        err << "error: " << e.what() << " (lambda1 = " << format_number(e.lambda1()) << ")\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace corostab::cli
