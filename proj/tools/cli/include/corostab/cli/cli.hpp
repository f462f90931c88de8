#pragma once

// Command-line front end: argument parsing into a RunConfig, material
// configuration ingestion and command execution.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "corostab/materials.hpp"
#include "corostab/protocols.hpp"
#include "corostab/stability.hpp"

namespace corostab::cli {

enum class Command { Sweep, Moduli, Check, Scan, RateVerify };

std::string_view to_string(Command command);

struct ModelSource {
    std::optional<std::string> name;
    std::optional<std::string> config_path;
    /// Inline parameter flags; they override values from the config file.
    ParameterMap overrides;
};

struct RunConfig {
    Command command = Command::Sweep;
    ModelSource model;
    ProtocolKind protocol = ProtocolKind::Uniaxial;
    GridSpec sweep_grid{0.5, 4.0, 200};
    ScanGrid scan_grid{0.5, 3.0, 11};
    double at = 1.0;
    std::optional<std::string> out;
    std::uint64_t seed = 0;
    bool expect_stable = false;
    int pair_samples = 500;
};

/// Thrown by parse_args for -h/--help; what() is the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UsageError for malformed command lines and ConfigError for invalid
/// grid specifications. argv[0] is the program name.
RunConfig parse_args(const std::vector<std::string>& args);

/// Parses "a:b:n".
ScanGrid parse_scan_grid(const std::string& text);

/// Builds a model from a JSON document {"kind", "parameters", "incompressible"}
/// with inline overrides applied on top. `kindOverride` replaces "kind".
MaterialModel model_from_json(const std::string& jsonText, const ParameterMap& overrides,
                              const std::optional<std::string>& kindOverride);

MaterialModel resolve_model(const ModelSource& source);

/// JSON summary of a scan: model, grid, seed, counts and violation witnesses.
std::string scan_summary_json(const StabilityReport& report);

/// Runs the command. Exit status 0 on success, 2 when --expect-stable was
/// given and a constitutive check failed. Library errors propagate.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute, mapping every error to a message on `err` and exit status 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corostab::cli
