#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgineq/errors.hpp"
#include "hgineq/group_model.hpp"
#include "hgineq/inequality_catalog.hpp"
#include "hgineq/radial_calculus.hpp"
#include "hgineq/report.hpp"
#include "hgineq/sharpness.hpp"

namespace hgineq {

/// Config validation failure; key is the dotted path of the first offending entry.
struct ConfigKeyError : ConfigurationError {
    ConfigKeyError(std::string key, const std::string& message)
        : ConfigurationError(key + ": " + message), key(std::move(key)) {}
    std::string key;
};

struct ProfileSpec {
    std::string label;
    RadialFunctionPtr f;
};

struct TheoremSpec {
    std::string id;
    std::vector<Params> grid;  ///< expanded cartesian product of the listed values
};

struct SharpnessSpec {
    ExtremizerFamily family;
    std::string verifier;
    std::string group;  ///< group name
    Params params;
    bool optimize = false;
    OptimizeOptions options;
};

struct GridSpec {
    int N = 4096;
    double u_min = -20.0;
    double u_max = 20.0;
    LogGrid grid() const { return LogGrid(u_min, u_max, N); }
};

struct SuiteConfig {
    std::vector<HomogeneousGroup> groups;
    std::vector<ProfileSpec> profiles;
    std::vector<TheoremSpec> theorems;
    std::vector<SharpnessSpec> sharpness;
    VerifyOptions verify;
    GridSpec grid;
    std::uint64_t seed = 12345;
    std::string out_dir = "hgineq_out";
    std::string report_file = "report.jsonl";
    std::string curves_file = "ratio_curves.csv";
    std::string sharpness_file = "sharpness.jsonl";
    std::string metadata_file = "metadata.json";
    std::string source;  ///< path the config came from
};

/// Command-line overrides applied on top of a loaded config.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_identity;
    std::optional<int> grid_n;
    std::optional<std::string> out_dir;
};

/// YAML (or JSON) text to a JSON value.
json parse_config_text(const std::string& text, bool json_syntax);

/// Builds and validates a suite from its JSON form. Parameter grids are checked against
/// every verifier precondition on every group. Throws ConfigKeyError.
SuiteConfig build_config(const json& doc, const ConfigOverrides& overrides = {});

/// Reads a .yaml/.yml/.json file. Throws ConfigKeyError (key "config" when unreadable).
SuiteConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

}  // namespace hgineq
