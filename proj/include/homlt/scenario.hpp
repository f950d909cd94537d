#pragma once

#include "homlt/geodesics.hpp"
#include "homlt/involutions.hpp"
#include "homlt/linear_type.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>

namespace homlt {

using Json = nlohmann::json;

// Malformed configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    Case cs = Case::KahlerPseudo;
    int n = 2;
    int s = 0;
    std::optional<std::vector<double>> xi;  // explicit components
    std::uint64_t xi_seed = 0;              // used when xi is absent
    std::vector<double> zeta;               // complex family only
    std::array<std::vector<double>, 3> zeta_quat;
    std::map<std::string, double> tolerances;
    std::string output_path;

    // Strict parse: unknown keys, wrong types, and out-of-range sizes all
    // raise ConfigError.
    static ScenarioConfig from_json(const Json& j);
};

// Config echo for the report: everything except output_path.
Json scenario_echo(const ScenarioConfig& cfg);

// Dotted-path override on the raw document; the value is parsed as JSON when
// possible and kept as a string otherwise.
void apply_override(Json& doc, const std::string& key, const std::string& value);

struct ScenarioResult {
    Json report;
    bool pass = false;
    std::vector<std::string> failing;
};

// Full verification pipeline: structure invariants, S symmetries, the
// family theorem sweep, holonomy dimension, Nomizu algebra validity and
// reference brackets, matrix realization, involution chain, and the terminal
// group geodesics.  Stages whose preconditions do not apply (nonpositive
// g(xi,xi), definite pseudo layouts, zeta != 0) are skipped and recorded as
// null in the report.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Structure constants of the adapted-basis algebra.
Json export_algebra(const ScenarioConfig& cfg);

// cfg keys: initial (pair), direction (+1/-1, default +1), t_max (default 10),
// rtol (default 1e-10).
Json export_trajectories(const Json& cfg);

// cfg keys: scenarios (array of named scenario configs), output_dir (may be
// overridden by the second argument).  Writes one report per scenario plus
// summary.json; returns true when every verdict passes.
bool full_suite(const Json& suite_cfg, const std::string& output_dir);

}  // namespace homlt
