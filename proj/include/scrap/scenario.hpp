#pragma once

#include "scrap/propagator.hpp"
#include "scrap/pulse.hpp"
#include "scrap/spectrum.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace scrap {

enum class ScenarioKind { spectrum, scrap_not, readout, swap, lz_sweep };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario(std::string_view name);

struct IntegratorConfig {
    double tol = 1e-9;
    std::size_t output_points = 1000;
};

/// Landau-Zener validation grid: every (Omega, v) pair is propagated over
/// [-T, T] with T = window_ratio * max(Omega / v, 1 / sqrt(v)).
struct LzSweepConfig {
    std::vector<double> rabi_gaps{0.375, 0.55, 0.8, 1.0, 1.64};  ///< rad/ns
    std::vector<double> sweep_rates{1.0, 2.1, 4.5, 9.5, 20.0};   ///< rad/ns^2
    double window_ratio = 200.0;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::spectrum;
    CbjjParams cbjj;
    std::size_t levels = 3;
    double coupling_zeta = 0.05;
    std::map<std::string, PulseSchedule> pulses;
    IntegratorConfig integrator;
    LzSweepConfig lz;
    std::filesystem::path output_dir = "out";

    /// Pulse names each scenario reads.
    static std::vector<std::string> required_pulses(ScenarioKind kind);

    /// Throws ValidationError with a field-level message.
    void validate() const;
};

/// Parses YAML (JSON is accepted too). A run summary is also accepted, in which case its
/// `metadata` block is used; this is how a summary reproduces its own run.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Fully resolved config (all defaults filled in) as JSON; parse_config reads it back.
nlohmann::ordered_json config_to_json(const ScenarioConfig& config);

struct RunSummary {
    std::string scenario;
    std::map<std::string, double> metrics;
    std::vector<std::string> artifacts;
    std::vector<std::string> warnings;
    nlohmann::ordered_json metadata;

    /// Metrics flat at the top level next to `scenario`, `artifacts`, `warnings`, `metadata`.
    nlohmann::ordered_json to_json() const;
};

/// Runs one scenario, writing its files under config.output_dir. Validation problems raise
/// ValidationError, integrator failures NumericalError (message prefixed with the scenario name).
RunSummary run_scenario(const ScenarioConfig& config);

/// Writes summary.json next to the scenario artifacts and returns its path.
std::filesystem::path write_summary(const RunSummary& summary, const std::filesystem::path& output_dir);

/// CSV with header `t_ns,P_<label>...` and one row per mesh time, values at 9 significant digits.
/// Labels drop their ket brackets: "|02>" becomes P_02.
void emit_timeseries(const Trajectory& trajectory, const std::filesystem::path& path);

} // namespace scrap
