#include "scrap/scenario.hpp"

#include "scrap/errors.hpp"
#include "scrap/gates.hpp"
#include "scrap/hamiltonians.hpp"
#include "scrap/units.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace scrap {

namespace {

using json = nlohmann::ordered_json;

// ---- config parsing -------------------------------------------------------

void reject_unknown_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ValidationError(where + key + ": unknown key");
    }
}

template <typename T>
T read(const YAML::Node& node, const std::string& field, T fallback) {
    if (!node || node.IsNull())
        return fallback;
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ValidationError(field + ": malformed value");
    }
}

double read_double(const YAML::Node& node, const std::string& field, double fallback) {
    const double v = read<double>(node, field, fallback);
    if (!std::isfinite(v))
        throw ValidationError(field + ": must be finite");
    return v;
}

std::size_t read_count(const YAML::Node& node, const std::string& field, std::size_t fallback) {
    if (!node || node.IsNull())
        return fallback;
    const auto v = read<long long>(node, field, 0);
    if (v < 0)
        throw ValidationError(field + ": must be non-negative");
    return static_cast<std::size_t>(v);
}

std::vector<double> read_list(const YAML::Node& node, const std::string& field, std::vector<double> fallback) {
    if (!node || node.IsNull())
        return fallback;
    if (!node.IsSequence())
        throw ValidationError(field + ": expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(read_double(node[i], field + "[" + std::to_string(i) + "]", 0.0));
    return out;
}

PulseSchedule parse_pulse(const YAML::Node& node, const std::string& name) {
    const std::string where = "pulses." + name + ".";
    if (!node.IsMap())
        throw ValidationError("pulses." + name + ": expected a mapping");
    reject_unknown_keys(node, where, {"shape", "amplitude", "rate", "width", "center", "window", "points"});
    if (!node["shape"])
        throw ValidationError(where + "shape: missing");
    if (!node["window"] || !node["window"].IsSequence() || node["window"].size() != 2)
        throw ValidationError(where + "window: expected [t_start, t_end]");
    const TimeWindow window{read_double(node["window"][0], where + "window", 0.0),
                            read_double(node["window"][1], where + "window", 0.0)};
    if (!(window.start < window.end))
        throw ValidationError(where + "window: t_start must be below t_end");

    PulseShape shape;
    try {
        shape = parse_pulse_shape(read<std::string>(node["shape"], where + "shape", ""));
    } catch (const ValidationError& e) {
        throw ValidationError(where + "shape: " + e.what());
    }
    const auto require = [&](std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            if (!node[key])
                throw ValidationError(where + key + ": missing (required for shape " +
                                      std::string(to_string(shape)) + ")");
    };
    switch (shape) {
    case PulseShape::constant: require({"amplitude"}); break;
    case PulseShape::linear_ramp: require({"rate"}); break;
    case PulseShape::gaussian: require({"amplitude", "width"}); break;
    case PulseShape::piecewise_linear: require({"points"}); break;
    }
    if (shape == PulseShape::gaussian && !(read_double(node["width"], where + "width", 0.0) > 0.0))
        throw ValidationError(where + "width: must be positive");

    try {
        switch (shape) {
        case PulseShape::constant:
            return PulseSchedule::constant(read_double(node["amplitude"], where + "amplitude", 0.0), window);
        case PulseShape::linear_ramp:
            return PulseSchedule::linear_ramp(read_double(node["rate"], where + "rate", 0.0), window,
                                              read_double(node["amplitude"], where + "amplitude", 0.0));
        case PulseShape::gaussian:
            return PulseSchedule::gaussian(read_double(node["amplitude"], where + "amplitude", 0.0),
                                           read_double(node["width"], where + "width", 0.0), window,
                                           read_double(node["center"], where + "center", 0.0));
        case PulseShape::piecewise_linear: {
            const auto& pts = node["points"];
            if (!pts || !pts.IsSequence())
                throw ValidationError("points: expected a list of [t, value] pairs");
            std::vector<std::pair<double, double>> points;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (!pts[i].IsSequence() || pts[i].size() != 2)
                    throw ValidationError("points[" + std::to_string(i) + "]: expected [t, value]");
                points.emplace_back(read_double(pts[i][0], where + "points", 0.0),
                                    read_double(pts[i][1], where + "points", 0.0));
            }
            return PulseSchedule::piecewise_linear(std::move(points), window);
        }
        }
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        if (msg.rfind(where, 0) == 0)
            throw;
        throw ValidationError(where + msg);
    }
    throw ValidationError(where + "shape: unsupported");
}

json pulse_to_json(const PulseSchedule& p) {
    json j;
    j["shape"] = std::string(to_string(p.shape()));
    switch (p.shape()) {
    case PulseShape::constant:
        j["amplitude"] = p.amplitude();
        break;
    case PulseShape::linear_ramp:
        j["amplitude"] = p.amplitude();
        j["rate"] = p.rate();
        break;
    case PulseShape::gaussian:
        j["amplitude"] = p.amplitude();
        j["width"] = p.width();
        j["center"] = p.center();
        break;
    case PulseShape::piecewise_linear: {
        json pts = json::array();
        for (const auto& [t, v] : p.points())
            pts.push_back(json::array({t, v}));
        j["points"] = pts;
        break;
    }
    }
    j["window"] = json::array({p.window().start, p.window().end});
    return j;
}

// ---- scenario helpers -----------------------------------------------------

std::string ket_free(const std::string& label) {
    std::string out;
    for (char c : label)
        if (c != '|' && c != '>')
            out.push_back(c);
    return out;
}

double ghz(double rad_per_ns) { return units::to_GHz(rad_per_ns); }

std::filesystem::path artifact(const ScenarioConfig& config, RunSummary& summary, const std::string& name) {
    const auto path = config.output_dir / name;
    summary.artifacts.push_back(path.string());
    return path;
}

PropagationOptions integrator_options(const ScenarioConfig& config) {
    PropagationOptions o;
    o.tol = config.integrator.tol;
    o.output_points = config.integrator.output_points;
    return o;
}

// Residual mixing at the window edges; the edge detuning should dominate the edge coupling tenfold.
void check_window_edges(const PulseSchedule& rabi, const PulseSchedule& detuning, const std::string& what,
                        RunSummary& summary) {
    const auto& w = detuning.window();
    double worst = std::numeric_limits<double>::infinity();
    for (double t : {w.start, w.end}) {
        const double omega = std::abs(rabi(t));
        const double delta = std::abs(detuning(t));
        worst = std::min(worst, omega > 0.0 ? delta / omega : std::numeric_limits<double>::infinity());
    }
    summary.metrics[what + "_edge_detuning_ratio"] = std::isfinite(worst) ? worst : 1e300;
    if (worst < 10.0) {
        std::ostringstream os;
        os << what << ": |Delta| / |Omega| at the window edges is " << worst
           << " (< 10); residual mixing angle exceeds 0.05 rad";
        summary.warnings.push_back(os.str());
    }
}

const PulseSchedule& pulse(const ScenarioConfig& config, const std::string& name) {
    return config.pulses.at(name);
}

TimeWindow common_window(const ScenarioConfig& config, std::initializer_list<const char*> names) {
    const TimeWindow w = pulse(config, *names.begin()).window();
    for (const char* n : names) {
        const auto& other = pulse(config, n).window();
        if (other.start != w.start || other.end != w.end)
            throw ValidationError(std::string("pulses.") + n + ".window: must match pulses." + *names.begin() +
                                  ".window");
    }
    return w;
}

double max_column(const Trajectory& tr, Eigen::Index col) { return tr.populations.col(col).maxCoeff(); }
double min_column(const Trajectory& tr, Eigen::Index col) { return tr.populations.col(col).minCoeff(); }
double final_population(const Trajectory& tr, Eigen::Index col) {
    return tr.populations(tr.populations.rows() - 1, col);
}

void run_spectrum(const ScenarioConfig& config, RunSummary& summary) {
    const auto spectrum = compute_spectrum(config.cbjj, config.levels);
    const auto n = static_cast<Eigen::Index>(spectrum.levels());
    auto& m = summary.metrics;
    m["levels"] = static_cast<double>(n);
    m["omega_10_GHz"] = ghz(spectrum.transition(0));
    if (n >= 3)
        m["omega_21_GHz"] = ghz(spectrum.transition(1));
    m["plasma_frequency_GHz"] = ghz(config.cbjj.plasma_frequency());
    m["barrier_height_GHz"] = ghz(spectrum.barrier_height);
    m["delta_min_rad"] = spectrum.delta_min;
    for (Eigen::Index i = 0; i < n; ++i) {
        m["energy_" + std::to_string(i) + "_GHz"] = ghz(spectrum.energies[i]);
        for (Eigen::Index j = i; j < n; ++j)
            m["delta_" + std::to_string(i) + std::to_string(j)] = spectrum.delta_matrix(i, j);
        for (Eigen::Index j = i + 1; j < n; ++j)
            m["dmom_" + std::to_string(i) + std::to_string(j)] = spectrum.momentum_matrix(i, j);
    }
    // Products of p_ij = -i d_ij as they enter the coupled-junction Hamiltonian.
    const auto& d = spectrum.momentum_matrix;
    m["p01_sq"] = -d(0, 1) * d(0, 1) + 0.0;
    m["p11_sq"] = -d(1, 1) * d(1, 1) + 0.0;
    if (n >= 3)
        m["p00_p22"] = -d(0, 0) * d(2, 2) + 0.0;

    {
        std::ofstream out(artifact(config, summary, "spectrum_levels.csv"));
        out << "level,energy_rad_per_ns,energy_GHz\n";
        char buf[128];
        for (Eigen::Index i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%ld,%.9g,%.9g\n", static_cast<long>(i), spectrum.energies[i],
                          ghz(spectrum.energies[i]));
            out << buf;
        }
        if (!out)
            throw std::runtime_error("failed to write spectrum_levels.csv");
    }
    {
        std::ofstream out(artifact(config, summary, "spectrum_matrices.csv"));
        out << "i,j,delta_ij,dmom_ij\n";
        char buf[128];
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) {
                std::snprintf(buf, sizeof buf, "%ld,%ld,%.9g,%.9g\n", static_cast<long>(i), static_cast<long>(j),
                              spectrum.delta_matrix(i, j), spectrum.momentum_matrix(i, j));
                out << buf;
            }
        if (!out)
            throw std::runtime_error("failed to write spectrum_matrices.csv");
    }
}

void run_scrap_not(const ScenarioConfig& config, RunSummary& summary) {
    const auto spectrum = compute_spectrum(config.cbjj, std::max<std::size_t>(config.levels, 3));
    const TimeWindow window = common_window(config, {"dc", "mw"});
    const auto& dc = pulse(config, "dc");
    const auto& mw = pulse(config, "mw");
    const auto h = single_qubit_three_level(spectrum, dc, mw);
    const auto drive = effective_qubit_drive(spectrum, dc, mw);
    check_window_edges(drive.rabi, drive.detuning, "qubit_drive", summary);

    const auto report = adiabaticity_margin(drive.rabi, drive.detuning, window);
    const auto options = integrator_options(config);
    const auto from0 = propagate(h, basis_state(3, 0), window, options);
    const auto from1 = propagate(h, basis_state(3, 1), window, options);
    emit_timeseries(from0, artifact(config, summary, "timeseries_from_0.csv"));
    emit_timeseries(from1, artifact(config, summary, "timeseries_from_1.csv"));

    auto& m = summary.metrics;
    m["inversion_0_to_1"] = final_population(from0, 1);
    m["inversion_1_to_0"] = final_population(from1, 0);
    m["peak_leakage_P2"] = std::max(max_column(from0, 2), max_column(from1, 2));
    m["final_leakage_P2"] = std::max(final_population(from0, 2), final_population(from1, 2));
    m["max_ratio"] = report.max_ratio;
    m["max_ratio_time_ns"] = report.argmax_time;
    m["mixing_angle_start"] = report.mixing_angle_start;
    m["mixing_angle_end"] = report.mixing_angle_end;
    m["rabi_peak_GHz"] = ghz(drive.rabi.peak_magnitude());
    m["chirp_rate_rad_per_ns2"] = std::abs(drive.detuning.rate());
    m["landau_zener_estimate"] =
        landau_zener_probability(drive.rabi.peak_magnitude(), std::max(std::abs(drive.detuning.rate()), 1e-300));
    m["omega_10_GHz"] = ghz(spectrum.transition(0));
    m["omega_21_GHz"] = ghz(spectrum.transition(1));
    m["max_norm_error"] = std::max(from0.max_norm_error(), from1.max_norm_error());
}

void run_readout(const ScenarioConfig& config, RunSummary& summary) {
    const auto spectrum = compute_spectrum(config.cbjj, std::max<std::size_t>(config.levels, 3));
    const TimeWindow window = common_window(config, {"dc", "mw"});
    const auto& dc = pulse(config, "dc");
    const auto& mw = pulse(config, "mw");
    const auto h = driven_three_level(spectrum, dc, mw, DriveTransition::readout_12);
    const auto drive = effective_readout_drive(spectrum, dc, mw);
    check_window_edges(drive.rabi, drive.detuning, "readout_drive", summary);

    const auto report = adiabaticity_margin(drive.rabi, drive.detuning, window);
    const auto options = integrator_options(config);
    const auto from1 = propagate(h, basis_state(3, 1), window, options);
    const auto from0 = propagate(h, basis_state(3, 0), window, options);
    emit_timeseries(from1, artifact(config, summary, "timeseries_readout_from_1.csv"));
    emit_timeseries(from0, artifact(config, summary, "timeseries_readout_from_0.csv"));

    auto& m = summary.metrics;
    m["readout_P2_from_1"] = final_population(from1, 2);
    m["ground_retention_P0"] = final_population(from0, 0);
    m["ground_min_P0"] = min_column(from0, 0);
    m["max_ratio"] = report.max_ratio;
    m["max_ratio_time_ns"] = report.argmax_time;
    m["rabi_12_peak_GHz"] = ghz(drive.rabi.peak_magnitude());
    m["max_norm_error"] = std::max(from0.max_norm_error(), from1.max_norm_error());
}

void run_swap(const ScenarioConfig& config, RunSummary& summary) {
    const auto spectrum = compute_spectrum(config.cbjj, std::max<std::size_t>(config.levels, 3));
    const auto& dc2 = pulse(config, "dc2");
    const TimeWindow window = dc2.window();
    const double cap = config.cbjj.junction_capacitance_pF;
    const auto constants = coupled_cbjj_constants(spectrum, config.coupling_zeta, cap);
    const auto options = integrator_options(config);

    const auto xy = coupled_cbjj_xy(spectrum, config.coupling_zeta, cap, dc2);
    const auto pair = coupled_cbjj_pair_subspace2(spectrum, config.coupling_zeta, cap, dc2);
    const auto triple = coupled_cbjj_subspace3(spectrum, config.coupling_zeta, cap, dc2);

    const auto chirp = dc2.scaled(units::rad_per_ns_per_nA * (spectrum.delta_matrix(1, 1) - spectrum.delta_matrix(0, 0)));
    const auto coupling = PulseSchedule::constant(constants.omega_bar, window);
    check_window_edges(coupling, chirp, "pair_subspace", summary);
    const auto report = adiabaticity_margin(coupling, chirp, window);

    const GateMatrix u4 = make_gate(propagate_unitary(xy, window, options.tol));
    const auto score = swap_fidelity(u4);

    const auto i2 = propagate(pair, basis_state(2, 0), window, options);
    const auto i3 = propagate(triple, basis_state(3, 1), window, options);
    const auto xy00 = propagate(xy, basis_state(4, 0), window, options);
    const auto xy11 = propagate(xy, basis_state(4, 3), window, options);
    emit_timeseries(i2, artifact(config, summary, "timeseries_i2.csv"));
    emit_timeseries(i3, artifact(config, summary, "timeseries_i3.csv"));

    Eigen::Index dip = 0;
    const double p11_min = i3.populations.col(1).minCoeff(&dip);

    auto& m = summary.metrics;
    m["swap_population_score"] = score.population;
    m["swap_phase_sensitive_fidelity"] = score.phase_sensitive;
    m["i2_transfer_P10"] = final_population(i2, 1);
    m["i3_P11_min"] = p11_min;
    m["i3_P11_min_time_ns"] = i3.times[static_cast<std::size_t>(dip)];
    m["i3_P11_final"] = final_population(i3, 1);
    m["i3_peak_P02"] = max_column(i3, 0);
    m["i3_peak_P20"] = max_column(i3, 2);
    m["p00_conservation_error"] = (xy00.populations.col(0).array() - 1.0).abs().maxCoeff();
    m["p11_conservation_error"] = (xy11.populations.col(3).array() - 1.0).abs().maxCoeff();
    m["max_ratio"] = report.max_ratio;
    m["omega_bar_GHz"] = ghz(constants.omega_bar);
    m["omega_ab_GHz"] = ghz(constants.omega_ab);
    m["omega_ac_GHz"] = ghz(constants.omega_ac);
    m["theta_GHz"] = ghz(constants.theta);
    m["max_norm_error"] = std::max({i2.max_norm_error(), i3.max_norm_error(), xy00.max_norm_error(),
                                    xy11.max_norm_error()});
}

void run_lz_sweep(const ScenarioConfig& config, RunSummary& summary) {
    PropagationOptions options = integrator_options(config);
    const auto& lz = config.lz;

    std::ofstream out(artifact(config, summary, "lz_sweep.csv"));
    out << "rabi_gap_rad_per_ns,sweep_rate_rad_per_ns2,window_half_ns,analytic,numeric,abs_error\n";
    double worst = 0.0, p_min = 1.0, p_max = 0.0;
    double norm_error = 0.0;
    char buf[256];
    for (double gap : lz.rabi_gaps) {
        for (double rate : lz.sweep_rates) {
            const double half = lz.window_ratio * std::max(gap / rate, 1.0 / std::sqrt(rate));
            const TimeWindow window{-half, half};
            const auto h = scrap_two_level(PulseSchedule::constant(gap, window),
                                           PulseSchedule::linear_ramp(rate, window));
            const auto tr = propagate(h, basis_state(2, 0), window, options);
            const double numeric = final_population(tr, 0);
            const double analytic = landau_zener_probability(gap, rate);
            const double err = std::abs(numeric - analytic);
            worst = std::max(worst, err);
            p_min = std::min(p_min, analytic);
            p_max = std::max(p_max, analytic);
            norm_error = std::max(norm_error, tr.max_norm_error());
            std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", gap, rate, half, analytic, numeric, err);
            out << buf;
        }
    }
    if (!out)
        throw std::runtime_error("failed to write lz_sweep.csv");
    auto& m = summary.metrics;
    m["lz_points"] = static_cast<double>(lz.rabi_gaps.size() * lz.sweep_rates.size());
    m["lz_max_abs_error"] = worst;
    m["lz_min_analytic"] = p_min;
    m["lz_max_analytic"] = p_max;
    m["max_norm_error"] = norm_error;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::spectrum: return "spectrum";
    case ScenarioKind::scrap_not: return "scrap-not";
    case ScenarioKind::readout: return "readout";
    case ScenarioKind::swap: return "swap";
    case ScenarioKind::lz_sweep: return "lz-sweep";
    }
    return "unknown";
}

ScenarioKind parse_scenario(std::string_view name) {
    for (auto k : {ScenarioKind::spectrum, ScenarioKind::scrap_not, ScenarioKind::readout, ScenarioKind::swap,
                   ScenarioKind::lz_sweep})
        if (to_string(k) == name)
            return k;
    throw ValidationError("scenario: unknown scenario '" + std::string(name) +
                          "' (expected spectrum, scrap-not, readout, swap or lz-sweep)");
}

std::vector<std::string> ScenarioConfig::required_pulses(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::scrap_not:
    case ScenarioKind::readout: return {"dc", "mw"};
    case ScenarioKind::swap: return {"dc2"};
    case ScenarioKind::spectrum:
    case ScenarioKind::lz_sweep: return {};
    }
    return {};
}

void ScenarioConfig::validate() const {
    try {
        cbjj.validate();
    } catch (const ValidationError&) {
        throw;
    }
    if (levels < 2 || levels > 8)
        throw ValidationError("cbjj.levels: must lie in [2, 8]");
    if (!(coupling_zeta > 0.0 && coupling_zeta < 1.0))
        throw ValidationError("cbjj.coupling_zeta: must lie in (0, 1)");
    if (!(integrator.tol > 1e-14 && integrator.tol < 1e-3))
        throw ValidationError("integrator.tol: must lie in (1e-14, 1e-3)");
    if (integrator.output_points < 500)
        throw ValidationError("integrator.output_points: must be at least 500");
    for (const auto& name : required_pulses(scenario))
        if (!pulses.count(name))
            throw ValidationError("pulses." + name + ": missing (required by scenario " +
                                  std::string(to_string(scenario)) + ")");
    if (scenario == ScenarioKind::lz_sweep) {
        if (lz.rabi_gaps.empty() || lz.sweep_rates.empty())
            throw ValidationError("lz: rabi_gaps and sweep_rates must be non-empty");
        for (double g : lz.rabi_gaps)
            if (!(g >= 0.0))
                throw ValidationError("lz.rabi_gaps: entries must be non-negative");
        for (double v : lz.sweep_rates)
            if (!(v > 0.0))
                throw ValidationError("lz.sweep_rates: entries must be positive");
        if (!(lz.window_ratio >= 10.0))
            throw ValidationError("lz.window_ratio: must be at least 10");
    }
    if (output_dir.empty())
        throw ValidationError("output_dir: must not be empty");
}

ScenarioConfig parse_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ValidationError(std::string("config: not valid YAML: ") + e.what());
    }
    if (!root.IsMap())
        throw ValidationError("config: expected a mapping at the top level");
    if (root["metadata"] && root["metadata"].IsMap())
        root = root["metadata"];

    reject_unknown_keys(root, "", {"scenario", "cbjj", "pulses", "integrator", "lz", "output_dir"});

    ScenarioConfig c;
    if (!root["scenario"])
        throw ValidationError("scenario: missing");
    c.scenario = parse_scenario(read<std::string>(root["scenario"], "scenario", ""));

    if (const auto node = root["cbjj"]) {
        if (!node.IsMap())
            throw ValidationError("cbjj: expected a mapping");
        reject_unknown_keys(node, "cbjj.",
                            {"junction_capacitance_pF", "critical_current_uA", "bias_current_ratio", "grid_points",
                             "box_margin", "levels", "coupling_zeta"});
        auto& p = c.cbjj;
        p.junction_capacitance_pF =
            read_double(node["junction_capacitance_pF"], "cbjj.junction_capacitance_pF", p.junction_capacitance_pF);
        p.critical_current_uA = read_double(node["critical_current_uA"], "cbjj.critical_current_uA", p.critical_current_uA);
        p.bias_current_ratio = read_double(node["bias_current_ratio"], "cbjj.bias_current_ratio", p.bias_current_ratio);
        p.grid_points = read_count(node["grid_points"], "cbjj.grid_points", p.grid_points);
        p.box_margin = read_double(node["box_margin"], "cbjj.box_margin", p.box_margin);
        c.levels = read_count(node["levels"], "cbjj.levels", c.levels);
        c.coupling_zeta = read_double(node["coupling_zeta"], "cbjj.coupling_zeta", c.coupling_zeta);
    }
    if (const auto node = root["pulses"]) {
        if (!node.IsMap())
            throw ValidationError("pulses: expected a mapping of named pulses");
        for (const auto& kv : node) {
            const auto name = kv.first.as<std::string>();
            c.pulses.emplace(name, parse_pulse(kv.second, name));
        }
    }
    if (const auto node = root["integrator"]) {
        if (!node.IsMap())
            throw ValidationError("integrator: expected a mapping");
        reject_unknown_keys(node, "integrator.", {"tol", "output_points"});
        c.integrator.tol = read_double(node["tol"], "integrator.tol", c.integrator.tol);
        c.integrator.output_points = read_count(node["output_points"], "integrator.output_points",
                                                c.integrator.output_points);
    }
    if (const auto node = root["lz"]) {
        if (!node.IsMap())
            throw ValidationError("lz: expected a mapping");
        reject_unknown_keys(node, "lz.", {"rabi_gaps", "sweep_rates", "window_ratio"});
        c.lz.rabi_gaps = read_list(node["rabi_gaps"], "lz.rabi_gaps", c.lz.rabi_gaps);
        c.lz.sweep_rates = read_list(node["sweep_rates"], "lz.sweep_rates", c.lz.sweep_rates);
        c.lz.window_ratio = read_double(node["window_ratio"], "lz.window_ratio", c.lz.window_ratio);
    }
    if (root["output_dir"])
        c.output_dir = read<std::string>(root["output_dir"], "output_dir", "out");
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json config_to_json(const ScenarioConfig& config) {
    json j;
    j["scenario"] = std::string(to_string(config.scenario));
    j["output_dir"] = config.output_dir.string();
    j["cbjj"] = {{"junction_capacitance_pF", config.cbjj.junction_capacitance_pF},
                 {"critical_current_uA", config.cbjj.critical_current_uA},
                 {"bias_current_ratio", config.cbjj.bias_current_ratio},
                 {"grid_points", config.cbjj.grid_points},
                 {"box_margin", config.cbjj.box_margin},
                 {"levels", config.levels},
                 {"coupling_zeta", config.coupling_zeta}};
    json pulses = json::object();
    for (const auto& [name, p] : config.pulses)
        pulses[name] = pulse_to_json(p);
    j["pulses"] = pulses;
    j["integrator"] = {{"tol", config.integrator.tol}, {"output_points", config.integrator.output_points}};
    j["lz"] = {{"rabi_gaps", config.lz.rabi_gaps},
               {"sweep_rates", config.lz.sweep_rates},
               {"window_ratio", config.lz.window_ratio}};
    return j;
}

json RunSummary::to_json() const {
    json j;
    j["scenario"] = scenario;
    for (const auto& [name, value] : metrics)
        j[name] = value;
    j["artifacts"] = artifacts;
    j["warnings"] = warnings;
    j["metadata"] = metadata;
    return j;
}

RunSummary run_scenario(const ScenarioConfig& config) {
    config.validate();
    RunSummary summary;
    summary.scenario = std::string(to_string(config.scenario));
    summary.metadata = config_to_json(config);

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + config.output_dir.string() + ": " + ec.message());

    try {
        switch (config.scenario) {
        case ScenarioKind::spectrum: run_spectrum(config, summary); break;
        case ScenarioKind::scrap_not: run_scrap_not(config, summary); break;
        case ScenarioKind::readout: run_readout(config, summary); break;
        case ScenarioKind::swap: run_swap(config, summary); break;
        case ScenarioKind::lz_sweep: run_lz_sweep(config, summary); break;
        }
    } catch (const NumericalError& e) {
        throw NumericalError(summary.scenario + ": " + e.what());
    }

    for (const auto& [name, value] : summary.metrics)
        if (!std::isfinite(value))
            throw NumericalError(summary.scenario + ": metric " + name + " is not finite");
    return summary;
}

std::filesystem::path write_summary(const RunSummary& summary, const std::filesystem::path& output_dir) {
    const auto path = output_dir / "summary.json";
    std::ofstream out(path);
    out << summary.to_json().dump(2) << '\n';
    if (!out)
        throw std::runtime_error("failed to write " + path.string());
    return path;
}

void emit_timeseries(const Trajectory& trajectory, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t_ns";
    for (const auto& label : trajectory.labels)
        out << ",P_" << ket_free(label);
    out << '\n';
    char buf[64];
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", trajectory.times[i]);
        out << buf;
        for (Eigen::Index j = 0; j < trajectory.populations.cols(); ++j) {
            std::snprintf(buf, sizeof buf, ",%.9g", trajectory.populations(static_cast<Eigen::Index>(i), j));
            out << buf;
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace scrap
