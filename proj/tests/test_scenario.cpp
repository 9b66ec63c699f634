#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scrap/errors.hpp"
#include "scrap/scenario.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace scrap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("scrap_scenario_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const fs::path& path) {
    std::ifstream in(path);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        ++n;
    return n;
}

const char* scrap_not_text = R"(
scenario: scrap-not
pulses:
  dc: {shape: linear_ramp, rate: 0.15, window: [-150, 150]}
  mw: {shape: gaussian, amplitude: 1.25, width: 50, window: [-150, 150]}
integrator: {tol: 1.0e-9, output_points: 600}
)";

std::string message_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "<no error>";
}

} // namespace

TEST_CASE("defaults are filled in") {
    const auto c = parse_config("scenario: spectrum\n");
    CHECK(c.scenario == ScenarioKind::spectrum);
    CHECK(c.cbjj.bias_current_ratio == 0.9725);
    CHECK(c.cbjj.grid_points == 2048);
    CHECK(c.levels == 3);
    CHECK(c.integrator.output_points == 1000);
    CHECK(c.output_dir == fs::path("out"));
    CHECK(ScenarioConfig::required_pulses(ScenarioKind::swap) == std::vector<std::string>{"dc2"});
}

TEST_CASE("field-level validation messages") {
    CHECK(message_of("scenario: spectrum\ncbjj: {bogus: 1}\n").find("cbjj.bogus") == 0);
    CHECK(message_of("scenario: spectrum\nextra: 1\n").find("extra") == 0);
    CHECK(message_of("scenario: teleport\n").find("scenario") == 0);
    CHECK(message_of("cbjj: {}\n").find("scenario: missing") == 0);
    CHECK(message_of("scenario: spectrum\ncbjj: {bias_current_ratio: 1.2}\n").find("cbjj.bias_current_ratio") == 0);
    CHECK(message_of("scenario: spectrum\ncbjj: {grid_points: 100}\n").find("cbjj.grid_points") == 0);
    CHECK(message_of("scenario: spectrum\ncbjj: {grid_points: many}\n").find("cbjj.grid_points") == 0);
    CHECK(message_of("scenario: spectrum\nintegrator: {tol: 0.5}\n").find("integrator.tol") == 0);
    CHECK(message_of("scenario: spectrum\nintegrator: {output_points: 10}\n").find("integrator.output_points") == 0);
    CHECK(message_of("scenario: scrap-not\n").find("pulses.dc: missing") == 0);
    CHECK(message_of("scenario: [unclosed\n").find("config") == 0);
    CHECK(message_of("- a\n- b\n").find("config") == 0);

    const std::string no_width = R"(
scenario: scrap-not
pulses:
  dc: {shape: linear_ramp, rate: 0.15, window: [-150, 150]}
  mw: {shape: gaussian, amplitude: 1.25, window: [-150, 150]}
)";
    CHECK(message_of(no_width).find("pulses.mw.width") == 0);

    const std::string bad_window = R"(
scenario: swap
pulses:
  dc2: {shape: linear_ramp, rate: 3.0, window: [10, -10]}
)";
    CHECK(message_of(bad_window).find("pulses.dc2.window") == 0);

    const std::string bad_shape = R"(
scenario: swap
pulses:
  dc2: {shape: square, rate: 3.0, window: [-10, 10]}
)";
    CHECK(message_of(bad_shape).find("pulses.dc2.shape") == 0);

    const std::string bad_rates = R"(
scenario: lz-sweep
lz: {rabi_gaps: [1.0], sweep_rates: [0.0]}
)";
    CHECK(message_of(bad_rates).find("lz.sweep_rates") == 0);
}

TEST_CASE("resolved config round-trips") {
    const auto c = parse_config(scrap_not_text);
    const auto json = config_to_json(c);
    const auto again = parse_config(json.dump());
    CHECK(config_to_json(again) == json);
    CHECK(json["pulses"]["mw"]["width"] == 50.0);

    // a summary document is accepted through its metadata block
    nlohmann::ordered_json summary{{"scenario", "scrap-not"}, {"metadata", json}};
    CHECK(config_to_json(parse_config(summary.dump())) == json);
}

TEST_CASE("timeseries format") {
    const auto dir = scratch_dir("timeseries");
    fs::create_directories(dir);

    Trajectory empty;
    empty.labels = {"|0>", "|1>"};
    emit_timeseries(empty, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") == "t_ns,P_0,P_1\n");

    Trajectory three;
    three.labels = {"|02>", "|11>", "|20>"};
    three.times = {-1.0, 0.5};
    three.populations.resize(2, 3);
    three.populations << 0.123456789123, 0.5, 0.376543210877, 1.0 / 3.0, 2e-12, 2.0 / 3.0;
    emit_timeseries(three, dir / "three.csv");
    CHECK(slurp(dir / "three.csv") ==
          "t_ns,P_02,P_11,P_20\n-1,0.123456789,0.5,0.376543211\n0.5,0.333333333,2e-12,0.666666667\n");

    CHECK_THROWS(emit_timeseries(three, dir / "missing" / "x.csv"));
}

TEST_CASE("spectrum run writes its tables") {
    auto c = parse_config("scenario: spectrum\n");
    c.output_dir = scratch_dir("spectrum");
    const auto s = run_scenario(c);
    CHECK(s.scenario == "spectrum");
    CHECK(s.metrics.at("omega_10_GHz") > s.metrics.at("omega_21_GHz"));
    CHECK(s.metrics.count("delta_02") == 1);
    CHECK(s.metrics.count("dmom_12") == 1);
    REQUIRE(s.artifacts.size() == 2);
    CHECK(count_lines(c.output_dir / "spectrum_levels.csv") == 4);
    CHECK(count_lines(c.output_dir / "spectrum_matrices.csv") == 10);
    const auto path = write_summary(s, c.output_dir);
    const auto doc = nlohmann::json::parse(slurp(path));
    CHECK(doc["omega_10_GHz"].get<double>() == s.metrics.at("omega_10_GHz"));
    CHECK(doc["metadata"]["cbjj"]["grid_points"] == 2048);
}

TEST_CASE("identical configs give byte-identical output") {
    auto c = parse_config(scrap_not_text);
    c.output_dir = scratch_dir("repro_a");
    const auto a = run_scenario(c);
    write_summary(a, c.output_dir);
    auto d = c;
    d.output_dir = scratch_dir("repro_b");
    const auto b = run_scenario(d);
    write_summary(b, d.output_dir);

    CHECK(slurp(c.output_dir / "timeseries_from_0.csv") == slurp(d.output_dir / "timeseries_from_0.csv"));
    CHECK(slurp(c.output_dir / "timeseries_from_1.csv") == slurp(d.output_dir / "timeseries_from_1.csv"));
    CHECK(a.metrics == b.metrics);

    // one row per output mesh point
    CHECK(count_lines(c.output_dir / "timeseries_from_0.csv") == 600 + 1);
}

TEST_CASE("summary metadata reproduces the run") {
    auto c = parse_config(scrap_not_text);
    c.output_dir = scratch_dir("metadata");
    const auto first = run_scenario(c);
    const auto path = write_summary(first, c.output_dir);

    const auto again = run_scenario(load_config(path));
    for (const auto& [name, value] : first.metrics)
        CHECK(again.metrics.at(name) == doctest::Approx(value).epsilon(1e-10).scale(1e-10));
}

TEST_CASE("numerical failures carry the scenario name") {
    auto c = parse_config("scenario: spectrum\ncbjj: {bias_current_ratio: 0.9999}\n");
    c.output_dir = scratch_dir("numerical");
    try {
        run_scenario(c);
        FAIL("expected a numerical failure");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).rfind("spectrum: ", 0) == 0);
    }
}

TEST_CASE("mismatched drive windows are rejected") {
    auto c = parse_config(R"(
scenario: readout
pulses:
  dc: {shape: linear_ramp, rate: 0.15, window: [-150, 150]}
  mw: {shape: gaussian, amplitude: 1.25, width: 50, window: [-100, 100]}
)");
    c.output_dir = scratch_dir("windows");
    CHECK_THROWS_AS(run_scenario(c), ValidationError);
}
