#include "scrap/scrap.h"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

namespace {

int exit_code(scrap_status status) {
    switch (status) {
    case SCRAP_OK: return 0;
    case SCRAP_NUMERICAL:
    case SCRAP_INTERNAL: return 2;
    default: return 1;
    }
}

int report(scrap_status status, const char* stage) {
    std::fprintf(stderr, "scrap_cli: %s failed (%s): %s\n", stage, scrap_status_name(status), scrap_last_error());
    return exit_code(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SCRAP gate simulator for current-biased Josephson junctions"};
    std::string config_path;
    std::string scenario;
    std::string out_dir;
    double tol = 0.0;
    bool quiet = false;
    app.add_option("--config", config_path, "Scenario config (YAML or JSON, a summary.json also works)")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--scenario", scenario, "Override the scenario: spectrum, scrap-not, readout, swap, lz-sweep");
    app.add_option("--out", out_dir, "Output directory");
    auto* tol_opt = app.add_option("--tol", tol, "Integrator local error tolerance");
    app.add_flag("--quiet", quiet, "Only report errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    scrap_config* config = nullptr;
    if (auto st = scrap_config_load(config_path.c_str(), &config); st != SCRAP_OK)
        return report(st, "config");

    scrap_status st = SCRAP_OK;
    if (!scenario.empty())
        st = scrap_config_set_scenario(config, scenario.c_str());
    if (st == SCRAP_OK && !out_dir.empty())
        st = scrap_config_set_output_dir(config, out_dir.c_str());
    if (st == SCRAP_OK && tol_opt->count() > 0)
        st = scrap_config_set_tol(config, tol);
    if (st != SCRAP_OK) {
        scrap_config_free(config);
        return report(st, "config");
    }

    scrap_summary* summary = nullptr;
    st = scrap_run(config, &summary);
    scrap_config_free(config);
    if (st != SCRAP_OK)
        return report(st, "run");

    for (size_t i = 0; i < scrap_summary_warning_count(summary); ++i)
        std::fprintf(stderr, "warning: %s\n", scrap_summary_warning(summary, i));
    if (!quiet) {
        const char* json = nullptr;
        scrap_summary_json(summary, &json);
        std::printf("%s\n", json);
    }
    scrap_summary_free(summary);
    return 0;
}
