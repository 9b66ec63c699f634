#include "scrap/scrap.h"

#include "scrap/errors.hpp"
#include "scrap/propagator.hpp"
#include "scrap/scenario.hpp"
#include "scrap/spectrum.hpp"

#include <cmath>
#include <memory>
#include <string>

struct scrap_config {
    scrap::ScenarioConfig config;
    std::string json;
};

struct scrap_summary {
    scrap::RunSummary summary;
    std::string json;
    std::string path;
};

struct scrap_spectrum {
    scrap::SpectrumResult result;
};

namespace {

thread_local std::string last_error;

scrap_status fail(scrap_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

template <typename F>
scrap_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return SCRAP_OK;
    } catch (const scrap::ValidationError& e) {
        return fail(SCRAP_INVALID, e.what());
    } catch (const scrap::NumericalError& e) {
        return fail(SCRAP_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SCRAP_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SCRAP_IO, e.what());
    } catch (...) {
        return fail(SCRAP_INTERNAL, "unknown error");
    }
}

#define SCRAP_REQUIRE(ptr, name)                                      \
    do {                                                              \
        if (!(ptr))                                                   \
            return fail(SCRAP_INVALID, std::string(name) + " is null"); \
    } while (0)

} // namespace

extern "C" {

const char* scrap_last_error(void) { return last_error.c_str(); }

const char* scrap_status_name(scrap_status status) {
    switch (status) {
    case SCRAP_OK: return "ok";
    case SCRAP_INVALID: return "invalid";
    case SCRAP_NUMERICAL: return "numerical";
    case SCRAP_IO: return "io";
    case SCRAP_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* scrap_version(void) { return "1.0.0"; }

scrap_status scrap_config_load(const char* path, scrap_config** out) {
    SCRAP_REQUIRE(path, "path");
    SCRAP_REQUIRE(out, "out");
    *out = nullptr;
    return guarded([&] { *out = new scrap_config{scrap::load_config(path), {}}; });
}

scrap_status scrap_config_parse(const char* text, scrap_config** out) {
    SCRAP_REQUIRE(text, "text");
    SCRAP_REQUIRE(out, "out");
    *out = nullptr;
    return guarded([&] { *out = new scrap_config{scrap::parse_config(text), {}}; });
}

void scrap_config_free(scrap_config* config) { delete config; }

scrap_status scrap_config_set_scenario(scrap_config* config, const char* name) {
    SCRAP_REQUIRE(config, "config");
    SCRAP_REQUIRE(name, "name");
    return guarded([&] {
        auto copy = config->config;
        copy.scenario = scrap::parse_scenario(name);
        copy.validate();
        config->config = std::move(copy);
    });
}

scrap_status scrap_config_set_output_dir(scrap_config* config, const char* dir) {
    SCRAP_REQUIRE(config, "config");
    SCRAP_REQUIRE(dir, "dir");
    return guarded([&] {
        if (!*dir)
            throw scrap::ValidationError("output_dir: must not be empty");
        config->config.output_dir = dir;
    });
}

scrap_status scrap_config_set_tol(scrap_config* config, double tol) {
    SCRAP_REQUIRE(config, "config");
    return guarded([&] {
        if (!(tol > 1e-14 && tol < 1e-3))
            throw scrap::ValidationError("integrator.tol: must lie in (1e-14, 1e-3)");
        config->config.integrator.tol = tol;
    });
}

scrap_status scrap_config_json(scrap_config* config, const char** out) {
    SCRAP_REQUIRE(config, "config");
    SCRAP_REQUIRE(out, "out");
    return guarded([&] {
        config->json = scrap::config_to_json(config->config).dump(2);
        *out = config->json.c_str();
    });
}

scrap_status scrap_run(const scrap_config* config, scrap_summary** out) {
    SCRAP_REQUIRE(config, "config");
    SCRAP_REQUIRE(out, "out");
    *out = nullptr;
    return guarded([&] {
        auto s = std::make_unique<scrap_summary>();
        s->summary = scrap::run_scenario(config->config);
        s->path = scrap::write_summary(s->summary, config->config.output_dir).string();
        s->json = s->summary.to_json().dump(2);
        *out = s.release();
    });
}

void scrap_summary_free(scrap_summary* summary) { delete summary; }

scrap_status scrap_summary_json(const scrap_summary* summary, const char** out) {
    SCRAP_REQUIRE(summary, "summary");
    SCRAP_REQUIRE(out, "out");
    *out = summary->json.c_str();
    return SCRAP_OK;
}

scrap_status scrap_summary_path(const scrap_summary* summary, const char** out) {
    SCRAP_REQUIRE(summary, "summary");
    SCRAP_REQUIRE(out, "out");
    *out = summary->path.c_str();
    return SCRAP_OK;
}

scrap_status scrap_summary_metric(const scrap_summary* summary, const char* name, double* out) {
    SCRAP_REQUIRE(summary, "summary");
    SCRAP_REQUIRE(name, "name");
    SCRAP_REQUIRE(out, "out");
    const auto it = summary->summary.metrics.find(name);
    if (it == summary->summary.metrics.end())
        return fail(SCRAP_INVALID, std::string("no metric named ") + name);
    *out = it->second;
    return SCRAP_OK;
}

size_t scrap_summary_warning_count(const scrap_summary* summary) {
    return summary ? summary->summary.warnings.size() : 0;
}

const char* scrap_summary_warning(const scrap_summary* summary, size_t index) {
    if (!summary || index >= summary->summary.warnings.size())
        return nullptr;
    return summary->summary.warnings[index].c_str();
}

scrap_status scrap_spectrum_compute(double capacitance_pF, double critical_current_uA, double bias_ratio,
                                    size_t grid_points, double box_margin, size_t levels, scrap_spectrum** out) {
    SCRAP_REQUIRE(out, "out");
    *out = nullptr;
    return guarded([&] {
        scrap::CbjjParams p;
        p.junction_capacitance_pF = capacitance_pF;
        p.critical_current_uA = critical_current_uA;
        p.bias_current_ratio = bias_ratio;
        p.grid_points = grid_points;
        p.box_margin = box_margin;
        if (levels < 2)
            throw scrap::ValidationError("levels: must be at least 2");
        *out = new scrap_spectrum{scrap::compute_spectrum(p, levels)};
    });
}

void scrap_spectrum_free(scrap_spectrum* spectrum) { delete spectrum; }

size_t scrap_spectrum_levels(const scrap_spectrum* spectrum) { return spectrum ? spectrum->result.levels() : 0; }

scrap_status scrap_spectrum_energy(const scrap_spectrum* spectrum, size_t level, double* out) {
    SCRAP_REQUIRE(spectrum, "spectrum");
    SCRAP_REQUIRE(out, "out");
    if (level >= spectrum->result.levels())
        return fail(SCRAP_INVALID, "level out of range");
    *out = spectrum->result.energies[static_cast<Eigen::Index>(level)];
    return SCRAP_OK;
}

scrap_status scrap_spectrum_delta(const scrap_spectrum* spectrum, size_t i, size_t j, double* out) {
    SCRAP_REQUIRE(spectrum, "spectrum");
    SCRAP_REQUIRE(out, "out");
    if (i >= spectrum->result.levels() || j >= spectrum->result.levels())
        return fail(SCRAP_INVALID, "index out of range");
    *out = spectrum->result.delta_matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return SCRAP_OK;
}

scrap_status scrap_spectrum_dmom(const scrap_spectrum* spectrum, size_t i, size_t j, double* out) {
    SCRAP_REQUIRE(spectrum, "spectrum");
    SCRAP_REQUIRE(out, "out");
    if (i >= spectrum->result.levels() || j >= spectrum->result.levels())
        return fail(SCRAP_INVALID, "index out of range");
    *out = spectrum->result.momentum_matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return SCRAP_OK;
}

scrap_status scrap_landau_zener(double rabi_gap, double sweep_rate, double* out) {
    SCRAP_REQUIRE(out, "out");
    return guarded([&] { *out = scrap::landau_zener_probability(rabi_gap, sweep_rate); });
}

} // extern "C"
