// config.hpp - scenario configuration: key-value parsing and validation
#pragma once

#include <map>
#include <string>
#include <vector>

#include "qedtd/emitter.hpp"
#include "qedtd/grid.hpp"
#include "qedtd/types.hpp"

namespace qedtd {

enum class ScenarioKind { FreeSpace1D, FreeSpace2D, Cavity1D, SquareCavity, Microdisk, Bragg };

// Maps a registry id to its geometry family. Throws on unknown ids.
ScenarioKind scenario_kind_from_id(const std::string& id);
int scenario_dim(ScenarioKind kind);
bool scenario_is_closed_cavity(ScenarioKind kind);

// Fully resolved, validated configuration of one run.
struct ScenarioConfig {
    std::string scenario;
    ScenarioKind kind = ScenarioKind::FreeSpace1D;
    int dim = 1;

    EmitterSpec emitter;
    CouplingModel coupling = CouplingModel::DipoleCurrent;
    double resolution = 20.0;   // points per lambda0 in the densest medium
    double courant = 0.0;       // filled with 0.9 (1D) / 0.5 (2D) if absent
    double duration = 0.0;      // s
    BoundarySpec boundary;
    int decimation = 1;
    std::string out_dir = "out";
    ExecPolicy exec = ExecPolicy::OpenMP;

    // geometry (used per scenario kind)
    double extent = 0.0;          // m, free-space interior span
    double cavity_length = 0.0;   // m, 1D cavity length or square side
    double disk_radius = 3e-6;    // m
    double disk_eps_r = 11.56;
    double disk_pad = 1.5e-6;     // m of vacuum between disk and PML
    BraggParams bragg;

    // modal reference integrator
    bool oracle = false;          // run the modal reference alongside FDTD
    int oracle_modes = 50;        // 1D mode count
    double oracle_cutoff_w0 = 3.0;// 2D: keep modes below this multiple of omega0
    int oracle_steps_per_period = 64;
};

struct ValidationResult {
    ScenarioConfig config;
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
};

// Key-value text format: one `key = value` per line, '#' comments.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors);
std::map<std::string, std::string> load_config_file(const std::string& path,
                                                    std::vector<std::string>& errors);

// Checks every invariant, fills defaults, rejects unknown keys. Each error
// names the offending field.
ValidationResult validate_config(const std::map<std::string, std::string>& raw);

// Inverse of validate_config for the resolved fields; feeding the result
// back through validate_config reproduces the same configuration.
std::map<std::string, std::string> to_key_values(const ScenarioConfig& c);

const char* coupling_name(CouplingModel m); // "eq3" / "eq4"

} // namespace qedtd
