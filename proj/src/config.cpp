// config.cpp - key-value config parsing, defaulting and invariant checks
#include "qedtd/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qedtd {

namespace {

const std::set<std::string> kKnownKeys = {
    "scenario", "lambda0_m", "d_eg_Cm", "cross_section_A_m2", "axial_length_L_m",
    "coupling", "resolution", "courant", "duration_s", "boundary", "pml_cells",
    "pml_order", "pml_target_reflection", "decimation", "out_dir", "exec",
    "extent_m", "cavity_length_m", "disk_radius_m", "disk_eps_r", "disk_pad_m",
    "mirror_cells", "mirror_n1", "mirror_n2", "cavity_index", "cavity_thickness_m",
    "bragg_pad_m", "dx_m", "oracle", "oracle_modes", "oracle_cutoff_w0",
    "oracle_steps_per_period"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Reader {
    const std::map<std::string, std::string>& raw;
    std::vector<std::string>& errors;

    bool has(const std::string& key) const { return raw.count(key) != 0; }

    double num(const std::string& key, double fallback) {
        auto it = raw.find(key);
        if (it == raw.end())
            return fallback;
        char* end = nullptr;
        const double v = std::strtod(it->second.c_str(), &end);
        if (end == it->second.c_str() || *end != '\0') {
            errors.push_back(key + ": not a number ('" + it->second + "')");
            return fallback;
        }
        return v;
    }

    int integer(const std::string& key, int fallback) {
        const double v = num(key, fallback);
        if (v != std::floor(v))
            errors.push_back(key + ": must be an integer");
        return static_cast<int>(v);
    }

    std::string str(const std::string& key, const std::string& fallback) {
        auto it = raw.find(key);
        return it == raw.end() ? fallback : it->second;
    }
};

} // namespace

ScenarioKind scenario_kind_from_id(const std::string& id) {
    if (id == "free-space-1d") return ScenarioKind::FreeSpace1D;
    if (id == "free-space-2d") return ScenarioKind::FreeSpace2D;
    if (id == "cavity-1d") return ScenarioKind::Cavity1D;
    if (id == "square-cavity-l1" || id == "square-cavity-l2")
        return ScenarioKind::SquareCavity;
    if (id == "microdisk") return ScenarioKind::Microdisk;
    if (id == "bragg" || id == "bragg-n5" || id == "bragg-n10" || id == "bragg-n25")
        return ScenarioKind::Bragg;
    throw std::invalid_argument("unknown scenario '" + id + "'");
}

int scenario_dim(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::FreeSpace1D:
    case ScenarioKind::Cavity1D:
    case ScenarioKind::Bragg:
        return 1;
    default:
        return 2;
    }
}

bool scenario_is_closed_cavity(ScenarioKind kind) {
    return kind == ScenarioKind::Cavity1D || kind == ScenarioKind::SquareCavity;
}

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
            continue;
        }
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path,
                                                    std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        errors.push_back("cannot open config file '" + path + "'");
        return {};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), errors);
}

ValidationResult validate_config(const std::map<std::string, std::string>& raw) {
    ValidationResult res;
    auto& errors = res.errors;
    ScenarioConfig& c = res.config;
    const PhysicalConstants k;

    for (const auto& [key, value] : raw) {
        (void)value;
        if (!kKnownKeys.count(key))
            errors.push_back("unknown key '" + key + "'");
    }

    Reader r{raw, errors};

    c.scenario = r.str("scenario", "");
    if (c.scenario.empty()) {
        errors.push_back("scenario: missing");
        return res;
    }
    try {
        c.kind = scenario_kind_from_id(c.scenario);
    } catch (const std::exception& e) {
        errors.push_back(std::string("scenario: ") + e.what());
        return res;
    }
    c.dim = scenario_dim(c.kind);

    // --- emitter ---
    if (!r.has("lambda0_m"))
        errors.push_back("lambda0_m: missing");
    c.emitter = make_default_emitter(c.dim, k);
    c.emitter.lambda0 = r.num("lambda0_m", c.emitter.lambda0);
    if (!r.has("d_eg_Cm"))
        errors.push_back("d_eg_Cm: missing");
    c.emitter.d_eg = r.num("d_eg_Cm", c.emitter.d_eg);
    c.emitter.cross_section_A = r.num("cross_section_A_m2", c.emitter.cross_section_A);
    c.emitter.axial_length_L = r.num("axial_length_L_m", c.emitter.axial_length_L);
    if (c.emitter.lambda0 > 0)
        c.emitter.omega0 = 2.0 * std::numbers::pi * k.c / c.emitter.lambda0;
    for (const auto& msg : validate_emitter(c.emitter, k))
        errors.push_back(msg);

    // --- numerics ---
    const std::string coupling = r.str("coupling", "eq4");
    if (coupling == "eq3")
        c.coupling = CouplingModel::IntegralSource;
    else if (coupling == "eq4")
        c.coupling = CouplingModel::DipoleCurrent;
    else
        errors.push_back("coupling: must be 'eq3' or 'eq4'");

    c.resolution = r.num("resolution", 20.0);
    if (c.resolution < 10.0)
        errors.push_back("resolution: below 10 points per wavelength in the densest medium");

    c.courant = r.num("courant", c.dim == 1 ? 0.9 : 0.5);
    const double courant_bound = 1.0 / std::sqrt(static_cast<double>(c.dim));
    if (!(c.courant > 0))
        errors.push_back("courant: must be positive");
    else if (c.courant > courant_bound + 1e-12)
        errors.push_back(c.dim == 2 ? "courant: exceeds 1/sqrt(2)"
                                    : "courant: exceeds 1");

    if (!r.has("duration_s"))
        errors.push_back("duration_s: missing");
    c.duration = r.num("duration_s", 0.0);
    if (r.has("duration_s") && !(c.duration > 0))
        errors.push_back("duration_s: must be positive");

    c.decimation = r.integer("decimation", 1);
    if (c.decimation < 1)
        errors.push_back("decimation: must be >= 1");

    // --- boundary ---
    std::string bdefault;
    switch (c.kind) {
    case ScenarioKind::FreeSpace1D:
    case ScenarioKind::Bragg: bdefault = "mur"; break;
    case ScenarioKind::FreeSpace2D:
    case ScenarioKind::Microdisk: bdefault = "pml"; break;
    default: bdefault = "pec"; break;
    }
    const std::string boundary = r.str("boundary", bdefault);
    if (boundary == "pec")
        c.boundary.kind = BoundaryKind::PEC;
    else if (boundary == "mur")
        c.boundary.kind = BoundaryKind::Mur1D;
    else if (boundary == "pml")
        c.boundary.kind = BoundaryKind::UPML2D;
    else
        errors.push_back("boundary: must be 'pec', 'mur' or 'pml'");
    if (c.boundary.kind == BoundaryKind::Mur1D && c.dim != 1)
        errors.push_back("boundary: 'mur' is 1D only");
    if (c.boundary.kind == BoundaryKind::UPML2D && c.dim != 2)
        errors.push_back("boundary: 'pml' is 2D only");
    if (c.boundary.kind == BoundaryKind::PEC && scenario_is_closed_cavity(c.kind) == false)
        errors.push_back("boundary: scenario requires an absorbing boundary");

    const bool is_pml = c.boundary.kind == BoundaryKind::UPML2D;
    for (const char* key : {"pml_cells", "pml_order", "pml_target_reflection"}) {
        if (raw.count(key) && !is_pml)
            errors.push_back(std::string(key) + ": only valid with boundary = pml");
    }
    if (is_pml) {
        c.boundary.pml_cells = r.integer("pml_cells", 10);
        c.boundary.pml_order = r.num("pml_order", 3.0);
        c.boundary.pml_target_reflection = r.num("pml_target_reflection", 1e-8);
        if (c.boundary.pml_cells < 0)
            errors.push_back("pml_cells: must be >= 0");
        if (!(c.boundary.pml_order >= 1))
            errors.push_back("pml_order: must be >= 1");
        if (!(c.boundary.pml_target_reflection > 0) ||
            !(c.boundary.pml_target_reflection < 1))
            errors.push_back("pml_target_reflection: must lie in (0, 1)");
    }

    c.out_dir = r.str("out_dir", "out");
    const std::string exec = r.str("exec", "openmp");
    if (exec == "serial")
        c.exec = ExecPolicy::Serial;
    else if (exec == "openmp")
        c.exec = ExecPolicy::OpenMP;
    else
        errors.push_back("exec: must be 'serial' or 'openmp'");

    // --- geometry ---
    const double lam = c.emitter.lambda0;
    switch (c.kind) {
    case ScenarioKind::FreeSpace1D:
        c.extent = r.num("extent_m", 40.0 * lam);
        break;
    case ScenarioKind::FreeSpace2D:
        c.extent = r.num("extent_m", 8.0 * lam);
        break;
    case ScenarioKind::Cavity1D:
        c.cavity_length = r.num("cavity_length_m", 0.5 * lam);
        break;
    case ScenarioKind::SquareCavity:
        c.cavity_length = r.num("cavity_length_m",
                                c.scenario == "square-cavity-l2"
                                    ? std::sqrt(2.5) * lam
                                    : lam / std::sqrt(2.0));
        break;
    case ScenarioKind::Microdisk:
        c.disk_radius = r.num("disk_radius_m", 3e-6);
        c.disk_eps_r = r.num("disk_eps_r", 11.56);
        c.disk_pad = r.num("disk_pad_m", 1.5e-6);
        if (!(c.disk_radius > 0))
            errors.push_back("disk_radius_m: must be positive");
        if (!(c.disk_eps_r >= 1))
            errors.push_back("disk_eps_r: must be >= 1");
        if (!(c.disk_pad > 0))
            errors.push_back("disk_pad_m: must be positive");
        break;
    case ScenarioKind::Bragg: {
        int n_default = 25;
        if (c.scenario == "bragg-n5") n_default = 5;
        else if (c.scenario == "bragg-n10") n_default = 10;
        c.bragg.mirror_cells = r.integer("mirror_cells", n_default);
        c.bragg.n1 = r.num("mirror_n1", 2.89);
        c.bragg.n2 = r.num("mirror_n2", 3.37);
        c.bragg.cavity_index = r.num("cavity_index", 2.89);
        c.bragg.cavity_thickness = r.num("cavity_thickness_m",
                                         lam / c.bragg.cavity_index);
        c.bragg.pad = r.num("bragg_pad_m", 2.0 * lam);
        c.bragg.dx_override = r.num("dx_m", 0.0);
        if (c.bragg.mirror_cells < 1)
            errors.push_back("mirror_cells: must be >= 1");
        if (!(c.bragg.n1 > 1) || !(c.bragg.n2 > 1))
            errors.push_back("mirror_n1/mirror_n2: must exceed 1");
        if (!(c.bragg.cavity_index >= 1))
            errors.push_back("cavity_index: must be >= 1");
        if (!(c.bragg.cavity_thickness > 0))
            errors.push_back("cavity_thickness_m: must be positive");
        if (!(c.bragg.pad > 0))
            errors.push_back("bragg_pad_m: must be positive");
        if (c.bragg.dx_override < 0)
            errors.push_back("dx_m: must be positive when given");
        break;
    }
    }
    if ((c.kind == ScenarioKind::FreeSpace1D || c.kind == ScenarioKind::FreeSpace2D) &&
        !(c.extent > 0))
        errors.push_back("extent_m: must be positive");
    if ((c.kind == ScenarioKind::Cavity1D || c.kind == ScenarioKind::SquareCavity) &&
        !(c.cavity_length > 0))
        errors.push_back("cavity_length_m: must be positive");

    // --- modal reference ---
    const std::string oracle = r.str("oracle",
                                     scenario_is_closed_cavity(c.kind) ? "on" : "off");
    if (oracle == "on")
        c.oracle = true;
    else if (oracle == "off")
        c.oracle = false;
    else
        errors.push_back("oracle: must be 'on' or 'off'");
    if (c.oracle && !scenario_is_closed_cavity(c.kind))
        errors.push_back("oracle: only available for closed-cavity scenarios");
    c.oracle_modes = r.integer("oracle_modes", 50);
    c.oracle_cutoff_w0 = r.num("oracle_cutoff_w0", 3.0);
    c.oracle_steps_per_period = r.integer("oracle_steps_per_period", 128);
    if (c.oracle_modes < 1)
        errors.push_back("oracle_modes: must be >= 1");
    if (!(c.oracle_cutoff_w0 > 1))
        errors.push_back("oracle_cutoff_w0: must exceed 1");
    if (c.oracle_steps_per_period < 20)
        errors.push_back("oracle_steps_per_period: must be >= 20");

    return res;
}

std::map<std::string, std::string> to_key_values(const ScenarioConfig& c) {
    std::map<std::string, std::string> kv;
    kv["scenario"] = c.scenario;
    kv["lambda0_m"] = fmt(c.emitter.lambda0);
    kv["d_eg_Cm"] = fmt(c.emitter.d_eg);
    kv["cross_section_A_m2"] = fmt(c.emitter.cross_section_A);
    kv["axial_length_L_m"] = fmt(c.emitter.axial_length_L);
    kv["coupling"] = coupling_name(c.coupling);
    kv["resolution"] = fmt(c.resolution);
    kv["courant"] = fmt(c.courant);
    kv["duration_s"] = fmt(c.duration);
    switch (c.boundary.kind) {
    case BoundaryKind::PEC: kv["boundary"] = "pec"; break;
    case BoundaryKind::Mur1D: kv["boundary"] = "mur"; break;
    case BoundaryKind::UPML2D: kv["boundary"] = "pml"; break;
    }
    if (c.boundary.kind == BoundaryKind::UPML2D) {
        kv["pml_cells"] = std::to_string(c.boundary.pml_cells);
        kv["pml_order"] = fmt(c.boundary.pml_order);
        kv["pml_target_reflection"] = fmt(c.boundary.pml_target_reflection);
    }
    kv["decimation"] = std::to_string(c.decimation);
    kv["out_dir"] = c.out_dir;
    kv["exec"] = c.exec == ExecPolicy::Serial ? "serial" : "openmp";
    switch (c.kind) {
    case ScenarioKind::FreeSpace1D:
    case ScenarioKind::FreeSpace2D:
        kv["extent_m"] = fmt(c.extent);
        break;
    case ScenarioKind::Cavity1D:
    case ScenarioKind::SquareCavity:
        kv["cavity_length_m"] = fmt(c.cavity_length);
        break;
    case ScenarioKind::Microdisk:
        kv["disk_radius_m"] = fmt(c.disk_radius);
        kv["disk_eps_r"] = fmt(c.disk_eps_r);
        kv["disk_pad_m"] = fmt(c.disk_pad);
        break;
    case ScenarioKind::Bragg:
        kv["mirror_cells"] = std::to_string(c.bragg.mirror_cells);
        kv["mirror_n1"] = fmt(c.bragg.n1);
        kv["mirror_n2"] = fmt(c.bragg.n2);
        kv["cavity_index"] = fmt(c.bragg.cavity_index);
        kv["cavity_thickness_m"] = fmt(c.bragg.cavity_thickness);
        kv["bragg_pad_m"] = fmt(c.bragg.pad);
        if (c.bragg.dx_override > 0)
            kv["dx_m"] = fmt(c.bragg.dx_override);
        break;
    }
    kv["oracle"] = c.oracle ? "on" : "off";
    kv["oracle_modes"] = std::to_string(c.oracle_modes);
    kv["oracle_cutoff_w0"] = fmt(c.oracle_cutoff_w0);
    kv["oracle_steps_per_period"] = std::to_string(c.oracle_steps_per_period);
    return kv;
}

const char* coupling_name(CouplingModel m) {
    return m == CouplingModel::IntegralSource ? "eq3" : "eq4";
}

} // namespace qedtd
