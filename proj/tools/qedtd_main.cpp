// qedtd_main.cpp - command-line entry point: run / list / sweep
#include <atomic>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qedtd/scenarios.hpp"

namespace {

// exit codes: 0 ok, 1 check failure, 2 config error, 3 numerical failure
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CliOverrides {
    std::string coupling, resolution, duration, out_dir, exec;
    std::vector<std::string> sets; // key=value pairs
};

bool apply_overrides(std::map<std::string, std::string>& kv, const CliOverrides& o,
                     std::string& error) {
    if (!o.coupling.empty())
        kv["coupling"] = o.coupling;
    if (!o.resolution.empty())
        kv["resolution"] = o.resolution;
    if (!o.duration.empty())
        kv["duration_s"] = o.duration;
    if (!o.out_dir.empty())
        kv["out_dir"] = o.out_dir;
    if (!o.exec.empty())
        kv["exec"] = o.exec;
    for (const std::string& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
            error = "malformed --set '" + s + "' (expected key=value)";
            return false;
        }
        kv[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return true;
}

int resolve_raw_config(const std::string& scenario, const std::string& config_path,
                       const CliOverrides& overrides,
                       std::map<std::string, std::string>& kv) {
    std::vector<std::string> file_errors;
    std::map<std::string, std::string> file_kv;
    if (!config_path.empty()) {
        file_kv = qedtd::load_config_file(config_path, file_errors);
        for (const auto& e : file_errors)
            std::fprintf(stderr, "config error: %s\n", e.c_str());
        if (!file_errors.empty())
            return kExitConfigError;
    }
    std::string id = scenario;
    if (id.empty()) {
        auto it = file_kv.find("scenario");
        if (it == file_kv.end()) {
            std::fprintf(stderr, "config error: no scenario given\n");
            return kExitConfigError;
        }
        id = it->second;
    }
    const qedtd::ScenarioInfo* info = qedtd::find_scenario(id);
    if (!info) {
        std::fprintf(stderr, "config error: unknown scenario '%s' (did you mean '%s'?)\n",
                     id.c_str(), qedtd::nearest_scenario(id).c_str());
        return kExitConfigError;
    }
    kv = info->preset;
    for (const auto& [key, value] : file_kv)
        kv[key] = value;
    std::string err;
    if (!apply_overrides(kv, overrides, err)) {
        std::fprintf(stderr, "config error: %s\n", err.c_str());
        return kExitConfigError;
    }
    return kExitOk;
}

int execute_run(const std::map<std::string, std::string>& kv, bool quiet = false) {
    const qedtd::ValidationResult v = qedtd::validate_config(kv);
    if (!v.ok()) {
        for (const auto& e : v.errors)
            std::fprintf(stderr, "config error: %s\n", e.c_str());
        return kExitConfigError;
    }
    try {
        const qedtd::RunSummary s = qedtd::run_scenario(v.config);
        if (!quiet) {
            for (const auto& check : s.checks)
                std::printf("check %-36s %s  (%s)\n", check.name.c_str(),
                            check.passed ? "pass" : "FAIL", check.detail.c_str());
            std::printf("trace:   %s\n", s.trace_path.c_str());
            if (!s.oracle_path.empty())
                std::printf("oracle:  %s\n", s.oracle_path.c_str());
            std::printf("summary: %s\n", s.summary_path.c_str());
        }
        return s.all_passed ? kExitOk : kExitCheckFailed;
    } catch (const qedtd::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfigError;
    }
}

int cmd_list() {
    std::printf("%-18s %s\n", "scenario", "description");
    for (const auto& s : qedtd::scenario_registry()) {
        std::printf("%-18s %s\n", s.id.c_str(), s.description.c_str());
        std::string defaults = "  couplings: eq4 (default) | eq3;";
        for (const char* key : {"duration_s", "resolution", "dx_m"}) {
            auto it = s.preset.find(key);
            if (it != s.preset.end())
                defaults += std::string(" ") + key + "=" + it->second;
        }
        std::printf("%s\n", defaults.c_str());
    }
    return kExitOk;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, comma - pos));
        pos = comma + 1;
    }
    return out;
}

int cmd_sweep(const std::string& scenario, const CliOverrides& overrides,
              const std::string& param, const std::string& values_csv, int threads) {
    std::map<std::string, std::string> base;
    const int rc = resolve_raw_config(scenario, "", overrides, base);
    if (rc != kExitOk)
        return rc;
    const std::vector<std::string> values = split_csv(values_csv);
    if (values.empty()) {
        std::fprintf(stderr, "config error: --values is empty\n");
        return kExitConfigError;
    }
    const std::string out_root = base.count("out_dir") ? base.at("out_dir") : "out";

    std::vector<std::map<std::string, std::string>> jobs;
    for (const std::string& v : values) {
        auto kv = base;
        kv[param] = v;
        kv["out_dir"] = out_root + "/" + scenario + "-" + param + "-" + v;
        jobs.push_back(std::move(kv));
    }

    std::atomic<std::size_t> next{0};
    std::vector<int> results(jobs.size(), kExitOk);
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            results[i] = execute_run(jobs[i], true);
        }
    };
    const int n_threads = std::max(1, std::min<int>(threads, (int)jobs.size()));
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    int worst = kExitOk;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        std::printf("sweep %s=%s -> %s (exit %d)\n", param.c_str(), values[i].c_str(),
                    results[i] == kExitOk ? "ok" : "failed", results[i]);
        worst = std::max(worst, results[i]);
    }
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FDTD spontaneous-emission dynamics of a dipole emitter in 1D/2D "
                 "photonic structures"};
    app.require_subcommand(1);

    std::string scenario, config_path, param, values;
    int threads = 2;
    CliOverrides overrides;

    CLI::App* run = app.add_subcommand("run", "run one scenario");
    run->add_option("scenario", scenario, "registered scenario id");
    run->add_option("--config", config_path, "key-value config file");
    run->add_option("--coupling", overrides.coupling, "eq3 | eq4");
    run->add_option("--resolution", overrides.resolution, "points per wavelength");
    run->add_option("--duration", overrides.duration, "simulated time (s)");
    run->add_option("--out", overrides.out_dir, "output directory");
    run->add_option("--exec", overrides.exec, "serial | openmp");
    run->add_option("--set", overrides.sets, "extra key=value override")->take_all();

    CLI::App* list = app.add_subcommand("list", "list registered scenarios");

    CLI::App* sweep = app.add_subcommand("sweep", "fan one parameter across runs");
    sweep->add_option("scenario", scenario, "registered scenario id")->required();
    sweep->add_option("--param", param, "config key to sweep")->required();
    sweep->add_option("--values", values, "comma-separated values")->required();
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--coupling", overrides.coupling, "eq3 | eq4");
    sweep->add_option("--out", overrides.out_dir, "output root directory");
    sweep->add_option("--set", overrides.sets, "extra key=value override")->take_all();

    CLI11_PARSE(app, argc, argv);

    if (list->parsed())
        return cmd_list();
    if (sweep->parsed())
        return cmd_sweep(scenario, overrides, param, values, threads);

    if (scenario.empty() && config_path.empty()) {
        std::fprintf(stderr, "config error: run needs a scenario or --config\n");
        return kExitConfigError;
    }
    std::map<std::string, std::string> kv;
    const int rc = resolve_raw_config(scenario, config_path, overrides, kv);
    if (rc != kExitOk)
        return rc;
    return execute_run(kv);
}
