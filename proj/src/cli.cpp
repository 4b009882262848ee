/*
 * Copyright 2026 The chaos-sampler Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaos/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "chaos/error.hpp"
#include "chaos/experiment.hpp"

namespace chaos::cli {

using nlohmann::json;

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        fail(ErrorKind::InvalidConfig, "--set expects KEY=VALUE, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) fail(ErrorKind::InvalidConfig, "empty path segment in '" + key + "'");
        if (!node->is_object()) fail(ErrorKind::InvalidConfig, "'" + key + "' descends into a non-object");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) *node = json::object();
        start = dot + 1;
    }
}

RunConfig load_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                      const char* env_seed) {
    json doc = json::object();
    if (path) {
        std::ifstream in(*path, std::ios::binary);
        if (!in) fail(ErrorKind::Io, "cannot read config " + *path);
        std::stringstream buf;
        buf << in.rdbuf();
        doc = json::parse(buf.str(), nullptr, false);
        if (doc.is_discarded()) fail(ErrorKind::InvalidConfig, *path + ": not valid JSON");
        if (!doc.is_object()) fail(ErrorKind::InvalidConfig, *path + ": top level must be an object");
    }
    if (env_seed && *env_seed) {
        const json seed = json::parse(env_seed, nullptr, false);
        if (seed.is_discarded() || !seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0)) {
            fail(ErrorKind::InvalidConfig, std::string("CHAOS_SAMPLER_SEED is not a non-negative integer: ") + env_seed);
        }
        doc["master_seed"] = seed;
    }
    for (const auto& o : overrides) apply_override(doc, o);
    return run_config_from_json(doc);
}

namespace {

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidConfig:
        case ErrorKind::InvalidArgument:
        case ErrorKind::InvalidDimension:
        case ErrorKind::UnsupportedSize:
            return kExitConfig;
        case ErrorKind::Io:
            return kExitIo;
        default:
            return kExitNumeric;
    }
}

struct CommonOptions {
    std::optional<std::string> config;
    std::vector<std::string> overrides;
    std::optional<int> threads;
    std::optional<std::string> output;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "JSON experiment config");
    cmd->add_option("--set", o.overrides, "Override a config key, KEY=VALUE with dot paths (repeatable)");
    cmd->add_option("--threads", o.threads, "Worker threads (default: hardware parallelism)")->check(CLI::PositiveNumber);
    cmd->add_option("--output", o.output, "Output directory (must exist)");
}

RunConfig resolve(const CommonOptions& o) {
    RunConfig rc = load_config(o.config, o.overrides, std::getenv("CHAOS_SAMPLER_SEED"));
    if (o.threads) rc.experiment.threads = *o.threads;
    if (o.output) rc.output_dir = *o.output;
    return rc;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig rc = resolve(o);
    const std::filesystem::path dir = rc.output_dir;
    check_output_dir(dir);
    err << "run: M=" << rc.experiment.modes << " N=" << rc.experiment.photons << " seed=" << rc.experiment.master_seed
        << " threads=" << resolve_threads(rc.experiment.threads) << "\n";
    const ExperimentReport report = run_experiment(rc.experiment);
    const auto files = write_report_files(dir, report);
    write_manifest(dir, rc.experiment.master_seed, seconds_since(t0), "run");
    out << "wrote " << files.size() + 1 << " files to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const CommonOptions& o, const std::vector<int>& modes, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig rc = resolve(o);
    const std::filesystem::path dir = rc.output_dir;
    check_output_dir(dir);
    // Validate every size before any computation or file creation.
    for (int m : modes) {
        ExperimentConfig c = rc.experiment;
        c.modes = m;
        c.dense.enabled = true;
        c.validate();
    }
    std::vector<ExperimentReport> reports;
    for (int m : modes) {
        err << "sweep: M=" << m << "\n";
        auto one = scaling_sweep(rc.experiment, {m});
        reports.push_back(std::move(one.front()));
    }
    std::size_t files = 0;
    for (const auto& r : reports) {
        const auto sub = dir / ("M" + std::to_string(r.config.modes));
        std::error_code ec;
        std::filesystem::create_directory(sub, ec);
        if (ec) fail(ErrorKind::Io, "cannot create " + sub.string() + ": " + ec.message());
        files += write_report_files(sub, r).size();
    }
    write_text_file(dir / "sweep_summary.csv", sweep_summary_csv(sweep_summary(reports)));
    write_manifest(dir, rc.experiment.master_seed, seconds_since(t0), "sweep");
    out << "wrote " << files + 2 << " files to " << dir.string() << "\n";
    return kExitOk;
}

int cmd_validate(const std::vector<std::string>& only, const oracles::Hooks& hooks, std::ostream& out) {
    const auto results = oracles::run_oracles(only, hooks);
    bool all = true;
    for (const auto& r : results) {
        out << std::left << std::setw(24) << r.name << (r.passed ? "PASS  " : "FAIL  ") << r.detail << "\n";
        all = all && r.passed;
    }
    out << (all ? "all oracles passed" : "oracle failure") << "\n";
    return all ? kExitOk : kExitValidateFailed;
}

}  // namespace

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
             const oracles::Hooks* hooks) {
    CLI::App app{"Boson-sampling probes of quantum chaos in random-matrix Hamiltonians", "chaos_sampler"};
    app.require_subcommand(1);
    app.set_version_flag("--version", CHAOS_VERSION);

    CommonOptions run_opts, sweep_opts;
    std::vector<int> modes{6, 8, 10};
    std::vector<std::string> only;

    CLI::App* run = app.add_subcommand("run", "Run the experiment and write report.json plus CSVs");
    add_common(run, run_opts);
    CLI::App* sweep = app.add_subcommand("sweep", "Repeat the experiment for several mode counts");
    add_common(sweep, sweep_opts);
    sweep->add_option("--modes", modes, "Mode counts, comma separated")->delimiter(',');
    CLI::App* validate = app.add_subcommand("validate", "Run the built-in oracle suite");
    validate->add_option("--only", only, "Oracle names, comma separated")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) return cmd_run(run_opts, out, err);
        if (*sweep) return cmd_sweep(sweep_opts, modes, out, err);
        const oracles::Hooks h = hooks ? *hooks : oracles::default_hooks();
        return cmd_validate(only, h, out);
    } catch (const Error& e) {
        err << "chaos_sampler: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "chaos_sampler: " << e.what() << "\n";
        return kExitNumeric;
    }
}

}  // namespace chaos::cli
