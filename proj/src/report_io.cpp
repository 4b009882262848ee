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

#include "chaos/report_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <string_view>

#include "chaos/error.hpp"
#include "chaos/interferometry.hpp"
#include "chaos/number_format.hpp"

namespace chaos {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
    fail(ErrorKind::InvalidConfig, path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) bad(path, "expected an object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || item.key() == a;
        if (!ok) bad(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
    }
}

long long as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) bad(path, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
        bad(path, "integer out of range");
    }
    return v.get<long long>();
}

int as_int32(const json& v, const std::string& path) {
    const long long x = as_int(v, path);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) bad(path, "integer out of range");
    return static_cast<int>(x);
}

std::uint64_t as_u64(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    bad(path, "expected a non-negative integer");
}

double as_real(const json& v, const std::string& path) {
    if (!v.is_number()) bad(path, "expected a number");
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) bad(path, "expected true or false");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) bad(path, "expected a string");
    return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
    if (!v.is_array()) bad(path, "expected an array");
    return v;
}

// 1-based in files, 0-based in memory.
int as_mode(const json& v, const std::string& path) {
    const int m = as_int32(v, path);
    if (m < 1) bad(path, "modes are numbered from 1");
    return m - 1;
}

json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

RunConfig run_config_from_json(const json& doc, const RunConfig& base) {
    check_keys(doc, "", {"modes", "photons", "input_modes", "regimes", "times", "realizations",
                         "realization_overrides", "master_seed", "shots", "reuse_ensemble", "sff",
                         "dense_grid", "otoc_output", "probes", "threads", "output_dir"});
    RunConfig out = base;
    ExperimentConfig& c = out.experiment;
    for (const auto& item : doc.items()) {
        const std::string& k = item.key();
        const json& v = item.value();
        if (k == "modes") c.modes = as_int32(v, k);
        else if (k == "photons") c.photons = as_int32(v, k);
        else if (k == "input_modes") {
            c.input_modes.clear();
            for (const auto& m : as_array(v, k)) c.input_modes.push_back(as_mode(m, k));
        } else if (k == "regimes") {
            c.regimes.clear();
            for (const auto& r : as_array(v, k)) {
                check_keys(r, k, {"label", "lambda_cap"});
                if (!r.contains("label") || !r.contains("lambda_cap")) bad(k, "needs label and lambda_cap");
                c.regimes.push_back({as_string(r["label"], k + ".label"), as_real(r["lambda_cap"], k + ".lambda_cap")});
            }
        } else if (k == "times") {
            c.times.clear();
            for (const auto& t : as_array(v, k)) c.times.push_back(as_real(t, k));
        } else if (k == "realizations") c.realizations = as_int32(v, k);
        else if (k == "realization_overrides") {
            c.realization_overrides.clear();
            for (const auto& o : as_array(v, k)) {
                check_keys(o, k, {"regime", "time", "count"});
                if (!o.contains("regime") || !o.contains("time") || !o.contains("count")) {
                    bad(k, "needs regime, time and count");
                }
                c.realization_overrides.push_back({as_string(o["regime"], k + ".regime"),
                                                   as_real(o["time"], k + ".time"),
                                                   as_int32(o["count"], k + ".count")});
            }
        } else if (k == "master_seed") c.master_seed = as_u64(v, k);
        else if (k == "shots") {
            if (v.is_null()) c.shots.reset();
            else c.shots = as_u64(v, k);
        } else if (k == "reuse_ensemble") c.reuse_ensemble = as_bool(v, k);
        else if (k == "sff") {
            check_keys(v, k, {"ensemble_size", "k", "t_min", "t_max", "points"});
            for (const auto& s : v.items()) {
                const std::string p = k + "." + s.key();
                if (s.key() == "ensemble_size") c.sff.ensemble_size = as_int32(s.value(), p);
                else if (s.key() == "k") c.sff.k = as_int32(s.value(), p);
                else if (s.key() == "t_min") c.sff.t_min = as_real(s.value(), p);
                else if (s.key() == "t_max") c.sff.t_max = as_real(s.value(), p);
                else c.sff.points = as_int32(s.value(), p);
            }
        } else if (k == "dense_grid") {
            check_keys(v, k, {"enabled", "t_min", "t_max", "points", "realizations"});
            for (const auto& s : v.items()) {
                const std::string p = k + "." + s.key();
                if (s.key() == "enabled") c.dense.enabled = as_bool(s.value(), p);
                else if (s.key() == "t_min") c.dense.t_min = as_real(s.value(), p);
                else if (s.key() == "t_max") c.dense.t_max = as_real(s.value(), p);
                else if (s.key() == "points") c.dense.points = as_int32(s.value(), p);
                else c.dense.realizations = as_int32(s.value(), p);
            }
        } else if (k == "otoc_output") {
            if (!v.is_array() || v.size() != 2) bad(k, "expected two modes");
            c.otoc_output = {as_mode(v[0], k), as_mode(v[1], k)};
        } else if (k == "probes") {
            c.probes.clear();
            for (const auto& p : as_array(v, k)) c.probes.push_back(probe_from_name(as_string(p, k)));
        } else if (k == "threads") c.threads = as_int32(v, k);
        else out.output_dir = as_string(v, k);
    }
    c.validate();
    if (out.output_dir.empty()) bad("output_dir", "must be non-empty");
    return out;
}

json experiment_config_to_json(const ExperimentConfig& c) {
    json j;
    j["modes"] = c.modes;
    j["photons"] = c.photons;
    json inputs = json::array();
    for (int m : c.input_modes) inputs.push_back(m + 1);
    j["input_modes"] = inputs;
    json regimes = json::array();
    for (const auto& r : c.regimes) regimes.push_back({{"label", r.label}, {"lambda_cap", r.lambda_cap}});
    j["regimes"] = regimes;
    j["times"] = c.times;
    j["realizations"] = c.realizations;
    json overrides = json::array();
    for (const auto& o : c.realization_overrides) {
        overrides.push_back({{"regime", o.regime}, {"time", o.time}, {"count", o.count}});
    }
    j["realization_overrides"] = overrides;
    j["master_seed"] = c.master_seed;
    j["shots"] = c.shots ? json(*c.shots) : json(nullptr);
    j["reuse_ensemble"] = c.reuse_ensemble;
    j["sff"] = {{"ensemble_size", c.sff.ensemble_size}, {"k", c.sff.k}, {"t_min", c.sff.t_min},
                {"t_max", c.sff.t_max}, {"points", c.sff.points}};
    j["dense_grid"] = {{"enabled", c.dense.enabled}, {"t_min", c.dense.t_min}, {"t_max", c.dense.t_max},
                       {"points", c.dense.points}, {"realizations", c.dense.realizations}};
    j["otoc_output"] = {c.otoc_output.first + 1, c.otoc_output.second + 1};
    json probes = json::array();
    for (ProbeKind p : c.probes) probes.push_back(probe_name(p));
    j["probes"] = probes;
    return j;
}

json run_config_to_json(const RunConfig& cfg) {
    json j = experiment_config_to_json(cfg.experiment);
    j["threads"] = cfg.experiment.threads;
    j["output_dir"] = cfg.output_dir;
    return j;
}

namespace {

json series_to_json(const ProbeSeries& s) {
    json times = json::array(), mean = json::array(), se = json::array(), defined = json::array();
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        times.push_back(s.times[k]);
        mean.push_back(real_or_null(s.mean[k]));
        se.push_back(real_or_null(s.std_error[k]));
        defined.push_back(static_cast<bool>(s.std_error_defined[k]));
    }
    return {{"times", times}, {"mean", mean}, {"stderr", se}, {"stderr_defined", defined},
            {"n_realizations", s.n_realizations}};
}

json characteristic_to_json(const CharacteristicTimes& ct) {
    json j = json::object();
    auto put = [&](const char* key, const std::optional<CharacteristicTime>& c) {
        if (!c) return;
        if (c->indeterminate) {
            j[key] = {{"indeterminate", true}};
        } else {
            j[key] = {{"indeterminate", false}, {"time", c->time}, {"index", c->index}};
        }
    };
    put("sff_min", ct.sff_min);
    put("entropy_max", ct.entropy_max);
    put("pt_dist_min", ct.pt_dist_min);
    put("pr_max", ct.pr_max);
    return j;
}

json exclusions_to_json(const std::vector<ExclusionCount>& ex) {
    json a = json::array();
    for (const auto& e : ex) {
        a.push_back({{"time", e.time}, {"configured", e.configured}, {"used", e.used}, {"excluded", e.excluded}});
    }
    return a;
}

}  // namespace

json report_to_json(const ExperimentReport& report) {
    json j;
    j["version"] = report.version;
    j["config"] = experiment_config_to_json(report.config);
    json regimes = json::object();
    for (const auto& r : report.regimes) {
        json rj;
        rj["lambda_cap"] = r.regime.lambda_cap;
        json probes = json::object();
        for (const auto& s : r.series) probes[s.probe] = series_to_json(s);
        rj["probes"] = probes;
        rj["characteristic_times"] = characteristic_to_json(r.characteristic);
        rj["exclusions"] = exclusions_to_json(r.exclusions);
        if (r.sff_curve) rj["sff_curve"] = series_to_json(*r.sff_curve);
        if (r.dense_characteristic) {
            json dense;
            json dp = json::object();
            for (const auto& s : r.dense_series) dp[s.probe] = series_to_json(s);
            dense["probes"] = dp;
            dense["characteristic_times"] = characteristic_to_json(*r.dense_characteristic);
            dense["exclusions"] = exclusions_to_json(r.dense_exclusions);
            rj["dense"] = dense;
        }
        regimes[r.regime.label] = rj;
    }
    j["regimes"] = regimes;
    return j;
}

std::string report_to_string(const ExperimentReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string probe_series_csv(const ProbeSeries& s) {
    std::string out = "time,mean,stderr,n_realizations,probe_name\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        out += format_real(s.times[k]);
        out += ',';
        out += format_real(s.mean[k]);
        out += ',';
        out += format_real(s.std_error[k]);
        out += ',';
        out += std::to_string(s.n_realizations[k]);
        out += ',';
        out += s.probe;
        out += '\n';
    }
    return out;
}

ProbeSeries parse_probe_series_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "time,mean,stderr,n_realizations,probe_name") {
        fail(ErrorKind::InvalidInput, "unexpected probe CSV header");
    }
    ProbeSeries s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (std::size_t pos; (pos = line.find(',', start)) != std::string::npos; start = pos + 1) {
            f.push_back(line.substr(start, pos - start));
        }
        f.push_back(line.substr(start));
        if (f.size() != 5) fail(ErrorKind::InvalidInput, "probe CSV row needs 5 fields: " + line);
        if (!s.probe.empty() && f[4] != s.probe) fail(ErrorKind::InvalidInput, "mixed probe names in one CSV");
        s.probe = f[4];
        const double n = parse_real(f[3]);
        if (!(n >= 0.0) || n != std::floor(n)) fail(ErrorKind::InvalidInput, "bad n_realizations: " + f[3]);
        s.push(parse_real(f[0]), MeanStderr{parse_real(f[1]), parse_real(f[2]), static_cast<std::size_t>(n), n > 1});
    }
    return s;
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows) {
    std::string out = "M,D,regime,max_entropy,haar_entropy,gap,relative_gap,sff_min,entropy_max,pt_dist_min,pr_max\n";
    auto time_field = [](const std::optional<CharacteristicTime>& c) {
        return (c && !c->indeterminate) ? format_real(c->time) : std::string();
    };
    for (const auto& r : rows) {
        out += std::to_string(r.modes) + ',' + std::to_string(r.d_configs) + ',' + r.regime + ',' +
               format_real(r.max_entropy) + ',' + format_real(r.haar_entropy) + ',' + format_real(r.gap) + ',' +
               format_real(r.relative_gap) + ',' + time_field(r.times.sff_min) + ',' +
               time_field(r.times.entropy_max) + ',' + time_field(r.times.pt_dist_min) + ',' +
               time_field(r.times.pr_max) + '\n';
    }
    return out;
}

void check_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        fail(ErrorKind::Io, "output directory does not exist: " + dir.string());
    }
    const auto perms = std::filesystem::status(dir, ec).permissions();
    if (ec || (perms & std::filesystem::perms::owner_write) == std::filesystem::perms::none) {
        fail(ErrorKind::Io, "output directory is not writable: " + dir.string());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << text;
    out.close();
    if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

std::vector<std::filesystem::path> write_report_files(const std::filesystem::path& dir,
                                                      const ExperimentReport& report) {
    std::vector<std::filesystem::path> written;
    auto put = [&](const std::filesystem::path& p, const std::string& text) {
        write_text_file(p, text);
        written.push_back(p);
    };
    put(dir / "report.json", report_to_string(report));
    bool curves = false;
    for (const auto& r : report.regimes) {
        for (const auto& s : r.series) put(dir / (r.regime.label + "_" + s.probe + ".csv"), probe_series_csv(s));
        curves = curves || r.sff_curve || !r.dense_series.empty();
    }
    if (curves) {
        const auto cdir = dir / "curves";
        std::error_code ec;
        std::filesystem::create_directory(cdir, ec);
        if (ec) fail(ErrorKind::Io, "cannot create " + cdir.string() + ": " + ec.message());
        for (const auto& r : report.regimes) {
            if (r.sff_curve) put(cdir / (r.regime.label + "_sff_grid.csv"), probe_series_csv(*r.sff_curve));
            for (const auto& s : r.dense_series) {
                put(cdir / (r.regime.label + "_dense_" + s.probe + ".csv"), probe_series_csv(s));
            }
        }
    }
    return written;
}

void write_manifest(const std::filesystem::path& dir, std::uint64_t seed, double wall_seconds,
                    const std::string& command) {
    json m = {{"command", command}, {"master_seed", seed}, {"version", CHAOS_VERSION},
              {"wall_time_seconds", wall_seconds}};
    write_text_file(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace chaos
