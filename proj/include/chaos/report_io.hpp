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

#pragma once

// JSON configuration and report documents, probe-series CSVs and the run
// directory layout. Mode indices are 1-based in every file.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "chaos/experiment.hpp"

namespace chaos {

/// Experiment settings plus the CLI-only output directory.
struct RunConfig {
    ExperimentConfig experiment;
    std::string output_dir = "chaos_out";
};

/// Applies the keys of `doc` on top of `base`. Throws InvalidConfig for an
/// unknown key, a wrong type or a failed invariant.
RunConfig run_config_from_json(const nlohmann::json& doc, const RunConfig& base = {});

/// Full document accepted by run_config_from_json.
nlohmann::json run_config_to_json(const RunConfig& cfg);

/// Config echo for reports; omits the thread count and output directory, which
/// do not affect results.
nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg);

nlohmann::json report_to_json(const ExperimentReport& report);

/// Sorted keys, two-space indent, trailing newline.
std::string report_to_string(const ExperimentReport& report);

/// Header time,mean,stderr,n_realizations,probe_name; 17 significant digits.
std::string probe_series_csv(const ProbeSeries& series);

/// Inverse of probe_series_csv (std_error_defined is rebuilt from n > 1).
/// Throws InvalidInput on malformed text.
ProbeSeries parse_probe_series_csv(const std::string& text);

std::string sweep_summary_csv(const std::vector<SweepRow>& rows);

/// Throws Io unless `dir` is an existing, writable directory.
void check_output_dir(const std::filesystem::path& dir);

/// report.json, <regime>_<probe>.csv for each probe series, and the SFF and
/// dense-grid curves under curves/. Returns the files written.
std::vector<std::filesystem::path> write_report_files(const std::filesystem::path& dir,
                                                      const ExperimentReport& report);

/// manifest.json with seed, version and wall time.
void write_manifest(const std::filesystem::path& dir, std::uint64_t seed, double wall_seconds,
                    const std::string& command);

/// Writes `text` to `path`; throws Io on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace chaos
