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

// Paper-protocol runs: for each regime and time, sample (H0, V) pairs, evolve,
// compute the conditional output distributions (exact or shot-sampled) and
// evaluate the probes; then extract characteristic times.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chaos/probes.hpp"
#include "chaos/stats.hpp"

namespace chaos {

enum class ProbeKind { Sff, PtDistance, Entropy, ParticipationRatio, Otoc };

const char* probe_name(ProbeKind p) noexcept;
/// Throws InvalidConfig for an unknown name.
ProbeKind probe_from_name(const std::string& name);

struct Regime {
    std::string label;
    double lambda_cap = 0.0;
};

struct RealizationOverride {
    std::string regime;
    double time = 0.0;
    int count = 0;
};

struct SffSettings {
    int ensemble_size = 2000;
    int k = 2;
    double t_min = 0.5;
    double t_max = 50.0;
    int points = 200;
};

/// Ideal curves on a log grid, one ensemble reused across all grid times.
struct DenseGridSettings {
    bool enabled = false;
    double t_min = 0.1;
    double t_max = 1000.0;
    int points = 200;
    int realizations = 2000;
};

struct ExperimentConfig {
    int modes = 8;
    int photons = 2;
    std::vector<int> input_modes{2, 3};  ///< 0-based, distinct
    std::vector<Regime> regimes{{"chaotic", 1000.0}, {"integrable", 0.01}};
    std::vector<double> times{1.0, 1.79, 29.29, 100.0, 1000.0};
    int realizations = 16;
    std::vector<RealizationOverride> realization_overrides{{"chaotic", 1.79, 75}};
    std::uint64_t master_seed = 20240611;
    std::optional<std::uint64_t> shots;
    bool reuse_ensemble = false;
    SffSettings sff;
    DenseGridSettings dense;
    ModePair otoc_output{2, 5};
    std::vector<ProbeKind> probes{ProbeKind::Sff, ProbeKind::PtDistance, ProbeKind::Entropy,
                                  ProbeKind::ParticipationRatio, ProbeKind::Otoc};
    int threads = 0;  ///< 0 = hardware concurrency

    /// Throws InvalidConfig when an invariant fails.
    void validate() const;

    /// Configured count for (regime, times[time_index]).
    int realizations_for(const std::string& regime, std::size_t time_index) const;
    bool has_probe(ProbeKind p) const;
    ModePair input_pair() const;
};

struct ProbeSeries {
    std::string probe;
    std::vector<double> times;
    std::vector<double> mean;
    std::vector<double> std_error;
    std::vector<std::size_t> n_realizations;
    /// False where a single realization leaves the standard error undefined
    /// (reported as 0).
    std::vector<bool> std_error_defined;

    void push(double t, const MeanStderr& m);
};

struct CharacteristicTime {
    bool indeterminate = true;
    double time = 0.0;
    std::size_t index = 0;
};

struct CharacteristicTimes {
    std::optional<CharacteristicTime> sff_min;
    std::optional<CharacteristicTime> entropy_max;
    std::optional<CharacteristicTime> pt_dist_min;
    std::optional<CharacteristicTime> pr_max;
};

struct ExclusionCount {
    double time = 0.0;
    std::size_t configured = 0;
    std::size_t used = 0;
    std::size_t excluded = 0;
};

struct RegimeReport {
    Regime regime;
    std::vector<ProbeSeries> series;        ///< on cfg.times
    CharacteristicTimes characteristic;     ///< on cfg.times
    std::vector<ExclusionCount> exclusions; ///< per time
    std::optional<ProbeSeries> sff_curve;   ///< on the SFF grid
    std::vector<ProbeSeries> dense_series;  ///< on the dense grid
    std::optional<CharacteristicTimes> dense_characteristic;
    std::vector<ExclusionCount> dense_exclusions;

    const ProbeSeries* find(const std::string& probe) const;
    const ProbeSeries* find_dense(const std::string& probe) const;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RegimeReport> regimes;
    std::string version;

    const RegimeReport* find(const std::string& regime) const;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Grid argmin (minimize) or argmax, ties toward the earliest time; a series
/// whose values all agree within 1e-12 is indeterminate.
CharacteristicTime extreme_time(const std::vector<double>& times, const std::vector<double>& values,
                                bool minimize);

/// Characteristic times of the sff, pt_distance, entropy and
/// participation_ratio series present in `series`.
CharacteristicTimes extract_characteristic_times(const std::vector<ProbeSeries>& series);

struct SweepRow {
    int modes = 0;
    std::size_t d_configs = 0;
    std::string regime;
    double max_entropy = 0.0;
    double haar_entropy = 0.0;
    double gap = 0.0;
    double relative_gap = 0.0;
    CharacteristicTimes times;
};

/// Reruns `base` for each M with the dense grid enabled. Throws InvalidConfig
/// if some M < N or the input/OTOC modes do not fit.
std::vector<ExperimentReport> scaling_sweep(const ExperimentConfig& base, const std::vector<int>& mode_list);

std::vector<SweepRow> sweep_summary(const std::vector<ExperimentReport>& reports);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The lowest-index
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

int resolve_threads(int requested) noexcept;

}  // namespace chaos
