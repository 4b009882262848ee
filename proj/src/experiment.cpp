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

#include "chaos/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "chaos/error.hpp"
#include "chaos/interferometry.hpp"
#include "chaos/rm_ensembles.hpp"
#include "chaos/rng.hpp"

namespace chaos {

const char* probe_name(ProbeKind p) noexcept {
    switch (p) {
        case ProbeKind::Sff: return "sff";
        case ProbeKind::PtDistance: return "pt_distance";
        case ProbeKind::Entropy: return "entropy";
        case ProbeKind::ParticipationRatio: return "participation_ratio";
        case ProbeKind::Otoc: return "otoc";
    }
    return "?";
}

ProbeKind probe_from_name(const std::string& name) {
    for (ProbeKind p : {ProbeKind::Sff, ProbeKind::PtDistance, ProbeKind::Entropy,
                        ProbeKind::ParticipationRatio, ProbeKind::Otoc}) {
        if (name == probe_name(p)) return p;
    }
    fail(ErrorKind::InvalidConfig, "unknown probe '" + name + "'");
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) fail(ErrorKind::InvalidConfig, msg);
}

bool same_time(double a, double b) noexcept {
    return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

void check_grid(double lo, double hi, int points, const std::string& what) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && hi > lo,
            what + ": need 0 < t_min < t_max");
    require(points >= 2, what + ": need at least 2 points");
}

}  // namespace

void ExperimentConfig::validate() const {
    require(modes >= 2, "modes must be >= 2");
    require(photons >= 1, "photons must be >= 1");
    require(photons <= modes, "photons (" + std::to_string(photons) + ") exceed modes (" +
                                  std::to_string(modes) + ")");
    require(static_cast<int>(input_modes.size()) == photons,
            "input_modes must list one mode per photon");
    std::set<int> seen;
    for (int m : input_modes) {
        require(m >= 0 && m < modes, "input mode out of range");
        require(seen.insert(m).second, "input modes must be distinct");
    }
    require(!regimes.empty(), "at least one regime is required");
    std::set<std::string> labels;
    for (const auto& r : regimes) {
        require(!r.label.empty() && std::all_of(r.label.begin(), r.label.end(),
                                                [](char c) {
                                                    return std::isalnum(static_cast<unsigned char>(c)) ||
                                                           c == '_' || c == '-';
                                                }),
                "regime label must be non-empty and use only [A-Za-z0-9_-]");
        require(labels.insert(r.label).second, "duplicate regime label '" + r.label + "'");
        require(std::isfinite(r.lambda_cap) && r.lambda_cap >= 0.0, "regime Lambda must be >= 0");
    }
    require(!times.empty(), "times must be non-empty");
    for (std::size_t k = 0; k < times.size(); ++k) {
        require(std::isfinite(times[k]) && times[k] > 0.0, "times must be positive");
        if (k > 0) require(times[k] > times[k - 1], "times must be strictly increasing");
    }
    require(realizations >= 1, "realizations must be >= 1");
    for (const auto& o : realization_overrides) {
        require(labels.count(o.regime) == 1, "override names unknown regime '" + o.regime + "'");
        require(std::any_of(times.begin(), times.end(), [&](double t) { return same_time(t, o.time); }),
                "override time is not in times");
        require(o.count >= 1, "override count must be >= 1");
    }
    if (shots) require(*shots >= 1, "shots must be >= 1");
    require(sff.ensemble_size >= 1, "sff.ensemble_size must be >= 1");
    require(sff.k >= 1, "sff.k must be >= 1");
    check_grid(sff.t_min, sff.t_max, sff.points, "sff grid");
    if (dense.enabled) {
        check_grid(dense.t_min, dense.t_max, dense.points, "dense grid");
        require(dense.realizations >= 1, "dense.realizations must be >= 1");
    }
    require(!probes.empty(), "probe list must be non-empty");
    std::set<ProbeKind> kinds(probes.begin(), probes.end());
    require(kinds.size() == probes.size(), "duplicate probe");
    if (has_probe(ProbeKind::Otoc)) {
        require(photons == 2, "the otoc probe needs exactly 2 photons");
        require(otoc_output.first != otoc_output.second, "otoc output modes must differ");
        require(otoc_output.first >= 0 && otoc_output.first < modes && otoc_output.second >= 0 &&
                    otoc_output.second < modes,
                "otoc output mode out of range");
    }
    require(threads >= 0, "threads must be >= 0");
}

int ExperimentConfig::realizations_for(const std::string& regime, std::size_t time_index) const {
    for (const auto& o : realization_overrides) {
        if (o.regime == regime && same_time(o.time, times.at(time_index))) return o.count;
    }
    return realizations;
}

bool ExperimentConfig::has_probe(ProbeKind p) const {
    return std::find(probes.begin(), probes.end(), p) != probes.end();
}

ModePair ExperimentConfig::input_pair() const {
    return {input_modes.at(0), input_modes.size() > 1 ? input_modes[1] : input_modes[0]};
}

void ProbeSeries::push(double t, const MeanStderr& m) {
    times.push_back(t);
    mean.push_back(m.mean);
    std_error.push_back(m.std_error);
    n_realizations.push_back(m.count);
    std_error_defined.push_back(m.std_error_defined);
}

const ProbeSeries* RegimeReport::find(const std::string& probe) const {
    for (const auto& s : series) {
        if (s.probe == probe) return &s;
    }
    return nullptr;
}

const ProbeSeries* RegimeReport::find_dense(const std::string& probe) const {
    for (const auto& s : dense_series) {
        if (s.probe == probe) return &s;
    }
    return nullptr;
}

const RegimeReport* ExperimentReport::find(const std::string& regime) const {
    for (const auto& r : regimes) {
        if (r.regime.label == regime) return &r;
    }
    return nullptr;
}

int resolve_threads(int requested) noexcept {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error;

    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

CharacteristicTime extreme_time(const std::vector<double>& times, const std::vector<double>& values,
                                bool minimize) {
    if (times.size() != values.size()) fail(ErrorKind::InvalidArgument, "series length mismatch");
    CharacteristicTime out;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool found = false;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double v = values[k];
        if (std::isnan(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        const double best = found ? values[out.index] : 0.0;
        if (!found || (minimize ? v < best : v > best)) {
            out.index = k;
            out.time = times[k];
            found = true;
        }
    }
    out.indeterminate = !found || hi - lo <= 1e-12;
    return out;
}

CharacteristicTimes extract_characteristic_times(const std::vector<ProbeSeries>& series) {
    CharacteristicTimes ct;
    for (const auto& s : series) {
        if (s.probe == "sff") ct.sff_min = extreme_time(s.times, s.mean, true);
        else if (s.probe == "pt_distance") ct.pt_dist_min = extreme_time(s.times, s.mean, true);
        else if (s.probe == "entropy") ct.entropy_max = extreme_time(s.times, s.mean, false);
        else if (s.probe == "participation_ratio") ct.pr_max = extreme_time(s.times, s.mean, false);
    }
    return ct;
}

namespace {

struct Realization {
    bool excluded = false;
    std::vector<double> probs;
    double otoc = 0.0;
};

double otoc_from_columns(const ComplexMatrix& cols, ModePair out) {
    return std::norm(cols(out.first, 0) * cols(out.second, 1) + cols(out.second, 0) * cols(out.first, 1));
}

Realization sample_realization(const ExperimentConfig& cfg, const ConfigurationSetPtr& cfgs,
                               const Spectrum& spectrum, double t, bool want_otoc,
                               RngStream* shot_stream) {
    Realization r;
    const ComplexMatrix cols = evolve_columns(spectrum, t, cfg.input_modes);
    if (want_otoc) r.otoc = otoc_from_columns(cols, cfg.otoc_output);
    std::vector<double> raw = raw_collision_free_probabilities(cols, *cfgs);
    try {
        OutputDistribution dist = condition(std::move(raw), cfgs);
        if (shot_stream) {
            dist = empirical_distribution(draw_counts(dist, *cfg.shots, *shot_stream));
        }
        r.probs = std::move(dist.probs);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateConditioning && e.kind() != ErrorKind::EmptyRecord) throw;
        r.excluded = true;
    }
    return r;
}

std::vector<Spectrum> sample_spectra(const ExperimentConfig& cfg, double cap, const std::string& label,
                                     std::size_t count) {
    std::vector<std::optional<Spectrum>> slots(count);
    parallel_for(count, cfg.threads, [&](std::size_t l) {
        RngStream stream = RngStream::substream(cfg.master_seed, label, l);
        slots[l] = diagonalize(sample_hamiltonian(cfg.modes, cap, stream));
    });
    std::vector<Spectrum> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

MeanStderr sff_point(std::span<const Spectrum> spectra, double t, int k) {
    std::vector<double> v(spectra.size());
    for (std::size_t l = 0; l < spectra.size(); ++l) v[l] = trace_power(spectra[l], t, k);
    return mean_stderr(v);
}

struct Reduced {
    MeanStderr entropy, pr, otoc;
    double pt_distance = std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
};

Reduced reduce(const std::vector<Realization>& rs, std::size_t d_configs) {
    Reduced out;
    std::vector<double> ent, pr, otoc, pool;
    for (const auto& r : rs) {
        otoc.push_back(r.otoc);
        if (r.excluded) continue;
        ent.push_back(shannon_entropy(r.probs));
        pr.push_back(participation_ratio(r.probs));
        pool.insert(pool.end(), r.probs.begin(), r.probs.end());
    }
    out.used = ent.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!ent.empty()) {
        out.entropy = mean_stderr(ent);
        out.pr = mean_stderr(pr);
        out.pt_distance = wasserstein_to_pt(pool, static_cast<double>(d_configs));
    } else {
        out.entropy = out.pr = MeanStderr{nan, 0.0, 0, false};
    }
    if (!otoc.empty()) out.otoc = mean_stderr(otoc);
    return out;
}

MeanStderr pooled(double value, std::size_t n) { return MeanStderr{value, 0.0, n, n > 1}; }

void add_reduced(std::vector<ProbeSeries>& series, double t, const Reduced& red) {
    for (auto& s : series) {
        if (s.probe == "pt_distance") s.push(t, pooled(red.pt_distance, red.used));
        else if (s.probe == "entropy") s.push(t, red.entropy);
        else if (s.probe == "participation_ratio") s.push(t, red.pr);
        else if (s.probe == "otoc") s.push(t, red.otoc);
    }
}

std::vector<ProbeSeries> empty_series(const ExperimentConfig& cfg) {
    std::vector<ProbeSeries> out;
    for (ProbeKind p : cfg.probes) out.push_back(ProbeSeries{probe_name(p), {}, {}, {}, {}, {}});
    return out;
}

void run_dense(const ExperimentConfig& cfg, const Regime& regime, const ConfigurationSetPtr& cfgs,
               RegimeReport& rep) {
    const std::vector<Spectrum> spectra =
        sample_spectra(cfg, regime.lambda_cap, "dense", static_cast<std::size_t>(cfg.dense.realizations));
    const std::vector<double> grid = log_grid(cfg.dense.t_min, cfg.dense.t_max, cfg.dense.points);
    const bool want_otoc = cfg.has_probe(ProbeKind::Otoc);

    std::vector<Reduced> reduced(grid.size());
    std::vector<MeanStderr> sffs(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t k) {
        std::vector<Realization> rs;
        rs.reserve(spectra.size());
        for (const auto& s : spectra) rs.push_back(sample_realization(cfg, cfgs, s, grid[k], want_otoc, nullptr));
        reduced[k] = reduce(rs, cfgs->size());
        if (cfg.has_probe(ProbeKind::Sff)) sffs[k] = sff_point(spectra, grid[k], cfg.sff.k);
    });

    rep.dense_series = empty_series(cfg);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        add_reduced(rep.dense_series, grid[k], reduced[k]);
        for (auto& s : rep.dense_series) {
            if (s.probe == "sff") s.push(grid[k], sffs[k]);
        }
        rep.dense_exclusions.push_back(ExclusionCount{grid[k], spectra.size(), reduced[k].used,
                                                      spectra.size() - reduced[k].used});
    }
    rep.dense_characteristic = extract_characteristic_times(rep.dense_series);
}

RegimeReport run_regime(const ExperimentConfig& cfg, const Regime& regime, const ConfigurationSetPtr& cfgs) {
    RegimeReport rep;
    rep.regime = regime;
    rep.series = empty_series(cfg);
    const bool want_otoc = cfg.has_probe(ProbeKind::Otoc);

    struct Item {
        std::size_t time_index;
        std::size_t realization;
    };
    std::vector<Item> items;
    std::vector<std::size_t> offsets;
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
        offsets.push_back(items.size());
        const int n = cfg.realizations_for(regime.label, k);
        for (int l = 0; l < n; ++l) items.push_back({k, static_cast<std::size_t>(l)});
    }
    offsets.push_back(items.size());

    std::vector<Realization> results(items.size());
    parallel_for(items.size(), cfg.threads, [&](std::size_t i) {
        const auto [k, l] = items[i];
        const std::string tk = std::to_string(k + 1);
        const std::string label = cfg.reuse_ensemble ? "hamiltonian" : "hamiltonian/t" + tk;
        RngStream stream = RngStream::substream(cfg.master_seed, label, l);
        const Spectrum spectrum = diagonalize(sample_hamiltonian(cfg.modes, regime.lambda_cap, stream));
        std::optional<RngStream> shots;
        if (cfg.shots) shots.emplace(RngStream::substream(cfg.master_seed, "shots/" + regime.label + "/t" + tk, l));
        results[i] = sample_realization(cfg, cfgs, spectrum, cfg.times[k], want_otoc, shots ? &*shots : nullptr);
    });

    std::vector<Spectrum> sff_spectra;
    if (cfg.has_probe(ProbeKind::Sff)) {
        sff_spectra = sample_spectra(cfg, regime.lambda_cap, "sff", static_cast<std::size_t>(cfg.sff.ensemble_size));
    }

    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
        const std::vector<Realization> slice(results.begin() + static_cast<std::ptrdiff_t>(offsets[k]),
                                             results.begin() + static_cast<std::ptrdiff_t>(offsets[k + 1]));
        const Reduced red = reduce(slice, cfgs->size());
        add_reduced(rep.series, cfg.times[k], red);
        for (auto& s : rep.series) {
            if (s.probe == "sff") s.push(cfg.times[k], sff_point(sff_spectra, cfg.times[k], cfg.sff.k));
        }
        rep.exclusions.push_back(ExclusionCount{cfg.times[k], slice.size(), red.used, slice.size() - red.used});
    }
    rep.characteristic = extract_characteristic_times(rep.series);

    if (!sff_spectra.empty()) {
        ProbeSeries curve{"sff", {}, {}, {}, {}, {}};
        for (double t : log_grid(cfg.sff.t_min, cfg.sff.t_max, cfg.sff.points)) {
            curve.push(t, sff_point(sff_spectra, t, cfg.sff.k));
        }
        rep.sff_curve = std::move(curve);
    }
    if (cfg.dense.enabled) run_dense(cfg, regime, cfgs, rep);
    return rep;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.config = cfg;
    report.version = CHAOS_VERSION;
    const ConfigurationSetPtr cfgs = enumerate_collision_free(cfg.modes, cfg.photons);
    for (const auto& regime : cfg.regimes) report.regimes.push_back(run_regime(cfg, regime, cfgs));
    return report;
}

std::vector<ExperimentReport> scaling_sweep(const ExperimentConfig& base, const std::vector<int>& mode_list) {
    if (mode_list.empty()) fail(ErrorKind::InvalidConfig, "mode list is empty");
    std::vector<ExperimentConfig> configs;
    for (int m : mode_list) {
        ExperimentConfig cfg = base;
        cfg.modes = m;
        cfg.dense.enabled = true;
        cfg.validate();
        configs.push_back(cfg);
    }
    std::vector<ExperimentReport> out;
    for (const auto& cfg : configs) out.push_back(run_experiment(cfg));
    return out;
}

std::vector<SweepRow> sweep_summary(const std::vector<ExperimentReport>& reports) {
    std::vector<SweepRow> rows;
    for (const auto& rep : reports) {
        const std::size_t d = binomial(rep.config.modes, rep.config.photons);
        for (const auto& reg : rep.regimes) {
            SweepRow row;
            row.modes = rep.config.modes;
            row.d_configs = d;
            row.regime = reg.regime.label;
            const ProbeSeries* ent = reg.find_dense("entropy");
            if (!ent) ent = reg.find("entropy");
            row.max_entropy = -std::numeric_limits<double>::infinity();
            if (ent) {
                for (double v : ent->mean) {
                    if (!std::isnan(v)) row.max_entropy = std::max(row.max_entropy, v);
                }
            }
            row.haar_entropy = haar_entropy(static_cast<int>(d));
            row.gap = std::abs(row.max_entropy - row.haar_entropy);
            row.relative_gap = row.gap / row.haar_entropy;
            row.times = reg.dense_characteristic ? *reg.dense_characteristic : reg.characteristic;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace chaos
