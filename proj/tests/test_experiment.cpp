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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "chaos/error.hpp"
#include "chaos/experiment.hpp"
#include "chaos/interferometry.hpp"
#include "chaos/report_io.hpp"

namespace {

using namespace chaos;

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.realizations = 6;
    c.realization_overrides = {{"chaotic", 1.79, 9}};
    c.sff.ensemble_size = 50;
    c.sff.points = 20;
    c.dense.enabled = true;
    c.dense.points = 12;
    c.dense.realizations = 20;
    c.threads = 1;
    return c;
}

TEST(ExtremeTime, BasicCases) {
    const std::vector<double> t{1.0, 2.0, 3.0, 4.0};
    const auto dec = extreme_time(t, {4.0, 3.0, 2.0, 1.0}, true);
    EXPECT_FALSE(dec.indeterminate);
    EXPECT_EQ(dec.index, 3u);
    EXPECT_EQ(dec.time, 4.0);
    const auto tie = extreme_time(t, {2.0, 5.0, 5.0, 1.0}, false);
    EXPECT_EQ(tie.index, 1u);
    EXPECT_TRUE(extreme_time(t, {0.7, 0.7, 0.7 + 1e-13, 0.7}, true).indeterminate);
}

TEST(Config, ValidationCatchesInvariants) {
    ExperimentConfig c;
    EXPECT_NO_THROW(c.validate());
    auto expect_invalid = [](ExperimentConfig bad) {
        try {
            bad.validate();
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
        }
    };
    ExperimentConfig a = c;
    a.modes = 1;
    expect_invalid(a);
    a = c;
    a.photons = 9;
    expect_invalid(a);
    a = c;
    a.times = {1.0, 1.0};
    expect_invalid(a);
    a = c;
    a.input_modes = {2, 2};
    expect_invalid(a);
    a = c;
    a.realization_overrides = {{"chaotic", 2.0, 5}};
    expect_invalid(a);
    a = c;
    a.regimes = {{"bad label", 1.0}};
    a.realization_overrides.clear();
    expect_invalid(a);
    a = c;
    a.otoc_output = {3, 3};
    expect_invalid(a);
}

TEST(Config, PaperDefaults) {
    const ExperimentConfig c;
    EXPECT_EQ(c.realizations_for("chaotic", 1), 75);
    EXPECT_EQ(c.realizations_for("integrable", 1), 16);
    EXPECT_EQ(c.realizations_for("chaotic", 0), 16);
    EXPECT_EQ(c.times, (std::vector<double>{1.0, 1.79, 29.29, 100.0, 1000.0}));
}

TEST(Run, ThreadCountDoesNotChangeResults) {
    ExperimentConfig c = small_config();
    const std::string one = report_to_string(run_experiment(c));
    c.threads = 4;
    EXPECT_EQ(report_to_string(run_experiment(c)), one);
    c.threads = 1;
    EXPECT_EQ(report_to_string(run_experiment(c)), one);
}

TEST(Run, ExclusionAccountingAndShape) {
    const ExperimentConfig c = small_config();
    const auto rep = run_experiment(c);
    ASSERT_EQ(rep.regimes.size(), 2u);
    for (const auto& r : rep.regimes) {
        ASSERT_EQ(r.series.size(), 5u);
        ASSERT_EQ(r.exclusions.size(), c.times.size());
        for (std::size_t k = 0; k < c.times.size(); ++k) {
            const auto& e = r.exclusions[k];
            EXPECT_EQ(e.used + e.excluded, e.configured);
            EXPECT_EQ(e.configured, static_cast<std::size_t>(c.realizations_for(r.regime.label, k)));
        }
        for (const auto& s : r.series) EXPECT_EQ(s.times, c.times);
        ASSERT_TRUE(r.sff_curve.has_value());
        EXPECT_EQ(r.sff_curve->times.size(), 20u);
        ASSERT_TRUE(r.dense_characteristic.has_value());
        EXPECT_EQ(r.dense_series.front().times.size(), 12u);
        for (const auto* ct : {&r.characteristic.entropy_max, &r.characteristic.sff_min}) {
            ASSERT_TRUE(ct->has_value());
            const auto& v = **ct;
            EXPECT_EQ(c.times[v.index], v.time);
        }
    }
}

// Mean entropy at times[k] recomputed directly from the Hamiltonian substreams.
double manual_entropy(const ExperimentConfig& c, double cap, std::size_t k, const std::string& label) {
    const auto cfgs = enumerate_collision_free(c.modes, c.photons);
    std::vector<double> ent;
    for (int l = 0; l < c.realizations_for("chaotic", k); ++l) {
        RngStream s = RngStream::substream(c.master_seed, label, l);
        const Spectrum sp = diagonalize(sample_hamiltonian(c.modes, cap, s));
        const auto cols = evolve_columns(sp, c.times[k], c.input_modes);
        ent.push_back(shannon_entropy(condition(raw_collision_free_probabilities(cols, *cfgs), cfgs)));
    }
    return mean_stderr(ent).mean;
}

TEST(Run, ExactModeUsesOnlyHamiltonianStreams) {
    ExperimentConfig c = small_config();
    c.dense.enabled = false;
    const auto rep = run_experiment(c);
    const auto* ent = rep.find("chaotic")->find("entropy");
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        EXPECT_EQ(ent->mean[k], manual_entropy(c, 1000.0, k, "hamiltonian/t" + std::to_string(k + 1)));
    }

    c.reuse_ensemble = true;
    const auto reused = run_experiment(c);
    const auto* ent2 = reused.find("chaotic")->find("entropy");
    for (std::size_t k = 0; k < c.times.size(); ++k) {
        EXPECT_EQ(ent2->mean[k], manual_entropy(c, 1000.0, k, "hamiltonian"));
    }
}

TEST(Run, ShotModeChangesOnlyDistributionProbes) {
    ExperimentConfig c = small_config();
    c.dense.enabled = false;
    const auto a = run_experiment(c);
    c.shots = 1000;
    const auto b = run_experiment(c);
    EXPECT_NE(a.find("chaotic")->find("entropy")->mean, b.find("chaotic")->find("entropy")->mean);
    EXPECT_EQ(a.find("chaotic")->find("otoc")->mean, b.find("chaotic")->find("otoc")->mean);
    EXPECT_EQ(a.find("chaotic")->find("sff")->mean, b.find("chaotic")->find("sff")->mean);
}

TEST(Run, SingleTimeSingleRealization) {
    ExperimentConfig c;
    c.times = {1.79};
    c.realizations = 1;
    c.realization_overrides.clear();
    c.sff.ensemble_size = 1;
    c.sff.points = 5;
    c.threads = 2;
    const auto rep = run_experiment(c);
    for (const auto& r : rep.regimes) {
        const auto* ent = r.find("entropy");
        ASSERT_TRUE(ent);
        EXPECT_EQ(ent->n_realizations[0], 1u);
        EXPECT_FALSE(ent->std_error_defined[0]);
        EXPECT_EQ(ent->std_error[0], 0.0);
        ASSERT_TRUE(r.characteristic.entropy_max.has_value());
        EXPECT_TRUE(r.characteristic.entropy_max->indeterminate);
    }
}

TEST(Run, ChaoticFivePointGridPeaksAtDip) {
    ExperimentConfig c;
    c.realizations = 200;
    c.realization_overrides.clear();
    c.regimes = {{"chaotic", 1000.0}};
    c.probes = {ProbeKind::Entropy, ProbeKind::PtDistance};
    const auto rep = run_experiment(c);
    const auto& ct = rep.regimes[0].characteristic;
    EXPECT_EQ(ct.entropy_max->time, 1.79);
    EXPECT_EQ(ct.pt_dist_min->time, 1.79);
}

TEST(Sweep, RejectsTooFewModes) {
    ExperimentConfig c = small_config();
    try {
        scaling_sweep(c, {1});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidConfig);
    }
}

TEST(Sweep, SummaryRows) {
    ExperimentConfig c = small_config();
    c.probes = {ProbeKind::Sff, ProbeKind::Entropy, ProbeKind::PtDistance, ProbeKind::ParticipationRatio};
    const auto reports = scaling_sweep(c, {6, 8});
    const auto rows = sweep_summary(reports);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].modes, 6);
    EXPECT_EQ(rows[0].d_configs, 15u);
    EXPECT_EQ(rows[2].d_configs, 28u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.gap, std::abs(r.max_entropy - r.haar_entropy), 1e-15);
        EXPECT_TRUE(r.times.sff_min.has_value());
    }
}

TEST(ParallelFor, RethrowsLowestIndexError) {
    std::vector<int> hit(100, 0);
    try {
        parallel_for(100, 4, [&](std::size_t i) {
            hit[i] = 1;
            if (i == 17 || i == 60) fail(ErrorKind::NumericFailure, std::to_string(i));
        });
        FAIL();
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "17");
    }
    for (int h : hit) EXPECT_EQ(h, 1);
}

}  // namespace
