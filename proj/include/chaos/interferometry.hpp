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

// Fock-state boson sampling through an M-mode interferometer. Output
// probabilities are |Per(U_sub)|^2 / (prod n_out! prod n_in!), where U_sub
// repeats row r of U n_out[r] times and column c n_in[c] times. Only
// collision-free outputs are kept and renormalized to a conditional
// distribution, matching threshold-detector post-selection.
//
// Mode indices are 0-based in this API; 1-based labels appear only at the
// file and CLI boundaries.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "chaos/linalg.hpp"
#include "chaos/rm_ensembles.hpp"
#include "chaos/rng.hpp"

namespace chaos {

class OccupationPattern {
public:
    explicit OccupationPattern(std::vector<int> occupations);

    /// Pattern with one photon in each listed (0-based, distinct) mode.
    static OccupationPattern from_modes(int modes, std::span<const int> occupied);

    int modes() const noexcept { return static_cast<int>(occupations_.size()); }
    int photons() const noexcept { return photons_; }
    int operator[](int mode) const { return occupations_[mode]; }
    const std::vector<int>& occupations() const noexcept { return occupations_; }
    bool collision_free() const noexcept;

    /// Mode indices, each repeated by its occupation, ascending.
    std::vector<int> mode_list() const;

    bool operator==(const OccupationPattern&) const = default;

private:
    std::vector<int> occupations_;
    int photons_ = 0;
};

/// All collision-free outputs of N photons in M modes, sorted
/// lexicographically by occupied-mode tuple.
class ConfigurationSet {
public:
    ConfigurationSet(int modes, int photons, std::vector<std::vector<int>> occupied);

    int modes() const noexcept { return modes_; }
    int photons() const noexcept { return photons_; }
    std::size_t size() const noexcept { return occupied_.size(); }
    const std::vector<int>& occupied_modes(std::size_t i) const { return occupied_[i]; }
    OccupationPattern pattern(std::size_t i) const;

    /// Index of a sorted 0-based mode tuple, or size() if absent.
    std::size_t index_of(std::span<const int> modes) const;

    /// "1;2" style label with 1-based modes.
    std::string label(std::size_t i) const;

private:
    int modes_;
    int photons_;
    std::vector<std::vector<int>> occupied_;
};

using ConfigurationSetPtr = std::shared_ptr<const ConfigurationSet>;

enum class DistributionKind { ExactConditional, EmpiricalCounts };

struct OutputDistribution {
    ConfigurationSetPtr configs;
    std::vector<double> probs;
    DistributionKind kind = DistributionKind::ExactConditional;
};

struct CountRecord {
    ConfigurationSetPtr configs;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots_retained = 0;
    std::uint64_t shots_total = 0;
};

/// Throws InvalidArgument unless 1 <= N <= M.
ConfigurationSetPtr enumerate_collision_free(int modes, int photons);

/// binomial(M + N - 1, N), the number of N-photon patterns including collisions.
std::uint64_t count_total_configs(int modes, int photons);

std::uint64_t binomial(int n, int k);

/// N x N matrix with rows repeated by n_out and columns by n_in.
ComplexMatrix build_submatrix(const ComplexMatrix& u, const OccupationPattern& n_in,
                              const OccupationPattern& n_out);

/// Unconditioned probability of one output pattern (collisions allowed).
double pattern_probability(const UnitaryMatrix& u, const OccupationPattern& n_in,
                           const OccupationPattern& n_out);

/// Unconditioned probabilities of every collision-free output for a
/// collision-free input, from the input columns of U only (M x N, in
/// n_in.mode_list() order).
std::vector<double> raw_collision_free_probabilities(const ComplexMatrix& input_columns,
                                                     const ConfigurationSet& cfgs);

/// Sum of the unconditioned collision-free probabilities.
double raw_collision_free_mass(const UnitaryMatrix& u, const OccupationPattern& n_in,
                               const ConfigurationSet& cfgs);

/// Raw mass below this is treated as exact destructive interference.
inline constexpr double kDegenerateMassThreshold = 1e-12;

/// Conditional distribution over the collision-free outputs. Throws
/// DegenerateConditioning when the raw collision-free mass is below
/// kDegenerateMassThreshold (e.g. Hong-Ou-Mandel cancellation).
OutputDistribution output_distribution(const UnitaryMatrix& u, const OccupationPattern& n_in,
                                       ConfigurationSetPtr cfgs);

/// Conditions raw collision-free probabilities; same failure rule.
OutputDistribution condition(std::vector<double> raw, ConfigurationSetPtr cfgs);

/// Multinomial draw of `shots` detection events from an exact distribution.
CountRecord draw_counts(const OutputDistribution& dist, std::uint64_t shots, RngStream& stream);

/// counts / shots_retained. Throws EmptyRecord when nothing was retained.
OutputDistribution empirical_distribution(const CountRecord& record);

/// CSV with columns config_id,occupied_modes,prob (1-based ids and modes).
std::string distribution_to_csv(const OutputDistribution& dist);

}  // namespace chaos
