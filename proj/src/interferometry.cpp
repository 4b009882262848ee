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

#include "chaos/interferometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chaos/error.hpp"
#include "chaos/number_format.hpp"
#include "chaos/permanent.hpp"
#include "chaos/stats.hpp"

namespace chaos {

OccupationPattern::OccupationPattern(std::vector<int> occupations)
    : occupations_(std::move(occupations)) {
    if (occupations_.empty()) fail(ErrorKind::InvalidArgument, "pattern needs at least one mode");
    for (int n : occupations_) {
        if (n < 0) fail(ErrorKind::InvalidArgument, "negative occupation");
        photons_ += n;
    }
}

OccupationPattern OccupationPattern::from_modes(int modes, std::span<const int> occupied) {
    if (modes < 1) fail(ErrorKind::InvalidArgument, "pattern needs at least one mode");
    std::vector<int> occ(modes, 0);
    for (int m : occupied) {
        if (m < 0 || m >= modes) fail(ErrorKind::InvalidArgument, "mode index out of range");
        if (occ[m] != 0) fail(ErrorKind::InvalidArgument, "repeated mode in collision-free pattern");
        occ[m] = 1;
    }
    return OccupationPattern(std::move(occ));
}

bool OccupationPattern::collision_free() const noexcept {
    return std::all_of(occupations_.begin(), occupations_.end(), [](int n) { return n <= 1; });
}

std::vector<int> OccupationPattern::mode_list() const {
    std::vector<int> out;
    out.reserve(photons_);
    for (int m = 0; m < modes(); ++m) {
        for (int c = 0; c < occupations_[m]; ++c) out.push_back(m);
    }
    return out;
}

ConfigurationSet::ConfigurationSet(int modes, int photons, std::vector<std::vector<int>> occupied)
    : modes_(modes), photons_(photons), occupied_(std::move(occupied)) {}

OccupationPattern ConfigurationSet::pattern(std::size_t i) const {
    return OccupationPattern::from_modes(modes_, occupied_.at(i));
}

std::size_t ConfigurationSet::index_of(std::span<const int> modes) const {
    const std::vector<int> key(modes.begin(), modes.end());
    const auto it = std::lower_bound(occupied_.begin(), occupied_.end(), key);
    if (it == occupied_.end() || *it != key) return size();
    return static_cast<std::size_t>(it - occupied_.begin());
}

std::string ConfigurationSet::label(std::size_t i) const {
    std::string out;
    for (int m : occupied_.at(i)) {
        if (!out.empty()) out += ';';
        out += std::to_string(m + 1);
    }
    return out;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t count_total_configs(int modes, int photons) {
    if (modes < 1 || photons < 1) fail(ErrorKind::InvalidArgument, "need M >= 1 and N >= 1");
    return binomial(modes + photons - 1, photons);
}

ConfigurationSetPtr enumerate_collision_free(int modes, int photons) {
    if (photons < 1 || modes < 1) fail(ErrorKind::InvalidArgument, "need 1 <= N <= M");
    if (photons > modes) {
        fail(ErrorKind::InvalidArgument, "no collision-free outcomes: N = " + std::to_string(photons) +
                                             " exceeds M = " + std::to_string(modes));
    }
    std::vector<std::vector<int>> out;
    out.reserve(binomial(modes, photons));
    std::vector<int> combo(photons);
    for (int i = 0; i < photons; ++i) combo[i] = i;
    while (true) {
        out.push_back(combo);
        int pos = photons - 1;
        while (pos >= 0 && combo[pos] == modes - photons + pos) --pos;
        if (pos < 0) break;
        ++combo[pos];
        for (int i = pos + 1; i < photons; ++i) combo[i] = combo[i - 1] + 1;
    }
    return std::make_shared<const ConfigurationSet>(modes, photons, std::move(out));
}

ComplexMatrix build_submatrix(const ComplexMatrix& u, const OccupationPattern& n_in,
                              const OccupationPattern& n_out) {
    if (n_in.photons() != n_out.photons()) {
        fail(ErrorKind::InvalidArgument, "input and output photon numbers differ");
    }
    if (u.rows() != n_in.modes() || u.rows() != n_out.modes() || u.rows() != u.cols()) {
        fail(ErrorKind::InvalidArgument, "pattern mode count does not match the unitary");
    }
    const std::vector<int> rows = n_out.mode_list();
    const std::vector<int> cols = n_in.mode_list();
    const int n = n_in.photons();
    ComplexMatrix sub(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) sub(a, b) = u(rows[a], cols[b]);
    }
    return sub;
}

namespace {

double factorial_product(const OccupationPattern& p) {
    double f = 1.0;
    for (int n : p.occupations()) f *= std::tgamma(n + 1.0);
    return f;
}

}  // namespace

double pattern_probability(const UnitaryMatrix& u, const OccupationPattern& n_in,
                           const OccupationPattern& n_out) {
    const ComplexMatrix sub = build_submatrix(u.matrix(), n_in, n_out);
    return std::norm(permanent(sub)) / (factorial_product(n_out) * factorial_product(n_in));
}

std::vector<double> raw_collision_free_probabilities(const ComplexMatrix& input_columns,
                                                     const ConfigurationSet& cfgs) {
    const int n = cfgs.photons();
    if (input_columns.cols() != n || input_columns.rows() != cfgs.modes()) {
        fail(ErrorKind::InvalidArgument, "input columns do not match the configuration set");
    }
    std::vector<double> raw(cfgs.size());
    ComplexMatrix sub(n, n);
    for (std::size_t c = 0; c < cfgs.size(); ++c) {
        const auto& rows = cfgs.occupied_modes(c);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) sub(a, b) = input_columns(rows[a], b);
        }
        raw[c] = std::norm(permanent(sub));
    }
    return raw;
}

namespace {

ComplexMatrix input_columns(const UnitaryMatrix& u, const OccupationPattern& n_in,
                            const ConfigurationSet& cfgs) {
    if (u.dim() != cfgs.modes() || n_in.modes() != cfgs.modes()) {
        fail(ErrorKind::InvalidArgument, "unitary, input and configuration set disagree on M");
    }
    if (n_in.photons() != cfgs.photons()) {
        fail(ErrorKind::InvalidArgument, "input photon number differs from the configuration set");
    }
    if (!n_in.collision_free()) {
        fail(ErrorKind::InvalidArgument, "input pattern must be collision-free");
    }
    const std::vector<int> modes = n_in.mode_list();
    ComplexMatrix cols(u.dim(), static_cast<Eigen::Index>(modes.size()));
    for (std::size_t b = 0; b < modes.size(); ++b) {
        cols.col(static_cast<Eigen::Index>(b)) = u.matrix().col(modes[b]);
    }
    return cols;
}

}  // namespace

double raw_collision_free_mass(const UnitaryMatrix& u, const OccupationPattern& n_in,
                               const ConfigurationSet& cfgs) {
    return compensated_sum(raw_collision_free_probabilities(input_columns(u, n_in, cfgs), cfgs));
}

OutputDistribution condition(std::vector<double> raw, ConfigurationSetPtr cfgs) {
    if (!cfgs || raw.size() != cfgs->size()) {
        fail(ErrorKind::InvalidArgument, "probability vector does not match the configuration set");
    }
    const double mass = compensated_sum(raw);
    if (!(mass >= kDegenerateMassThreshold)) {
        std::ostringstream msg;
        msg << "collision-free mass " << mass << " below " << kDegenerateMassThreshold
            << "; conditional distribution undefined";
        fail(ErrorKind::DegenerateConditioning, msg.str());
    }
    for (double& p : raw) p /= mass;
    return OutputDistribution{std::move(cfgs), std::move(raw), DistributionKind::ExactConditional};
}

OutputDistribution output_distribution(const UnitaryMatrix& u, const OccupationPattern& n_in,
                                       ConfigurationSetPtr cfgs) {
    if (!cfgs) fail(ErrorKind::InvalidArgument, "missing configuration set");
    auto raw = raw_collision_free_probabilities(input_columns(u, n_in, *cfgs), *cfgs);
    return condition(std::move(raw), std::move(cfgs));
}

CountRecord draw_counts(const OutputDistribution& dist, std::uint64_t shots, RngStream& stream) {
    if (dist.kind != DistributionKind::ExactConditional) {
        fail(ErrorKind::InvalidArgument, "counts must be drawn from an exact distribution");
    }
    if (shots < 1) fail(ErrorKind::InvalidArgument, "shots must be positive");
    CountRecord rec{dist.configs, std::vector<std::uint64_t>(dist.probs.size(), 0), shots, shots};
    // Sequential conditional binomials.
    std::uint64_t remaining = shots;
    double mass_left = 1.0;
    for (std::size_t i = 0; i + 1 < dist.probs.size() && remaining > 0; ++i) {
        const double p = dist.probs[i];
        double ratio = mass_left > 0.0 ? p / mass_left : 1.0;
        ratio = std::clamp(ratio, 0.0, 1.0);
        std::binomial_distribution<std::uint64_t> binom(remaining, ratio);
        const std::uint64_t k = binom(stream.engine());
        rec.counts[i] = k;
        remaining -= k;
        mass_left -= p;
    }
    if (!rec.counts.empty()) rec.counts.back() += remaining;
    return rec;
}

OutputDistribution empirical_distribution(const CountRecord& record) {
    if (record.shots_retained == 0) fail(ErrorKind::EmptyRecord, "no retained shots");
    OutputDistribution out{record.configs, std::vector<double>(record.counts.size()),
                           DistributionKind::EmpiricalCounts};
    const double n = static_cast<double>(record.shots_retained);
    for (std::size_t i = 0; i < record.counts.size(); ++i) {
        out.probs[i] = static_cast<double>(record.counts[i]) / n;
    }
    return out;
}

std::string distribution_to_csv(const OutputDistribution& dist) {
    std::string out = "config_id,occupied_modes,prob\n";
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += dist.configs->label(i);
        out += ',';
        out += format_real(dist.probs[i]);
        out += '\n';
    }
    return out;
}

}  // namespace chaos
