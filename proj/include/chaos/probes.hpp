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

// Chaos probes evaluated on boson-sampling output distributions: distance of
// the pooled probability values to Porter-Thomas, Shannon entropy,
// participation ratios, two-photon OTOC-equivalent correlators and their
// late-time frequency content.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "chaos/interferometry.hpp"
#include "chaos/rm_ensembles.hpp"
#include "chaos/stats.hpp"

namespace chaos {

/// Every collision-free probability of n_t realizations, flattened.
struct ProbabilityPool {
    std::vector<double> values;
    std::size_t n_realizations = 0;
    std::size_t d_configs = 0;
};

/// Pair of distinct 0-based modes.
struct ModePair {
    int first = 0;
    int second = 1;
};

/// Number of occupied modes an output pair shares with an input pair.
int shared_modes(ModePair in, ModePair out) noexcept;

struct OtocSeries {
    ModePair input_pair;
    ModePair output_pair;
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> std_error;
};

/// Throws InvalidArgument for an empty list or mixed configuration sets.
ProbabilityPool pool_probabilities(std::span<const OutputDistribution> dists);

/// W1 between the empirical CDF of the pooled values and 1 - exp(-D x),
/// integrated exactly segment by segment.
double wasserstein_to_pt(const ProbabilityPool& pool);
double wasserstein_to_pt(std::span<const double> values, double d_configs);

/// -sum p ln p with 0 ln 0 = 0.
double shannon_entropy(const OutputDistribution& dist);
double shannon_entropy(std::span<const double> probs);

MeanStderr avg_entropy(std::span<const OutputDistribution> dists);

/// Expected entropy of a Haar-random distribution over D outcomes:
/// -1 + sum_{i=1}^D 1/i, summed ascending with compensation.
double haar_entropy(int d_configs);

/// 1 / sum p^2
double participation_ratio(const OutputDistribution& dist);
double participation_ratio(std::span<const double> probs);

MeanStderr avg_participation_ratio(std::span<const OutputDistribution> dists);

/// |U_ri U_sj + U_si U_rj|^2 for input (i, j) and output (r, s); the raw,
/// unconditioned two-photon probability. Throws InvalidArgument if a pair
/// repeats a mode or an index is out of range.
double otoc_value(const ComplexMatrix& u, ModePair in, ModePair out);
double otoc_value(const UnitaryMatrix& u, ModePair in, ModePair out);

OtocSeries otoc_series(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                       std::span<const double> times);

/// Participation ratio in frequency bins of a uniformly sampled real series:
/// x -> x / mean(x) - 1, one-sided DFT power normalized to unit sum, then
/// 1 / sum P^2. Rectangular window, no further detrending.
/// Throws InvalidInput for fewer than 32 samples or a zero mean, and
/// DegenerateSpectrum when the normalized series is identically zero.
double fft_participation_ratio(std::span<const double> series);

/// Uniform late-time window used for frequency-space probes.
struct FftWindow {
    double t_begin = 300.0;
    double t_end = 1000.0;
    int points = 512;

    std::vector<double> times() const;
};

/// Per-realization PR_FFT of the OTOC time series on `window`, averaged over
/// the ensemble.
MeanStderr avg_fft_participation_ratio(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                                       const FftWindow& window = {});

struct ShortTimeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double t_min = 0.0;  ///< smallest time actually used
    double t_max = 0.0;
    std::size_t points = 0;
};

/// Least-squares slope of log <C4> against log t. Leading grid points where
/// <C4> < 1e-300 are dropped; throws NumericFailure when fewer than two
/// points remain and InvalidArgument for < 8 grid points or out == in.
ShortTimeFit short_time_exponent(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                                 std::span<const double> t_grid);

/// Log-spaced grid of `points` values in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

/// Density of one conditional probability when the full distribution over
/// N0 outputs is Porter-Thomas and D of them are kept:
///   f(p) = int_0^1 y N0 exp(-N0 p y) Gamma_{C, N0}(1 - y) dy,  C = N0 - D.
/// For D == N0 returns D exp(-D p). Adaptive Gauss-Kronrod, abs error <= 1e-8.
double conditional_pt_density(double p, int n0, int d);

/// CDF of conditional_pt_density at p, with the p-integral done in closed form.
double conditional_pt_cdf(double p, int n0, int d);

/// W1 over [0, 1] (the support of a conditional probability) between
/// conditional_pt_cdf and 1 - exp(-D p).
double conditional_pt_w1(int n0, int d);

}  // namespace chaos
