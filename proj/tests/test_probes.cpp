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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "chaos/error.hpp"
#include "chaos/interferometry.hpp"
#include "chaos/probes.hpp"

namespace {

using namespace chaos;

OutputDistribution dist_of(std::vector<double> p) {
    auto cfgs = enumerate_collision_free(8, 2);
    p.resize(cfgs->size(), 0.0);
    return OutputDistribution{cfgs, p, DistributionKind::ExactConditional};
}

// Midpoint-rule W1 between the empirical CDF of xs and 1 - exp(-d x).
double w1_quadrature(std::vector<double> xs, double d) {
    std::sort(xs.begin(), xs.end());
    const double hi = xs.back() + 40.0 / d;
    const int steps = 400000;
    const double h = hi / steps;
    double total = 0.0;
    std::size_t below = 0;
    for (int k = 0; k < steps; ++k) {
        const double x = (k + 0.5) * h;
        while (below < xs.size() && xs[below] <= x) ++below;
        total += std::abs(static_cast<double>(below) / xs.size() - (1.0 - std::exp(-d * x))) * h;
    }
    return total;
}

std::vector<Spectrum> ensemble(double cap, int n, std::uint64_t seed, int d = 8) {
    std::vector<Spectrum> out;
    for (int l = 0; l < n; ++l) {
        RngStream s = RngStream::substream(seed, "probes", l);
        out.push_back(diagonalize(sample_hamiltonian(d, cap, s)));
    }
    return out;
}

TEST(Pool, Layout) {
    const auto delta = dist_of({1.0});
    std::vector<OutputDistribution> one{delta};
    const auto pool = pool_probabilities(one);
    EXPECT_EQ(pool.values.size(), 28u);
    EXPECT_EQ(pool.values[0], 1.0);
    EXPECT_EQ(std::count(pool.values.begin(), pool.values.end(), 0.0), 27);

    std::vector<OutputDistribution> many(16, dist_of(std::vector<double>(28, 1.0 / 28)));
    const auto p16 = pool_probabilities(many);
    EXPECT_EQ(p16.values.size(), 448u);
    EXPECT_EQ(p16.n_realizations, 16u);
    EXPECT_EQ(p16.d_configs, 28u);

    auto other = enumerate_collision_free(6, 2);
    std::vector<OutputDistribution> mixed{delta, OutputDistribution{other, std::vector<double>(15, 1.0 / 15), {}}};
    EXPECT_THROW(pool_probabilities(mixed), Error);
    EXPECT_THROW(pool_probabilities(std::vector<OutputDistribution>{}), Error);
}

TEST(Wasserstein, PointMassAgainstQuadrature) {
    const double d = 28.0;
    std::vector<double> xs(28, 1.0 / d);
    const double exact = wasserstein_to_pt(xs, d);
    // Closed form: int_0^{1/D} (1 - e^{-Dx}) dx + int_{1/D}^inf e^{-Dx} dx = 2 / (e D).
    EXPECT_NEAR(exact, 2.0 / (std::numbers::e * d), 1e-15);
    EXPECT_NEAR(exact, w1_quadrature(xs, d), 1e-6);
}

TEST(Wasserstein, RandomPoolsAgainstQuadrature) {
    std::mt19937_64 eng(3);
    std::gamma_distribution<double> g(0.7, 0.05);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> xs(200);
        for (auto& x : xs) x = std::min(1.0, g(eng));
        EXPECT_NEAR(wasserstein_to_pt(xs, 28.0), w1_quadrature(xs, 28.0), 2e-6);
    }
}

TEST(Wasserstein, SelfDistanceIsSmallButPositive) {
    const double d = 28.0;
    std::mt19937_64 eng(4);
    std::exponential_distribution<double> e(d);
    std::vector<double> xs(1000000);
    for (auto& x : xs) x = e(eng);
    const double w = wasserstein_to_pt(xs, d);
    EXPECT_GT(w, 0.0);
    EXPECT_LE(w, 0.002 / d);
}

TEST(Entropy, TrivialValues) {
    EXPECT_EQ(shannon_entropy(dist_of({1.0})), 0.0);
    EXPECT_NEAR(shannon_entropy(dist_of(std::vector<double>(28, 1.0 / 28))), std::log(28.0), 1e-14);
    EXPECT_NEAR(shannon_entropy(dist_of({0.5, 0.5})), std::log(2.0), 1e-15);
    std::vector<OutputDistribution> same(5, dist_of({0.5, 0.25, 0.25}));
    const auto m = avg_entropy(same);
    EXPECT_NEAR(m.mean, 1.5 * std::log(2.0), 1e-15);
    EXPECT_EQ(m.std_error, 0.0);
    const auto single = avg_entropy(std::vector<OutputDistribution>{dist_of({1.0})});
    EXPECT_FALSE(single.std_error_defined);
}

TEST(Entropy, HaarFormula) {
    EXPECT_EQ(haar_entropy(1), 0.0);
    double h28 = 0.0;
    for (int i = 1; i <= 28; ++i) h28 += 1.0 / i;
    EXPECT_NEAR(haar_entropy(28), h28 - 1.0, 1e-14);
    // H_28 - 1 = 2.927171038966368 (exact rational evaluation); the paper rounds to 2.92.
    EXPECT_NEAR(haar_entropy(28), 2.927171038966368, 1e-14);
    EXPECT_NEAR(haar_entropy(28), 2.92, 0.01);
    constexpr double gamma = 0.57721566490153286;
    for (int d : {100, 1000, 10000}) {
        EXPECT_LE(std::abs(haar_entropy(d) - (-1.0 + std::log(d) + gamma)), 1.0 / (2.0 * d) + 1e-3);
    }
    for (int d = 2; d < 200; ++d) EXPECT_LT(haar_entropy(d), std::log(d));
}

TEST(ParticipationRatio, TrivialValues) {
    EXPECT_EQ(participation_ratio(dist_of({1.0})), 1.0);
    EXPECT_NEAR(participation_ratio(dist_of(std::vector<double>(28, 1.0 / 28))), 28.0, 1e-12);
    EXPECT_EQ(participation_ratio(dist_of({0.5, 0.5})), 2.0);
}

TEST(ParticipationRatio, RenyiOrderingAndPermutationInvariance) {
    std::mt19937_64 eng(8);
    std::exponential_distribution<double> e(1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> p(28);
        for (auto& x : p) x = e(eng);
        double s = 0.0;
        for (double x : p) s += x;
        for (auto& x : p) x /= s;
        const double pr = participation_ratio(p);
        const double ent = shannon_entropy(p);
        EXPECT_LE(pr, std::exp(ent) * (1.0 + 1e-12));
        EXPECT_LE(std::exp(ent), 28.0 * (1.0 + 1e-12));
        std::shuffle(p.begin(), p.end(), eng);
        EXPECT_NEAR(participation_ratio(p), pr, 1e-12 * pr);
        EXPECT_NEAR(shannon_entropy(p), ent, 1e-13);
    }
}

TEST(Otoc, IdentityValues) {
    const ComplexMatrix id = ComplexMatrix::Identity(8, 8);
    EXPECT_EQ(otoc_value(id, {2, 3}, {2, 3}), 1.0);
    EXPECT_EQ(otoc_value(id, {2, 3}, {3, 2}), 1.0);
    EXPECT_EQ(otoc_value(id, {2, 3}, {0, 5}), 0.0);
    EXPECT_THROW(otoc_value(id, {2, 2}, {0, 5}), Error);
    EXPECT_THROW(otoc_value(id, {2, 3}, {0, 8}), Error);
    EXPECT_EQ(shared_modes({2, 3}, {3, 5}), 1);
    EXPECT_EQ(shared_modes({2, 3}, {0, 5}), 0);
    EXPECT_EQ(shared_modes({2, 3}, {3, 2}), 2);
}

TEST(Otoc, MatchesPermanentProbabilityAndSumsToMass) {
    const auto cfgs = enumerate_collision_free(8, 2);
    for (int i = 0; i < 100; ++i) {
        RngStream s = RngStream::substream(9, "otoc", i);
        const UnitaryMatrix u = sample_haar_unitary(8, s);
        const ModePair in{i % 8, (i + 3) % 8};
        const std::vector<int> in_modes{std::min(in.first, in.second), std::max(in.first, in.second)};
        const auto n_in = OccupationPattern::from_modes(8, in_modes);
        double total = 0.0;
        for (std::size_t k = 0; k < cfgs->size(); ++k) {
            const auto& m = cfgs->occupied_modes(k);
            const double c4 = otoc_value(u, in, {m[0], m[1]});
            total += c4;
            if (k % 7 == 0) {
                EXPECT_NEAR(c4, pattern_probability(u, n_in, cfgs->pattern(k)), 1e-12);
            }
        }
        EXPECT_NEAR(total, raw_collision_free_mass(u, n_in, *cfgs), 1e-10);
    }
}

TEST(Otoc, SeriesAtTimeZero) {
    const auto spectra = ensemble(1000.0, 10, 1);
    const std::vector<double> times{0.0, 0.5};
    const auto same = otoc_series(spectra, {2, 3}, {2, 3}, times);
    EXPECT_NEAR(same.values[0], 1.0, 1e-14);
    const auto other = otoc_series(spectra, {2, 3}, {2, 5}, times);
    EXPECT_NEAR(other.values[0], 0.0, 1e-14);
    for (double v : other.values) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Otoc, OverlapSectors) {
    const std::vector<double> early{0.3, 0.5, 0.8};
    const std::vector<double> late{100.0, 300.0, 1000.0};
    const auto integrable = ensemble(0.01, 300, 2);
    const auto chaotic = ensemble(1000.0, 300, 2);
    auto mean_of = [](const OtocSeries& s) {
        double m = 0.0;
        for (double v : s.values) m += v;
        return m / s.values.size();
    };
    // Integrable: sharing one input mode beats sharing none at early times.
    EXPECT_GT(mean_of(otoc_series(integrable, {2, 3}, {3, 6}, early)),
              mean_of(otoc_series(integrable, {2, 3}, {0, 6}, early)));
    // Late times: the chaotic sectors are closer together.
    const double ci = mean_of(otoc_series(integrable, {2, 3}, {3, 6}, late)) /
                      mean_of(otoc_series(integrable, {2, 3}, {0, 6}, late));
    const double cc = mean_of(otoc_series(chaotic, {2, 3}, {3, 6}, late)) /
                      mean_of(otoc_series(chaotic, {2, 3}, {0, 6}, late));
    EXPECT_LT(std::abs(std::log(cc)), std::abs(std::log(ci)));
}

// Direct O(L^2) DFT power spectrum participation ratio.
double fft_pr_oracle(const std::vector<double>& s) {
    const std::size_t n = s.size();
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= n;
    std::vector<double> power(n / 2 + 1);
    for (std::size_t k = 0; k < power.size(); ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += (s[j] / mean - 1.0) * std::polar(1.0, -2.0 * std::numbers::pi * k * j / n);
        }
        power[k] = std::norm(acc);
    }
    double total = 0.0, sq = 0.0;
    for (double p : power) total += p;
    for (double p : power) sq += (p / total) * (p / total);
    return 1.0 / sq;
}

TEST(FftPr, SinusoidIsConcentrated) {
    std::vector<double> s(512);
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = 2.0 + std::sin(2.0 * std::numbers::pi * 17.0 * j / 512.0);
    const double pr = fft_participation_ratio(s);
    EXPECT_NEAR(pr, fft_pr_oracle(s), 1e-9);
    EXPECT_GE(pr, 1.0 - 1e-12);
    EXPECT_LE(pr, 2.0);

    std::vector<double> off(512);
    for (std::size_t j = 0; j < off.size(); ++j) off[j] = 3.0 + std::cos(0.37 * j);
    EXPECT_NEAR(fft_participation_ratio(off), fft_pr_oracle(off), 1e-9);
}

TEST(FftPr, WhiteNoiseIsSpread) {
    std::mt19937_64 eng(12);
    std::normal_distribution<double> n(5.0, 1.0);
    std::vector<double> noise(512);
    for (auto& x : noise) x = n(eng);
    std::vector<double> sine(512);
    for (std::size_t j = 0; j < sine.size(); ++j) sine[j] = 2.0 + std::sin(2.0 * std::numbers::pi * 17.0 * j / 512.0);
    const double pr_noise = fft_participation_ratio(noise);
    EXPECT_NEAR(pr_noise, fft_pr_oracle(noise), 1e-8 * pr_noise);
    EXPECT_GE(pr_noise, 5.0 * fft_participation_ratio(sine));

    std::vector<double> small(64);
    for (auto& x : small) x = n(eng);
    EXPECT_LT(fft_participation_ratio(small), pr_noise);
}

TEST(FftPr, ScaleInvariantAndErrors) {
    std::mt19937_64 eng(13);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<double> s(256);
    for (auto& x : s) x = u(eng);
    std::vector<double> scaled(s);
    for (auto& x : scaled) x *= 37.5;
    EXPECT_NEAR(fft_participation_ratio(scaled), fft_participation_ratio(s), 1e-9);

    EXPECT_THROW(fft_participation_ratio(std::vector<double>(16, 1.0)), Error);
    try {
        fft_participation_ratio(std::vector<double>(64, 0.3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpectrum);
    }
    std::vector<double> zero_mean(64);
    for (std::size_t j = 0; j < zero_mean.size(); ++j) zero_mean[j] = j % 2 ? 1.0 : -1.0;
    try {
        fft_participation_ratio(zero_mean);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
    }
}

TEST(FftPr, WindowGrid) {
    const auto t = FftWindow{}.times();
    ASSERT_EQ(t.size(), 512u);
    EXPECT_EQ(t.front(), 300.0);
    EXPECT_EQ(t.back(), 1000.0);
    EXPECT_NEAR(t[1] - t[0], 700.0 / 511.0, 1e-12);
}

TEST(ShortTime, DiagonalHamiltonianUnderflows) {
    RealMatrix d = RealMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) d(i, i) = 0.3 * i;
    const std::vector<Spectrum> spectra{diagonalize(Hamiltonian(d))};
    const auto grid = log_grid(1e-3, 1e-1, 16);
    try {
        short_time_exponent(spectra, {2, 3}, {0, 5}, grid);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NumericFailure);
    }
    EXPECT_THROW(short_time_exponent(spectra, {2, 3}, {2, 3}, grid), Error);
    EXPECT_THROW(short_time_exponent(spectra, {2, 3}, {0, 5}, log_grid(1e-3, 1e-1, 4)), Error);
}

TEST(ShortTime, PerturbativeExponents) {
    const auto spectra = ensemble(1000.0, 50, 4);
    const auto grid = log_grid(1e-3, 1e-1, 16);
    EXPECT_NEAR(short_time_exponent(spectra, {2, 3}, {3, 6}, grid).slope, 2.0, 0.2);
    EXPECT_NEAR(short_time_exponent(spectra, {2, 3}, {0, 6}, grid).slope, 4.0, 0.3);
}

TEST(Grids, Endpoints) {
    const auto g = log_grid(0.1, 1000.0, 200);
    EXPECT_EQ(g.front(), 0.1);
    EXPECT_EQ(g.back(), 1000.0);
    for (std::size_t k = 1; k < g.size(); ++k) EXPECT_NEAR(g[k] / g[k - 1], std::pow(10.0, 4.0 / 199.0), 1e-12);
    const auto l = linear_grid(0.0, 1.0, 5);
    EXPECT_EQ(l, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_THROW(log_grid(0.0, 1.0, 5), Error);
}

// Composite Simpson of the density on [0, 1].
double simpson_mass(int n0, int d) {
    const int n = 2000;
    const double h = 1.0 / n;
    double s = conditional_pt_density(0.0, n0, d) + conditional_pt_density(1.0, n0, d);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * conditional_pt_density(k * h, n0, d);
    return s * h / 3.0;
}

TEST(ConditionalPt, DensityNormalization) {
    EXPECT_NEAR(simpson_mass(36, 28), 1.0, 1e-6);
    EXPECT_NEAR(simpson_mass(36, 35), 1.0, 1e-6);
    EXPECT_NEAR(conditional_pt_cdf(1.0, 36, 28), 1.0, 1e-6);
    EXPECT_NEAR(conditional_pt_density(0.2, 36, 36), 36.0 * std::exp(-7.2), 1e-15);
}

TEST(ConditionalPt, CdfIsIntegralOfDensity) {
    for (double x : {0.01, 0.05, 0.2}) {
        const int n = 2000;
        const double h = x / n;
        double s = conditional_pt_density(0.0, 36, 3) + conditional_pt_density(x, 36, 3);
        for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * conditional_pt_density(k * h, 36, 3);
        EXPECT_NEAR(conditional_pt_cdf(x, 36, 3), s * h / 3.0, 1e-8);
    }
}

TEST(ConditionalPt, LargeDIsCloserToPorterThomas) {
    const double w28 = conditional_pt_w1(36, 28) * 28.0;
    const double w3 = conditional_pt_w1(36, 3) * 3.0;
    EXPECT_LT(conditional_pt_w1(36, 28), 0.1 / 28.0);
    EXPECT_GE(w3, 5.0 * w28);
}

TEST(ConditionalPt, ArgumentChecks) {
    EXPECT_THROW(conditional_pt_density(-0.1, 36, 28), Error);
    EXPECT_THROW(conditional_pt_density(0.1, 36, 37), Error);
    EXPECT_THROW(conditional_pt_density(0.1, 36, 0), Error);
}

}  // namespace
