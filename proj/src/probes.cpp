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

#include "chaos/probes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include <fftw3.h>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chaos/error.hpp"
#include "chaos/kernels.hpp"

namespace chaos {

int shared_modes(ModePair in, ModePair out) noexcept {
    int n = 0;
    for (int a : {in.first, in.second}) {
        if (a == out.first || a == out.second) ++n;
    }
    return n;
}

ProbabilityPool pool_probabilities(std::span<const OutputDistribution> dists) {
    if (dists.empty()) fail(ErrorKind::InvalidArgument, "cannot pool an empty list");
    const ConfigurationSetPtr& cfgs = dists.front().configs;
    ProbabilityPool pool;
    pool.d_configs = dists.front().probs.size();
    pool.n_realizations = dists.size();
    pool.values.reserve(pool.d_configs * pool.n_realizations);
    for (const auto& d : dists) {
        if (d.configs != cfgs && !(d.configs && cfgs && d.configs->modes() == cfgs->modes() &&
                                   d.configs->photons() == cfgs->photons())) {
            fail(ErrorKind::InvalidArgument, "distributions use different configuration sets");
        }
        if (d.probs.size() != pool.d_configs) {
            fail(ErrorKind::InvalidArgument, "distributions differ in length");
        }
        pool.values.insert(pool.values.end(), d.probs.begin(), d.probs.end());
    }
    return pool;
}

double wasserstein_to_pt(const ProbabilityPool& pool) {
    return wasserstein_to_pt(pool.values, static_cast<double>(pool.d_configs));
}

double wasserstein_to_pt(std::span<const double> values, double d_configs) {
    if (values.empty()) fail(ErrorKind::InvalidArgument, "empty probability pool");
    if (!(d_configs > 0.0)) fail(ErrorKind::InvalidArgument, "D must be positive");
    std::vector<double> x(values.begin(), values.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double rate = d_configs;

    // Signed integral of (level - F_PT) over [a, b].
    auto signed_gap = [rate](double level, double a, double b) {
        const double e_a = std::exp(-rate * a);
        return (level - 1.0) * (b - a) - e_a * std::expm1(-rate * (b - a)) / rate;
    };

    CompensatedSum total;
    double a = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double b = std::max(x[k], 0.0);
        const double level = static_cast<double>(k) / n;
        if (b > a) {
            const double cross = -std::log1p(-level) / rate;
            if (cross > a && cross < b) {
                total.add(std::abs(signed_gap(level, a, cross)));
                total.add(std::abs(signed_gap(level, cross, b)));
            } else {
                total.add(std::abs(signed_gap(level, a, b)));
            }
            a = b;
        }
    }
    total.add(std::exp(-rate * a) / rate);
    return total.value();
}

double shannon_entropy(std::span<const double> probs) {
    CompensatedSum s;
    for (double p : probs) {
        if (p > 0.0) s.add(-p * std::log(p));
    }
    return s.value();
}

double shannon_entropy(const OutputDistribution& dist) { return shannon_entropy(dist.probs); }

MeanStderr avg_entropy(std::span<const OutputDistribution> dists) {
    if (dists.empty()) fail(ErrorKind::InvalidArgument, "entropy of an empty ensemble");
    std::vector<double> s;
    s.reserve(dists.size());
    for (const auto& d : dists) s.push_back(shannon_entropy(d));
    return mean_stderr(s);
}

double haar_entropy(int d_configs) {
    if (d_configs < 1) fail(ErrorKind::InvalidArgument, "D must be >= 1");
    CompensatedSum h;
    for (int i = 1; i <= d_configs; ++i) h.add(1.0 / i);
    return h.value() - 1.0;
}

double participation_ratio(std::span<const double> probs) {
    const double s2 = kernels::active().sum_squares(probs.size(), probs.data());
    if (!(s2 > 0.0)) fail(ErrorKind::InvalidArgument, "participation ratio of a zero vector");
    return 1.0 / s2;
}

double participation_ratio(const OutputDistribution& dist) { return participation_ratio(dist.probs); }

MeanStderr avg_participation_ratio(std::span<const OutputDistribution> dists) {
    if (dists.empty()) fail(ErrorKind::InvalidArgument, "participation ratio of an empty ensemble");
    std::vector<double> pr;
    pr.reserve(dists.size());
    for (const auto& d : dists) pr.push_back(participation_ratio(d));
    return mean_stderr(pr);
}

namespace {

void check_pair(ModePair p, Eigen::Index modes, const char* what) {
    if (p.first == p.second) {
        fail(ErrorKind::InvalidArgument, std::string(what) + " pair repeats a mode");
    }
    if (p.first < 0 || p.second < 0 || p.first >= modes || p.second >= modes) {
        fail(ErrorKind::InvalidArgument, std::string(what) + " pair index out of range");
    }
}

// C4 from the two input columns of U (column 0 = mode i, column 1 = mode j).
double otoc_from_columns(const ComplexMatrix& cols, ModePair out) {
    const Complex amp = cols(out.first, 0) * cols(out.second, 1) +
                        cols(out.second, 0) * cols(out.first, 1);
    return std::norm(amp);
}

}  // namespace

double otoc_value(const ComplexMatrix& u, ModePair in, ModePair out) {
    check_pair(in, u.rows(), "input");
    check_pair(out, u.rows(), "output");
    const Complex amp = u(out.first, in.first) * u(out.second, in.second) +
                        u(out.second, in.first) * u(out.first, in.second);
    return std::norm(amp);
}

double otoc_value(const UnitaryMatrix& u, ModePair in, ModePair out) {
    return otoc_value(u.matrix(), in, out);
}

OtocSeries otoc_series(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                       std::span<const double> times) {
    if (spectra.empty()) fail(ErrorKind::InvalidArgument, "OTOC of an empty ensemble");
    if (times.empty()) fail(ErrorKind::InvalidArgument, "OTOC needs a time grid");
    check_pair(in, spectra.front().dim(), "input");
    check_pair(out, spectra.front().dim(), "output");
    const std::array<int, 2> cols{in.first, in.second};

    OtocSeries series{in, out, std::vector<double>(times.begin(), times.end()), {}, {}};
    std::vector<double> per_realization(spectra.size());
    for (double t : times) {
        for (std::size_t l = 0; l < spectra.size(); ++l) {
            per_realization[l] = otoc_from_columns(evolve_columns(spectra[l], t, cols), out);
        }
        const MeanStderr m = mean_stderr(per_realization);
        series.values.push_back(m.mean);
        series.std_error.push_back(m.std_error);
    }
    return series;
}

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

double fft_participation_ratio(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 32) fail(ErrorKind::InvalidInput, "PR_FFT needs at least 32 samples");
    const double mean = compensated_sum(series) / static_cast<double>(n);
    if (mean == 0.0 || !std::isfinite(mean)) {
        fail(ErrorKind::InvalidInput, "PR_FFT series has zero temporal mean");
    }
    std::vector<double> x(n);
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        x[k] = series[k] / mean - 1.0;
        peak = std::max(peak, std::abs(x[k]));
    }
    if (peak <= 1e-12) {
        fail(ErrorKind::DegenerateSpectrum, "PR_FFT series is constant; power spectrum vanishes");
    }

    const std::size_t bins = n / 2 + 1;
    fftw_complex* out = fftw_alloc_complex(bins);
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), x.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);

    const double total = compensated_sum(power);
    CompensatedSum sq;
    for (double p : power) sq.add((p / total) * (p / total));
    return 1.0 / sq.value();
}

std::vector<double> FftWindow::times() const { return linear_grid(t_begin, t_end, points); }

MeanStderr avg_fft_participation_ratio(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                                       const FftWindow& window) {
    if (spectra.empty()) fail(ErrorKind::InvalidArgument, "PR_FFT of an empty ensemble");
    check_pair(in, spectra.front().dim(), "input");
    check_pair(out, spectra.front().dim(), "output");
    const std::vector<double> times = window.times();
    const std::array<int, 2> cols{in.first, in.second};
    std::vector<double> series(times.size());
    std::vector<double> prs;
    prs.reserve(spectra.size());
    for (const auto& s : spectra) {
        for (std::size_t k = 0; k < times.size(); ++k) {
            series[k] = otoc_from_columns(evolve_columns(s, times[k], cols), out);
        }
        prs.push_back(fft_participation_ratio(series));
    }
    return mean_stderr(prs);
}

ShortTimeFit short_time_exponent(std::span<const Spectrum> spectra, ModePair in, ModePair out,
                                 std::span<const double> t_grid) {
    if (t_grid.size() < 8) fail(ErrorKind::InvalidArgument, "short-time fit needs >= 8 grid points");
    if ((in.first == out.first && in.second == out.second) ||
        (in.first == out.second && in.second == out.first)) {
        fail(ErrorKind::InvalidArgument, "short-time fit needs an output pair different from the input");
    }
    for (double t : t_grid) {
        if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "short-time grid must be positive");
    }
    const OtocSeries series = otoc_series(spectra, in, out, t_grid);

    std::size_t first = 0;
    while (first < series.values.size() && !(series.values[first] >= 1e-300)) ++first;
    const std::size_t used = series.values.size() - first;
    if (used < 2) {
        fail(ErrorKind::NumericFailure,
             "ensemble-mean C4 underflows (< 1e-300) over the whole short-time grid");
    }
    // Ordinary least squares in log-log coordinates.
    double mx = 0.0, my = 0.0;
    for (std::size_t k = first; k < series.values.size(); ++k) {
        mx += std::log(series.times[k]);
        my += std::log(series.values[k]);
    }
    mx /= static_cast<double>(used);
    my /= static_cast<double>(used);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = first; k < series.values.size(); ++k) {
        const double dx = std::log(series.times[k]) - mx;
        sxy += dx * (std::log(series.values[k]) - my);
        sxx += dx * dx;
    }
    ShortTimeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.t_min = series.times[first];
    fit.t_max = series.times.back();
    fit.points = used;
    return fit;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (points < 2 || !(lo > 0.0) || !(hi > lo)) {
        fail(ErrorKind::InvalidArgument, "log grid needs 0 < lo < hi and >= 2 points");
    }
    std::vector<double> g(points);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (int k = 0; k < points; ++k) g[k] = std::exp(a + (b - a) * k / (points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) fail(ErrorKind::InvalidArgument, "linear grid needs lo < hi and >= 2 points");
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = lo + (hi - lo) * k / (points - 1);
    g.back() = hi;
    return g;
}

namespace {

void check_density_args(double p, int n0, int d) {
    if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
    if (d < 1 || d > n0) fail(ErrorKind::InvalidArgument, "need 1 <= D <= N0");
}

// Gamma(C, rate N0) density of 1 - y, evaluated in log space.
double gamma_weight(double y, int n0, int c) {
    const double z = 1.0 - y;
    if (z <= 0.0) return c == 1 ? std::exp(std::log(static_cast<double>(n0))) : 0.0;
    const double log_w = c * std::log(static_cast<double>(n0)) + (c - 1) * std::log(z) -
                         n0 * z - std::lgamma(static_cast<double>(c));
    return std::exp(log_w);
}

template <class F>
double integrate_unit_interval(F&& f, const char* what) {
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 20, 1e-13, &error);
    if (!std::isfinite(value) || error > 1e-8) {
        fail(ErrorKind::NumericFailure, std::string(what) + ": quadrature did not converge");
    }
    return value;
}

}  // namespace

double conditional_pt_density(double p, int n0, int d) {
    check_density_args(p, n0, d);
    if (d == n0) return d * std::exp(-d * p);
    const int c = n0 - d;
    return integrate_unit_interval(
        [=](double y) { return y * n0 * std::exp(-n0 * p * y) * gamma_weight(y, n0, c); },
        "conditional PT density");
}

double conditional_pt_cdf(double p, int n0, int d) {
    check_density_args(p, n0, d);
    if (d == n0) return -std::expm1(-d * p);
    const int c = n0 - d;
    return integrate_unit_interval(
        [=](double y) { return -std::expm1(-n0 * p * y) * gamma_weight(y, n0, c); },
        "conditional PT CDF");
}

double conditional_pt_w1(int n0, int d) {
    check_density_args(0.0, n0, d);
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [=](double x) { return std::abs(conditional_pt_cdf(x, n0, d) + std::expm1(-d * x)); },
        0.0, 1.0, 20, 1e-10, &error);
    if (!std::isfinite(value)) fail(ErrorKind::NumericFailure, "conditional PT W1 did not converge");
    return value;
}

}  // namespace chaos
