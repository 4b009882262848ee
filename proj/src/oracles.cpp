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

#include "chaos/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/LU>

#include "chaos/error.hpp"
#include "chaos/kernels.hpp"
#include "chaos/permanent.hpp"
#include "chaos/probes.hpp"
#include "chaos/rm_ensembles.hpp"
#include "chaos/rng.hpp"

namespace chaos::oracles {

ComplexMatrix expm_minus_iht(const RealMatrix& h, double t) {
    const Eigen::Index n = h.rows();
    ComplexMatrix a = (Complex(0.0, -t) * h.cast<Complex>()).eval();
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    a /= std::ldexp(1.0, squarings);

    constexpr int q = 6;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix num = id;
    ComplexMatrix den = id;
    ComplexMatrix power = id;
    double c = 1.0;
    for (int k = 1; k <= q; ++k) {
        c *= static_cast<double>(q - k + 1) / (k * (2.0 * q - k + 1));
        power = (power * a).eval();
        num += c * power;
        den += ((k % 2) ? -c : c) * power;
    }
    ComplexMatrix f = den.partialPivLu().solve(num);
    for (int s = 0; s < squarings; ++s) f = (f * f).eval();
    return f;
}

Complex permanent_by_permutations(const ComplexMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; ++i) term *= a(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Hooks default_hooks() {
    return Hooks{[](const ComplexMatrix& a) { return permanent(a); }};
}

namespace {

ComplexMatrix random_complex(int n, RngStream& rng) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal());
    }
    return m;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

OracleResult check_permanent(const Hooks& hooks) {
    RngStream rng(derive_stream_seed(20260101, "oracle/permanent", 0));
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + trial % 7;
        const ComplexMatrix a = random_complex(n, rng);
        const Complex ref = permanent_by_permutations(a);
        const Complex got = hooks.permanent ? hooks.permanent(a) : permanent(a);
        worst = std::max(worst, std::abs(got - ref) / std::max(std::abs(ref), 1e-300));
    }
    return {"permanent", worst <= 1e-10, "max relative error " + fmt(worst) + " over n = 1..7"};
}

OracleResult check_expm() {
    RngStream rng(derive_stream_seed(20260101, "oracle/expm", 0));
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double cap = trial % 2 ? 1000.0 : 0.01;
        const Hamiltonian h = sample_hamiltonian(8, cap, rng);
        const Spectrum s = diagonalize(h);
        for (double t : {0.0, 0.3, 1.79, 10.0}) {
            const ComplexMatrix ref = expm_minus_iht(h.matrix(), t);
            worst = std::max(worst, (evolve(s, t).matrix() - ref).cwiseAbs().maxCoeff());
        }
    }
    return {"expm", worst <= 1e-10, "max |U - expm(-iHt)| " + fmt(worst)};
}

OracleResult check_goe_moments() {
    constexpr int d = 8;
    constexpr int samples = 4000;
    double diag_sum = 0.0, diag_sq = 0.0, off_sum = 0.0, off_sq = 0.0;
    std::size_t n_diag = 0, n_off = 0;
    for (int l = 0; l < samples; ++l) {
        RngStream rng(derive_stream_seed(20260101, "oracle/goe", l));
        const Hamiltonian v = sample_goe(d, rng);
        for (int i = 0; i < d; ++i) {
            diag_sum += v(i, i);
            diag_sq += v(i, i) * v(i, i);
            ++n_diag;
            for (int j = i + 1; j < d; ++j) {
                off_sum += v(i, j);
                off_sq += v(i, j) * v(i, j);
                ++n_off;
            }
        }
    }
    const double diag_var = diag_sq / n_diag;
    const double off_var = off_sq / n_off;
    // Sample variance of a Gaussian has relative spread sqrt(2/n); allow 5 of those.
    const bool ok = std::abs(diag_var / (2.0 / d) - 1.0) < 5.0 * std::sqrt(2.0 / n_diag) &&
                    std::abs(off_var / (1.0 / d) - 1.0) < 5.0 * std::sqrt(2.0 / n_off) &&
                    std::abs(diag_sum / n_diag) < 5.0 * std::sqrt(2.0 / d / n_diag) &&
                    std::abs(off_sum / n_off) < 5.0 * std::sqrt(1.0 / d / n_off);
    return {"goe_moments", ok,
            "diag var " + fmt(diag_var) + " (expect " + fmt(2.0 / d) + "), off-diag var " +
                fmt(off_var) + " (expect " + fmt(1.0 / d) + ")"};
}

OracleResult check_density_normalization() {
    double worst = 0.0;
    for (auto [n0, d] : {std::pair{36, 28}, std::pair{36, 35}, std::pair{36, 36}}) {
        worst = std::max(worst, std::abs(conditional_pt_cdf(1.0, n0, d) - 1.0));
    }
    // PT mass beyond p = 1 for D = 28 is exp(-28); the conditional densities live on [0, 1].
    return {"density_normalization", worst <= 1e-6, "max |integral - 1| " + fmt(worst)};
}

OracleResult check_haar_entropy() {
    double direct = -1.0;
    for (int i = 28; i >= 1; --i) direct += 1.0 / i;
    const double err = std::abs(haar_entropy(28) - direct);
    return {"haar_entropy", err <= 1e-14, "|S(28) - (H_28 - 1)| " + fmt(err)};
}

OracleResult check_kernels() {
    const kernels::KernelTable* simd = kernels::avx2_table();
    if (!simd) return {"kernels", true, "only the scalar table is available"};
    const kernels::KernelTable& ref = kernels::scalar_table();
    RngStream rng(derive_stream_seed(20260101, "oracle/kernels", 0));
    double worst = 0.0;
    for (std::size_t d : {1u, 3u, 8u, 13u, 32u}) {
        std::vector<double> q(d * d), xr(d), xi(d), a(d), b(d), c(d), e(d);
        for (auto& v : q) v = rng.normal();
        for (std::size_t k = 0; k < d; ++k) {
            xr[k] = rng.normal();
            xi[k] = rng.normal();
        }
        ref.real_matvec_complex(q.data(), d, xr.data(), xi.data(), a.data(), b.data());
        simd->real_matvec_complex(q.data(), d, xr.data(), xi.data(), c.data(), e.data());
        for (std::size_t k = 0; k < d; ++k) {
            worst = std::max({worst, std::abs(a[k] - c[k]), std::abs(b[k] - e[k])});
        }
        worst = std::max(worst, std::abs(ref.sum_squares(d, xr.data()) - simd->sum_squares(d, xr.data())));
    }
    return {"kernels", worst <= 1e-12, std::string("scalar vs ") + simd->name + " max diff " + fmt(worst)};
}

}  // namespace

std::vector<std::string> oracle_names() {
    return {"permanent", "expm", "goe_moments", "density_normalization", "haar_entropy", "kernels"};
}

std::vector<OracleResult> run_oracles(std::span<const std::string> only, const Hooks& hooks) {
    const auto names = oracle_names();
    for (const auto& n : only) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
            fail(ErrorKind::InvalidArgument, "unknown oracle '" + n + "'");
        }
    }
    std::vector<OracleResult> results;
    for (const auto& n : names) {
        if (!only.empty() && std::find(only.begin(), only.end(), n) == only.end()) continue;
        if (n == "permanent") results.push_back(check_permanent(hooks));
        else if (n == "expm") results.push_back(check_expm());
        else if (n == "goe_moments") results.push_back(check_goe_moments());
        else if (n == "density_normalization") results.push_back(check_density_normalization());
        else if (n == "haar_entropy") results.push_back(check_haar_entropy());
        else results.push_back(check_kernels());
    }
    return results;
}

}  // namespace chaos::oracles
