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

#include "chaos/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "chaos/error.hpp"
#include "chaos/kernels.hpp"

namespace chaos {
namespace {

int checked_order(const ComplexMatrix& a, int max_order) {
    if (a.rows() != a.cols()) fail(ErrorKind::InvalidArgument, "permanent of a non-square matrix");
    if (a.rows() < 1) fail(ErrorKind::InvalidArgument, "permanent of an empty matrix");
    if (a.rows() > max_order) {
        fail(ErrorKind::UnsupportedSize,
             "permanent order " + std::to_string(a.rows()) + " exceeds " + std::to_string(max_order));
    }
    return static_cast<int>(a.rows());
}

// Split copies of either the columns (Ryser) or the rows (Glynn) of a.
struct SplitVectors {
    std::vector<double> re;
    std::vector<double> im;
    std::size_t n = 0;

    const double* re_at(std::size_t k) const { return re.data() + k * n; }
    const double* im_at(std::size_t k) const { return im.data() + k * n; }
};

SplitVectors split_columns(const ComplexMatrix& a) {
    const std::size_t n = static_cast<std::size_t>(a.rows());
    SplitVectors s{std::vector<double>(n * n), std::vector<double>(n * n), n};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            s.re[j * n + i] = a(i, j).real();
            s.im[j * n + i] = a(i, j).imag();
        }
    }
    return s;
}

SplitVectors split_rows(const ComplexMatrix& a) {
    return split_columns(a.transpose());
}

}  // namespace

Complex permanent_brute_force(const ComplexMatrix& a) {
    const int n = checked_order(a, 10);
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

Complex permanent_ryser(const ComplexMatrix& a) {
    const int n = checked_order(a, kMaxPermanentOrder);
    const auto& k = kernels::active();
    const SplitVectors cols = split_columns(a);
    const std::size_t un = static_cast<std::size_t>(n);

    // Row sums over the current column subset; starts empty.
    std::vector<double> row_re(un, 0.0), row_im(un, 0.0);
    std::vector<bool> in_subset(un, false);
    double acc_re = 0.0;
    double acc_im = 0.0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        const int j = std::countr_zero(step);
        const double sign = in_subset[j] ? -1.0 : 1.0;
        in_subset[j] = !in_subset[j];
        k.complex_axpy(un, sign, cols.re_at(j), cols.im_at(j), row_re.data(), row_im.data());

        double pr = 0.0, pi = 0.0;
        k.complex_product(un, row_re.data(), row_im.data(), &pr, &pi);
        // Subset of size |S| contributes with (-1)^(n - |S|).
        const int size = std::popcount(step ^ (step >> 1));
        if ((n - size) % 2 == 0) {
            acc_re += pr;
            acc_im += pi;
        } else {
            acc_re -= pr;
            acc_im -= pi;
        }
    }
    return {acc_re, acc_im};
}

Complex permanent_glynn(const ComplexMatrix& a) {
    const int n = checked_order(a, kMaxPermanentOrder);
    const auto& k = kernels::active();
    const SplitVectors rows = split_rows(a);
    const std::size_t un = static_cast<std::size_t>(n);

    // Column sums sum_i delta_i a(i, j), starting from delta = (+1, ..., +1).
    std::vector<double> col_re(un, 0.0), col_im(un, 0.0);
    for (std::size_t i = 0; i < un; ++i) {
        k.complex_axpy(un, 1.0, rows.re_at(i), rows.im_at(i), col_re.data(), col_im.data());
    }
    std::vector<bool> negative(un, false);
    int negatives = 0;

    double pr = 0.0, pi = 0.0;
    k.complex_product(un, col_re.data(), col_im.data(), &pr, &pi);
    double acc_re = pr;
    double acc_im = pi;

    // delta_0 stays +1; the remaining n - 1 signs follow a Gray code.
    const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < patterns; ++step) {
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(step)) + 1;
        const double delta = negative[i] ? 2.0 : -2.0;
        negatives += negative[i] ? -1 : 1;
        negative[i] = !negative[i];
        k.complex_axpy(un, delta, rows.re_at(i), rows.im_at(i), col_re.data(), col_im.data());

        k.complex_product(un, col_re.data(), col_im.data(), &pr, &pi);
        if (negatives % 2 == 0) {
            acc_re += pr;
            acc_im += pi;
        } else {
            acc_re -= pr;
            acc_im -= pi;
        }
    }
    const double scale = std::ldexp(1.0, -(n - 1));
    return {acc_re * scale, acc_im * scale};
}

Complex permanent(const ComplexMatrix& a) {
    const int n = checked_order(a, kMaxPermanentOrder);
    if (n == 1) return a(0, 0);
    if (n == 2) return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
    if (n <= 5) return permanent_brute_force(a);
    return permanent_ryser(a);
}

}  // namespace chaos
