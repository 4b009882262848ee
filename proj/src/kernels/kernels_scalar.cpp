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

#include "chaos/kernels.hpp"

namespace chaos::kernels {
namespace {

void real_matvec_complex_scalar(const double* q, std::size_t d,
                                const double* x_re, const double* x_im,
                                double* y_re, double* y_im) {
    for (std::size_t a = 0; a < d; ++a) {
        const double* row = q + a * d;
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            acc_re += row[j] * x_re[j];
            acc_im += row[j] * x_im[j];
        }
        y_re[a] = acc_re;
        y_im[a] = acc_im;
    }
}

void complex_axpy_scalar(std::size_t n, double alpha,
                         const double* x_re, const double* x_im,
                         double* y_re, double* y_im) {
    for (std::size_t k = 0; k < n; ++k) {
        y_re[k] += alpha * x_re[k];
        y_im[k] += alpha * x_im[k];
    }
}

void complex_product_scalar(std::size_t n, const double* re, const double* im,
                            double* out_re, double* out_im) {
    double pr = 1.0;
    double pi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double nr = pr * re[k] - pi * im[k];
        const double ni = pr * im[k] + pi * re[k];
        pr = nr;
        pi = ni;
    }
    *out_re = pr;
    *out_im = pi;
}

double sum_squares_scalar(std::size_t n, const double* x) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * x[k];
    return acc;
}

constexpr KernelTable kScalar{
    "scalar",
    &real_matvec_complex_scalar,
    &complex_axpy_scalar,
    &complex_product_scalar,
    &sum_squares_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace chaos::kernels
