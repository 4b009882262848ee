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

// Data-parallel inner loops shared by time evolution, the permanent
// evaluators and the distribution probes. Every kernel has a portable scalar
// reference; an AVX2/FMA variant is picked at runtime when the CPU supports it.
// Complex vectors are passed split into real and imaginary arrays.

#include <cstddef>
#include <string_view>

namespace chaos::kernels {

struct KernelTable {
    const char* name;

    // y = Q x for a row-major d x d real Q and a complex x.
    void (*real_matvec_complex)(const double* q, std::size_t d,
                                const double* x_re, const double* x_im,
                                double* y_re, double* y_im);

    // y += alpha * x over n complex entries.
    void (*complex_axpy)(std::size_t n, double alpha,
                         const double* x_re, const double* x_im,
                         double* y_re, double* y_im);

    // prod_k (re[k] + i im[k]); empty product is 1.
    void (*complex_product)(std::size_t n, const double* re, const double* im,
                            double* out_re, double* out_im);

    // sum_k x[k]^2
    double (*sum_squares)(std::size_t n, const double* x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variants were not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table used by the library. Chosen once: CHAOS_SAMPLER_KERNELS=scalar|avx2|auto
/// (default auto) selects explicitly; an unavailable request falls back to scalar.
const KernelTable& active() noexcept;

/// Override the active table (tests and benchmarks). Not thread-safe with
/// concurrent kernel use.
void set_active(const KernelTable& table) noexcept;

}  // namespace chaos::kernels
