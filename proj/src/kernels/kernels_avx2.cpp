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

// Only intrinsics and plain arrays in this file: the functions carry a
// per-function target attribute, and any inline library template instantiated
// here could otherwise be merged into baseline code paths.

#if defined(CHAOS_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#define CHAOS_AVX2 __attribute__((target("avx2,fma")))

namespace chaos::kernels {
namespace {

CHAOS_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

CHAOS_AVX2 void real_matvec_complex_avx2(const double* q, std::size_t d,
                                         const double* x_re, const double* x_im,
                                         double* y_re, double* y_im) {
    const std::size_t body = d & ~std::size_t{3};
    for (std::size_t a = 0; a < d; ++a) {
        const double* row = q + a * d;
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();
        for (std::size_t j = 0; j < body; j += 4) {
            const __m256d r = _mm256_loadu_pd(row + j);
            acc_re = _mm256_fmadd_pd(r, _mm256_loadu_pd(x_re + j), acc_re);
            acc_im = _mm256_fmadd_pd(r, _mm256_loadu_pd(x_im + j), acc_im);
        }
        double sr = hsum(acc_re);
        double si = hsum(acc_im);
        for (std::size_t j = body; j < d; ++j) {
            sr += row[j] * x_re[j];
            si += row[j] * x_im[j];
        }
        y_re[a] = sr;
        y_im[a] = si;
    }
}

CHAOS_AVX2 void complex_axpy_avx2(std::size_t n, double alpha,
                                  const double* x_re, const double* x_im,
                                  double* y_re, double* y_im) {
    const __m256d va = _mm256_set1_pd(alpha);
    const std::size_t body = n & ~std::size_t{3};
    for (std::size_t k = 0; k < body; k += 4) {
        _mm256_storeu_pd(y_re + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x_re + k),
                                                   _mm256_loadu_pd(y_re + k)));
        _mm256_storeu_pd(y_im + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x_im + k),
                                                   _mm256_loadu_pd(y_im + k)));
    }
    for (std::size_t k = body; k < n; ++k) {
        y_re[k] += alpha * x_re[k];
        y_im[k] += alpha * x_im[k];
    }
}

// Lane l accumulates the product of entries k = l (mod 4); lanes are then
// folded in order and the tail is multiplied in last.
CHAOS_AVX2 void complex_product_avx2(std::size_t n, const double* re, const double* im,
                                     double* out_re, double* out_im) {
    const std::size_t body = n & ~std::size_t{3};
    __m256d pr = _mm256_set1_pd(1.0);
    __m256d pi = _mm256_setzero_pd();
    for (std::size_t k = 0; k < body; k += 4) {
        const __m256d r = _mm256_loadu_pd(re + k);
        const __m256d i = _mm256_loadu_pd(im + k);
        const __m256d nr = _mm256_fmsub_pd(pr, r, _mm256_mul_pd(pi, i));
        const __m256d ni = _mm256_fmadd_pd(pr, i, _mm256_mul_pd(pi, r));
        pr = nr;
        pi = ni;
    }
    alignas(32) double lr[4];
    alignas(32) double li[4];
    _mm256_store_pd(lr, pr);
    _mm256_store_pd(li, pi);
    double ar = lr[0];
    double ai = li[0];
    for (int l = 1; l < 4; ++l) {
        const double nr = ar * lr[l] - ai * li[l];
        const double ni = ar * li[l] + ai * lr[l];
        ar = nr;
        ai = ni;
    }
    for (std::size_t k = body; k < n; ++k) {
        const double nr = ar * re[k] - ai * im[k];
        const double ni = ar * im[k] + ai * re[k];
        ar = nr;
        ai = ni;
    }
    *out_re = ar;
    *out_im = ai;
}

CHAOS_AVX2 double sum_squares_avx2(std::size_t n, const double* x) {
    const std::size_t body = n & ~std::size_t{3};
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < body; k += 4) {
        const __m256d v = _mm256_loadu_pd(x + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (std::size_t k = body; k < n; ++k) s += x[k] * x[k];
    return s;
}

constexpr KernelTable kAvx2{
    "avx2",
    &real_matvec_complex_avx2,
    &complex_axpy_avx2,
    &complex_product_avx2,
    &sum_squares_avx2,
};

}  // namespace

const KernelTable* avx2_table_if_compiled() noexcept { return &kAvx2; }

}  // namespace chaos::kernels

#else

namespace chaos::kernels {
const KernelTable* avx2_table_if_compiled() noexcept { return nullptr; }
}  // namespace chaos::kernels

#endif
