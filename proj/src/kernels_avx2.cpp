// Copyright 2025-2026 The lgtc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// AVX2+FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check (see kernels_dispatch.cpp).
// A __m256d holds two complex doubles laid out (re0, im0, re1, im1).

#include "lgtc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace lgtc::kern {

namespace {

// y *= (wr + i*wi) for two packed complex doubles.
inline __m256d cmul_scalar_vec(double wr, double wi, __m256d v) {
    const __m256d wrv = _mm256_set1_pd(wr);
    const __m256d wiv = _mm256_setr_pd(-wi, wi, -wi, wi);
    const __m256d sw = _mm256_permute_pd(v, 0x5);
    return _mm256_fmadd_pd(v, wrv, _mm256_mul_pd(sw, wiv));
}

// ci[0:n] += (ar + i*ai) * bl[0:n], vector body plus scalar tail.
inline void caxpy_row(int n, double ar, double ai, const cplx* bl, cplx* ci) {
    const __m256d arv = _mm256_set1_pd(ar);
    const __m256d aiv = _mm256_setr_pd(-ai, ai, -ai, ai);
    int j = 0;
    const double* b = reinterpret_cast<const double*>(bl);
    double* c = reinterpret_cast<double*>(ci);
    for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(b + 2 * j);
        __m256d cv = _mm256_loadu_pd(c + 2 * j);
        cv = _mm256_fmadd_pd(bv, arv, cv);
        cv = _mm256_fmadd_pd(_mm256_permute_pd(bv, 0x5), aiv, cv);
        _mm256_storeu_pd(c + 2 * j, cv);
    }
    if (j < n) {
        const cplx a(ar, ai);
        ci[j] += a * bl[j];
    }
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void zgemm_nn_avx2(int m, int n, int k, const cplx* A, int lda,
                   const cplx* B, int ldb, cplx* C, int ldc) {
    for (int i = 0; i < m; ++i) {
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        const cplx* ai = A + static_cast<std::size_t>(i) * lda;
        for (int l = 0; l < k; ++l) {
            caxpy_row(n, ai[l].real(), ai[l].imag(),
                      B + static_cast<std::size_t>(l) * ldb, ci);
        }
    }
}

void zgemm_cn_avx2(int m, int n, int k, const cplx* A, int lda,
                   const cplx* B, int ldb, cplx* C, int ldc) {
    for (int i = 0; i < m; ++i) {
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        for (int l = 0; l < k; ++l) {
            const cplx a = A[static_cast<std::size_t>(l) * lda + i];
            caxpy_row(n, a.real(), -a.imag(),
                      B + static_cast<std::size_t>(l) * ldb, ci);
        }
    }
}

void zgemm_nc_avx2(int m, int n, int k, const cplx* A, int lda,
                   const cplx* B, int ldb, cplx* C, int ldc) {
    const __m256d signs = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    for (int i = 0; i < m; ++i) {
        const cplx* ai = A + static_cast<std::size_t>(i) * lda;
        const double* a = reinterpret_cast<const double*>(ai);
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) {
            const cplx* bj = B + static_cast<std::size_t>(j) * ldb;
            const double* b = reinterpret_cast<const double*>(bj);
            __m256d acc_re = _mm256_setzero_pd();
            __m256d acc_im = _mm256_setzero_pd();
            int l = 0;
            for (; l + 2 <= k; l += 2) {
                const __m256d av = _mm256_loadu_pd(a + 2 * l);
                const __m256d bv = _mm256_loadu_pd(b + 2 * l);
                acc_re = _mm256_fmadd_pd(av, bv, acc_re);
                const __m256d bneg = _mm256_mul_pd(bv, signs);
                acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0x5), bneg,
                                         acc_im);
            }
            cplx acc(hsum(acc_re), hsum(acc_im));
            for (; l < k; ++l) acc += ai[l] * std::conj(bj[l]);
            ci[j] = acc;
        }
    }
}

void zrot_avx2(int n, cplx* x, cplx* y, double c, cplx s) {
    const __m256d cv = _mm256_set1_pd(c);
    double* xd = reinterpret_cast<double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        const __m256d sy = cmul_scalar_vec(s.real(), s.imag(), yv);
        const __m256d scx = cmul_scalar_vec(-s.real(), s.imag(), xv);
        _mm256_storeu_pd(xd + 2 * i, _mm256_fmadd_pd(xv, cv, sy));
        _mm256_storeu_pd(yd + 2 * i, _mm256_fmadd_pd(yv, cv, scx));
    }
    const cplx sc = std::conj(s);
    for (; i < n; ++i) {
        const cplx xi = x[i];
        const cplx yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -sc * xi + c * yi;
    }
}

void drot_avx2(int n, double* x, double* y, double c, double s) {
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    const __m256d nsv = _mm256_set1_pd(-s);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmadd_pd(xv, cv, _mm256_mul_pd(yv, sv)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(yv, cv, _mm256_mul_pd(xv, nsv)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

void dsyrk_ln_sub_avx2(int n, int k, const double* A, int lda,
                       double* C, int ldc) {
    for (int i = 0; i < n; ++i) {
        const double* ai = A + static_cast<std::size_t>(i) * lda;
        double* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j <= i; ++j) {
            const double* aj = A + static_cast<std::size_t>(j) * lda;
            __m256d acc = _mm256_setzero_pd();
            int l = 0;
            for (; l + 4 <= k; l += 4) {
                acc = _mm256_fmadd_pd(_mm256_loadu_pd(ai + l),
                                      _mm256_loadu_pd(aj + l), acc);
            }
            double dot = hsum(acc);
            for (; l < k; ++l) dot += ai[l] * aj[l];
            ci[j] -= dot;
        }
    }
}

double ddot_avx2(int n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i),
                              acc);
    }
    double dot = hsum(acc);
    for (; i < n; ++i) dot += x[i] * y[i];
    return dot;
}

void daxpy_avx2(int n, double a, const double* x, double* y) {
    const __m256d av = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(
            y + i, _mm256_fmadd_pd(_mm256_loadu_pd(x + i), av,
                                   _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Kernels* avx2_table_impl() {
    static const Kernels table = {
        "avx2",
        zgemm_nn_avx2,
        zgemm_cn_avx2,
        zgemm_nc_avx2,
        zrot_avx2,
        drot_avx2,
        dsyrk_ln_sub_avx2,
        ddot_avx2,
        daxpy_avx2,
    };
    return &table;
}

}  // namespace lgtc::kern

#else

namespace lgtc::kern {
const Kernels* avx2_table_impl() { return nullptr; }
}  // namespace lgtc::kern

#endif
