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

#ifndef LGTC_KERNELS_HPP
#define LGTC_KERNELS_HPP

#include <complex>

namespace lgtc::kern {

using cplx = std::complex<double>;

// Dense arithmetic kernels behind all inner loops. Every entry point has a
// scalar reference implementation; AVX2+FMA variants are selected at runtime
// when the CPU supports them. All matrices are row-major with an explicit
// leading dimension (elements, not bytes).
struct Kernels {
    const char* name;

    // C(m x n) = A(m x k) * B(k x n)
    void (*zgemm_nn)(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc);
    // C(m x n) = A(k x m)^dagger * B(k x n)
    void (*zgemm_cn)(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc);
    // C(m x n) = A(m x k) * B(n x k)^dagger
    void (*zgemm_nc)(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc);

    // Plane rotation with real cosine and complex sine (Jacobi sweeps):
    //   x' = c*x + s*y,  y' = -conj(s)*x + c*y
    void (*zrot)(int n, cplx* x, cplx* y, double c, cplx s);
    // Real Givens rotation: x' = c*x + s*y, y' = -s*x + c*y
    void (*drot)(int n, double* x, double* y, double c, double s);

    // Lower triangle (incl. diagonal) of C(n x n) -= A(n x k) * A(n x k)^T
    void (*dsyrk_ln_sub)(int n, int k, const double* A, int lda,
                         double* C, int ldc);

    double (*ddot)(int n, const double* x, const double* y);
    void (*daxpy)(int n, double a, const double* x, double* y);
};

// Kernel table selected at load time from CPU features; the LGTC_KERNEL
// environment variable ("scalar" or "avx2") forces a choice.
const Kernels& active();

const Kernels& scalar_kernels();

// Null when the build target or the running CPU lacks AVX2/FMA.
const Kernels* avx2_kernels();

}  // namespace lgtc::kern

#endif  // LGTC_KERNELS_HPP
