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

// Reference kernels. These define the numerical behaviour the SIMD variants
// are tested against; keep them simple and obviously correct.

#include "lgtc/kernels.hpp"

namespace lgtc::kern {

namespace {

void zgemm_nn_scalar(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc) {
    for (int i = 0; i < m; ++i) {
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        for (int l = 0; l < k; ++l) {
            const cplx a = A[static_cast<std::size_t>(i) * lda + l];
            const cplx* bl = B + static_cast<std::size_t>(l) * ldb;
            for (int j = 0; j < n; ++j) ci[j] += a * bl[j];
        }
    }
}

void zgemm_cn_scalar(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc) {
    for (int i = 0; i < m; ++i) {
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) ci[j] = cplx(0.0, 0.0);
        for (int l = 0; l < k; ++l) {
            const cplx a = std::conj(A[static_cast<std::size_t>(l) * lda + i]);
            const cplx* bl = B + static_cast<std::size_t>(l) * ldb;
            for (int j = 0; j < n; ++j) ci[j] += a * bl[j];
        }
    }
}

void zgemm_nc_scalar(int m, int n, int k, const cplx* A, int lda,
                     const cplx* B, int ldb, cplx* C, int ldc) {
    for (int i = 0; i < m; ++i) {
        const cplx* ai = A + static_cast<std::size_t>(i) * lda;
        cplx* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j < n; ++j) {
            const cplx* bj = B + static_cast<std::size_t>(j) * ldb;
            cplx acc(0.0, 0.0);
            for (int l = 0; l < k; ++l) acc += ai[l] * std::conj(bj[l]);
            ci[j] = acc;
        }
    }
}

void zrot_scalar(int n, cplx* x, cplx* y, double c, cplx s) {
    const cplx sc = std::conj(s);
    for (int i = 0; i < n; ++i) {
        const cplx xi = x[i];
        const cplx yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -sc * xi + c * yi;
    }
}

void drot_scalar(int n, double* x, double* y, double c, double s) {
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

void dsyrk_ln_sub_scalar(int n, int k, const double* A, int lda,
                         double* C, int ldc) {
    for (int i = 0; i < n; ++i) {
        const double* ai = A + static_cast<std::size_t>(i) * lda;
        double* ci = C + static_cast<std::size_t>(i) * ldc;
        for (int j = 0; j <= i; ++j) {
            const double* aj = A + static_cast<std::size_t>(j) * lda;
            double acc = 0.0;
            for (int l = 0; l < k; ++l) acc += ai[l] * aj[l];
            ci[j] -= acc;
        }
    }
}

double ddot_scalar(int n, const double* x, const double* y) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void daxpy_scalar(int n, double a, const double* x, double* y) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Kernels& scalar_kernels() {
    static const Kernels table = {
        "scalar",
        zgemm_nn_scalar,
        zgemm_cn_scalar,
        zgemm_nc_scalar,
        zrot_scalar,
        drot_scalar,
        dsyrk_ln_sub_scalar,
        ddot_scalar,
        daxpy_scalar,
    };
    return table;
}

}  // namespace lgtc::kern
