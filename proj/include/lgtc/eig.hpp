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

#ifndef LGTC_EIG_HPP
#define LGTC_EIG_HPP

#include <vector>

#include "lgtc/complex_matrix.hpp"

namespace lgtc::qcore {

struct EighResult {
    std::vector<double> eigenvalues;  // ascending
    CMat vectors;                     // columns are eigenvectors: A V = V diag(w)
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws std::invalid_argument when A is not Hermitian to within herm_tol.
EighResult eigh(const CMat& A, double herm_tol = 1e-12);

/// Allocation-free Jacobi core for hot loops. a (n x n row-major) is
/// destroyed; eigenvalues land unsorted in w. When w_rows is non-null it
/// accumulates the left rotations: row k of w_rows is the conjugate of the
/// eigenvector belonging to w[k]. No Hermiticity check.
void eigh_inplace(int n, cplx* a, double* w, cplx* w_rows);

/// Real symmetric eigendecomposition (Jacobi), row-major input of size n*n.
/// On return eigenvalues are ascending and V (n*n, may be null) holds
/// eigenvectors in columns: A V = V diag(w).
void eigh_real(int n, const double* A, double* eigenvalues, double* V);

/// Smallest eigenvalue of a real symmetric matrix.
double min_eig_real(int n, const double* A);

}  // namespace lgtc::qcore

#endif  // LGTC_EIG_HPP
