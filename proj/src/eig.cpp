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

#include "lgtc/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lgtc/kernels.hpp"

namespace lgtc::qcore {

namespace {

// Jacobi rotation angle for the 2x2 Hermitian block [[app, b],[conj(b), aqq]]
// with b = |b| e^{i phi}. Returns (c, s) with the unitary
//   U = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
// such that (U^dagger A U)_{pq} = 0.
inline void jacobi_angles(double app, double aqq, double babs, double& c,
                          double& s) {
    const double tau = (app - aqq) / (2.0 * babs);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    c = 1.0 / std::sqrt(1.0 + t * t);
    s = t * c;
}

}  // namespace

void eigh_inplace(int n, cplx* a, double* w, cplx* w_rows) {
    auto m = [&](int i, int j) -> cplx& {
        return a[static_cast<std::size_t>(i) * n + j];
    };
    // squared magnitudes everywhere in the scans; sqrt only per rotation
    double scale2 = 1.0;
    for (int i = 0; i < n * n; ++i) scale2 = std::max(scale2, std::norm(a[i]));
    if (w_rows != nullptr) {
        for (int i = 0; i < n * n; ++i) w_rows[i] = cplx(0.0, 0.0);
        for (int i = 0; i < n; ++i) {
            w_rows[static_cast<std::size_t>(i) * n + i] = cplx(1.0, 0.0);
        }
    }
    const auto& k = kern::active();

    const double eps2 = 1e-30;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                off2 = std::max(off2, std::norm(m(p, q)));
            }
        }
        if (off2 <= eps2 * scale2) break;
        const double thresh2 = (sweep < 3) ? 0.01 * off2 : eps2 * scale2;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx b = m(p, q);
                const double b2 = std::norm(b);
                if (b2 <= thresh2) continue;
                const double babs = std::sqrt(b2);

                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                double c, smag;
                jacobi_angles(app, aqq, babs, c, smag);
                const cplx phase = b / babs;           // e^{i phi}
                const cplx s = smag * phase;           // s e^{i phi}

                // Left update M <- U^dagger M: rows p and q. zrot computes
                // x' = c x + sv y, y' = -conj(sv) x + c y; the required row
                // ops are row_p' = c row_p + s e^{i phi} row_q.
                k.zrot(n, &m(p, 0), &m(q, 0), c, s);
                // Right update M <- M U: columns p and q (strided).
                for (int r = 0; r < n; ++r) {
                    const cplx xp = m(r, p);
                    const cplx xq = m(r, q);
                    m(r, p) = c * xp + std::conj(s) * xq;
                    m(r, q) = -s * xp + c * xq;
                }
                // Accumulate W <- U^dagger W.
                if (w_rows != nullptr) {
                    k.zrot(n, w_rows + static_cast<std::size_t>(p) * n,
                           w_rows + static_cast<std::size_t>(q) * n, c, s);
                }
            }
        }
    }

    double off2 = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            off2 = std::max(off2, std::norm(m(p, q)));
        }
    }
    if (off2 > 1e-22 * scale2) {
        throw std::runtime_error("eigh: Jacobi iteration failed to converge");
    }
    for (int i = 0; i < n; ++i) w[i] = m(i, i).real();
}

EighResult eigh(const CMat& A, double herm_tol) {
    const int n = A.dim();
    const double scale = std::max(1.0, A.max_abs());
    if (!A.is_hermitian(herm_tol * scale)) {
        throw std::invalid_argument("eigh: matrix is not Hermitian");
    }

    CMat M = A;
    CMat W = CMat::identity(n);
    std::vector<double> w(n);
    eigh_inplace(n, M.data(), w.data(), W.data());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int bI) { return w[a] < w[bI]; });

    EighResult out;
    out.eigenvalues.resize(n);
    out.vectors = CMat(n);
    for (int col = 0; col < n; ++col) {
        const int src = order[col];
        out.eigenvalues[col] = w[src];
        for (int r = 0; r < n; ++r) out.vectors(r, col) = std::conj(W(src, r));
    }
    return out;
}

void eigh_real(int n, const double* A, double* eigenvalues, double* V) {
    std::vector<double> M(A, A + static_cast<std::size_t>(n) * n);
    std::vector<double> W;
    if (V != nullptr) {
        W.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) W[static_cast<std::size_t>(i) * n + i] = 1.0;
    }
    auto m = [&](int i, int j) -> double& {
        return M[static_cast<std::size_t>(i) * n + j];
    };
    double scale = 1.0;
    for (const double v : M) scale = std::max(scale, std::abs(v));

    const auto& k = kern::active();
    const double eps = 1e-15;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(m(p, q)));
        }
        if (off <= eps * scale) break;
        const double thresh = (sweep < 3) ? 0.1 * off : eps * scale;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double b = m(p, q);
                if (std::abs(b) <= thresh) continue;
                double c, smag;
                jacobi_angles(m(p, p), m(q, q), std::abs(b), c, smag);
                const double s = (b >= 0.0) ? smag : -smag;

                k.drot(n, &m(p, 0), &m(q, 0), c, s);
                for (int r = 0; r < n; ++r) {
                    const double xp = m(r, p);
                    const double xq = m(r, q);
                    m(r, p) = c * xp + s * xq;
                    m(r, q) = -s * xp + c * xq;
                }
                if (V != nullptr) {
                    k.drot(n, &W[static_cast<std::size_t>(p) * n],
                           &W[static_cast<std::size_t>(q) * n], c, s);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int bI) { return m(a, a) < m(bI, bI); });
    for (int col = 0; col < n; ++col) {
        eigenvalues[col] = m(order[col], order[col]);
        if (V != nullptr) {
            for (int r = 0; r < n; ++r) {
                V[static_cast<std::size_t>(r) * n + col] =
                    W[static_cast<std::size_t>(order[col]) * n + r];
            }
        }
    }
}

double min_eig_real(int n, const double* A) {
    std::vector<double> w(n);
    eigh_real(n, A, w.data(), nullptr);
    return w[0];
}

}  // namespace lgtc::qcore
