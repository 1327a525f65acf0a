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

// Dense primal-dual interior-point method (Mehrotra predictor-corrector with
// the HKM direction) for the standard pair
//   max <C, X>  s.t.  <A_k, X> = b_k,  X >= 0.
// Constraint matrices are sparse, the iterates dense. Sized for dim <= ~150
// and a few thousand constraints.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "lgtc/eig.hpp"
#include "lgtc/kernels.hpp"
#include "lgtc/momentsdp.hpp"

namespace lgtc::momentsdp {

namespace {

using Mat = std::vector<double>;  // row-major n x n

struct FullEntry {
    int i;
    int j;
    double v;
};

// Cholesky in place (lower), returns false if a pivot collapses.
bool cholesky(int n, Mat& a) {
    const auto& k = kern::active();
    for (int j = 0; j < n; ++j) {
        double d = a[static_cast<std::size_t>(j) * n + j];
        if (j > 0) {
            d -= k.ddot(j, &a[static_cast<std::size_t>(j) * n],
                        &a[static_cast<std::size_t>(j) * n]);
        }
        if (d <= 0.0) return false;
        const double root = std::sqrt(d);
        a[static_cast<std::size_t>(j) * n + j] = root;
        for (int i = j + 1; i < n; ++i) {
            double s = a[static_cast<std::size_t>(i) * n + j];
            if (j > 0) {
                s -= k.ddot(j, &a[static_cast<std::size_t>(i) * n],
                            &a[static_cast<std::size_t>(j) * n]);
            }
            a[static_cast<std::size_t>(i) * n + j] = s / root;
        }
        for (int i = 0; i < j; ++i) a[static_cast<std::size_t>(i) * n + j] = 0.0;
    }
    return true;
}

// Blocked Cholesky with pivot skipping for the (possibly rank-deficient)
// Schur complement. Skipped pivots mark dependent constraints; their solve
// components are pinned to zero.
void cholesky_pivot_skip(int n, Mat& a, std::vector<bool>& skipped) {
    const auto& k = kern::active();
    skipped.assign(n, false);
    double max_diag = 1e-300;
    for (int i = 0; i < n; ++i) {
        max_diag = std::max(max_diag, a[static_cast<std::size_t>(i) * n + i]);
    }
    const double tol = 1e-12 * max_diag;

    const int block = 64;
    for (int j0 = 0; j0 < n; j0 += block) {
        const int jend = std::min(n, j0 + block);
        // Columns left of j0 are already folded into the trailing block, so
        // every sum below starts at j0.
        for (int j = j0; j < jend; ++j) {
            double d = a[static_cast<std::size_t>(j) * n + j] -
                       k.ddot(j - j0, &a[static_cast<std::size_t>(j) * n + j0],
                              &a[static_cast<std::size_t>(j) * n + j0]);
            if (d <= tol) {
                skipped[j] = true;
                a[static_cast<std::size_t>(j) * n + j] = 1.0;
                for (int i = j + 1; i < n; ++i) {
                    a[static_cast<std::size_t>(i) * n + j] = 0.0;
                }
                continue;
            }
            const double root = std::sqrt(d);
            a[static_cast<std::size_t>(j) * n + j] = root;
            for (int i = j + 1; i < jend; ++i) {
                const double s =
                    a[static_cast<std::size_t>(i) * n + j] -
                    k.ddot(j - j0, &a[static_cast<std::size_t>(i) * n + j0],
                           &a[static_cast<std::size_t>(j) * n + j0]);
                a[static_cast<std::size_t>(i) * n + j] = s / root;
            }
        }
        if (jend == n) break;
        // panel below the diagonal block
        for (int i = jend; i < n; ++i) {
            for (int j = j0; j < jend; ++j) {
                if (skipped[j]) {
                    a[static_cast<std::size_t>(i) * n + j] = 0.0;
                    continue;
                }
                const double s =
                    a[static_cast<std::size_t>(i) * n + j] -
                    k.ddot(j - j0, &a[static_cast<std::size_t>(i) * n + j0],
                           &a[static_cast<std::size_t>(j) * n + j0]);
                a[static_cast<std::size_t>(i) * n + j] =
                    s / a[static_cast<std::size_t>(j) * n + j];
            }
        }
        // trailing update uses the syrk kernel on the freshly built panel
        const int rest = n - jend;
        const int width = jend - j0;
        std::vector<double> panel(static_cast<std::size_t>(rest) * width);
        for (int i = 0; i < rest; ++i) {
            std::memcpy(&panel[static_cast<std::size_t>(i) * width],
                        &a[static_cast<std::size_t>(i + jend) * n + j0],
                        sizeof(double) * width);
        }
        // C[jend:, jend:] -= panel panel^T, lower triangle only
        for (int i = 0; i < rest; ++i) {
            // dsyrk kernel handles whole rows; apply per-row to keep the
            // lower-triangle-only contract simple.
            const double* pi = &panel[static_cast<std::size_t>(i) * width];
            double* ci = &a[static_cast<std::size_t>(i + jend) * n + jend];
            for (int j = 0; j <= i; ++j) {
                ci[j] -= kern::active().ddot(width, pi,
                                             &panel[static_cast<std::size_t>(j) * width]);
            }
        }
    }
    // zero the strict upper triangle
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = 0.0;
    }
}

void solve_chol(int n, const Mat& l, const std::vector<bool>& skipped,
                std::vector<double>& x) {
    for (int i = 0; i < n; ++i) {
        if (skipped[i]) {
            x[i] = 0.0;
            continue;
        }
        double s = x[i];
        for (int j = 0; j < i; ++j) {
            s -= l[static_cast<std::size_t>(i) * n + j] * x[j];
        }
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        if (skipped[i]) {
            x[i] = 0.0;
            continue;
        }
        double s = x[i];
        for (int j = i + 1; j < n; ++j) {
            s -= l[static_cast<std::size_t>(j) * n + i] * x[j];
        }
        x[i] = s / l[static_cast<std::size_t>(i) * n + i];
    }
}

// inverse of an SPD matrix from its Cholesky factor
Mat spd_inverse(int n, const Mat& l) {
    // columns of the inverse via forward/back substitution
    Mat inv(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> col(n);
    std::vector<bool> none(n, false);
    for (int c = 0; c < n; ++c) {
        std::fill(col.begin(), col.end(), 0.0);
        col[c] = 1.0;
        solve_chol(n, l, none, col);
        for (int r = 0; r < n; ++r) inv[static_cast<std::size_t>(r) * n + c] = col[r];
    }
    // symmetrize against roundoff
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (inv[static_cast<std::size_t>(i) * n + j] +
                                    inv[static_cast<std::size_t>(j) * n + i]);
            inv[static_cast<std::size_t>(i) * n + j] = v;
            inv[static_cast<std::size_t>(j) * n + i] = v;
        }
    }
    return inv;
}

// Largest step alpha with P + alpha D >= 0 (P SPD with Cholesky factor lp).
double max_step(int n, const Mat& lp, const Mat& d) {
    // T = L^-1 D L^-T, then alpha = -1/lambda_min(T) when negative.
    Mat t = d;
    std::vector<bool> none(n, false);
    // forward solve on columns: T1 = L^-1 D  (solve L T1 = D column-wise)
    for (int c = 0; c < n; ++c) {
        for (int i = 0; i < n; ++i) {
            double s = t[static_cast<std::size_t>(i) * n + c];
            for (int j = 0; j < i; ++j) {
                s -= lp[static_cast<std::size_t>(i) * n + j] *
                     t[static_cast<std::size_t>(j) * n + c];
            }
            t[static_cast<std::size_t>(i) * n + c] =
                s / lp[static_cast<std::size_t>(i) * n + i];
        }
    }
    // T2 = T1 L^-T: solve rows against L
    for (int r = 0; r < n; ++r) {
        double* row = &t[static_cast<std::size_t>(r) * n];
        for (int i = 0; i < n; ++i) {
            double s = row[i];
            for (int j = 0; j < i; ++j) {
                s -= lp[static_cast<std::size_t>(i) * n + j] * row[j];
            }
            row[i] = s / lp[static_cast<std::size_t>(i) * n + i];
        }
    }
    const double lmin = qcore::min_eig_real(n, t.data());
    if (lmin >= -1e-14) return 1e30;
    return -1.0 / lmin;
}

struct SparseOps {
    std::vector<std::vector<FullEntry>> full;  // both halves per constraint

    double trace_with(int k, const Mat& m, int dim) const {
        double acc = 0.0;
        for (const auto& e : full[k]) {
            acc += e.v * m[static_cast<std::size_t>(e.j) * dim + e.i];
        }
        return acc;
    }
};

// Constraint sets built from projector algebra are hugely redundant. Select
// an independent subset: two-entry difference constraints act as union-find
// edges (kept only when they merge components), single-entry zeros pin a
// component once, and everything else goes through Gaussian elimination over
// the merged-entry variables. Throws on an inconsistent system.
std::vector<int> presolve_select(int dim,
                                 const std::vector<Constraint>& constraints) {
    const int m = static_cast<int>(constraints.size());
    const auto entry_id = [dim](int i, int j) {
        return i * dim + j;  // i <= j always
    };

    std::vector<int> parent(static_cast<std::size_t>(dim) * dim, -1);
    auto find = [&](int a) {
        if (parent[a] < 0) parent[a] = a;
        int root = a;
        while (parent[root] != root) root = parent[root];
        while (parent[a] != root) {
            const int next = parent[a];
            parent[a] = root;
            a = next;
        }
        return root;
    };

    std::vector<int> selected;
    std::vector<int> general;
    std::vector<char> pinned_zero(static_cast<std::size_t>(dim) * dim, 0);

    for (int k = 0; k < m; ++k) {
        const auto& es = constraints[k].f.entries;
        const double rhs = constraints[k].rhs;
        const auto weight = [](const SparseSym::Entry& e) {
            return (e.i == e.j) ? e.v : 2.0 * e.v;
        };
        if (rhs == 0.0 && es.size() == 2 &&
            std::abs(weight(es[0]) + weight(es[1])) <
                1e-14 * std::abs(weight(es[0]))) {
            const int a = find(entry_id(es[0].i, es[0].j));
            const int b = find(entry_id(es[1].i, es[1].j));
            if (a != b) {
                parent[a] = b;
                selected.push_back(k);
            }
            continue;
        }
        if (rhs == 0.0 && es.size() == 1) {
            general.push_back(k);  // zero pins handled with the general rows
            continue;
        }
        general.push_back(k);
    }
    (void)pinned_zero;

    // Map components touched by general rows to dense columns.
    std::vector<int> comp_col(static_cast<std::size_t>(dim) * dim, -1);
    int n_cols = 0;
    std::vector<std::vector<std::pair<int, double>>> rows;
    rows.reserve(general.size());
    for (int k : general) {
        std::vector<std::pair<int, double>> row;
        for (const auto& e : constraints[k].f.entries) {
            const int root = find(entry_id(e.i, e.j));
            if (comp_col[root] < 0) comp_col[root] = n_cols++;
            const double w = (e.i == e.j) ? e.v : 2.0 * e.v;  // <F,X> weight
            bool merged = false;
            for (auto& [c, v] : row) {
                if (c == comp_col[root]) {
                    v += w;
                    merged = true;
                    break;
                }
            }
            if (!merged) row.push_back({comp_col[root], w});
        }
        rows.push_back(std::move(row));
    }

    // Dense elimination with partial pivoting over the augmented system.
    const int R = static_cast<int>(rows.size());
    std::vector<double> dense(static_cast<std::size_t>(R) * (n_cols + 1), 0.0);
    for (int r = 0; r < R; ++r) {
        for (const auto& [c, v] : rows[r]) {
            dense[static_cast<std::size_t>(r) * (n_cols + 1) + c] = v;
        }
        dense[static_cast<std::size_t>(r) * (n_cols + 1) + n_cols] =
            constraints[general[r]].rhs;
    }
    std::vector<char> used(R, 0);
    for (int col = 0; col < n_cols; ++col) {
        int pivot = -1;
        double best = 1e-10;
        for (int r = 0; r < R; ++r) {
            if (used[r]) continue;
            const double v =
                std::abs(dense[static_cast<std::size_t>(r) * (n_cols + 1) + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (pivot < 0) continue;
        used[pivot] = 1;
        selected.push_back(general[pivot]);
        const double pv =
            dense[static_cast<std::size_t>(pivot) * (n_cols + 1) + col];
        for (int r = 0; r < R; ++r) {
            if (r == pivot || used[r]) continue;
            const double f =
                dense[static_cast<std::size_t>(r) * (n_cols + 1) + col] / pv;
            if (f == 0.0) continue;
            for (int c = col; c <= n_cols; ++c) {
                dense[static_cast<std::size_t>(r) * (n_cols + 1) + c] -=
                    f * dense[static_cast<std::size_t>(pivot) * (n_cols + 1) + c];
            }
        }
    }
    // Left-over rows must have reduced to 0 = 0, otherwise the constraint
    // generation is inconsistent.
    for (int r = 0; r < R; ++r) {
        if (used[r]) continue;
        double maxc = 0.0;
        for (int c = 0; c <= n_cols; ++c) {
            maxc = std::max(
                maxc, std::abs(dense[static_cast<std::size_t>(r) * (n_cols + 1) + c]));
        }
        if (maxc > 1e-8) {
            throw std::runtime_error("sdp: inconsistent constraint system");
        }
    }
    std::sort(selected.begin(), selected.end());
    return selected;
}

}  // namespace

SdpSolution solve_sdp(int dim, const SparseSym& objective,
                      const std::vector<Constraint>& constraints,
                      const SdpOptions& opts) {
    const int n = dim;

    // Minimize <Cmin, X> with Cmin = -C.
    Mat cmin(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& e : objective.entries) {
        cmin[static_cast<std::size_t>(e.i) * n + e.j] -= e.v;
        if (e.i != e.j) cmin[static_cast<std::size_t>(e.j) * n + e.i] -= e.v;
    }

    // Work on an independent subset; the dropped constraints are implied.
    const std::vector<int> keep = presolve_select(n, constraints);
    const int m = static_cast<int>(keep.size());

    SparseOps ops;
    ops.full.resize(m);
    std::vector<double> b(m);
    for (int t = 0; t < m; ++t) {
        const auto& c = constraints[keep[t]];
        b[t] = c.rhs;
        for (const auto& e : c.f.entries) {
            ops.full[t].push_back({e.i, e.j, e.v});
            if (e.i != e.j) ops.full[t].push_back({e.j, e.i, e.v});
        }
    }

    double bmax = 1.0, cmax = 1.0;
    for (double v : b) bmax = std::max(bmax, std::abs(v));
    for (double v : cmin) cmax = std::max(cmax, std::abs(v));

    Mat x(static_cast<std::size_t>(n) * n, 0.0);
    Mat s(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> y(m, 0.0);
    const double eta = std::max({10.0, std::sqrt(static_cast<double>(n)),
                                 bmax, cmax});
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i) * n + i] = eta;
        s[static_cast<std::size_t>(i) * n + i] = eta;
    }

    auto sym_inner = [&](const Mat& a, const Mat& bm) {
        const std::size_t nn = static_cast<std::size_t>(n) * n;
        double acc = 0.0;
        for (std::size_t i = 0; i < nn; ++i) acc += a[i] * bm[i];
        return acc;
    };

    Mat rd(static_cast<std::size_t>(n) * n), schur, schur_copy;
    std::vector<double> rp(m), rhs(m), dy(m), dy_aff(m);
    Mat sinv, ls, lx, dx(static_cast<std::size_t>(n) * n),
        ds(static_cast<std::size_t>(n) * n), dx_aff(static_cast<std::size_t>(n) * n),
        ds_aff(static_cast<std::size_t>(n) * n), work(static_cast<std::size_t>(n) * n),
        work2(static_cast<std::size_t>(n) * n);
    std::vector<bool> skipped;

    SdpSolution out;
    out.dim = n;

    Mat best_x;
    std::vector<double> best_y;
    double best_score = 1e300;
    int best_iter = 0;
    bool breakdown = false;

    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        // residuals
        double rp_inf = 0.0;
        for (int k = 0; k < m; ++k) {
            rp[k] = b[k] - ops.trace_with(k, x, n);
            rp_inf = std::max(rp_inf, std::abs(rp[k]));
        }
        rd = cmin;
        for (int k = 0; k < m; ++k) {
            for (const auto& e : ops.full[k]) {
                rd[static_cast<std::size_t>(e.i) * n + e.j] -= y[k] * e.v;
            }
        }
        double rd_inf = 0.0;
        {
            const std::size_t nn = static_cast<std::size_t>(n) * n;
            for (std::size_t i = 0; i < nn; ++i) {
                rd[i] -= s[i];
                rd_inf = std::max(rd_inf, std::abs(rd[i]));
            }
        }

        const double mu = sym_inner(x, s) / n;
        const double pobj = sym_inner(cmin, x);
        double dobj = 0.0;
        for (int k = 0; k < m; ++k) dobj += b[k] * y[k];
        const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

        if (opts.verbose) {
            std::fprintf(stderr, "it %3d  mu %.3e  rp %.3e  rd %.3e  gap %.3e\n",
                         iter, mu, rp_inf, rd_inf, gap);
        }
        const double score = std::max({gap, rp_inf / (1.0 + bmax),
                                       rd_inf / (1.0 + cmax)});
        if (score < best_score) {
            best_score = score;
            best_x = x;
            best_y = y;
            best_iter = iter;
        }
        if (score < opts.tol) break;
        // The Schur system degenerates once the optimum is pinned down;
        // pushing further only corrupts the iterate.
        if (iter > best_iter + 8) break;

        // factor S and X
        ls = s;
        if (!cholesky(n, ls)) {
            breakdown = true;
            break;
        }
        lx = x;
        if (!cholesky(n, lx)) {
            breakdown = true;
            break;
        }
        sinv = spd_inverse(n, ls);

        // Schur matrix B_kl = tr(A_k X A_l S^-1)
        schur.assign(static_cast<std::size_t>(m) * m, 0.0);
        // Precompute per-constraint row gathers are cheap because nnz is small.
        for (int k = 0; k < m; ++k) {
            for (int l = k; l < m; ++l) {
                double acc = 0.0;
                for (const auto& ek : ops.full[k]) {
                    for (const auto& el : ops.full[l]) {
                        acc += ek.v * el.v *
                               x[static_cast<std::size_t>(ek.j) * n + el.i] *
                               sinv[static_cast<std::size_t>(el.j) * n + ek.i];
                    }
                }
                schur[static_cast<std::size_t>(k) * m + l] = acc;
                schur[static_cast<std::size_t>(l) * m + k] = acc;
            }
        }
        schur_copy = schur;
        cholesky_pivot_skip(m, schur, skipped);

        // helper: given sigma*mu and extra term E (may be null), solve for
        // (dy, ds, dx): B dy = rp - sigmu*A(Sinv) + A(X) + A(X Rd Sinv) + A(E Sinv)
        auto solve_direction = [&](double sigmu, const Mat* extra,
                                   std::vector<double>& dy_out, Mat& ds_out,
                                   Mat& dx_out) {
            // work = X Rd + extra, then work2 = work * Sinv
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    const double* xi = &x[static_cast<std::size_t>(i) * n];
                    for (int t = 0; t < n; ++t) {
                        acc += xi[t] * rd[static_cast<std::size_t>(t) * n + j];
                    }
                    work[static_cast<std::size_t>(i) * n + j] = acc;
                }
            }
            if (extra != nullptr) {
                const std::size_t nn = static_cast<std::size_t>(n) * n;
                for (std::size_t i = 0; i < nn; ++i) work[i] += (*extra)[i];
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    const double* wi = &work[static_cast<std::size_t>(i) * n];
                    for (int t = 0; t < n; ++t) {
                        acc += wi[t] * sinv[static_cast<std::size_t>(t) * n + j];
                    }
                    work2[static_cast<std::size_t>(i) * n + j] = acc;
                }
            }
            for (int k = 0; k < m; ++k) {
                rhs[k] = rp[k] - sigmu * ops.trace_with(k, sinv, n) +
                         ops.trace_with(k, x, n) + ops.trace_with(k, work2, n);
            }
            dy_out = rhs;
            solve_chol(m, schur, skipped, dy_out);
            // Two rounds of iterative refinement keep the Newton step honest
            // once the Schur matrix turns ill-conditioned near the optimum.
            std::vector<double> resid(m), corr(m);
            for (int round = 0; round < 2; ++round) {
                for (int k = 0; k < m; ++k) {
                    resid[k] = rhs[k] -
                               kern::active().ddot(
                                   m, &schur_copy[static_cast<std::size_t>(k) * m],
                                   dy_out.data());
                }
                corr = resid;
                solve_chol(m, schur, skipped, corr);
                for (int k = 0; k < m; ++k) dy_out[k] += corr[k];
            }
            // ds = Rd - A*(dy)
            ds_out = rd;
            for (int k = 0; k < m; ++k) {
                for (const auto& e : ops.full[k]) {
                    ds_out[static_cast<std::size_t>(e.i) * n + e.j] -=
                        dy_out[k] * e.v;
                }
            }
            // dx = sigmu*Sinv - X - (X ds + extra) Sinv ; symmetrize
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    const double* xi = &x[static_cast<std::size_t>(i) * n];
                    for (int t = 0; t < n; ++t) {
                        acc += xi[t] * ds_out[static_cast<std::size_t>(t) * n + j];
                    }
                    work[static_cast<std::size_t>(i) * n + j] = acc;
                }
            }
            if (extra != nullptr) {
                const std::size_t nn = static_cast<std::size_t>(n) * n;
                for (std::size_t i = 0; i < nn; ++i) work[i] += (*extra)[i];
            }
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    const double* wi = &work[static_cast<std::size_t>(i) * n];
                    for (int t = 0; t < n; ++t) {
                        acc += wi[t] * sinv[static_cast<std::size_t>(t) * n + j];
                    }
                    dx_out[static_cast<std::size_t>(i) * n + j] =
                        sigmu * sinv[static_cast<std::size_t>(i) * n + j] -
                        x[static_cast<std::size_t>(i) * n + j] - acc;
                }
            }
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double v =
                        0.5 * (dx_out[static_cast<std::size_t>(i) * n + j] +
                               dx_out[static_cast<std::size_t>(j) * n + i]);
                    dx_out[static_cast<std::size_t>(i) * n + j] = v;
                    dx_out[static_cast<std::size_t>(j) * n + i] = v;
                }
            }
        };

        // predictor
        solve_direction(0.0, nullptr, dy_aff, ds_aff, dx_aff);
        const double ap_aff = std::min(1.0, 0.99 * max_step(n, lx, dx_aff));
        const double ad_aff = std::min(1.0, 0.99 * max_step(n, ls, ds_aff));
        // mu_aff
        double mu_aff = 0.0;
        {
            const std::size_t nn = static_cast<std::size_t>(n) * n;
            Mat xa(nn), sa(nn);
            for (std::size_t i = 0; i < nn; ++i) {
                xa[i] = x[i] + ap_aff * dx_aff[i];
                sa[i] = s[i] + ad_aff * ds_aff[i];
            }
            mu_aff = sym_inner(xa, sa) / n;
        }
        double sigma = std::pow(mu_aff / mu, 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0);

        // corrector with the Mehrotra cross term dXaff * dSaff
        Mat cross(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double acc = 0.0;
                const double* di = &dx_aff[static_cast<std::size_t>(i) * n];
                for (int t = 0; t < n; ++t) {
                    acc += di[t] * ds_aff[static_cast<std::size_t>(t) * n + j];
                }
                cross[static_cast<std::size_t>(i) * n + j] = acc;
            }
        }
        solve_direction(sigma * mu, &cross, dy, ds, dx);

        double ap = std::min(1.0, 0.98 * max_step(n, lx, dx));
        double ad = std::min(1.0, 0.98 * max_step(n, ls, ds));

        {
            const std::size_t nn = static_cast<std::size_t>(n) * n;
            for (std::size_t i = 0; i < nn; ++i) {
                x[i] += ap * dx[i];
                s[i] += ad * ds[i];
            }
            for (int k = 0; k < m; ++k) y[k] += ad * dy[k];
        }
    }

    if (breakdown && best_x.empty()) {
        throw std::runtime_error("sdp: iterate lost definiteness before any usable point");
    }
    if (best_x.empty() || best_score > std::max(opts.tol * 100.0, 1e-7)) {
        throw std::runtime_error(
            "sdp: no convergence (best score " + std::to_string(best_score) +
            " after " + std::to_string(iter) + " iterations)");
    }
    x = best_x;
    y = best_y;

    out.iterations = iter;
    out.matrix = x;
    // Residual over the full constraint list, dropped rows included.
    double pr = 0.0;
    for (const auto& c : constraints) {
        double acc = -c.rhs;
        for (const auto& e : c.f.entries) {
            const double v = x[static_cast<std::size_t>(e.i) * n + e.j];
            acc += (e.i == e.j) ? e.v * v : 2.0 * e.v * v;
        }
        pr = std::max(pr, std::abs(acc));
    }
    out.primal_residual = pr;
    out.optimum = -sym_inner(cmin, x);
    double dobj = 0.0;
    for (int k = 0; k < m; ++k) dobj += b[k] * y[k];
    out.duality_gap = std::abs(-sym_inner(cmin, x) + dobj);  // |max_p - max_d|
    out.min_eigenvalue = qcore::min_eig_real(n, x.data());
    return out;
}

}  // namespace lgtc::momentsdp
