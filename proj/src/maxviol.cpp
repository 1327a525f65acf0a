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

#include "lgtc/maxviol.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "lgtc/eig.hpp"
#include "lgtc/kernels.hpp"
#include "lgtc/random.hpp"
#include "lgtc/spin.hpp"

namespace lgtc::maxviol {

namespace {

using qcore::cplx;
using qcore::eigh_inplace;

// Allocation-free evaluator for K3(p) = lambda_max(G) with
//   G = T(V) + V^dagger T(W) V - T(W V),
//   T(U) = sum_l q_l P_l (U^dagger Qhat U) P_l,
// all projectors diagonal. Buffers are reused across the whole restart.
class Objective {
  public:
    Objective(int n, const MeasurementScheme& scheme, int variant = 0)
        : n_(n), qidx_(n), blk_(n) {
        const double f1 = variant == 1 ? -1.0 : 1.0;
        const double f2 = variant == 2 ? -1.0 : 1.0;
        const double f3 = variant == 3 ? -1.0 : 1.0;
        s12_ = f1 * f2;
        s23_ = f2 * f3;
        s13_ = f1 * f3;
        for (int a = 0; a < n; ++a) {
            blk_[a] = scheme.block_of(a);
            qidx_[a] = scheme.q_of_index(a);
        }
        const std::size_t sz = static_cast<std::size_t>(n) * n;
        for (auto* buf : {&herm_, &v_, &w_, &rs_, &x_, &t_, &t2_, &t3_, &g_,
                          &wv_, &tmp_, &evec_, &vb_, &wb_, &tvb_, &twb_}) {
            buf->resize(sz);
        }
        eval_.resize(n);
    }

    int param_count() const { return 2 * n_ * n_; }

    // K3 for the packed parameter vector [p_V | p_W].
    double value(const double* p) { return eval_impl(p, nullptr); }

    // Also extracts the optimal pure state.
    double value_with_state(const double* p, std::vector<cplx>& psi) {
        return eval_impl(p, &psi);
    }

    // Finite-difference helpers: freeze one half of the parameter vector so
    // its exponential and T-kernel are not rebuilt 2 N^2 times per gradient.
    void set_base(const double* p) {
        build_unitary(p, vb_.data());
        build_unitary(p + n_ * n_, wb_.data());
        t_of(vb_.data(), tvb_.data());
        t_of(wb_.data(), twb_.data());
    }

    double value_v_perturbed(const double* p) {
        build_unitary(p, v_.data());
        t_of(v_.data(), t2_.data());
        return assemble(v_.data(), t2_.data(), wb_.data(), twb_.data(),
                        nullptr);
    }

    double value_w_perturbed(const double* p) {
        build_unitary(p + n_ * n_, w_.data());
        t_of(w_.data(), t2_.data());
        return assemble(vb_.data(), tvb_.data(), w_.data(), t2_.data(),
                        nullptr);
    }

    void unitary(const double* p_half, cplx* out) {
        build_unitary(p_half, out);
    }

  private:
    void params_to_hermitian(const double* p, cplx* a) {
        const int n = n_;
        for (int i = 0; i < n; ++i) {
            a[static_cast<std::size_t>(i) * n + i] = cplx(p[i], 0.0);
        }
        int k = n;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const cplx v(p[k], p[k + 1]);
                k += 2;
                a[static_cast<std::size_t>(i) * n + j] = v;
                a[static_cast<std::size_t>(j) * n + i] = std::conj(v);
            }
        }
    }

    // out = exp(-i A(p_half))
    void build_unitary(const double* p_half, cplx* out) {
        const int n = n_;
        params_to_hermitian(p_half, herm_.data());
        eigh_inplace(n, herm_.data(), eval_.data(), evec_.data());
        // evec_ rows r are conj(eigenvector_r); U = sum_r e^{-i w_r} v_r v_r^dag
        // = E^dagger diag(e^{-i w}) E with E = evec_.
        for (int r = 0; r < n; ++r) {
            const double arg = -eval_[r];
            const cplx phase(std::cos(arg), std::sin(arg));
            cplx* row = evec_.data() + static_cast<std::size_t>(r) * n;
            cplx* dst = tmp_.data() + static_cast<std::size_t>(r) * n;
            for (int j = 0; j < n; ++j) dst[j] = phase * row[j];
        }
        kern::active().zgemm_cn(n, n, n, evec_.data(), n, tmp_.data(), n, out,
                                n);
    }

    // t = T(U) for U in u_, using x_ and rs_ as scratch.
    void t_of(const cplx* u, cplx* t) {
        const int n = n_;
        for (int a = 0; a < n; ++a) {
            const cplx* src = u + static_cast<std::size_t>(a) * n;
            cplx* dst = rs_.data() + static_cast<std::size_t>(a) * n;
            const double qa = qidx_[a];
            for (int j = 0; j < n; ++j) dst[j] = qa * src[j];
        }
        kern::active().zgemm_cn(n, n, n, u, n, rs_.data(), n, x_.data(), n);
        for (int a = 0; a < n; ++a) {
            cplx* dst = t + static_cast<std::size_t>(a) * n;
            const cplx* src = x_.data() + static_cast<std::size_t>(a) * n;
            for (int b = 0; b < n; ++b) {
                dst[b] = (blk_[a] == blk_[b]) ? qidx_[a] * src[b]
                                              : cplx(0.0, 0.0);
            }
        }
    }

    double assemble(const cplx* v, const cplx* tv, const cplx* w,
                    const cplx* tw, std::vector<cplx>* psi) {
        const int n = n_;
        const auto& k = kern::active();

        // G = s12 T(V) + s23 V^dag T(W) V - s13 T(WV)
        for (int i = 0; i < n * n; ++i) g_[i] = s12_ * tv[i];
        k.zgemm_nn(n, n, n, tw, n, v, n, tmp_.data(), n);
        k.zgemm_cn(n, n, n, v, n, tmp_.data(), n, x_.data(), n);
        for (int i = 0; i < n * n; ++i) g_[i] += s23_ * x_[i];
        k.zgemm_nn(n, n, n, w, n, v, n, wv_.data(), n);
        t_of(wv_.data(), t_.data());
        for (int i = 0; i < n * n; ++i) g_[i] -= s13_ * t_[i];

        eigh_inplace(n, g_.data(), eval_.data(), psi ? evec_.data() : nullptr);
        int best = 0;
        for (int r = 1; r < n; ++r) {
            if (eval_[r] > eval_[best]) best = r;
        }
        if (psi != nullptr) {
            psi->resize(n);
            const cplx* row = evec_.data() + static_cast<std::size_t>(best) * n;
            for (int j = 0; j < n; ++j) (*psi)[j] = std::conj(row[j]);
        }
        return eval_[best];
    }

    double eval_impl(const double* p, std::vector<cplx>* psi) {
        build_unitary(p, v_.data());
        build_unitary(p + n_ * n_, w_.data());
        t_of(v_.data(), t2_.data());
        t_of(w_.data(), t3_.data());
        return assemble(v_.data(), t2_.data(), w_.data(), t3_.data(), psi);
    }

    int n_;
    double s12_ = 1.0, s23_ = 1.0, s13_ = 1.0;
    std::vector<double> qidx_;
    std::vector<int> blk_;
    std::vector<cplx> herm_, v_, w_, rs_, x_, t_, t2_, t3_, g_, wv_, tmp_,
        evec_, vb_, wb_, tvb_, twb_;
    std::vector<double> eval_;
};

std::uint64_t fnv1a(const double* data, int count) {
    std::uint64_t h = 1469598103934665603ULL;
    const unsigned char* bytes = reinterpret_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < sizeof(double) * static_cast<std::size_t>(count);
         ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

struct RestartOutcome {
    double k3 = -1e300;
    std::vector<double> p;
    bool converged = false;
    std::uint64_t hash = 0;
};

RestartOutcome run_restart(Objective& obj, std::uint64_t seed,
                           const OptimizeOptions& opts) {
    const int np = obj.param_count();
    Rng rng(seed);
    std::vector<double> p(np), trial(np), grad(np);
    for (double& v : p) v = rng.uniform(-2.0, 2.0);

    double f = obj.value(p.data());
    double alpha = 0.25;
    const double h = opts.fd_step;
    bool converged = false;
    int stall = 0;
    double window_f = f;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        // Progress window: gradient ascent zigzagging below the tolerance
        // scale is not worth the evaluations.
        if (iter % 128 == 0) {
            if (iter > 0 && f - window_f < 1e-8) {
                converged = true;
                break;
            }
            window_f = f;
        }
        // Central differences: the 1e-8 gradient target is unreachable with
        // forward steps at h = 1e-6. The untouched parameter half keeps its
        // cached exponential during the sweep.
        double gn2 = 0.0;
        std::memcpy(trial.data(), p.data(), sizeof(double) * np);
        obj.set_base(p.data());
        const int half = np / 2;
        for (int i = 0; i < np; ++i) {
            const double pi = p[i];
            trial[i] = pi + h;
            const double fp = (i < half) ? obj.value_v_perturbed(trial.data())
                                         : obj.value_w_perturbed(trial.data());
            trial[i] = pi - h;
            const double fm = (i < half) ? obj.value_v_perturbed(trial.data())
                                         : obj.value_w_perturbed(trial.data());
            trial[i] = pi;
            grad[i] = (fp - fm) / (2.0 * h);
            gn2 += grad[i] * grad[i];
        }
        if (std::sqrt(gn2) < opts.grad_tol) {
            converged = true;
            break;
        }

        // Backtracking line search along the gradient (Armijo).
        double step = std::min(alpha * 2.0, 1e3);
        bool accepted = false;
        while (step > 1e-14) {
            for (int i = 0; i < np; ++i) trial[i] = p[i] + step * grad[i];
            const double ft = obj.value(trial.data());
            if (ft >= f + 1e-4 * step * gn2) {
                const double gain = ft - f;
                p.swap(trial);
                f = ft;
                alpha = step;
                accepted = true;
                if (gain < 1e-10 * (1.0 + std::abs(f))) {
                    ++stall;
                } else {
                    stall = 0;
                }
                break;
            }
            step *= 0.5;
        }
        if (!accepted || stall >= 8) {
            // Line search exhausted at the finite-difference noise floor.
            converged = true;
            break;
        }
    }

    RestartOutcome out;
    out.k3 = f;
    out.p = std::move(p);
    out.converged = converged;
    out.hash = fnv1a(out.p.data(), np);
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

CMat params_to_unitary(const UnitaryParams& p) {
    const int n = p.dim;
    if (static_cast<int>(p.angles.size()) != UnitaryParams::count(n)) {
        throw std::invalid_argument("params_to_unitary: wrong parameter count");
    }
    CMat a(n);
    int k = n;
    for (int i = 0; i < n; ++i) {
        a(i, i) = cplx(p.angles[i], 0.0);
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = cplx(p.angles[k], p.angles[k + 1]);
            a(j, i) = std::conj(a(i, j));
            k += 2;
        }
    }
    return qcore::propagator(a, 1.0);
}

BestState best_initial_state(const CMat& u21, const CMat& u32,
                             const MeasurementScheme& scheme) {
    const int n = scheme.dim();
    if (u21.dim() != n || u32.dim() != n) {
        throw std::invalid_argument("best_initial_state: dimension mismatch");
    }

    // Qhat = sum_m q_m P_m; T(U) = sum_l q_l P_l (U^dag Qhat U) P_l.
    CMat qhat(n);
    for (int l = 0; l < scheme.outcomes(); ++l) {
        CMat p = scheme.projector(l);
        p *= cplx(static_cast<double>(scheme.q()[l]), 0.0);
        qhat += p;
    }
    auto t_of = [&](const CMat& u) {
        const CMat x = u.adjoint_times(qhat * u);
        CMat t(n);
        for (int l = 0; l < scheme.outcomes(); ++l) {
            const CMat p = scheme.projector(l);
            CMat masked = (p * x) * p;
            masked *= cplx(static_cast<double>(scheme.q()[l]), 0.0);
            t += masked;
        }
        return t;
    };

    CMat g = t_of(u21);
    g += u21.adjoint_times(t_of(u32) * u21);
    g -= t_of(u32 * u21);

    auto es = qcore::eigh(g);
    const int top = n - 1;
    std::vector<cplx> psi(n);
    for (int i = 0; i < n; ++i) psi[i] = es.vectors(i, top);

    BestState out{DensityMatrix::pure_state(psi), es.eigenvalues[top]};
    return out;
}

std::vector<std::vector<int>> default_blocks(int n, int m) {
    if (m < 2 || m > n) {
        throw std::invalid_argument("default_blocks: need 2 <= M <= N");
    }
    std::vector<std::vector<int>> blocks(m);
    blocks[m - 1] = {n - 1};  // lowest-weight state alone carries the -1
    const int rest = n - 1;
    const int positive = m - 1;
    int idx = 0;
    for (int l = 0; l < positive; ++l) {
        int size = rest / positive + (l < rest % positive ? 1 : 0);
        for (int t = 0; t < size; ++t) blocks[l].push_back(idx++);
    }
    return blocks;
}

std::vector<int> default_labels(int m) {
    std::vector<int> q(m, 1);
    q[m - 1] = -1;
    return q;
}

std::vector<std::vector<int>> enumerate_q_patterns(int m) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask < (1u << (m - 1)); ++mask) {
        std::vector<int> q(m, 1);
        for (int l = 1; l < m; ++l) {
            if (mask & (1u << (l - 1))) q[l] = -1;
        }
        out.push_back(std::move(q));
    }
    return out;
}

OptimizationResult maximize_k3(int n, int m,
                               const std::vector<std::vector<int>>& blocks,
                               const std::vector<int>& q,
                               const OptimizeOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto scheme = MeasurementScheme::make(n, blocks, q);
    (void)m;
    if (scheme.outcomes() != m) {
        throw std::invalid_argument("maximize_k3: M does not match blocks");
    }

    int restarts = opts.restarts;
    if (restarts <= 0) restarts = (n <= 5) ? 50 : 200;

    const int threads = std::min(resolve_threads(opts.threads), restarts);
    std::vector<RestartOutcome> outcomes(restarts);

    auto worker = [&](int tid) {
        Objective obj(n, scheme, opts.variant);
        for (int r = tid; r < restarts; r += threads) {
            outcomes[r] = run_restart(obj, opts.seed + r, opts);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction: larger K3 wins, exact ties go to the smaller
    // parameter hash.
    int best = 0;
    for (int r = 1; r < restarts; ++r) {
        if (outcomes[r].k3 > outcomes[best].k3 ||
            (outcomes[r].k3 == outcomes[best].k3 &&
             outcomes[r].hash < outcomes[best].hash)) {
            best = r;
        }
    }

    Objective obj(n, scheme, opts.variant);
    std::vector<cplx> psi;
    const double k3 = obj.value_with_state(outcomes[best].p.data(), psi);

    OptimizationResult res;
    res.k3_max = k3;
    res.u21 = CMat(n);
    res.u32 = CMat(n);
    obj.unitary(outcomes[best].p.data(), res.u21.data());
    obj.unitary(outcomes[best].p.data() + n * n, res.u32.data());
    res.rho0 = DensityMatrix::pure_state(psi);
    res.restarts_used = restarts;
    res.converged = outcomes[best].converged;
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return res;
}

std::vector<QSweepEntry> maximize_k3_over_q(int n, int m,
                                            const std::vector<std::vector<int>>& blocks,
                                            const OptimizeOptions& opts) {
    std::vector<QSweepEntry> out;
    for (const auto& q : enumerate_q_patterns(m)) {
        out.push_back({q, maximize_k3(n, m, blocks, q, opts)});
    }
    return out;
}

std::vector<std::vector<int>> blocks_with_minus_rank(int n, int m, int minus_rank) {
    if (m < 2 || m > n || minus_rank < 1 || minus_rank > n - m + 1) {
        throw std::invalid_argument("blocks_with_minus_rank: invalid shape");
    }
    std::vector<std::vector<int>> blocks(m);
    for (int t = 0; t < minus_rank; ++t) blocks[m - 1].push_back(n - minus_rank + t);
    const int rest = n - minus_rank;
    const int positive = m - 1;
    int idx = 0;
    for (int l = 0; l < positive; ++l) {
        const int size = rest / positive + (l < rest % positive ? 1 : 0);
        for (int t = 0; t < size; ++t) blocks[l].push_back(idx++);
    }
    return blocks;
}

std::vector<TableEntry> table1_sweep(const std::vector<std::pair<int, int>>& mn_pairs,
                                     const OptimizeOptions& opts) {
    std::vector<TableEntry> out;
    for (const auto& [m, n] : mn_pairs) {
        if (n < m) throw std::invalid_argument("table1_sweep: need N >= M");

        int budget = opts.restarts;
        if (budget <= 0) budget = (n <= 5) ? 50 : 200;

        // Scouting pass over -1-block ranks and the sign variants; the
        // all-negative variant (flip at t2) never competes and is skipped.
        // Scout restarts count against the per-cell budget.
        OptimizeOptions scout = opts;
        scout.restarts = 4;
        scout.max_iters = std::min(opts.max_iters, 600);
        const int variants[3] = {0, 1, 3};
        int best_rank = 1;
        int best_variant = 0;
        double best_val = -1e300;
        int spent = 0;
        for (int rank = 1; rank <= n - m + 1; ++rank) {
            const auto blocks = blocks_with_minus_rank(n, m, rank);
            for (int variant : variants) {
                scout.variant = variant;
                const auto r =
                    maximize_k3(n, m, blocks, default_labels(m), scout);
                spent += scout.restarts;
                if (r.k3_max > best_val + 1e-9) {
                    best_val = r.k3_max;
                    best_rank = rank;
                    best_variant = variant;
                }
            }
        }

        TableEntry e;
        e.m = m;
        e.n = n;
        e.blocks = blocks_with_minus_rank(n, m, best_rank);
        e.variant = best_variant;
        OptimizeOptions full = opts;
        full.restarts = std::max(budget / 4, budget - spent);
        full.variant = best_variant;
        e.result = maximize_k3(n, m, e.blocks, default_labels(m), full);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace lgtc::maxviol
