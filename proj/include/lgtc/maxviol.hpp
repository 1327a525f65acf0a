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

#ifndef LGTC_MAXVIOL_HPP
#define LGTC_MAXVIOL_HPP

#include <cstdint>
#include <vector>

#include "lgtc/measure.hpp"

namespace lgtc::maxviol {

using measure::DensityMatrix;
using measure::MeasurementScheme;
using qcore::CMat;

/// N^2 real angles parametrizing U(N) as U = exp(-i A(p)) with A Hermitian:
/// the first N entries fill the diagonal, the rest come in (re, im) pairs for
/// the strict upper triangle in row-major order.
struct UnitaryParams {
    int dim = 0;
    std::vector<double> angles;

    static int count(int dim) { return dim * dim; }
};

CMat params_to_unitary(const UnitaryParams& p);

struct BestState {
    DensityMatrix rho0;
    double k3 = 0.0;
};

/// Exact inner step: K3 is linear in rho0, so the optimal initial state is
/// the top eigenvector of the Hermitian kernel G with K3 = Tr(rho0 G). The
/// first-measurement unitary is absorbed into rho0.
BestState best_initial_state(const CMat& u21, const CMat& u32,
                             const MeasurementScheme& scheme);

struct OptimizeOptions {
    int restarts = 0;  // <= 0: defaults to 50 for N <= 5, 200 otherwise
    std::uint64_t seed = 1;
    int threads = 0;  // <= 0: hardware concurrency
    int max_iters = 10000;
    double grad_tol = 1e-8;
    double fd_step = 1e-6;
    // Sign variant of the three-term inequality: 0 keeps C21 + C32 - C31,
    // 1..3 flip the meter at that measurement time (all four share the
    // macrorealist bound 1 and the moment-SDP bound).
    int variant = 0;
};

struct OptimizationResult {
    double k3_max = 0.0;
    CMat u21;
    CMat u32;
    DensityMatrix rho0;
    int restarts_used = 0;
    bool converged = false;
    double wall_time_s = 0.0;
};

/// Multi-start ascent over (U21, U32) with the exact rho0 eigenstep inside.
/// Deterministic given (seed, restarts): restart i draws from seed + i and
/// ties across restarts break on the parameter hash.
OptimizationResult maximize_k3(int n, int m,
                               const std::vector<std::vector<int>>& blocks,
                               const std::vector<int>& q,
                               const OptimizeOptions& opts);

/// Canonical blocks for M projectors on N levels: the -1 outcome marks the
/// lowest-weight state alone; the remaining N-1 levels split as evenly as
/// possible over the M-1 positive blocks.
std::vector<std::vector<int>> default_blocks(int n, int m);

/// Canonical labels: +1 everywhere except the last block.
std::vector<int> default_labels(int m);

/// All +-1 labelings with both signs present, up to a global flip (the first
/// label is pinned to +1): 2^(M-1) - 1 patterns.
std::vector<std::vector<int>> enumerate_q_patterns(int m);

struct QSweepEntry {
    std::vector<int> q;
    OptimizationResult result;
};

std::vector<QSweepEntry> maximize_k3_over_q(int n, int m,
                                            const std::vector<std::vector<int>>& blocks,
                                            const OptimizeOptions& opts);

struct TableEntry {
    int m = 0;
    int n = 0;
    std::vector<std::vector<int>> blocks;
    int variant = 0;
    OptimizationResult result;
};

/// Per (M, N) cell: a scouting pass ranks candidate block profiles (the -1
/// block takes rank 1..N-M+1, positive blocks split evenly) crossed with the
/// four sign variants, then the winner gets the full restart budget.
std::vector<TableEntry> table1_sweep(const std::vector<std::pair<int, int>>& mn_pairs,
                                     const OptimizeOptions& opts);

/// Blocks with the -1 cell carrying `minus_rank` levels (the lowest ones)
/// and the rest split as evenly as possible.
std::vector<std::vector<int>> blocks_with_minus_rank(int n, int m, int minus_rank);

}  // namespace lgtc::maxviol

#endif  // LGTC_MAXVIOL_HPP
