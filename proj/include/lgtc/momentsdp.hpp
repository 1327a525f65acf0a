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

#ifndef LGTC_MOMENTSDP_HPP
#define LGTC_MOMENTSDP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lgtc::momentsdp {

/// One measurement in a sequence: setting s (three times: 0, 1, 2) and
/// outcome r in {0..M-1}.
struct Letter {
    std::uint8_t s = 0;
    std::uint8_t r = 0;
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Product of projectors, at most two letters in the index, four in entries.
using Word = std::vector<Letter>;

/// Projector-algebra reduction: adjacent same-setting letters merge when the
/// outcomes agree and annihilate otherwise. Returns nullopt for zero.
std::optional<Word> reduce_word(Word w);

/// Canonical representative of {w, reversed(w)} (real moment matrices cannot
/// tell a word from its reverse).
Word canonical_word(const Word& w);

/// Index words: the empty word, all singles and all time-ordered pairs;
/// size 1 + 3M + 3M^2.
std::vector<Word> build_index(int outcomes);

/// Sparse symmetric coefficient map: upper-triangle entries (i <= j) with
/// values F_ij; the full matrix mirrors them. <F, X> counts off-diagonal
/// entries twice.
struct SparseSym {
    struct Entry {
        int i;
        int j;
        double v;
    };
    std::vector<Entry> entries;

    void add(int i, int j, double v);
    double inner(const std::vector<double>& x_dense, int dim) const;
};

struct Constraint {
    SparseSym f;
    double rhs = 0.0;
};

/// Identifications, zeros, completeness contractions and normalization, in
/// that order, deduplicated.
std::vector<Constraint> build_constraints(const std::vector<Word>& index);

/// K3 objective: q-weighted diagonal entries of the time-ordered pair words.
SparseSym k3_objective(const std::vector<Word>& index, const std::vector<int>& q);

struct MomentProblem {
    int outcomes = 0;
    std::vector<Word> index;
    int dim = 0;
    std::vector<Constraint> constraints;
    SparseSym objective;
    std::vector<int> q;
};

MomentProblem build_moment_problem(int outcomes, const std::vector<int>& q);

struct SdpOptions {
    double tol = 5e-10;  // relative duality gap and residual target
    int max_iters = 150;
    bool verbose = false;
};

struct SdpSolution {
    double optimum = 0.0;            // max of <C, X>
    int dim = 0;
    std::vector<double> matrix;      // row-major symmetric PSD
    double duality_gap = 0.0;        // |primal - dual|
    int iterations = 0;
    double primal_residual = 0.0;    // max_k |<A_k, X> - g_k|
    double min_eigenvalue = 0.0;
};

/// Dense primal-dual interior-point solve (Mehrotra predictor-corrector,
/// HKM direction). Throws std::runtime_error when the iteration fails to
/// close the gap within max_iters.
SdpSolution solve(const MomentProblem& problem, const SdpOptions& opts = {});

/// Generic standard-form solve used by the moment problem and the tests:
/// maximize <C, X> subject to <A_k, X> = b_k, X >= 0.
SdpSolution solve_sdp(int dim, const SparseSym& objective,
                      const std::vector<Constraint>& constraints,
                      const SdpOptions& opts);

}  // namespace lgtc::momentsdp

#endif  // LGTC_MOMENTSDP_HPP
