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

#ifndef LGTC_MEASURE_HPP
#define LGTC_MEASURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lgtc/complex_matrix.hpp"

namespace lgtc::measure {

using qcore::CMat;
using qcore::cplx;

/// Raised when a quantity that must be real carries too much imaginary part.
class NumericalIntegrityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DensityMatrix {
    CMat rho;

    int dim() const { return rho.dim(); }

    /// Hermitian to 1e-12, unit trace to 1e-12, min eigenvalue >= -1e-10.
    void validate() const;

    static DensityMatrix pure_basis_state(int n, int index);
    static DensityMatrix pure_state(const std::vector<cplx>& amplitudes);
    static DensityMatrix maximally_mixed(int n);
};

/// M orthogonal projection blocks partitioning an N-dimensional space, each
/// labeled +1 or -1. Projectors are diagonal in the fixed basis unless a
/// basis unitary has been attached, in which case they are W D_l W^dagger.
class MeasurementScheme {
  public:
    /// blocks must partition {0..N-1} into M in [2, N] nonempty cells and q
    /// must contain both signs; anything else throws std::invalid_argument.
    static MeasurementScheme make(int n, std::vector<std::vector<int>> blocks,
                                  std::vector<int> q);

    int dim() const { return n_; }
    int outcomes() const { return m_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& q() const { return q_; }
    int block_of(int basis_index) const { return block_of_[basis_index]; }
    double q_of_index(int basis_index) const {
        return static_cast<double>(q_[block_of_[basis_index]]);
    }

    bool diagonal() const { return !basis_.has_value(); }
    const CMat& basis() const { return *basis_; }

    CMat projector(int l) const;

    /// Same partition and labels with projectors conjugated: W D_l W^dagger.
    MeasurementScheme with_basis(const CMat& w) const;

    std::string to_json() const;
    static MeasurementScheme from_json(const std::string& text);

  private:
    MeasurementScheme() = default;
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> q_;
    std::vector<int> block_of_;
    std::optional<CMat> basis_;
};

/// Von Neumann scheme on n levels: one projector per level, q = +1 everywhere
/// except the lowest-weight state (last index), which carries -1.
MeasurementScheme von_neumann_scheme(int n);

struct UpdateResult {
    double prob = 0.0;
    std::optional<DensityMatrix> post;  // empty when prob < 1e-14
};

/// prob = Tr(P_l rho); post = P_l rho P_l / prob.
UpdateResult update_state(const MeasurementScheme& scheme,
                          const DensityMatrix& rho, int outcome_index);

/// Two-time correlator: the first measurement happens after evolving rho0 by
/// u_a0, the second after a further u_ba. Imaginary residue above 1e-8 throws
/// NumericalIntegrityError; the result is clamped to [-1, 1].
double correlator(const DensityMatrix& rho0, const CMat& u_a0, const CMat& u_ba,
                  const MeasurementScheme& scheme);

struct LgiResult {
    double c21 = 0.0;
    double c32 = 0.0;
    double c31 = 0.0;
    double k3 = 0.0;
};

/// K3 = C21 + C32 - C31 with measurements at three times; u_10 evolves from
/// the initial state to the first measurement.
LgiResult lgi_k3(const DensityMatrix& rho0, const CMat& u_10, const CMat& u_21,
                 const CMat& u_32, const MeasurementScheme& scheme);

struct SequenceStep {
    CMat u;  // propagator applied before the measurement
    MeasurementScheme scheme;
    int outcome_index;
};

/// Joint probability of an outcome sequence under propagate-then-update.
double sequence_probability(const DensityMatrix& rho0,
                            const std::vector<SequenceStep>& steps);

}  // namespace lgtc::measure

#endif  // LGTC_MEASURE_HPP
