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

#ifndef LGTC_SPIN_HPP
#define LGTC_SPIN_HPP

#include <utility>

#include "lgtc/complex_matrix.hpp"

namespace lgtc::qcore {

/// Spin length j (half-integer), dimension N = 2j+1 and precession frequency.
/// Basis convention throughout: descending magnetic quantum number, so index
/// 0 is |m=+j> and index N-1 is |m=-j>.
struct SpinParams {
    double j = 0.5;
    double omega = 1.0;

    int dim() const;

    /// Throws std::invalid_argument unless j is a positive half-integer.
    void validate() const;
};

/// Angular momentum components Jx and Jz in the z eigenbasis.
std::pair<CMat, CMat> spin_operators(const SpinParams& params);

/// e^{-i H t} via Hermitian eigendecomposition of H.
CMat propagator(const CMat& H, double t);

/// e^{-i H t} from a precomputed eigendecomposition of H (scan-friendly).
CMat propagator_from_eig(const struct EighResult& es, double t);

/// Quarter-turn rotation e^{-i (pi/2) Jx} for the given spin.
CMat rotation_R(const SpinParams& params);

}  // namespace lgtc::qcore

#endif  // LGTC_SPIN_HPP
