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

#include "lgtc/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lgtc/eig.hpp"

namespace lgtc::qcore {

int SpinParams::dim() const {
    return static_cast<int>(std::lround(2.0 * j)) + 1;
}

void SpinParams::validate() const {
    const double twoj = 2.0 * j;
    if (!(j > 0.0) || std::abs(twoj - std::lround(twoj)) > 1e-9) {
        throw std::invalid_argument(
            "SpinParams: j must be a positive half-integer");
    }
}

std::pair<CMat, CMat> spin_operators(const SpinParams& params) {
    params.validate();
    const int n = params.dim();
    const double j = params.j;

    CMat jx(n), jz(n);
    for (int i = 0; i < n; ++i) {
        const double m = j - i;  // descending m
        jz(i, i) = cplx(m, 0.0);
        if (i > 0) {
            // <m+1| J+ |m> with m = j - i
            const double elem = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
            jx(i - 1, i) = cplx(elem, 0.0);
            jx(i, i - 1) = cplx(elem, 0.0);
        }
    }
    return {jx, jz};
}

CMat propagator_from_eig(const EighResult& es, double t) {
    const int n = es.vectors.dim();
    // U = V diag(e^{-i w t}) V^dagger
    CMat phased = es.vectors;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double arg = -es.eigenvalues[k] * t;
            phased(i, k) *= cplx(std::cos(arg), std::sin(arg));
        }
    }
    return phased.times_adjoint(es.vectors);
}

CMat propagator(const CMat& H, double t) {
    const double scale = std::max(1.0, H.max_abs());
    if (!H.is_hermitian(1e-12 * scale)) {
        throw std::invalid_argument("propagator: H must be Hermitian");
    }
    return propagator_from_eig(eigh(H), t);
}

CMat rotation_R(const SpinParams& params) {
    params.validate();
    auto [jx, jz] = spin_operators(params);
    (void)jz;
    CMat h = jx;
    h *= cplx(params.omega, 0.0);
    return propagator(h, std::numbers::pi / (2.0 * params.omega));
}

}  // namespace lgtc::qcore
