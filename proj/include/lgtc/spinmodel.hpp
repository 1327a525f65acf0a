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

#ifndef LGTC_SPINMODEL_HPP
#define LGTC_SPINMODEL_HPP

#include <optional>
#include <vector>

#include "lgtc/measure.hpp"
#include "lgtc/spin.hpp"

namespace lgtc::spinmodel {

using measure::DensityMatrix;
using measure::MeasurementScheme;
using qcore::SpinParams;

/// Precessing-spin scan setup. The first measurement sits at Omega*t1 = pi
/// and the later ones follow at equal spacings tau. Initial state defaults to
/// the lowest-weight state |-j><-j|; the scheme defaults to the von Neumann
/// one with q = +1 everywhere except the lowest state.
struct ScanConfig {
    SpinParams params;
    double omega_t1 = 3.14159265358979323846;
    std::vector<double> omega_tau_grid;
    std::optional<MeasurementScheme> scheme;
    std::optional<DensityMatrix> rho0;
};

struct ScanPoint {
    double omega_tau;
    double k3;
};

std::vector<ScanPoint> k3_scan(const ScanConfig& config);

/// K3 for a single measurement spacing (angle x = Omega*tau).
double k3_at(const SpinParams& params, const MeasurementScheme& scheme,
             double omega_tau, double omega_t1,
             const std::optional<DensityMatrix>& rho0 = std::nullopt);

/// Closed-form qutrit curve 1/16 + 2cos x - (5/4)cos 2x + (3/16)cos 4x.
double k3_closed_form_n3(double omega_tau);

struct SiCorrelators {
    double c21;
    double c31;
    double c32;
};

/// Correlators at quarter-period spacing (Omega tau = pi/2).
SiCorrelators si_correlators(double j);

/// K3 at quarter-period spacing: 3 - 4^{1-j} + 4^{1-2j} - 2^{1-4j}(4j)!/[(2j)!]^2.
double k3_special(double j);

/// Large-spin limit 3 - sqrt(2/(pi j)).
double k3_asymptote(double j);

struct MaxTauResult {
    double omega_tau_star;
    double k3_max;
};

/// Golden-section refinement inside a window (in Omega*tau) that brackets a
/// single local maximum; throws std::invalid_argument when no interior
/// bracket exists on the coarse grid.
MaxTauResult find_max_tau(const SpinParams& params,
                          const MeasurementScheme& scheme, double window_lo,
                          double window_hi);

/// Coarse scan over (0, 2pi] followed by golden-section refinement.
MaxTauResult scan_max(const SpinParams& params, const MeasurementScheme& scheme);

}  // namespace lgtc::spinmodel

#endif  // LGTC_SPINMODEL_HPP
