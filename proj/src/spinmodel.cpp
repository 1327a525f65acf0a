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

#include "lgtc/spinmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lgtc/eig.hpp"

namespace lgtc::spinmodel {

namespace {

constexpr double pi = std::numbers::pi;

using measure::lgi_k3;
using qcore::CMat;
using qcore::eigh;
using qcore::EighResult;
using qcore::propagator_from_eig;
using qcore::spin_operators;

// (4j)! / (4^{2j} [(2j)!]^2) = C(4j, 2j) / 4^{2j}. Exact integer binomials up
// to j = 10, log-gamma beyond (400! and friends overflow doubles long before
// the ratio does).
double central_ratio(double j) {
    const long twoj = std::lround(2.0 * j);
    if (j <= 10.0) {
        double binomial = 1.0;  // C(4j, 2j), exact below 2^53 in this range
        for (long i = 1; i <= twoj; ++i) {
            binomial *= static_cast<double>(twoj + i) / static_cast<double>(i);
        }
        binomial = std::round(binomial);
        return binomial * std::pow(4.0, -2.0 * j);
    }
    const double log_ratio = std::lgamma(4.0 * j + 1.0) -
                             2.0 * std::lgamma(2.0 * j + 1.0) -
                             2.0 * j * std::log(4.0);
    return std::exp(log_ratio);
}

// Everything needed to evaluate K3(omega tau) with the Jx eigenbasis reused
// across the scan grid. Angles only: U(t) = e^{-i Jx (Omega t)}.
struct Evaluator {
    EighResult jx_eig;
    CMat u10;
    DensityMatrix rho0;
    MeasurementScheme scheme;

    Evaluator(const SpinParams& params, const MeasurementScheme& s,
              double omega_t1, const std::optional<DensityMatrix>& init)
        : jx_eig(), u10(0),
          rho0(init.has_value()
                   ? *init
                   : DensityMatrix::pure_basis_state(params.dim(),
                                                     params.dim() - 1)),
          scheme(s) {
        params.validate();
        auto [jx, jz] = spin_operators(params);
        (void)jz;
        jx_eig = eigh(jx);
        u10 = propagator_from_eig(jx_eig, omega_t1);
    }

    double operator()(double omega_tau) const {
        const CMat u = propagator_from_eig(jx_eig, omega_tau);
        return lgi_k3(rho0, u10, u, u, scheme).k3;
    }
};

}  // namespace

double k3_at(const SpinParams& params, const MeasurementScheme& scheme,
             double omega_tau, double omega_t1,
             const std::optional<DensityMatrix>& rho0) {
    return Evaluator(params, scheme, omega_t1, rho0)(omega_tau);
}

std::vector<ScanPoint> k3_scan(const ScanConfig& config) {
    config.params.validate();
    const int n = config.params.dim();
    const MeasurementScheme scheme = config.scheme.has_value()
                                         ? *config.scheme
                                         : measure::von_neumann_scheme(n);
    Evaluator eval(config.params, scheme, config.omega_t1, config.rho0);

    std::vector<ScanPoint> out;
    out.reserve(config.omega_tau_grid.size());
    for (const double x : config.omega_tau_grid) out.push_back({x, eval(x)});
    return out;
}

double k3_closed_form_n3(double omega_tau) {
    return 1.0 / 16.0 + 2.0 * std::cos(omega_tau) -
           1.25 * std::cos(2.0 * omega_tau) +
           (3.0 / 16.0) * std::cos(4.0 * omega_tau);
}

SiCorrelators si_correlators(double j) {
    SpinParams{j, 1.0}.validate();
    SiCorrelators c{};
    c.c21 = 1.0 - std::pow(2.0, 1.0 - 2.0 * j);
    c.c31 = -1.0;
    c.c32 = 1.0 - 2.0 * std::pow(4.0, -j) + 4.0 * std::pow(16.0, -j) -
            2.0 * central_ratio(j);
    return c;
}

double k3_special(double j) {
    SpinParams{j, 1.0}.validate();
    return 3.0 - std::pow(4.0, 1.0 - j) + std::pow(4.0, 1.0 - 2.0 * j) -
           2.0 * central_ratio(j);
}

double k3_asymptote(double j) {
    if (!(j > 0.0)) throw std::invalid_argument("k3_asymptote: j must be > 0");
    return 3.0 - std::sqrt(2.0 / (pi * j));
}

MaxTauResult find_max_tau(const SpinParams& params,
                          const MeasurementScheme& scheme, double window_lo,
                          double window_hi) {
    if (!(window_hi > window_lo)) {
        throw std::invalid_argument("find_max_tau: empty window");
    }
    Evaluator f(params, scheme, pi, std::nullopt);

    // Coarse scan (step ~0.01 rad) to locate an interior bracket.
    const double step = 0.01;
    const int steps =
        std::max(4, static_cast<int>((window_hi - window_lo) / step));
    const double h = (window_hi - window_lo) / steps;
    std::vector<double> vals(steps + 1);
    double best_f = -1e300;
    for (int i = 0; i <= steps; ++i) {
        vals[i] = f(window_lo + h * i);
        best_f = std::max(best_f, vals[i]);
    }
    // Equal-height peaks happen (the curves are symmetric about a half
    // period); take the earliest one.
    int best_i = 0;
    for (int i = 0; i <= steps; ++i) {
        if (vals[i] >= best_f - 1e-9) {
            best_i = i;
            break;
        }
    }
    if (best_i == 0 || best_i == steps) {
        throw std::invalid_argument(
            "find_max_tau: no interior maximum in window");
    }
    double a = window_lo + h * (best_i - 1);
    double b = window_lo + h * (best_i + 1);

    // Golden-section ascent down to |d(omega tau)| < 1e-8.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-8) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    const double xs = 0.5 * (a + b);
    return MaxTauResult{xs, f(xs)};
}

MaxTauResult scan_max(const SpinParams& params, const MeasurementScheme& scheme) {
    // K3 = 1 at tau = 0 and the correlators are 2 pi periodic in Omega tau.
    return find_max_tau(params, scheme, 0.0, 2.0 * pi);
}

}  // namespace lgtc::spinmodel
