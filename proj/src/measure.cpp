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

#include "lgtc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "lgtc/eig.hpp"

namespace lgtc::measure {

namespace {

constexpr double kZeroProb = 1e-14;
constexpr double kImagHard = 1e-8;

// P_l X P_l for a diagonal scheme: keep the block_l x block_l submatrix.
CMat mask_block(const CMat& x, const MeasurementScheme& s, int l) {
    CMat out(x.dim());
    const auto& cell = s.blocks()[l];
    for (int a : cell) {
        for (int b : cell) out(a, b) = x(a, b);
    }
    return out;
}

double block_trace_real(const CMat& x, const MeasurementScheme& s, int l,
                        double& imag_residue) {
    double re = 0.0;
    double im = 0.0;
    for (int a : s.blocks()[l]) {
        re += x(a, a).real();
        im += x(a, a).imag();
    }
    imag_residue = std::max(imag_residue, std::abs(im));
    return re;
}

}  // namespace

void DensityMatrix::validate() const {
    const int n = rho.dim();
    if (n == 0) throw std::invalid_argument("DensityMatrix: empty");
    if (!rho.is_hermitian(1e-12)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > 1e-12 * n) {
        throw std::invalid_argument("DensityMatrix: trace != 1");
    }
    auto es = qcore::eigh(rho);
    if (es.eigenvalues.front() < -1e-10) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure_basis_state(int n, int index) {
    if (index < 0 || index >= n) {
        throw std::invalid_argument("pure_basis_state: index out of range");
    }
    DensityMatrix d{CMat(n)};
    d.rho(index, index) = cplx(1.0, 0.0);
    return d;
}

DensityMatrix DensityMatrix::pure_state(const std::vector<cplx>& amplitudes) {
    const int n = static_cast<int>(amplitudes.size());
    double nrm = 0.0;
    for (const auto& a : amplitudes) nrm += std::norm(a);
    if (nrm <= 0.0) throw std::invalid_argument("pure_state: zero vector");
    DensityMatrix d{CMat(n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d.rho(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / nrm;
        }
    }
    return d;
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
    DensityMatrix d{CMat(n)};
    for (int i = 0; i < n; ++i) d.rho(i, i) = cplx(1.0 / n, 0.0);
    return d;
}

MeasurementScheme MeasurementScheme::make(int n,
                                          std::vector<std::vector<int>> blocks,
                                          std::vector<int> q) {
    const int m = static_cast<int>(blocks.size());
    if (n < 2) throw std::invalid_argument("scheme: dimension must be >= 2");
    if (m < 2 || m > n) {
        throw std::invalid_argument("scheme: M must satisfy 2 <= M <= N");
    }
    if (static_cast<int>(q.size()) != m) {
        throw std::invalid_argument("scheme: q must have one label per block");
    }
    std::vector<int> owner(n, -1);
    for (int l = 0; l < m; ++l) {
        if (blocks[l].empty()) {
            throw std::invalid_argument("scheme: empty block");
        }
        for (int idx : blocks[l]) {
            if (idx < 0 || idx >= n || owner[idx] != -1) {
                throw std::invalid_argument(
                    "scheme: blocks must partition {0..N-1}");
            }
            owner[idx] = l;
        }
    }
    for (int idx = 0; idx < n; ++idx) {
        if (owner[idx] == -1) {
            throw std::invalid_argument("scheme: blocks must cover {0..N-1}");
        }
    }
    bool has_plus = false;
    bool has_minus = false;
    for (int v : q) {
        if (v == 1) {
            has_plus = true;
        } else if (v == -1) {
            has_minus = true;
        } else {
            throw std::invalid_argument("scheme: q labels must be +-1");
        }
    }
    if (!has_plus || !has_minus) {
        throw std::invalid_argument("scheme: degenerate labeling (all q equal)");
    }

    MeasurementScheme s;
    s.n_ = n;
    s.m_ = m;
    s.blocks_ = std::move(blocks);
    s.q_ = std::move(q);
    s.block_of_ = std::move(owner);
    return s;
}

CMat MeasurementScheme::projector(int l) const {
    CMat d(n_);
    for (int idx : blocks_[l]) d(idx, idx) = cplx(1.0, 0.0);
    if (!basis_.has_value()) return d;
    return (*basis_ * d).times_adjoint(*basis_);
}

MeasurementScheme MeasurementScheme::with_basis(const CMat& w) const {
    if (w.dim() != n_) throw std::invalid_argument("with_basis: dim mismatch");
    if (!w.is_unitary(1e-10)) {
        throw std::invalid_argument("with_basis: basis must be unitary");
    }
    MeasurementScheme s = *this;
    if (basis_.has_value()) {
        s.basis_ = w * *basis_;
    } else {
        s.basis_ = w;
    }
    return s;
}

std::string MeasurementScheme::to_json() const {
    nlohmann::json j;
    j["N"] = n_;
    j["M"] = m_;
    j["blocks"] = blocks_;
    j["q"] = q_;
    return j.dump();
}

MeasurementScheme MeasurementScheme::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    return make(j.at("N").get<int>(),
                j.at("blocks").get<std::vector<std::vector<int>>>(),
                j.at("q").get<std::vector<int>>());
}

MeasurementScheme von_neumann_scheme(int n) {
    std::vector<std::vector<int>> blocks(n);
    std::vector<int> q(n, 1);
    for (int i = 0; i < n; ++i) blocks[i] = {i};
    q[n - 1] = -1;  // lowest-weight state |-j> sits at the last index
    return MeasurementScheme::make(n, std::move(blocks), std::move(q));
}

UpdateResult update_state(const MeasurementScheme& scheme,
                          const DensityMatrix& rho, int outcome_index) {
    if (outcome_index < 0 || outcome_index >= scheme.outcomes()) {
        throw std::invalid_argument("update_state: outcome index out of range");
    }
    if (rho.dim() != scheme.dim()) {
        throw std::invalid_argument("update_state: dimension mismatch");
    }

    CMat projected(0);
    if (scheme.diagonal()) {
        projected = mask_block(rho.rho, scheme, outcome_index);
    } else {
        const CMat p = scheme.projector(outcome_index);
        projected = (p * rho.rho) * p;
    }
    double im = 0.0;
    double prob = 0.0;
    for (int a = 0; a < projected.dim(); ++a) {
        prob += projected(a, a).real();
        im += projected(a, a).imag();
    }
    if (std::abs(im) > kImagHard) {
        throw NumericalIntegrityError("update_state: complex probability");
    }

    UpdateResult out;
    out.prob = prob;
    if (prob >= kZeroProb) {
        CMat post = projected;
        post *= cplx(1.0 / prob, 0.0);
        out.post = DensityMatrix{std::move(post)};
    }
    return out;
}

double correlator(const DensityMatrix& rho0, const CMat& u_a0, const CMat& u_ba,
                  const MeasurementScheme& scheme) {
    const int n = scheme.dim();
    if (rho0.dim() != n || u_a0.dim() != n || u_ba.dim() != n) {
        throw std::invalid_argument("correlator: dimension mismatch");
    }

    // State at the first measurement time.
    const CMat rho1 = (u_a0 * rho0.rho).times_adjoint(u_a0);

    double c = 0.0;
    double imag_residue = 0.0;
    const int m = scheme.outcomes();
    for (int l = 0; l < m; ++l) {
        CMat sigma(0);
        if (scheme.diagonal()) {
            sigma = mask_block(rho1, scheme, l);
        } else {
            const CMat p = scheme.projector(l);
            sigma = (p * rho1) * p;
        }
        const CMat tau = (u_ba * sigma).times_adjoint(u_ba);

        double branch = 0.0;
        if (scheme.diagonal()) {
            for (int mm = 0; mm < m; ++mm) {
                branch += scheme.q()[mm] *
                          block_trace_real(tau, scheme, mm, imag_residue);
            }
        } else {
            for (int mm = 0; mm < m; ++mm) {
                const CMat p = scheme.projector(mm);
                const CMat prod = p * tau;
                const cplx t = prod.trace();
                imag_residue = std::max(imag_residue, std::abs(t.imag()));
                branch += scheme.q()[mm] * t.real();
            }
        }
        c += scheme.q()[l] * branch;
    }

    if (imag_residue > kImagHard) {
        throw NumericalIntegrityError("correlator: imaginary residue " +
                                      std::to_string(imag_residue));
    }
    return std::clamp(c, -1.0, 1.0);
}

LgiResult lgi_k3(const DensityMatrix& rho0, const CMat& u_10, const CMat& u_21,
                 const CMat& u_32, const MeasurementScheme& scheme) {
    LgiResult r;
    r.c21 = correlator(rho0, u_10, u_21, scheme);
    r.c32 = correlator(rho0, u_21 * u_10, u_32, scheme);
    r.c31 = correlator(rho0, u_10, u_32 * u_21, scheme);
    r.k3 = r.c21 + r.c32 - r.c31;
    return r;
}

double sequence_probability(const DensityMatrix& rho0,
                            const std::vector<SequenceStep>& steps) {
    if (steps.empty()) {
        throw std::invalid_argument("sequence_probability: empty step list");
    }
    DensityMatrix state = rho0;
    double joint = 1.0;
    for (const auto& step : steps) {
        if (step.u.dim() != state.dim() || step.scheme.dim() != state.dim()) {
            throw std::invalid_argument(
                "sequence_probability: dimension mismatch");
        }
        DensityMatrix evolved{(step.u * state.rho).times_adjoint(step.u)};
        UpdateResult u = update_state(step.scheme, evolved, step.outcome_index);
        joint *= u.prob;
        if (!u.post.has_value()) return 0.0;
        state = *u.post;
    }
    return joint;
}

}  // namespace lgtc::measure
