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

#include "lgtc/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "lgtc/kernels.hpp"

namespace lgtc::qcore {

namespace {
void check_same_dim(const CMat& A, const CMat& B) {
    if (A.dim() != B.dim()) {
        throw std::invalid_argument("CMat: dimension mismatch");
    }
}
}  // namespace

CMat CMat::identity(int n) {
    CMat I(n);
    for (int i = 0; i < n; ++i) I(i, i) = cplx(1.0, 0.0);
    return I;
}

CMat CMat::adjoint() const {
    CMat R(n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) R(j, i) = std::conj((*this)(i, j));
    }
    return R;
}

CMat CMat::operator*(const CMat& B) const {
    check_same_dim(*this, B);
    CMat C(n_);
    kern::active().zgemm_nn(n_, n_, n_, data(), n_, B.data(), n_, C.data(), n_);
    return C;
}

CMat CMat::adjoint_times(const CMat& B) const {
    check_same_dim(*this, B);
    CMat C(n_);
    kern::active().zgemm_cn(n_, n_, n_, data(), n_, B.data(), n_, C.data(), n_);
    return C;
}

CMat CMat::times_adjoint(const CMat& B) const {
    check_same_dim(*this, B);
    CMat C(n_);
    kern::active().zgemm_nc(n_, n_, n_, data(), n_, B.data(), n_, C.data(), n_);
    return C;
}

CMat& CMat::operator+=(const CMat& B) {
    check_same_dim(*this, B);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += B.a_[i];
    return *this;
}

CMat& CMat::operator-=(const CMat& B) {
    check_same_dim(*this, B);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= B.a_[i];
    return *this;
}

CMat CMat::operator+(const CMat& B) const {
    CMat R = *this;
    R += B;
    return R;
}

CMat CMat::operator-(const CMat& B) const {
    CMat R = *this;
    R -= B;
    return R;
}

CMat& CMat::operator*=(cplx alpha) {
    for (auto& v : a_) v *= alpha;
    return *this;
}

cplx CMat::trace() const {
    cplx t(0.0, 0.0);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool CMat::is_hermitian(double tol) const {
    for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool CMat::is_unitary(double tol) const {
    CMat G = adjoint_times(*this);
    for (int i = 0; i < n_; ++i) G(i, i) -= 1.0;
    return G.max_abs() <= tol;
}

double CMat::max_abs_diff(const CMat& A, const CMat& B) {
    check_same_dim(A, B);
    double m = 0.0;
    for (std::size_t i = 0; i < A.a_.size(); ++i) {
        m = std::max(m, std::abs(A.a_[i] - B.a_[i]));
    }
    return m;
}

}  // namespace lgtc::qcore
