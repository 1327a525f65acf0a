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

#ifndef LGTC_COMPLEX_MATRIX_HPP
#define LGTC_COMPLEX_MATRIX_HPP

#include <complex>
#include <vector>

namespace lgtc::qcore {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major, value semantics. Products run
/// through the runtime-selected kernels.
class CMat {
  public:
    CMat() = default;
    explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

    static CMat identity(int n);
    static CMat zero(int n) { return CMat(n); }

    int dim() const { return n_; }

    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    cplx& operator()(int i, int j) {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i) * n_ + j];
    }

    CMat adjoint() const;

    /// this * B
    CMat operator*(const CMat& B) const;
    /// this^dagger * B
    CMat adjoint_times(const CMat& B) const;
    /// this * B^dagger
    CMat times_adjoint(const CMat& B) const;

    CMat& operator+=(const CMat& B);
    CMat& operator-=(const CMat& B);
    CMat operator+(const CMat& B) const;
    CMat operator-(const CMat& B) const;
    CMat& operator*=(cplx alpha);

    cplx trace() const;
    double max_abs() const;

    bool is_hermitian(double tol) const;
    bool is_unitary(double tol) const;

    /// max_ij |A_ij - B_ij|
    static double max_abs_diff(const CMat& A, const CMat& B);

  private:
    int n_ = 0;
    std::vector<cplx> a_;
};

}  // namespace lgtc::qcore

#endif  // LGTC_COMPLEX_MATRIX_HPP
