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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lgtc/maxviol.hpp"
#include "lgtc/random.hpp"
#include "lgtc/spin.hpp"

using namespace lgtc::maxviol;
using lgtc::Rng;
using lgtc::measure::DensityMatrix;
using lgtc::measure::lgi_k3;
using lgtc::measure::MeasurementScheme;
using lgtc::measure::von_neumann_scheme;
using lgtc::qcore::CMat;
using lgtc::qcore::cplx;
using lgtc::qcore::propagator;
using lgtc::qcore::SpinParams;
using lgtc::qcore::spin_operators;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("params_to_unitary") {
    SUBCASE("zero parameters give the identity") {
        UnitaryParams p{3, std::vector<double>(9, 0.0)};
        CHECK(CMat::max_abs_diff(params_to_unitary(p), CMat::identity(3)) <
              1e-14);
    }

    SUBCASE("one dimension gives a pure phase") {
        UnitaryParams p{1, {0.7}};
        const CMat u = params_to_unitary(p);
        CHECK(std::abs(u(0, 0) - cplx(std::cos(0.7), -std::sin(0.7))) < 1e-14);
    }

    SUBCASE("random parameters give unitaries") {
        Rng rng(17);
        for (int n : {2, 4, 7}) {
            UnitaryParams p{n, {}};
            p.angles.resize(UnitaryParams::count(n));
            for (auto& v : p.angles) v = rng.uniform(-2.0, 2.0);
            CHECK(params_to_unitary(p).is_unitary(1e-10));
        }
    }

    SUBCASE("wrong count throws") {
        UnitaryParams p{3, {1.0, 2.0}};
        CHECK_THROWS_AS(params_to_unitary(p), std::invalid_argument);
    }
}

TEST_CASE("best_initial_state") {
    SUBCASE("identity evolution pins K3 = 1") {
        auto s = von_neumann_scheme(3);
        const CMat eye = CMat::identity(3);
        auto b = best_initial_state(eye, eye, s);
        CHECK(b.k3 == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("qubit quarter-turn pair reaches 3/2") {
        SpinParams p{0.5, 1.0};
        auto [jx, jz] = spin_operators(p);
        (void)jz;
        const CMat u = propagator(jx, pi / 3.0);
        auto b = best_initial_state(u, u, von_neumann_scheme(2));
        CHECK(b.k3 == doctest::Approx(1.5).epsilon(1e-12));
    }

    SUBCASE("matches the measurement-pipeline K3 on random unitaries") {
        Rng rng(23);
        for (int trial = 0; trial < 8; ++trial) {
            const int n = 2 + rng.uniform_int(4);
            const int m = 2 + rng.uniform_int(n - 1);
            auto blocks = default_blocks(n, m);
            auto s = MeasurementScheme::make(n, blocks, default_labels(m));

            UnitaryParams pu{n, {}}, pw{n, {}};
            pu.angles.resize(n * n);
            pw.angles.resize(n * n);
            for (auto& v : pu.angles) v = rng.uniform(-2.0, 2.0);
            for (auto& v : pw.angles) v = rng.uniform(-2.0, 2.0);
            const CMat u21 = params_to_unitary(pu);
            const CMat u32 = params_to_unitary(pw);

            auto b = best_initial_state(u21, u32, s);
            auto r = lgi_k3(b.rho0, CMat::identity(n), u21, u32, s);
            CHECK(std::abs(b.k3 - r.k3) < 1e-10);
            CHECK(b.k3 <= 3.0 + 1e-9);

            // No state beats the eigenstep optimum.
            for (int idx = 0; idx < n; ++idx) {
                auto basis = DensityMatrix::pure_basis_state(n, idx);
                auto r2 = lgi_k3(basis, CMat::identity(n), u21, u32, s);
                CHECK(r2.k3 <= b.k3 + 1e-10);
            }
        }
    }
}

TEST_CASE("default blocks and label enumeration") {
    auto b53 = default_blocks(5, 3);
    REQUIRE(b53.size() == 3);
    CHECK(b53[0] == std::vector<int>{0, 1});
    CHECK(b53[1] == std::vector<int>{2, 3});
    CHECK(b53[2] == std::vector<int>{4});
    CHECK(default_labels(3) == std::vector<int>{1, 1, -1});

    auto qs = enumerate_q_patterns(3);
    REQUIRE(qs.size() == 3);  // 2^(M-1) - 1
    for (const auto& q : qs) {
        CHECK(q[0] == 1);
        CHECK(std::count(q.begin(), q.end(), -1) >= 1);
    }
}

TEST_CASE("maximize_k3 on the qubit finds the Lueders bound") {
    OptimizeOptions opts;
    opts.restarts = 6;
    opts.seed = 91;
    opts.threads = 2;
    auto res = maximize_k3(2, 2, default_blocks(2, 2), default_labels(2), opts);
    CHECK(res.k3_max == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(res.restarts_used == 6);

    // Reported optimum is reproduced by the measurement pipeline.
    auto s = MeasurementScheme::make(2, default_blocks(2, 2), default_labels(2));
    auto r = lgi_k3(res.rho0, CMat::identity(2), res.u21, res.u32, s);
    CHECK(std::abs(r.k3 - res.k3_max) < 1e-10);
}

TEST_CASE("qutrit von Neumann maxima per sign variant") {
    OptimizeOptions opts;
    opts.restarts = 10;
    opts.seed = 7;
    opts.threads = 2;

    // The plain K3 landscape tops out at 2.05179; the variant with the
    // first meter flipped reaches 1 + 2/sqrt(3) = 2.15470, which is the
    // largest violation available on a qutrit with three projectors.
    auto base = maximize_k3(3, 3, default_blocks(3, 3), default_labels(3), opts);
    CHECK(base.k3_max == doctest::Approx(2.0517904).epsilon(1e-5));

    opts.variant = 1;
    auto flipped = maximize_k3(3, 3, default_blocks(3, 3), default_labels(3), opts);
    CHECK(flipped.k3_max ==
          doctest::Approx(1.0 + 2.0 / std::sqrt(3.0)).epsilon(1e-5));
    CHECK(flipped.k3_max <= 3.0 + 1e-9);
}

TEST_CASE("table sweep picks the structure reaching the published qutrit value") {
    OptimizeOptions opts;
    opts.restarts = 16;
    opts.seed = 7;
    opts.threads = 2;
    auto rows = table1_sweep({{3, 3}}, opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].result.k3_max == doctest::Approx(2.1547).epsilon(1e-3));
}

TEST_CASE("M=2 maxima never exceed 3/2 regardless of dimension") {
    for (int n : {2, 3, 4, 5, 6}) {
        OptimizeOptions opts;
        opts.restarts = n <= 4 ? 4 : 3;
        opts.seed = 1000 + n;
        opts.threads = 2;
        auto res = maximize_k3(n, 2, default_blocks(n, 2), default_labels(2), opts);
        CHECK(res.k3_max <= 1.5 + 1e-6);
        if (n <= 4) CHECK(res.k3_max >= 1.5 - 1e-5);
    }
}

TEST_CASE("identical seeds reproduce bitwise, independent of thread count") {
    OptimizeOptions a;
    a.restarts = 5;
    a.seed = 321;
    a.threads = 1;
    OptimizeOptions b = a;
    b.threads = 2;
    auto ra = maximize_k3(3, 3, default_blocks(3, 3), default_labels(3), a);
    auto rb = maximize_k3(3, 3, default_blocks(3, 3), default_labels(3), b);
    CHECK(ra.k3_max == rb.k3_max);  // bitwise
    CHECK(CMat::max_abs_diff(ra.u21, rb.u21) == 0.0);
}

TEST_CASE("invalid optimizer inputs throw") {
    OptimizeOptions opts;
    opts.restarts = 1;
    CHECK_THROWS_AS(
        maximize_k3(3, 2, default_blocks(3, 3), default_labels(3), opts),
        std::invalid_argument);
    CHECK_THROWS_AS(default_blocks(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(table1_sweep({{3, 2}}, opts), std::invalid_argument);
}
