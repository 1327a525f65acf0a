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

#include <cstdio>
#include <filesystem>

#include "lgtc/momentsdp.hpp"
#include "lgtc/sdpa_io.hpp"

using namespace lgtc::momentsdp;

namespace {

Word w(std::initializer_list<std::pair<int, int>> letters) {
    Word out;
    for (auto [s, r] : letters) {
        out.push_back({static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(r)});
    }
    return out;
}

}  // namespace

TEST_CASE("word reduction") {
    // idempotency
    auto red = reduce_word(w({{0, 1}, {0, 1}}));
    REQUIRE(red.has_value());
    CHECK(*red == w({{0, 1}}));

    // orthogonality annihilates
    CHECK(!reduce_word(w({{0, 0}, {0, 1}})).has_value());

    // different settings do not commute or reduce
    auto keep = reduce_word(w({{0, 0}, {1, 1}}));
    REQUIRE(keep.has_value());
    CHECK(*keep == w({{0, 0}, {1, 1}}));

    // nested collapse: (s0 r0)(s1 r1)(s1 r1)(s0 r0) -> (s0 r0)(s1 r1)(s0 r0)
    auto nested = reduce_word(w({{0, 0}, {1, 1}, {1, 1}, {0, 0}}));
    REQUIRE(nested.has_value());
    CHECK(nested->size() == 3);

    // reduction is idempotent
    auto again = reduce_word(*nested);
    REQUIRE(again.has_value());
    CHECK(*again == *nested);
}

TEST_CASE("index sizes are 1 + 3M + 3M^2") {
    CHECK(build_index(2).size() == 19);
    CHECK(build_index(3).size() == 37);
    CHECK(build_index(6).size() == 127);
}

TEST_CASE("constraint generation contains the expected families") {
    auto index = build_index(2);
    auto constraints = build_constraints(index);

    // Normalization <1> = 1 present exactly once.
    int n_norm = 0;
    for (const auto& c : constraints) {
        if (c.rhs == 1.0) ++n_norm;
    }
    CHECK(n_norm == 1);

    // All other constraints are homogeneous.
    for (const auto& c : constraints) {
        if (c.rhs != 0.0 && c.rhs != 1.0) CHECK(false);
    }

    // There are plenty of identifications (diag of single = <single>) etc.
    CHECK(constraints.size() > 50);
}

TEST_CASE("objective touches 3 M^2 diagonal entries") {
    auto i2 = build_index(2);
    auto c2 = k3_objective(i2, {1, -1});
    CHECK(c2.entries.size() == 12);
    for (const auto& e : c2.entries) CHECK(e.i == e.j);

    auto i3 = build_index(3);
    auto c3 = k3_objective(i3, {1, 1, -1});
    CHECK(c3.entries.size() == 27);

    CHECK_THROWS_AS(k3_objective(i2, {1, 1}), std::invalid_argument);
}

TEST_CASE("toy SDPs solve to high accuracy") {
    SdpOptions opts;
    opts.tol = 1e-11;

    SUBCASE("max 2 x12 with unit diagonal -> 2 at X = ones") {
        SparseSym obj;
        obj.add(0, 1, 1.0);  // <C,X> = 2 x12
        std::vector<Constraint> cons(2);
        cons[0].f.add(0, 0, 1.0);
        cons[0].rhs = 1.0;
        cons[1].f.add(1, 1, 1.0);
        cons[1].rhs = 1.0;
        auto sol = solve_sdp(2, obj, cons, opts);
        CHECK(sol.optimum == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(sol.min_eigenvalue > -1e-9);
        CHECK(sol.primal_residual < 1e-8);
    }

    SUBCASE("max x11 with trace 1 -> 1") {
        SparseSym obj;
        obj.add(0, 0, 1.0);
        std::vector<Constraint> cons(1);
        cons[0].f.add(0, 0, 1.0);
        cons[0].f.add(1, 1, 1.0);
        cons[0].rhs = 1.0;
        auto sol = solve_sdp(2, obj, cons, opts);
        CHECK(sol.optimum == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("redundant constraints are tolerated") {
        SparseSym obj;
        obj.add(0, 1, 1.0);
        std::vector<Constraint> cons(3);
        cons[0].f.add(0, 0, 1.0);
        cons[0].rhs = 1.0;
        cons[1].f.add(1, 1, 1.0);
        cons[1].rhs = 1.0;
        // duplicate of the first with doubled coefficients
        cons[2].f.add(0, 0, 2.0);
        cons[2].rhs = 2.0;
        auto sol = solve_sdp(2, obj, cons, opts);
        CHECK(sol.optimum == doctest::Approx(2.0).epsilon(1e-8));
    }
}

TEST_CASE("moment SDP reproduces the Lueders bound for M = 2") {
    auto problem = build_moment_problem(2, {1, -1});
    CHECK(problem.dim == 19);
    SdpOptions opts;
    opts.tol = 5e-10;
    auto sol = solve(problem, opts);
    CHECK(sol.optimum == doctest::Approx(1.5).epsilon(1e-5));
    CHECK(sol.duality_gap < 1e-7);
    CHECK(sol.primal_residual < 1e-8);
    CHECK(sol.min_eigenvalue > -1e-8);
}

TEST_CASE("moment SDP for M = 3 reaches 2.211507") {
    auto problem = build_moment_problem(3, {1, 1, -1});
    CHECK(problem.dim == 37);
    SdpOptions opts;
    opts.tol = 5e-10;
    auto sol = solve(problem, opts);
    CHECK(sol.optimum == doctest::Approx(2.211507).epsilon(1e-4 / 2.2));
    CHECK(sol.duality_gap < 1e-7);
}

TEST_CASE("monotonicity: the M = 3 bound dominates M = 2") {
    SdpOptions opts;
    auto s2 = solve(build_moment_problem(2, {1, -1}), opts);
    auto s3 = solve(build_moment_problem(3, {1, 1, -1}), opts);
    CHECK(s3.optimum >= s2.optimum - 1e-7);
}

TEST_CASE("SDPA export and round-trip parse") {
    auto problem = build_moment_problem(2, {1, -1});
    const auto path = std::filesystem::temp_directory_path() / "lgtc_m2.dat-s";
    export_sdpa(problem, path.string());

    auto data = parse_sdpa(path.string());
    CHECK(data.n_constraints == static_cast<int>(problem.constraints.size()));
    CHECK(data.n_blocks == 1);
    REQUIRE(data.block_sizes.size() == 1);
    CHECK(data.block_sizes[0] == 19);
    CHECK(data.rhs.size() == problem.constraints.size());

    // entry bookkeeping: per-matrix counts match
    std::size_t n_obj = 0, n_cons = 0;
    for (const auto& [matno, block, row, col, v] : data.entries) {
        CHECK(block == 1);
        CHECK(row >= 1);
        CHECK(col >= row);  // upper triangle
        if (matno == 0) {
            ++n_obj;
        } else {
            ++n_cons;
        }
    }
    CHECK(n_obj == problem.objective.entries.size());
    std::size_t expect = 0;
    for (const auto& c : problem.constraints) expect += c.f.entries.size();
    CHECK(n_cons == expect);
    std::filesystem::remove(path);
}
