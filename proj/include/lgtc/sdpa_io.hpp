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

#ifndef LGTC_SDPA_IO_HPP
#define LGTC_SDPA_IO_HPP

#include <string>
#include <tuple>
#include <vector>

#include "lgtc/momentsdp.hpp"

namespace lgtc::momentsdp {

/// Writes the moment problem in SDPA sparse format (.dat-s). The moment
/// program "maximize <C,X> s.t. <A_k,X> = g_k, X >= 0" is exactly the SDPA
/// dual with F_0 = C, F_k = A_k and c = g, so field order is: number of
/// constraints, one block, block size, the g vector, then one line
/// "matno block row col value" per upper-triangle nonzero (matno 0 = C).
void export_sdpa(const MomentProblem& problem, const std::string& path);

struct SdpaData {
    int n_constraints = 0;
    int n_blocks = 0;
    std::vector<int> block_sizes;
    std::vector<double> rhs;
    // (matno, block, row, col, value), 1-based as in the file
    std::vector<std::tuple<int, int, int, int, double>> entries;
};

/// Reads a .dat-s file written by export_sdpa (comment lines tolerated).
SdpaData parse_sdpa(const std::string& path);

}  // namespace lgtc::momentsdp

#endif  // LGTC_SDPA_IO_HPP
