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

#include "lgtc/sdpa_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lgtc::momentsdp {

void export_sdpa(const MomentProblem& problem, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("export_sdpa: cannot write " + path);
    }
    const int m = static_cast<int>(problem.constraints.size());
    out << m << " = mDIM\n";
    out << 1 << " = nBLOCK\n";
    out << problem.dim << " = bLOCKsTRUCT\n";
    out.precision(17);
    for (int k = 0; k < m; ++k) {
        out << problem.constraints[k].rhs << (k + 1 == m ? '\n' : ' ');
    }
    // matno 0 carries the objective C.
    for (const auto& e : problem.objective.entries) {
        out << 0 << ' ' << 1 << ' ' << (e.i + 1) << ' ' << (e.j + 1) << ' '
            << e.v << '\n';
    }
    for (int k = 0; k < m; ++k) {
        for (const auto& e : problem.constraints[k].f.entries) {
            out << (k + 1) << ' ' << 1 << ' ' << (e.i + 1) << ' ' << (e.j + 1)
                << ' ' << e.v << '\n';
        }
    }
}

SdpaData parse_sdpa(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("parse_sdpa: cannot read " + path);
    }
    auto next_data_line = [&](std::string& line) {
        while (std::getline(in, line)) {
            std::size_t pos = 0;
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) {
                ++pos;
            }
            if (pos == line.size()) continue;
            if (line[pos] == '*' || line[pos] == '"') continue;
            return true;
        }
        return false;
    };
    auto strip_annotations = [](std::string line) {
        // tolerate trailing annotations like " = mDIM" and brace/comma forms
        for (char& c : line) {
            if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos) line.erase(eq);
        return line;
    };

    SdpaData d;
    std::string line;
    if (!next_data_line(line)) throw std::runtime_error("parse_sdpa: truncated");
    d.n_constraints = std::stoi(strip_annotations(line));
    if (!next_data_line(line)) throw std::runtime_error("parse_sdpa: truncated");
    d.n_blocks = std::stoi(strip_annotations(line));
    if (!next_data_line(line)) throw std::runtime_error("parse_sdpa: truncated");
    {
        std::istringstream ss(strip_annotations(line));
        int v;
        while (ss >> v) d.block_sizes.push_back(v);
    }
    if (!next_data_line(line)) throw std::runtime_error("parse_sdpa: truncated");
    {
        std::istringstream ss(strip_annotations(line));
        double v;
        while (ss >> v) d.rhs.push_back(v);
    }
    while (next_data_line(line)) {
        std::istringstream ss(line);
        int matno, block, row, col;
        double v;
        if (ss >> matno >> block >> row >> col >> v) {
            d.entries.emplace_back(matno, block, row, col, v);
        }
    }
    return d;
}

}  // namespace lgtc::momentsdp
