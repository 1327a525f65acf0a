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

#include "lgtc/momentsdp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lgtc::momentsdp {

namespace {

std::string word_key(const Word& w) {
    std::string k;
    k.reserve(2 * w.size());
    for (const Letter& l : w) {
        k.push_back(static_cast<char>('0' + l.s));
        k.push_back(static_cast<char>('a' + l.r));
    }
    return k;
}

// Deterministic serialization for constraint deduplication: sorted entries
// with the leading coefficient normalized positive.
std::string constraint_key(const SparseSym& f, double rhs) {
    auto entries = f.entries;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    double lead = 0.0;
    for (const auto& e : entries) {
        if (e.v != 0.0) {
            lead = e.v;
            break;
        }
    }
    const double sign = lead < 0.0 ? -1.0 : 1.0;
    std::string k;
    char buf[64];
    for (const auto& e : entries) {
        if (e.v == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%d,%d,%.12g;", e.i, e.j, sign * e.v);
        k += buf;
    }
    std::snprintf(buf, sizeof buf, "=%.12g", sign * rhs);
    k += buf;
    return k;
}

}  // namespace

std::optional<Word> reduce_word(Word w) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].s != w[i + 1].s) continue;
            if (w[i].r != w[i + 1].r) return std::nullopt;  // orthogonal
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i + 1));
            changed = true;
            break;
        }
    }
    return w;
}

Word canonical_word(const Word& w) {
    Word rev(w.rbegin(), w.rend());
    return std::min(w, rev);
}

std::vector<Word> build_index(int outcomes) {
    if (outcomes < 2) {
        throw std::invalid_argument("build_index: need at least two outcomes");
    }
    const auto m = static_cast<std::uint8_t>(outcomes);
    std::vector<Word> index;
    index.push_back({});
    for (std::uint8_t s = 0; s < 3; ++s) {
        for (std::uint8_t r = 0; r < m; ++r) index.push_back({{s, r}});
    }
    const std::uint8_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& p : pairs) {
        for (std::uint8_t r1 = 0; r1 < m; ++r1) {
            for (std::uint8_t r2 = 0; r2 < m; ++r2) {
                index.push_back({{p[0], r1}, {p[1], r2}});
            }
        }
    }
    return index;
}

void SparseSym::add(int i, int j, double v) {
    if (i > j) std::swap(i, j);
    for (auto& e : entries) {
        if (e.i == i && e.j == j) {
            e.v += v;
            return;
        }
    }
    entries.push_back({i, j, v});
}

double SparseSym::inner(const std::vector<double>& x_dense, int dim) const {
    double acc = 0.0;
    for (const auto& e : entries) {
        const double x = x_dense[static_cast<std::size_t>(e.i) * dim + e.j];
        acc += (e.i == e.j) ? e.v * x : 2.0 * e.v * x;
    }
    return acc;
}

std::vector<Constraint> build_constraints(const std::vector<Word>& index) {
    const int dim = static_cast<int>(index.size());
    std::unordered_map<std::string, int> position;
    for (int i = 0; i < dim; ++i) position[word_key(index[i])] = i;

    // Entry words for the upper triangle.
    struct EntryWord {
        bool zero = false;
        std::string cls;
    };
    std::vector<EntryWord> table(static_cast<std::size_t>(dim) * dim);
    std::map<std::string, std::vector<std::pair<int, int>>> classes;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            Word prod = index[i];
            prod.insert(prod.end(), index[j].rbegin(), index[j].rend());
            auto reduced = reduce_word(std::move(prod));
            auto& cell = table[static_cast<std::size_t>(i) * dim + j];
            if (!reduced.has_value()) {
                cell.zero = true;
            } else {
                cell.cls = word_key(canonical_word(*reduced));
                classes[cell.cls].push_back({i, j});
            }
        }
    }

    std::vector<Constraint> out;
    std::unordered_set<std::string> seen;
    auto push = [&](Constraint&& c) {
        if (c.f.entries.empty()) return;
        auto key = constraint_key(c.f, c.rhs);
        if (seen.insert(std::move(key)).second) out.push_back(std::move(c));
    };

    // (a) entry identifications within a class; the scan order makes the
    // first occurrence the representative.
    for (const auto& [cls, cells] : classes) {
        for (std::size_t t = 1; t < cells.size(); ++t) {
            Constraint c;
            const auto [ri, rj] = cells[0];
            const auto [oi, oj] = cells[t];
            c.f.add(ri, rj, ri == rj ? 1.0 : 0.5);
            c.f.add(oi, oj, oi == oj ? -1.0 : -0.5);
            c.rhs = 0.0;
            push(std::move(c));
        }
    }

    // (b) annihilated entries vanish.
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            if (!table[static_cast<std::size_t>(i) * dim + j].zero) continue;
            Constraint c;
            c.f.add(i, j, i == j ? 1.0 : 0.5);
            c.rhs = 0.0;
            push(std::move(c));
        }
    }

    // (c) completeness contractions sum_r X[u (s,r), v] = X[u, v] whenever
    // every summed word is still an index word.
    int outcomes = 0;
    for (const auto& w : index) {
        if (w.size() == 1) outcomes = std::max(outcomes, w[0].r + 1);
    }
    for (int ui = 0; ui < dim; ++ui) {
        const Word& u = index[ui];
        if (u.size() > 1) continue;
        for (std::uint8_t s = 0; s < 3; ++s) {
            if (u.size() == 1 && u[0].s >= s) continue;
            // positions of u extended by (s, r)
            std::vector<int> extended;
            extended.reserve(outcomes);
            bool all_present = true;
            for (std::uint8_t r = 0; r < outcomes; ++r) {
                Word e = u;
                e.push_back({s, r});
                auto it = position.find(word_key(e));
                if (it == position.end()) {
                    all_present = false;
                    break;
                }
                extended.push_back(it->second);
            }
            if (!all_present) continue;
            for (int vj = 0; vj < dim; ++vj) {
                Constraint c;
                for (int pos : extended) {
                    c.f.add(std::min(pos, vj), std::max(pos, vj),
                            pos == vj ? 1.0 : 0.5);
                }
                c.f.add(std::min(ui, vj), std::max(ui, vj),
                        ui == vj ? -1.0 : -0.5);
                c.rhs = 0.0;
                push(std::move(c));
            }
        }
    }

    // (d) normalization <1> = 1.
    Constraint norm;
    norm.f.add(0, 0, 1.0);
    norm.rhs = 1.0;
    push(std::move(norm));

    return out;
}

SparseSym k3_objective(const std::vector<Word>& index, const std::vector<int>& q) {
    const int m = static_cast<int>(q.size());
    bool plus = false, minus = false;
    for (int v : q) {
        if (v == 1) plus = true;
        else if (v == -1) minus = true;
        else throw std::invalid_argument("k3_objective: labels must be +-1");
    }
    if (!plus || !minus) {
        throw std::invalid_argument("k3_objective: all-equal labeling is degenerate");
    }

    std::unordered_map<std::string, int> position;
    for (int i = 0; i < static_cast<int>(index.size()); ++i) {
        position[word_key(index[i])] = i;
    }

    SparseSym c;
    // (alpha, beta, sign): C21 + C32 - C31
    const std::tuple<std::uint8_t, std::uint8_t, double> parts[3] = {
        {0, 1, 1.0}, {1, 2, 1.0}, {0, 2, -1.0}};
    for (const auto& [alpha, beta, sign] : parts) {
        for (std::uint8_t l = 0; l < m; ++l) {
            for (std::uint8_t r = 0; r < m; ++r) {
                Word w = {{alpha, l}, {beta, r}};
                const int p = position.at(word_key(w));
                c.add(p, p, sign * q[l] * q[r]);
            }
        }
    }
    return c;
}

MomentProblem build_moment_problem(int outcomes, const std::vector<int>& q) {
    if (static_cast<int>(q.size()) != outcomes) {
        throw std::invalid_argument("build_moment_problem: q size mismatch");
    }
    MomentProblem p;
    p.outcomes = outcomes;
    p.index = build_index(outcomes);
    p.dim = static_cast<int>(p.index.size());
    p.constraints = build_constraints(p.index);
    p.objective = k3_objective(p.index, q);
    p.q = q;
    return p;
}

SdpSolution solve(const MomentProblem& problem, const SdpOptions& opts) {
    return solve_sdp(problem.dim, problem.objective, problem.constraints, opts);
}

}  // namespace lgtc::momentsdp
