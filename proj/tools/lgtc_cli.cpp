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

// Command-line front end: spin-precession scans, asymptotics, direct
// maximization and moment-SDP bounds, emitting plot-ready CSV/JSON.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgtc/maxviol.hpp"
#include "lgtc/measure.hpp"
#include "lgtc/momentsdp.hpp"
#include "lgtc/sdpa_io.hpp"
#include "lgtc/spinmodel.hpp"

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr double pi = std::numbers::pi;

struct CommonOpts {
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
};

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("LGTC_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::uint64_t resolve_seed(CommonOpts& c) {
    if (!c.seed_given) {
        c.seed = std::random_device{}();
        std::printf("seed = %llu (from entropy; pass --seed to reproduce)\n",
                    static_cast<unsigned long long>(c.seed));
    }
    return c.seed;
}

enum class OutFormat { kCsv, kJson, kNone };

OutFormat format_of(const std::string& path) {
    if (path.empty()) return OutFormat::kNone;
    const auto ext = std::filesystem::path(path).extension().string();
    if (ext == ".json") return OutFormat::kJson;
    if (ext == ".csv") return OutFormat::kCsv;
    throw CLI::ValidationError("--out", "expected a .csv or .json path");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

json run_record(const std::string& command, const json& params,
                std::uint64_t seed, double wall_time_s) {
    return json{{"command", command},
                {"params", params},
                {"seed", seed},
                {"wall_time_s", wall_time_s}};
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

int cmd_scan(double j, double tau_min, double tau_max, int steps,
             CommonOpts common) {
    Timer timer;
    lgtc::qcore::SpinParams params{j, 1.0};
    params.validate();
    if (steps < 2) throw CLI::ValidationError("--steps", "need at least 2");

    lgtc::spinmodel::ScanConfig cfg;
    cfg.params = params;
    cfg.omega_tau_grid.resize(steps);
    for (int i = 0; i < steps; ++i) {
        cfg.omega_tau_grid[i] =
            tau_min + (tau_max - tau_min) * i / (steps - 1);
    }
    const auto points = lgtc::spinmodel::k3_scan(cfg);

    double best_k3 = -1e300, best_tau = 0.0;
    for (const auto& p : points) best_k3 = std::max(best_k3, p.k3);
    for (const auto& p : points) {
        // equal-height peaks: report the earliest
        if (p.k3 >= best_k3 - 1e-9) {
            best_tau = p.omega_tau;
            best_k3 = p.k3;
            break;
        }
    }
    std::printf("max K3 = %.9f at omega_tau = %.9f over %d grid points\n",
                best_k3, best_tau, steps);

    const json params_j = {{"j", j}, {"tau_min", tau_min},
                           {"tau_max", tau_max}, {"steps", steps}};
    switch (format_of(common.out)) {
        case OutFormat::kCsv: {
            std::string text = "# lgtc-csv schema_version=1\nj,N,omega_tau,K3\n";
            char buf[128];
            for (const auto& p : points) {
                std::snprintf(buf, sizeof buf, "%.6g,%d,%.12g,%.12g\n", j,
                              params.dim(), p.omega_tau, p.k3);
                text += buf;
            }
            write_text(common.out, text);
            break;
        }
        case OutFormat::kJson: {
            json out;
            out["schema_version"] = kSchemaVersion;
            out["run"] = run_record("scan", params_j, common.seed, timer.seconds());
            out["points"] = json::array();
            for (const auto& p : points) {
                out["points"].push_back({{"omega_tau", p.omega_tau}, {"k3", p.k3}});
            }
            out["max"] = {{"omega_tau", best_tau}, {"k3", best_k3}};
            write_text(common.out, out.dump(2) + "\n");
            break;
        }
        case OutFormat::kNone:
            break;
    }
    return 0;
}

int cmd_asymptote(double j_max, double sim_j_max, CommonOpts common) {
    Timer timer;
    if (j_max < 0.5) throw CLI::ValidationError("--j-max", "need >= 1/2");

    std::string csv = "# lgtc-csv schema_version=1\n";
    csv += "j,K3_closed_form,K3_asymptote,K3_fixed_tau_simulated\n";
    char buf[160];
    for (double j = 0.5; j <= j_max + 1e-9; j += 0.5) {
        const double closed = lgtc::spinmodel::k3_special(j);
        const double asym = lgtc::spinmodel::k3_asymptote(j);
        std::string sim;
        if (j <= sim_j_max + 1e-9) {
            lgtc::qcore::SpinParams p{j, 1.0};
            const double v = lgtc::spinmodel::k3_at(
                p, lgtc::measure::von_neumann_scheme(p.dim()), pi / 2.0, pi);
            std::snprintf(buf, sizeof buf, "%.12g", v);
            sim = buf;
        }
        std::snprintf(buf, sizeof buf, "%.6g,%.12g,%.12g,%s\n", j, closed, asym,
                      sim.c_str());
        csv += buf;
    }
    if (format_of(common.out) == OutFormat::kCsv) {
        write_text(common.out, csv);
    } else if (!common.out.empty()) {
        throw CLI::ValidationError("--out", "asymptote emits CSV only");
    } else {
        std::fputs(csv.c_str(), stdout);
    }
    std::printf("asymptote table up to j = %.1f done in %.2f s\n", j_max,
                timer.seconds());
    return 0;
}

json result_to_json(const lgtc::maxviol::OptimizationResult& r, int m, int n,
                    const std::vector<std::vector<int>>& blocks,
                    const std::vector<int>& q, std::uint64_t seed) {
    return json{{"k3_max", r.k3_max},
                {"M", m},
                {"N", n},
                {"blocks", blocks},
                {"q", q},
                {"seed", seed},
                {"restarts", r.restarts_used},
                {"converged", r.converged},
                {"wall_time_s", r.wall_time_s}};
}

int cmd_optimize(int n, int m, int restarts, bool enumerate_q, int variant,
                 CommonOpts common) {
    Timer timer;
    if (n < m) throw CLI::ValidationError("--n", "need N >= M");
    if (m < 2) throw CLI::ValidationError("--m", "need M >= 2");
    const auto seed = resolve_seed(common);

    lgtc::maxviol::OptimizeOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    opts.threads = resolve_threads(common.threads);
    opts.variant = variant;

    const auto blocks = lgtc::maxviol::default_blocks(n, m);
    json out;
    out["schema_version"] = kSchemaVersion;
    bool all_converged = true;

    if (enumerate_q) {
        auto sweep = lgtc::maxviol::maximize_k3_over_q(n, m, blocks, opts);
        out["results"] = json::array();
        double best = -1e300;
        for (const auto& entry : sweep) {
            out["results"].push_back(
                result_to_json(entry.result, m, n, blocks, entry.q, seed));
            best = std::max(best, entry.result.k3_max);
            all_converged = all_converged && entry.result.converged;
        }
        out["k3_max_over_q"] = best;
        std::printf("k3_max over %zu labelings = %.6f\n", sweep.size(), best);
    } else {
        const auto q = lgtc::maxviol::default_labels(m);
        auto res = lgtc::maxviol::maximize_k3(n, m, blocks, q, opts);
        out["result"] = result_to_json(res, m, n, blocks, q, seed);
        all_converged = res.converged;
        std::printf("k3_max = %.6f (restarts %d, %.2f s)\n", res.k3_max,
                    res.restarts_used, res.wall_time_s);
    }

    out["run"] = run_record("optimize",
                            {{"n", n},
                             {"m", m},
                             {"restarts", restarts},
                             {"enumerate_q", enumerate_q},
                             {"variant", variant}},
                            seed, timer.seconds());
    if (format_of(common.out) == OutFormat::kJson) {
        write_text(common.out, out.dump(2) + "\n");
    } else if (!common.out.empty()) {
        throw CLI::ValidationError("--out", "optimize emits JSON only");
    }
    return all_converged ? 0 : 1;
}

int cmd_bound(int m, double tol, const std::string& export_path,
              CommonOpts common) {
    Timer timer;
    if (m < 2) throw CLI::ValidationError("--m", "need M >= 2");

    std::vector<int> q(m, 1);
    q[m - 1] = -1;
    auto problem = lgtc::momentsdp::build_moment_problem(m, q);

    if (!export_path.empty()) {
        lgtc::momentsdp::export_sdpa(problem, export_path);
        std::printf("wrote %s (dim %d, %zu constraints); skipping solve\n",
                    export_path.c_str(), problem.dim,
                    problem.constraints.size());
        return 0;
    }

    lgtc::momentsdp::SdpOptions opts;
    if (tol > 0) opts.tol = tol;
    int exit_code = 0;
    json out;
    out["schema_version"] = kSchemaVersion;
    try {
        auto sol = lgtc::momentsdp::solve(problem, opts);
        std::printf("M = %d bound = %.7f (iterations %d, gap %.2e)\n", m,
                    sol.optimum, sol.iterations, sol.duality_gap);
        out["result"] = {{"M", m},
                         {"optimum", sol.optimum},
                         {"gap", sol.duality_gap},
                         {"iterations", sol.iterations},
                         {"primal_residual", sol.primal_residual},
                         {"min_eigenvalue", sol.min_eigenvalue}};
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failed: %s\n", e.what());
        out["error"] = e.what();
        exit_code = 1;
    }
    out["run"] = run_record("bound", {{"m", m}, {"tol", tol}}, common.seed,
                            timer.seconds());
    if (format_of(common.out) == OutFormat::kJson) {
        write_text(common.out, out.dump(2) + "\n");
    } else if (!common.out.empty()) {
        throw CLI::ValidationError("--out", "bound emits JSON only");
    }
    return exit_code;
}

struct ReferenceCell {
    std::string kind;
    int m = 0;
    int n = 0;  // 0 for SDP rows
    double k3 = 0.0;
};

std::vector<ReferenceCell> load_reference(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read reference table: " + path);
    std::vector<ReferenceCell> cells;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("kind", 0) == 0) continue;
        ReferenceCell c;
        char kind[16];
        int n = 0;
        // rows: kind,M,N,k3  (N empty for sdp rows)
        if (std::sscanf(line.c_str(), "%15[^,],%d,%d,%lf", kind, &c.m, &n,
                        &c.k3) == 4) {
            c.kind = kind;
            c.n = n;
            cells.push_back(c);
        } else if (std::sscanf(line.c_str(), "%15[^,],%d,,%lf", kind, &c.m,
                               &c.k3) == 3) {
            c.kind = kind;
            c.n = 0;
            cells.push_back(c);
        }
    }
    return cells;
}

int cmd_table1(int restarts, const std::string& reference_path,
               bool skip_sdp, bool skip_max, CommonOpts common) {
    Timer timer;
    const auto seed = resolve_seed(common);
    const auto reference = load_reference(reference_path);

    std::string csv = "# lgtc-csv schema_version=1\n";
    csv += "section,M,N,k3,reference,abs_dev,status\n";
    char buf[256];
    bool all_ok = true;

    if (!skip_sdp) {
        for (const auto& cell : reference) {
            if (cell.kind != "sdp" || cell.m > 4) continue;
            std::string status = "ok";
            double value = 0.0, dev = 0.0;
            try {
                std::vector<int> q(cell.m, 1);
                q[cell.m - 1] = -1;
                auto sol = lgtc::momentsdp::solve(
                    lgtc::momentsdp::build_moment_problem(cell.m, q));
                value = sol.optimum;
                dev = std::abs(value - cell.k3);
                if (dev > 1e-4) status = "deviation";
            } catch (const std::exception& e) {
                status = std::string("error: ") + e.what();
                all_ok = false;
            }
            std::snprintf(buf, sizeof buf, "sdp,%d,,%.7f,%.6f,%.2e,%s\n",
                          cell.m, value, cell.k3, dev, status.c_str());
            csv += buf;
            std::fputs(buf + 0, stdout);
            if (status != "ok") all_ok = false;
        }
    }

    if (!skip_max) {
        lgtc::maxviol::OptimizeOptions opts;
        opts.restarts = restarts;
        opts.seed = seed;
        opts.threads = resolve_threads(common.threads);
        for (const auto& cell : reference) {
            if (cell.kind != "max") continue;
            std::string status = "ok";
            double value = 0.0, dev = 0.0;
            try {
                auto rows = lgtc::maxviol::table1_sweep({{cell.m, cell.n}}, opts);
                value = rows[0].result.k3_max;
                dev = std::abs(value - cell.k3);
                if (dev > 3e-3) status = "deviation";
            } catch (const std::exception& e) {
                status = std::string("error: ") + e.what();
            }
            std::snprintf(buf, sizeof buf, "max,%d,%d,%.6f,%.4f,%.2e,%s\n",
                          cell.m, cell.n, value, cell.k3, dev, status.c_str());
            csv += buf;
            std::fputs(buf, stdout);
            if (status != "ok") all_ok = false;
        }
    }

    if (format_of(common.out) == OutFormat::kCsv) write_text(common.out, csv);
    std::printf("table sweep finished in %.1f s\n", timer.seconds());
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal-correlation toolkit: Leggett-Garg K3 scans, direct "
                 "maximization and moment-SDP bounds"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--threads", common.threads,
                   "worker threads (default: LGTC_THREADS or all cores)");

    // scan
    double j = 0.5, tau_min = 0.0, tau_max = 2.0 * pi;
    int steps = 629;
    auto* scan = app.add_subcommand("scan", "K3(tau) over a grid (CSV/JSON)");
    scan->add_option("--j", j, "spin length (half-integer)")->required();
    scan->add_option("--tau-min", tau_min, "grid start (Omega tau)");
    scan->add_option("--tau-max", tau_max, "grid end (Omega tau)");
    scan->add_option("--steps", steps, "grid points");
    scan->add_option("--out", common.out, "output file (.csv or .json)");

    // asymptote
    double j_max = 20.0, sim_j_max = 5.0;
    auto* asym = app.add_subcommand(
        "asymptote", "closed form vs asymptote vs simulation per j (CSV)");
    asym->add_option("--j-max", j_max, "largest spin length");
    asym->add_option("--sim-j-max", sim_j_max,
                     "simulate the fixed-tau column up to this j");
    asym->add_option("--out", common.out, "output file (.csv)");

    // optimize
    int opt_n = 3, opt_m = 3, restarts = 0, variant = 0;
    bool enum_q = false;
    auto* opt = app.add_subcommand("optimize",
                                   "direct K3 maximization at fixed N, M");
    opt->add_option("--n", opt_n, "Hilbert space dimension")->required();
    opt->add_option("--m", opt_m, "number of projectors")->required();
    opt->add_option("--restarts", restarts,
                    "multistart count (default 50 for N<=5 else 200)");
    opt->add_option("--seed", common.seed, "RNG seed");
    opt->add_flag("--enumerate-q", enum_q,
                  "sweep all 2^(M-1)-1 outcome labelings");
    opt->add_option("--variant", variant,
                    "sign variant of the inequality (0..3)")
        ->check(CLI::Range(0, 3));
    opt->add_option("--out", common.out, "output file (.json)");

    // bound
    int bound_m = 2;
    double tol = 0.0;
    std::string export_path;
    auto* bound = app.add_subcommand("bound", "moment-SDP upper bound for M");
    bound->add_option("--m", bound_m, "outcomes per setting")->required();
    bound->add_option("--tol", tol, "solver tolerance (relative)");
    bound->add_option("--export-sdpa", export_path,
                      "write SDPA sparse file instead of solving");
    bound->add_option("--out", common.out, "output file (.json)");

    // table1
    std::string reference_path = LGTC_DATA_DIR "/table1_reference.csv";
    bool skip_sdp = false, skip_max = false;
    auto* table = app.add_subcommand(
        "table1", "reproduce the published maxima with deviations (CSV)");
    table->add_option("--restarts", restarts, "multistart count per cell");
    table->add_option("--seed", common.seed, "RNG seed");
    table->add_option("--reference", reference_path, "reference value table");
    table->add_flag("--skip-sdp", skip_sdp, "skip the SDP column");
    table->add_flag("--skip-max", skip_max, "skip the MAX cells");
    table->add_option("--out", common.out, "output file (.csv)");

    CLI11_PARSE(app, argc, argv);

    common.seed_given =
        opt->count("--seed") > 0 || table->count("--seed") > 0;

    try {
        if (*scan) return cmd_scan(j, tau_min, tau_max, steps, common);
        if (*asym) return cmd_asymptote(j_max, sim_j_max, common);
        if (*opt) {
            return cmd_optimize(opt_n, opt_m, restarts, enum_q, variant,
                                common);
        }
        if (*bound) return cmd_bound(bound_m, tol, export_path, common);
        if (*table) {
            return cmd_table1(restarts, reference_path, skip_sdp, skip_max,
                              common);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
