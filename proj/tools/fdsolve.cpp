// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: parse a model file, solve it, print the result.

#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "fd/generators.hpp"
#include "fd/parser.hpp"
#include "fd/report.hpp"
#include "fd/search.hpp"

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

struct SolveOptions {
    std::string file;
    bool all = false;
    std::uint64_t first = 1;
    std::string heuristic = "ff";
    int threads = 1;
    std::uint64_t seed = 0;
    bool json = false;
    bool stats = false;
    bool lns = false;
    double destroy = 0.3;
    int iters = 10;
    int neighborhoods = 1;
    std::uint64_t node_limit = 0;
};

int run_solve(const SolveOptions& opt) {
    std::ifstream in(opt.file);
    if (!in) {
        std::cerr << "error: cannot open '" << opt.file << "'\n";
        return kExitInputError;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    fd::ParseResult parsed = fd::parse_model(buf.str());
    if (const auto* err = std::get_if<fd::ParseError>(&parsed)) {
        std::cerr << opt.file << ": " << err->message() << "\n";
        return kExitInputError;
    }
    fd::Model model = std::get<fd::Model>(std::move(parsed));
    auto diagnostics = fd::model_validate(model);
    if (!diagnostics.empty()) {
        for (const auto& d : diagnostics)
            std::cerr << opt.file << ": invalid model (constraint " << d.constraint_index << ") "
                      << d.detail << "\n";
        return kExitInputError;
    }

    fd::RunReport report;
    report.seed = opt.seed;
    report.threads = opt.threads;
    report.heuristic = opt.heuristic;

    fd::SearchConfig cfg;
    cfg.var_heuristic =
        opt.heuristic == "input" ? fd::VarHeuristic::InputOrder : fd::VarHeuristic::FirstFail;
    cfg.thread_count = opt.threads;
    cfg.seed = opt.seed;
    cfg.max_solutions = opt.all ? std::numeric_limits<std::uint64_t>::max() : opt.first;

    bool optimizing = !std::holds_alternative<fd::Satisfy>(model.goal);
    auto start = std::chrono::steady_clock::now();
    try {
        if (opt.lns && optimizing) {
            fd::LnsConfig lcfg;
            lcfg.destroy_rate = opt.destroy;
            lcfg.iterations = opt.iters;
            lcfg.neighborhoods = opt.neighborhoods;
            lcfg.seed = opt.seed;
            lcfg.per_iteration_node_limit = opt.node_limit;
            lcfg.thread_count = opt.threads;
            fd::LnsResult res = fd::lns_optimize(model, lcfg);
            report.nodes = res.stats.nodes;
            report.failures = res.stats.failures;
            report.rounds = res.stats.rounds;
            if (res.best) {
                report.solutions.push_back(*res.best);
                report.status = fd::RunStatus::Sat; // best found, optimality not proven
            } else {
                report.status = fd::RunStatus::Unsat;
            }
        } else if (optimizing) {
            fd::OptimizeResult res = fd::solve_optimize(model, cfg);
            report.nodes = res.stats.nodes;
            report.failures = res.stats.failures;
            report.rounds = res.stats.rounds;
            if (res.best) {
                report.solutions.push_back(*res.best);
                report.status = res.complete ? fd::RunStatus::Optimal : fd::RunStatus::Sat;
            } else {
                report.status = res.complete ? fd::RunStatus::Unsat : fd::RunStatus::Unknown;
            }
        } else {
            fd::SatisfyResult res = fd::solve_satisfy(model, cfg, [&](const fd::Solution& s) {
                report.solutions.push_back(s);
                return true;
            });
            report.nodes = res.stats.nodes;
            report.failures = res.stats.failures;
            report.rounds = res.stats.rounds;
            if (!report.solutions.empty())
                report.status = fd::RunStatus::Sat;
            else
                report.status = res.complete ? fd::RunStatus::Unsat : fd::RunStatus::Unknown;
        }
    } catch (const fd::ArithmeticOverflowError& e) {
        report.status = fd::RunStatus::Error;
        report.error = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    report.time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();

    if (opt.json)
        std::cout << fd::report_json_lines(report, model);
    else
        std::cout << fd::report_text(report, model, opt.stats);

    switch (report.status) {
    case fd::RunStatus::Sat:
    case fd::RunStatus::Optimal: return kExitSat;
    case fd::RunStatus::Unsat: return kExitUnsat;
    case fd::RunStatus::Unknown: return kExitUnsat;
    case fd::RunStatus::Error: return kExitInternalError;
    }
    return kExitInternalError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-domain constraint solver with batched parallel propagation"};
    app.require_subcommand(1);

    SolveOptions opt;
    CLI::App* solve = app.add_subcommand("solve", "Solve a model file");
    solve->add_option("file", opt.file, "Model file")->required();
    solve->add_flag("--all", opt.all, "Enumerate every solution");
    solve->add_option("--first", opt.first, "Stop after N solutions (default 1)");
    solve->add_option("--heuristic", opt.heuristic, "Variable heuristic: input or ff")
        ->check(CLI::IsMember({"input", "ff"}));
    solve->add_option("--threads", opt.threads, "Worker thread count (1 = sequential)")
        ->check(CLI::PositiveNumber);
    solve->add_option("--seed", opt.seed, "Random seed");
    solve->add_flag("--json", opt.json, "JSON-lines output");
    solve->add_flag("--stats", opt.stats, "Print search statistics");
    solve->add_flag("--lns", opt.lns, "Use large neighborhood search (optimization goals)");
    solve->add_option("--destroy", opt.destroy, "LNS: fraction of variables reset per iteration")
        ->check(CLI::Range(0.0, 1.0));
    solve->add_option("--iters", opt.iters, "LNS: iteration count")->check(CLI::PositiveNumber);
    solve->add_option("--neighborhoods", opt.neighborhoods, "LNS: concurrent neighborhoods")
        ->check(CLI::PositiveNumber);
    solve->add_option("--node-limit", opt.node_limit, "LNS: node limit per neighborhood search");

    int nq_n = 8;
    CLI::App* gq = app.add_subcommand("gen-nqueens", "Emit an n-queens model");
    gq->add_option("n", nq_n, "Board size")->required()->check(CLI::PositiveNumber);

    int rv_vars = 4, rv_width = 6, rv_constraints = 4;
    std::uint64_t rv_seed = 0;
    CLI::App* gr = app.add_subcommand("gen-random", "Emit a reproducible random model");
    gr->add_option("--vars", rv_vars, "Variable count")->check(CLI::PositiveNumber);
    gr->add_option("--width", rv_width, "Maximum domain width")->check(CLI::PositiveNumber);
    gr->add_option("--constraints", rv_constraints, "Constraint count")
        ->check(CLI::PositiveNumber);
    gr->add_option("--seed", rv_seed, "Random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return run_solve(opt);
        if (gq->parsed()) {
            std::cout << fd::gen_nqueens(nq_n);
            return 0;
        }
        if (gr->parsed()) {
            std::cout << fd::gen_random(rv_vars, rv_width, rv_constraints, rv_seed);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitInputError;
}
