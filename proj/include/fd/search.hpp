// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "fd/model.hpp"
#include "fd/propagation.hpp"
#include "fd/state.hpp"

namespace fd {

enum class VarHeuristic { InputOrder, FirstFail };
enum class ValueHeuristic { MinValue };

struct SearchConfig {
    VarHeuristic var_heuristic = VarHeuristic::FirstFail;
    ValueHeuristic value_heuristic = ValueHeuristic::MinValue;
    std::uint64_t max_solutions = std::numeric_limits<std::uint64_t>::max();
    int thread_count = 1;
    std::uint64_t seed = 0;
    AlldiffLevel alldiff = AlldiffLevel::ArcConsistent;
    std::uint64_t node_limit = 0; // 0 = unbounded
};

struct LnsConfig {
    double destroy_rate = 0.3; // fraction of variables reset, in (0, 1]
    int iterations = 10;
    int neighborhoods = 1; // concurrent copies per iteration
    std::uint64_t seed = 0;
    std::uint64_t per_iteration_node_limit = 0; // 0 = unbounded
    int thread_count = 1;
    AlldiffLevel alldiff = AlldiffLevel::ArcConsistent;
};

struct Solution {
    std::vector<std::int64_t> values; // indexed by var id
    std::optional<std::int64_t> objective;
};

/// Unbound variable chosen by the heuristic; -1 when all domains are
/// singletons. FirstFail picks the smallest domain, ties to the lowest id.
VarId select_variable(const std::vector<Domain>& domains, VarHeuristic h);

/// MinValue heuristic: the smallest member. d must be non-empty.
std::int64_t select_value(const Domain& d);

/// Called for each solution; return false to stop the enumeration.
using SolutionCallback = std::function<bool(const Solution&)>;

struct SatisfyResult {
    SearchStats stats;
    bool complete = true; // false when a node limit cut the search short
};

/// DFS labeling with binary branching (x = v on the left, x != v on the
/// right). Emits every solution up to cfg.max_solutions; the enumeration is
/// exhaustive when unbounded and no node limit applies.
SatisfyResult solve_satisfy(const Model& m, const SearchConfig& cfg, const SolutionCallback& cb);

/// Convenience wrapper collecting all solutions.
std::vector<Solution> enumerate_solutions(const Model& m, const SearchConfig& cfg,
                                          SearchStats* stats = nullptr);

struct OptimizeResult {
    std::optional<Solution> best; // nullopt = unsatisfiable
    bool complete = true;         // true when optimality was proven
    SearchStats stats;
};

/// Branch-and-bound: after each incumbent with objective z, the objective
/// variable is constrained to strictly improve on z. Requires an
/// optimization goal.
OptimizeResult solve_optimize(const Model& m, const SearchConfig& cfg);

struct LnsResult {
    std::optional<Solution> best;
    bool initial_complete = true; // the initial incumbent search is complete
    SearchStats stats;
    std::vector<std::int64_t> trajectory; // best objective after each iteration
};

/// Large neighborhood search: start from a first incumbent, then repeatedly
/// reset a random subset of variables to their declared domains, fix the
/// rest to incumbent values, and re-search for a strictly better solution.
/// Neighborhood workers within one iteration share the best solution found
/// so far; improvements become visible at the next iteration boundary, so
/// the result does not depend on the thread count.
LnsResult lns_optimize(const Model& m, const LnsConfig& cfg);

} // namespace fd
