// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force oracles for the test suites. Everything here is deliberately
// naive and independent of the propagation/search implementation: solutions
// come from cartesian enumeration, supports from tuple enumeration, and the
// alternative propagation engine is a sequential event queue.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fd/model.hpp"
#include "fd/propagation.hpp"

namespace oracle {

/// Variables mentioned by a constraint, in a fixed order with duplicates
/// removed.
std::vector<fd::VarId> constraint_vars(const fd::Constraint& c);

/// Naive truth evaluation on a full assignment (indexed by var id).
bool eval(const fd::Constraint& c, const std::vector<std::int64_t>& assignment);

/// Every solution of the model by cartesian enumeration, sorted.
std::vector<std::vector<std::int64_t>> brute_force_solutions(const fd::Model& m);

/// Optimal objective value by cartesian enumeration; nullopt when unsat.
std::optional<std::int64_t> brute_force_optimum(const fd::Model& m);

/// For one constraint under the given domains: the present values of each
/// mentioned variable that appear in no satisfying tuple of that constraint.
std::map<fd::VarId, std::vector<std::int64_t>> unsupported_values(
    const fd::Constraint& c, const std::vector<fd::Domain>& domains);

/// Sequential one-constraint-at-a-time propagation to fixpoint over the
/// same propagators, scheduled by an event queue. Returns false on wipeout.
bool event_queue_fixpoint(std::vector<fd::Domain>& domains,
                          const std::vector<fd::Constraint>& constraints,
                          fd::AlldiffLevel level);

/// n-queens solution count by permutation enumeration.
long nqueens_count(int n);

} // namespace oracle
