// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fd/domain.hpp"
#include "fd/model.hpp"

namespace fd {

struct PopAtRootError : std::logic_error {
    using std::logic_error::logic_error;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t failures = 0;
    std::uint64_t rounds = 0;
    std::uint64_t solutions = 0;
};

/// Decision-level bookkeeping: one saved-domain stack per variable plus the
/// level counter. A variable's domain is copied onto its stack the first
/// time it is modified at a level; popping a level reinstates those copies.
/// Distinct variables' stacks are disjoint, so restores are independent.
class SearchStore {
  public:
    SearchStore(std::vector<Domain> domains, int thread_count = 1);

    int level() const { return level_; }
    const std::vector<Domain>& domains() const { return domains_; }
    std::vector<Domain>& domains() { return domains_; }
    const Domain& domain(VarId v) const { return domains_[static_cast<std::size_t>(v)]; }

    /// Push a copy of var's current domain tagged with the current level,
    /// unless one for (var, level) already exists. Call before the first
    /// modification of var at this level.
    void save_on_modify(VarId var);

    /// Pop every entry above target, reinstating the deepest popped copy
    /// per variable. Restores across variables may run in parallel.
    void restore_to_level(int target);

    int push_level() { return ++level_; }

    /// Decrement the level and restore; throws PopAtRootError at level 0.
    int pop_level();

    /// Test hook: stack depth for one variable.
    std::size_t stack_depth(VarId var) const {
        return stacks_[static_cast<std::size_t>(var)].size();
    }
    /// Test hook: highest saved level for one variable, -1 when empty.
    int top_level(VarId var) const {
        const auto& st = stacks_[static_cast<std::size_t>(var)];
        return st.empty() ? -1 : st.back().level;
    }

  private:
    struct StackEntry {
        int level;
        Domain saved;
    };

    std::vector<Domain> domains_;
    std::vector<std::vector<StackEntry>> stacks_;
    int level_ = 0;
    int thread_count_ = 1;
};

} // namespace fd
