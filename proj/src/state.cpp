// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/state.hpp"

#include <utility>

namespace fd {

SearchStore::SearchStore(std::vector<Domain> domains, int thread_count)
    : domains_(std::move(domains)), stacks_(domains_.size()), thread_count_(thread_count) {}

void SearchStore::save_on_modify(VarId var) {
    auto& st = stacks_[static_cast<std::size_t>(var)];
    if (!st.empty() && st.back().level == level_)
        return; // already saved at this level
    st.push_back({level_, domains_[static_cast<std::size_t>(var)]});
}

void SearchStore::restore_to_level(int target) {
    int n = static_cast<int>(domains_.size());
#ifdef _OPENMP
#pragma omp parallel for num_threads(thread_count_) schedule(static) if (thread_count_ > 1)
#endif
    for (int v = 0; v < n; ++v) {
        auto& st = stacks_[static_cast<std::size_t>(v)];
        bool restored = false;
        while (!st.empty() && st.back().level > target) {
            domains_[static_cast<std::size_t>(v)] = std::move(st.back().saved);
            st.pop_back();
            restored = true;
        }
        (void)restored;
    }
    if (level_ > target)
        level_ = target;
}

int SearchStore::pop_level() {
    if (level_ == 0)
        throw PopAtRootError("pop_level at root");
    int target = level_ - 1;
    restore_to_level(target);
    return level_;
}

} // namespace fd
