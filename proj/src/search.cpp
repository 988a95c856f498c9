// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "fd/rng.hpp"

namespace fd {

VarId select_variable(const std::vector<Domain>& domains, VarHeuristic h) {
    VarId best = -1;
    int best_size = 0;
    for (VarId v = 0; v < static_cast<VarId>(domains.size()); ++v) {
        const Domain& d = domains[static_cast<std::size_t>(v)];
        if (d.size() <= 1)
            continue;
        if (h == VarHeuristic::InputOrder)
            return v;
        if (best < 0 || d.size() < best_size) {
            best = v;
            best_size = d.size();
        }
    }
    return best;
}

std::int64_t select_value(const Domain& d) {
    return d.min();
}

namespace {

struct GoalInfo {
    bool optimizing = false;
    bool minimizing = false;
    VarId obj_var = -1;
};

GoalInfo goal_info(const Model& m) {
    GoalInfo g;
    if (const auto* mn = std::get_if<Minimize>(&m.goal)) {
        g = {true, true, mn->var};
    } else if (const auto* mx = std::get_if<Maximize>(&m.goal)) {
        g = {true, false, mx->var};
    }
    return g;
}

// One depth-first search run over a domain store. Handles plain
// enumeration and branch-and-bound (when an objective is set, each new
// incumbent tightens the bound; nodes additionally prune the objective
// variable against the current bound).
class Dfs {
  public:
    Dfs(const Model& m, const SearchConfig& cfg)
        : model_(m), cfg_(cfg), batches_(group_batches(m.constraints)),
          pcfg_{cfg.thread_count, cfg.alldiff}, store_(m.domains, cfg.thread_count),
          goal_(goal_info(m)) {}

    void set_initial_bound(std::int64_t bound) { bound_ = bound; }

    SatisfyResult run(const SolutionCallback& cb) {
        cb_ = &cb;
        descend();
        SatisfyResult res;
        res.stats = stats_;
        res.complete = !limit_hit_ && !user_stop_;
        return res;
    }

    const std::optional<Solution>& incumbent() const { return incumbent_; }
    bool limit_hit() const { return limit_hit_; }
    const SearchStats& stats() const { return stats_; }

  private:
    // Returns false to unwind the whole search.
    bool descend() {
        ++stats_.nodes;
        if (cfg_.node_limit && stats_.nodes > cfg_.node_limit) {
            limit_hit_ = true;
            return false;
        }

        if (goal_.optimizing && bound_) {
            Domain& obj = store_.domains()[static_cast<std::size_t>(goal_.obj_var)];
            bool shrink = goal_.minimizing ? obj.max() >= *bound_ : obj.min() <= *bound_;
            if (shrink) {
                store_.save_on_modify(goal_.obj_var);
                if (goal_.minimizing)
                    obj.remove_above(*bound_ - 1);
                else
                    obj.remove_below(*bound_ + 1);
                if (obj.empty()) {
                    ++stats_.failures;
                    return true;
                }
            }
        }

        FixpointResult fx = propagate_fixpoint(
            store_.domains(), model_.constraints, batches_, pcfg_,
            [this](VarId v) { store_.save_on_modify(v); });
        stats_.rounds += static_cast<std::uint64_t>(fx.rounds);
        if (fx.failed) {
            ++stats_.failures;
            return true;
        }

        VarId var = select_variable(store_.domains(), cfg_.var_heuristic);
        if (var < 0)
            return emit_solution();

        std::int64_t v = select_value(store_.domain(var));

        store_.push_level();
        store_.save_on_modify(var);
        store_.domains()[static_cast<std::size_t>(var)].assign(v);
        bool keep_going = descend();
        store_.pop_level();
        if (!keep_going)
            return false;

        store_.push_level();
        store_.save_on_modify(var);
        store_.domains()[static_cast<std::size_t>(var)].remove(v);
        keep_going = descend();
        store_.pop_level();
        return keep_going;
    }

    bool emit_solution() {
        Solution sol;
        sol.values.reserve(store_.domains().size());
        for (const Domain& d : store_.domains())
            sol.values.push_back(d.min());
        if (goal_.optimizing)
            sol.objective = sol.values[static_cast<std::size_t>(goal_.obj_var)];
        ++stats_.solutions;

        if (goal_.optimizing) {
            incumbent_ = sol;
            bound_ = *sol.objective;
        }
        if (cb_ && *cb_ && !(*cb_)(sol)) {
            user_stop_ = true;
            return false;
        }
        if (stats_.solutions >= cfg_.max_solutions) {
            user_stop_ = true;
            return false;
        }
        return true; // keep enumerating as if this leaf had failed
    }

    const Model& model_;
    SearchConfig cfg_;
    std::vector<PropagatorBatch> batches_;
    PropagationConfig pcfg_;
    SearchStore store_;
    GoalInfo goal_;
    SearchStats stats_;
    std::optional<Solution> incumbent_;
    std::optional<std::int64_t> bound_;
    const SolutionCallback* cb_ = nullptr;
    bool limit_hit_ = false;
    bool user_stop_ = false;
};

} // namespace

SatisfyResult solve_satisfy(const Model& m, const SearchConfig& cfg, const SolutionCallback& cb) {
    Dfs dfs(m, cfg);
    return dfs.run(cb);
}

std::vector<Solution> enumerate_solutions(const Model& m, const SearchConfig& cfg,
                                          SearchStats* stats) {
    std::vector<Solution> out;
    SatisfyResult res = solve_satisfy(m, cfg, [&](const Solution& s) {
        out.push_back(s);
        return true;
    });
    if (stats)
        *stats = res.stats;
    return out;
}

OptimizeResult solve_optimize(const Model& m, const SearchConfig& cfg) {
    if (!goal_info(m).optimizing)
        throw std::logic_error("solve_optimize requires a minimize or maximize goal");
    Dfs dfs(m, cfg);
    SatisfyResult run = dfs.run({});
    OptimizeResult res;
    res.best = dfs.incumbent();
    res.complete = !dfs.limit_hit();
    res.stats = run.stats;
    return res;
}

namespace {

// Incumbent-centered sub-problem: the chosen variables regain their
// declared domains, everything else is pinned to the incumbent value.
Model neighborhood_model(const Model& m, const Solution& incumbent,
                         const std::vector<char>& destroyed) {
    Model sub = m;
    for (int v = 0; v < m.num_vars(); ++v) {
        if (!destroyed[static_cast<std::size_t>(v)]) {
            std::int64_t val = incumbent.values[static_cast<std::size_t>(v)];
            sub.domains[static_cast<std::size_t>(v)] = Domain(val, val);
        }
    }
    return sub;
}

bool better(bool minimizing, std::int64_t a, std::int64_t b) {
    return minimizing ? a < b : a > b;
}

} // namespace

LnsResult lns_optimize(const Model& m, const LnsConfig& cfg) {
    GoalInfo goal = goal_info(m);
    if (!goal.optimizing)
        throw std::logic_error("lns_optimize requires a minimize or maximize goal");
    LnsResult res;

    SearchConfig first_cfg;
    first_cfg.max_solutions = 1;
    first_cfg.thread_count = cfg.thread_count;
    first_cfg.alldiff = cfg.alldiff;
    std::optional<Solution> best;
    SatisfyResult first = solve_satisfy(m, first_cfg, [&](const Solution& s) {
        best = s;
        return false;
    });
    res.stats = first.stats;
    res.initial_complete = first.complete || best.has_value();
    if (!best) {
        return res; // unsatisfiable (the first search is complete)
    }

    int n = m.num_vars();
    int destroy_count = std::max(1, static_cast<int>(std::ceil(cfg.destroy_rate * n)));
    destroy_count = std::min(destroy_count, n);

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        std::vector<std::optional<Solution>> found(
            static_cast<std::size_t>(cfg.neighborhoods));
        std::vector<SearchStats> worker_stats(static_cast<std::size_t>(cfg.neighborhoods));
        std::exception_ptr pending;

        const Solution incumbent = *best; // frozen for this iteration

#ifdef _OPENMP
#pragma omp parallel for num_threads(cfg.thread_count) schedule(dynamic) if (cfg.thread_count > 1)
#endif
        for (int nb = 0; nb < cfg.neighborhoods; ++nb) {
            try {
                Rng rng = Rng::derive(cfg.seed, static_cast<std::uint64_t>(nb),
                                      static_cast<std::uint64_t>(iter));
                std::vector<char> destroyed(static_cast<std::size_t>(n), 0);
                if (n > 0) {
                    std::vector<int> ids(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i)
                        ids[static_cast<std::size_t>(i)] = i;
                    for (int i = 0; i < destroy_count; ++i) {
                        int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
                        std::swap(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)]);
                        destroyed[static_cast<std::size_t>(ids[static_cast<std::size_t>(i)])] = 1;
                    }
                }

                Model sub = neighborhood_model(m, incumbent, destroyed);
                SearchConfig scfg;
                scfg.alldiff = cfg.alldiff;
                scfg.node_limit = cfg.per_iteration_node_limit;
                Dfs dfs(sub, scfg);
                dfs.set_initial_bound(*incumbent.objective); // only strictly better counts
                dfs.run({});
                found[static_cast<std::size_t>(nb)] = dfs.incumbent();
                worker_stats[static_cast<std::size_t>(nb)] = dfs.stats();
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (!pending)
                        pending = std::current_exception();
                }
            }
        }
        if (pending)
            std::rethrow_exception(pending);

        // Deterministic merge: lowest neighborhood index wins ties.
        for (int nb = 0; nb < cfg.neighborhoods; ++nb) {
            const auto& cand = found[static_cast<std::size_t>(nb)];
            const auto& ws = worker_stats[static_cast<std::size_t>(nb)];
            res.stats.nodes += ws.nodes;
            res.stats.failures += ws.failures;
            res.stats.rounds += ws.rounds;
            if (cand && better(goal.minimizing, *cand->objective, *best->objective))
                best = cand;
        }
        res.trajectory.push_back(*best->objective);
    }

    res.best = best;
    return res;
}

} // namespace fd
