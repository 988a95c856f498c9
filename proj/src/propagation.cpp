// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include "fd/propagation.hpp"

#include <algorithm>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fd {

namespace {

using Int128 = __int128;

bool fits_i64(Int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
}

} // namespace

bool RemovalSet::empty() const {
    for (const auto& e : entries_)
        for (std::uint64_t w : e.mask)
            if (w)
                return false;
    return true;
}

std::vector<std::uint64_t>& RemovalSet::mask_for(VarId var, const Domain& dom) {
    for (auto& e : entries_)
        if (e.var == var)
            return e.mask;
    entries_.push_back({var, std::vector<std::uint64_t>(dom.word_count(), 0)});
    return entries_.back().mask;
}

void RemovalSet::add_value(VarId var, const Domain& dom, std::int64_t v) {
    if (!dom.contains(v))
        return;
    auto& mask = mask_for(var, dom);
    int pos = static_cast<int>(v - dom.offset());
    mask[pos / Domain::kBitsPerWord] |= std::uint64_t{1} << (pos % Domain::kBitsPerWord);
}

void RemovalSet::add_range(VarId var, const Domain& dom, std::int64_t lo, std::int64_t hi) {
    if (dom.empty())
        return;
    lo = std::max(lo, dom.min());
    hi = std::min(hi, dom.max());
    for (std::int64_t v = lo; v <= hi; ++v)
        add_value(var, dom, v);
}

void RemovalSet::add_all(VarId var, const Domain& dom) {
    if (dom.empty())
        return;
    add_range(var, dom, dom.min(), dom.max());
}

void RemovalSet::merge_from(const RemovalSet& other) {
    for (const auto& oe : other.entries_) {
        Entry* mine = nullptr;
        for (auto& e : entries_)
            if (e.var == oe.var) {
                mine = &e;
                break;
            }
        if (!mine) {
            entries_.push_back(oe);
        } else {
            if (mine->mask.size() < oe.mask.size())
                mine->mask.resize(oe.mask.size(), 0);
            for (std::size_t i = 0; i < oe.mask.size(); ++i)
                mine->mask[i] |= oe.mask[i];
        }
    }
}

std::vector<std::int64_t> RemovalSet::removed_values(VarId var, const Domain& dom) const {
    std::vector<std::int64_t> out;
    for (const auto& e : entries_) {
        if (e.var != var)
            continue;
        for (std::size_t i = 0; i < e.mask.size(); ++i)
            for (int b = 0; b < Domain::kBitsPerWord; ++b)
                if (e.mask[i] & (std::uint64_t{1} << b)) {
                    std::int64_t v = dom.offset() + static_cast<std::int64_t>(i) * 64 + b;
                    if (dom.contains(v))
                        out.push_back(v);
                }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PropagatorBatch> group_batches(const std::vector<Constraint>& constraints) {
    std::vector<PropagatorBatch> batches;
    for (int i = 0; i < static_cast<int>(constraints.size()); ++i) {
        ConstraintKind k = constraint_kind(constraints[i]);
        PropagatorBatch* b = nullptr;
        for (auto& existing : batches)
            if (existing.kind == k) {
                b = &existing;
                break;
            }
        if (!b) {
            batches.push_back({k, {}});
            b = &batches.back();
        }
        b->members.push_back(i);
    }
    return batches;
}

RemovalSet prop_rel_bin(const RelBin& c, const DomainSnapshot& s) {
    RemovalSet out;
    const Domain& dx = s[c.lhs];
    if (dx.empty())
        return out;

    if (!c.rhs_is_var) {
        std::int64_t lit = c.rhs_value;
        switch (c.op) {
        case RelOp::Lt: out.add_range(c.lhs, dx, lit, dx.max()); break;
        case RelOp::Le: out.add_range(c.lhs, dx, lit + 1, dx.max()); break;
        case RelOp::Gt: out.add_range(c.lhs, dx, dx.min(), lit); break;
        case RelOp::Ge: out.add_range(c.lhs, dx, dx.min(), lit - 1); break;
        case RelOp::Eq:
            for (std::int64_t v : dx.values())
                if (v != lit)
                    out.add_value(c.lhs, dx, v);
            break;
        case RelOp::Ne: out.add_value(c.lhs, dx, lit); break;
        }
        return out;
    }

    const Domain& dy = s[c.rhs_var];
    if (dy.empty())
        return out;
    Int128 k = c.rhs_value;

    auto keep_x = [&](auto pred) {
        for (std::int64_t v : dx.values())
            if (!pred(Int128{v}))
                out.add_value(c.lhs, dx, v);
    };
    auto keep_y = [&](auto pred) {
        for (std::int64_t w : dy.values())
            if (!pred(Int128{w}))
                out.add_value(c.rhs_var, dy, w);
    };

    switch (c.op) {
    case RelOp::Lt: // x < y + k
        keep_x([&](Int128 v) { return v < Int128{dy.max()} + k; });
        keep_y([&](Int128 w) { return Int128{dx.min()} < w + k; });
        break;
    case RelOp::Le:
        keep_x([&](Int128 v) { return v <= Int128{dy.max()} + k; });
        keep_y([&](Int128 w) { return Int128{dx.min()} <= w + k; });
        break;
    case RelOp::Gt: // x > y + k
        keep_x([&](Int128 v) { return v > Int128{dy.min()} + k; });
        keep_y([&](Int128 w) { return Int128{dx.max()} > w + k; });
        break;
    case RelOp::Ge:
        keep_x([&](Int128 v) { return v >= Int128{dy.min()} + k; });
        keep_y([&](Int128 w) { return Int128{dx.max()} >= w + k; });
        break;
    case RelOp::Eq: // domain-consistent: x = y + k
        keep_x([&](Int128 v) { return fits_i64(v - k) && dy.contains(static_cast<std::int64_t>(v - k)); });
        keep_y([&](Int128 w) { return fits_i64(w + k) && dx.contains(static_cast<std::int64_t>(w + k)); });
        break;
    case RelOp::Ne:
        if (dy.is_singleton()) {
            Int128 forbidden = Int128{dy.min()} + k;
            if (fits_i64(forbidden))
                out.add_value(c.lhs, dx, static_cast<std::int64_t>(forbidden));
        }
        if (dx.is_singleton()) {
            Int128 forbidden = Int128{dx.min()} - k;
            if (fits_i64(forbidden))
                out.add_value(c.rhs_var, dy, static_cast<std::int64_t>(forbidden));
        }
        break;
    }
    return out;
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflowError("overflow in linear propagation");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflowError("overflow in linear propagation");
    return r;
}

// Bounds filtering for sum(a_i * x_i) <= bound. Appends removals to out.
void filter_linear_le(const std::vector<LinTerm>& terms, std::int64_t bound,
                      const DomainSnapshot& s, RemovalSet& out) {
    std::vector<std::int64_t> term_min(terms.size());
    std::int64_t total_min = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Domain& d = s[terms[i].var];
        if (d.empty())
            return;
        term_min[i] = terms[i].coeff > 0 ? checked_mul(terms[i].coeff, d.min())
                                         : checked_mul(terms[i].coeff, d.max());
        total_min = checked_add(total_min, term_min[i]);
    }
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const Domain& d = s[terms[j].var];
        std::int64_t rest = checked_add(total_min, -term_min[j]); // min of the other terms
        // a_j * v must be <= bound - rest
        Int128 budget = Int128{bound} - Int128{rest};
        Int128 a = terms[j].coeff;
        for (std::int64_t v : d.values()) {
            if (a * Int128{v} > budget)
                out.add_value(terms[j].var, d, v);
        }
    }
}

} // namespace

RemovalSet prop_linear(const Linear& c, const DomainSnapshot& s) {
    RemovalSet out;
    filter_linear_le(c.terms, c.bound, s, out);
    if (c.op == LinOp::Eq) {
        // Apply the >= direction as sum(-a_i * x_i) <= -bound.
        std::vector<LinTerm> negated = c.terms;
        for (auto& t : negated)
            t.coeff = checked_mul(t.coeff, -1);
        std::int64_t neg_bound = checked_mul(c.bound, -1);
        filter_linear_le(negated, neg_bound, s, out);
    }
    return out;
}

RemovalSet prop_alldiff_fc(const AllDifferent& c, const DomainSnapshot& s) {
    RemovalSet out;
    for (std::size_t i = 0; i < c.vars.size(); ++i) {
        const Domain& di = s[c.vars[i]];
        if (!di.is_singleton())
            continue;
        std::int64_t v = di.min();
        for (std::size_t j = 0; j < c.vars.size(); ++j) {
            if (j == i)
                continue;
            out.add_value(c.vars[j], s[c.vars[j]], v);
        }
    }
    return out;
}

namespace {

// Matching-based alldifferent filtering: find a maximum matching in the
// variable-value graph, then keep only edges that are in the matching, lie
// in a strongly connected component of the residual graph, or are reachable
// from an unmatched value.
struct AlldiffGraph {
    int n = 0;                                    // variables
    int m = 0;                                    // distinct values
    std::vector<std::int64_t> value_of;           // value index -> value
    std::vector<std::vector<int>> var_values;     // var index -> value indices
    std::vector<int> match_var;                   // var -> value index or -1
    std::vector<int> match_val;                   // value index -> var or -1

    bool try_augment(int var, std::vector<bool>& visited) {
        for (int j : var_values[var]) {
            if (visited[j])
                continue;
            visited[j] = true;
            if (match_val[j] < 0 || try_augment(match_val[j], visited)) {
                match_var[var] = j;
                match_val[j] = var;
                return true;
            }
        }
        return false;
    }
};

void tarjan_scc(const std::vector<std::vector<int>>& adj, std::vector<int>& comp) {
    int n = static_cast<int>(adj.size());
    comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    int next_index = 0, next_comp = 0;
    // Iterative Tarjan; frame holds (node, child position).
    std::vector<std::pair<int, std::size_t>> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            auto& [u, ci] = frames.back();
            if (ci == 0) {
                index[u] = low[u] = next_index++;
                stack.push_back(u);
                on_stack[u] = true;
            }
            if (ci < adj[u].size()) {
                int v = adj[u][ci++];
                if (index[v] < 0) {
                    frames.push_back({v, 0});
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], index[v]);
                }
            } else {
                if (low[u] == index[u]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if (w == u)
                            break;
                    }
                    ++next_comp;
                }
                int u_done = u;
                frames.pop_back();
                if (!frames.empty())
                    low[frames.back().first] = std::min(low[frames.back().first], low[u_done]);
            }
        }
    }
}

} // namespace

RemovalSet prop_alldiff_gac(const AllDifferent& c, const DomainSnapshot& s) {
    RemovalSet out;
    AlldiffGraph g;
    g.n = static_cast<int>(c.vars.size());

    std::vector<std::int64_t> universe;
    for (VarId v : c.vars)
        for (std::int64_t val : s[v].values())
            universe.push_back(val);
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    g.m = static_cast<int>(universe.size());
    g.value_of = universe;

    auto value_index = [&](std::int64_t v) {
        return static_cast<int>(std::lower_bound(universe.begin(), universe.end(), v) -
                                universe.begin());
    };

    g.var_values.resize(g.n);
    for (int i = 0; i < g.n; ++i)
        for (std::int64_t val : s[c.vars[i]].values())
            g.var_values[i].push_back(value_index(val));

    g.match_var.assign(g.n, -1);
    g.match_val.assign(g.m, -1);
    for (int i = 0; i < g.n; ++i) {
        std::vector<bool> visited(g.m, false);
        g.try_augment(i, visited);
    }

    for (int i = 0; i < g.n; ++i) {
        if (g.match_var[i] < 0) {
            // No matching covers all variables: signal failure by wiping the
            // lowest unmatched member.
            out.add_all(c.vars[i], s[c.vars[i]]);
            return out;
        }
    }

    // Residual orientation: matched edges var -> value, others value -> var.
    int total = g.n + g.m;
    std::vector<std::vector<int>> adj(total);
    for (int i = 0; i < g.n; ++i)
        for (int j : g.var_values[i]) {
            if (g.match_var[i] == j)
                adj[i].push_back(g.n + j);
            else
                adj[g.n + j].push_back(i);
        }

    std::vector<int> comp;
    tarjan_scc(adj, comp);

    // Nodes reachable from unmatched values (alternating paths from free values).
    std::vector<bool> reached(total, false);
    std::vector<int> queue;
    for (int j = 0; j < g.m; ++j)
        if (g.match_val[j] < 0) {
            reached[g.n + j] = true;
            queue.push_back(g.n + j);
        }
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        for (int v : adj[u])
            if (!reached[v]) {
                reached[v] = true;
                queue.push_back(v);
            }
    }

    for (int i = 0; i < g.n; ++i) {
        const Domain& d = s[c.vars[i]];
        for (int j : g.var_values[i]) {
            if (g.match_var[i] == j)
                continue;
            if (comp[i] == comp[g.n + j])
                continue;
            if (reached[g.n + j])
                continue;
            out.add_value(c.vars[i], d, g.value_of[j]);
        }
    }
    return out;
}

RemovalSet propagate_one(const Constraint& c, const DomainSnapshot& s, AlldiffLevel level) {
    if (const auto* rb = std::get_if<RelBin>(&c))
        return prop_rel_bin(*rb, s);
    if (const auto* lin = std::get_if<Linear>(&c))
        return prop_linear(*lin, s);
    const auto& ad = std::get<AllDifferent>(c);
    return level == AlldiffLevel::ArcConsistent ? prop_alldiff_gac(ad, s) : prop_alldiff_fc(ad, s);
}

RemovalSet run_batch(const std::vector<Constraint>& constraints, const PropagatorBatch& batch,
                     const DomainSnapshot& s, const PropagationConfig& cfg) {
    int count = static_cast<int>(batch.members.size());
    std::vector<RemovalSet> parts(count);

    if (cfg.thread_count > 1) {
        std::exception_ptr pending;
#ifdef _OPENMP
#pragma omp parallel for num_threads(cfg.thread_count) schedule(static)
#endif
        for (int i = 0; i < count; ++i) {
            try {
                parts[i] = propagate_one(constraints[batch.members[i]], s, cfg.alldiff);
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
    } else {
        for (int i = 0; i < count; ++i)
            parts[i] = propagate_one(constraints[batch.members[i]], s, cfg.alldiff);
    }

    RemovalSet merged;
    for (const auto& p : parts)
        merged.merge_from(p);
    return merged;
}

RoundResult propagate_round(std::vector<Domain>& domains,
                            const std::vector<Constraint>& constraints,
                            const std::vector<PropagatorBatch>& batches,
                            const PropagationConfig& cfg, const ModifyHook& on_before_modify) {
    DomainSnapshot snap(domains);
    RemovalSet merged;
    for (const auto& b : batches)
        merged.merge_from(run_batch(constraints, b, snap, cfg));

    bool changed = false;
    for (const auto& e : merged.entries()) {
        Domain& d = domains[static_cast<std::size_t>(e.var)];
        bool would_change = false;
        auto words = d.words();
        for (std::size_t i = 0; i < words.size() && i < e.mask.size(); ++i)
            if (words[i] & e.mask[i]) {
                would_change = true;
                break;
            }
        if (!would_change)
            continue;
        if (on_before_modify)
            on_before_modify(e.var);
        d.remove_mask(e.mask);
        changed = true;
    }

    if (changed) {
        for (VarId v = 0; v < static_cast<VarId>(domains.size()); ++v)
            if (domains[static_cast<std::size_t>(v)].empty())
                return {RoundResult::Status::Failed, v};
        return {RoundResult::Status::Changed, -1};
    }
    return {RoundResult::Status::Stable, -1};
}

FixpointResult propagate_fixpoint(std::vector<Domain>& domains,
                                  const std::vector<Constraint>& constraints,
                                  const std::vector<PropagatorBatch>& batches,
                                  const PropagationConfig& cfg, const ModifyHook& on_before_modify) {
    FixpointResult res;
    while (true) {
        RoundResult r = propagate_round(domains, constraints, batches, cfg, on_before_modify);
        ++res.rounds;
        if (r.status == RoundResult::Status::Failed) {
            res.failed = true;
            res.failed_var = r.failed_var;
            return res;
        }
        if (r.status == RoundResult::Status::Stable)
            return res;
    }
}

} // namespace fd
