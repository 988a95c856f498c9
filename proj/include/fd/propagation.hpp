// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fd/model.hpp"

namespace fd {

/// Read-only view of all current domains, frozen by protocol for the
/// duration of a propagation round: propagators only read through it.
class DomainSnapshot {
  public:
    explicit DomainSnapshot(std::span<const Domain> doms) : doms_(doms) {}
    const Domain& operator[](VarId v) const { return doms_[static_cast<std::size_t>(v)]; }
    int num_vars() const { return static_cast<int>(doms_.size()); }

  private:
    std::span<const Domain> doms_;
};

/// Values each propagator invocation wants removed, per variable, as bit
/// masks aligned to that variable's domain. Only values present in the
/// snapshot are ever recorded. Union (bitwise OR) is the merge operation.
class RemovalSet {
  public:
    struct Entry {
        VarId var;
        std::vector<std::uint64_t> mask;
    };

    bool empty() const;

    /// Record removal of v from var (no-op when v is absent from dom).
    void add_value(VarId var, const Domain& dom, std::int64_t v);
    /// Record removal of every present value in [lo, hi] (clamped to dom).
    void add_range(VarId var, const Domain& dom, std::int64_t lo, std::int64_t hi);
    /// Record removal of every present value.
    void add_all(VarId var, const Domain& dom);

    void merge_from(const RemovalSet& other);

    const std::vector<Entry>& entries() const { return entries_; }

    /// Present values marked for removal from var (test/inspection helper).
    std::vector<std::int64_t> removed_values(VarId var, const Domain& dom) const;

  private:
    std::vector<std::uint64_t>& mask_for(VarId var, const Domain& dom);
    std::vector<Entry> entries_;
};

enum class AlldiffLevel {
    ForwardChecking, // singleton members prune their value from peers
    ArcConsistent,   // matching-based filtering, removes all unsupported values
};

struct PropagationConfig {
    int thread_count = 1; // 1 = fully sequential
    AlldiffLevel alldiff = AlldiffLevel::ArcConsistent;
};

/// All constraints of one type, propagated lock-step against one snapshot.
struct PropagatorBatch {
    ConstraintKind kind;
    std::vector<int> members; // indices into Model::constraints
};

/// Stable partition of the constraint list by type tag; batch order follows
/// first appearance, members keep source order.
std::vector<PropagatorBatch> group_batches(const std::vector<Constraint>& constraints);

// Individual propagators. Each returns the values with no support under
// the strength documented for its constraint class.
RemovalSet prop_rel_bin(const RelBin& c, const DomainSnapshot& s);
RemovalSet prop_linear(const Linear& c, const DomainSnapshot& s);
RemovalSet prop_alldiff_fc(const AllDifferent& c, const DomainSnapshot& s);
RemovalSet prop_alldiff_gac(const AllDifferent& c, const DomainSnapshot& s);

RemovalSet propagate_one(const Constraint& c, const DomainSnapshot& s, AlldiffLevel level);

/// Union of every member's RemovalSet against the same snapshot. Members
/// are independent; with thread_count > 1 they run in parallel. The result
/// does not depend on execution order.
RemovalSet run_batch(const std::vector<Constraint>& constraints, const PropagatorBatch& batch,
                     const DomainSnapshot& s, const PropagationConfig& cfg);

struct RoundResult {
    enum class Status { Changed, Stable, Failed };
    Status status = Status::Stable;
    VarId failed_var = -1; // lowest empty var id when Failed
};

using ModifyHook = std::function<void(VarId)>;

/// One bulk-synchronous round: snapshot once, run every batch against it,
/// merge all removals by union, apply atomically. on_before_modify fires
/// before the first write to each modified variable.
RoundResult propagate_round(std::vector<Domain>& domains, const std::vector<Constraint>& constraints,
                            const std::vector<PropagatorBatch>& batches,
                            const PropagationConfig& cfg, const ModifyHook& on_before_modify = {});

struct FixpointResult {
    bool failed = false;
    VarId failed_var = -1;
    int rounds = 0;
};

/// Rounds until Stable or Failed. Terminates: domains strictly shrink on
/// every Changed round.
FixpointResult propagate_fixpoint(std::vector<Domain>& domains,
                                  const std::vector<Constraint>& constraints,
                                  const std::vector<PropagatorBatch>& batches,
                                  const PropagationConfig& cfg,
                                  const ModifyHook& on_before_modify = {});

} // namespace fd
