// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <limits>

#include "fd/propagation.hpp"
#include "fd/rng.hpp"
#include "oracle.hpp"

using namespace fd;

namespace {

std::vector<std::int64_t> removed(const RemovalSet& rs, VarId v, const Domain& d) {
    return rs.removed_values(v, d);
}

// Random subset of {lo..hi} with at least one member.
Domain random_subset(Rng& rng, std::int64_t lo, std::int64_t hi) {
    Domain d(lo, hi);
    for (std::int64_t v = lo; v <= hi; ++v)
        if (rng.below(3) == 0 && d.size() > 1)
            d.remove(v);
    return d;
}

} // namespace

TEST_CASE("rel_bin: literal bound") {
    std::vector<Domain> doms = {Domain(1, 5)};
    DomainSnapshot s(doms);
    RelBin c{0, RelOp::Gt, false, 0, 3};
    RemovalSet rs = prop_rel_bin(c, s);
    CHECK(removed(rs, 0, doms[0]) == std::vector<std::int64_t>{1, 2, 3});
}

TEST_CASE("rel_bin: x < y bounds") {
    std::vector<Domain> doms = {Domain(4, 5), Domain(1, 10)};
    DomainSnapshot s(doms);
    RelBin c{0, RelOp::Lt, true, 1, 0};
    RemovalSet rs = prop_rel_bin(c, s);
    CHECK(removed(rs, 0, doms[0]).empty());
    CHECK(removed(rs, 1, doms[1]) == std::vector<std::int64_t>{1, 2, 3, 4});
}

TEST_CASE("rel_bin: already consistent equality") {
    std::vector<Domain> doms = {Domain(3, 3), Domain(3, 3)};
    DomainSnapshot s(doms);
    RelBin c{0, RelOp::Eq, true, 1, 0};
    CHECK(prop_rel_bin(c, s).empty());
}

TEST_CASE("rel_bin: offset forms") {
    // x != y + 2, y is singleton {3} -> x loses 5
    std::vector<Domain> doms = {Domain(1, 8), Domain(3, 3)};
    DomainSnapshot s(doms);
    RelBin c{0, RelOp::Ne, true, 1, 2};
    RemovalSet rs = prop_rel_bin(c, s);
    CHECK(removed(rs, 0, doms[0]) == std::vector<std::int64_t>{5});
}

TEST_CASE("linear: 2x + 3y <= 8") {
    std::vector<Domain> doms = {Domain(1, 5), Domain(1, 5)};
    DomainSnapshot s(doms);
    Linear c{{{2, 0}, {3, 1}}, LinOp::Le, 8};
    RemovalSet rs = prop_linear(c, s);
    CHECK(removed(rs, 0, doms[0]) == std::vector<std::int64_t>{3, 4, 5});
    CHECK(removed(rs, 1, doms[1]) == std::vector<std::int64_t>{3, 4, 5});
}

TEST_CASE("linear: slack and wipeout") {
    std::vector<Domain> doms = {Domain(1, 5)};
    DomainSnapshot s(doms);
    CHECK(prop_linear(Linear{{{1, 0}}, LinOp::Le, 9}, s).empty());
    RemovalSet rs = prop_linear(Linear{{{1, 0}}, LinOp::Le, 0}, s);
    CHECK(removed(rs, 0, doms[0]) == std::vector<std::int64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("linear: overflow detection") {
    std::int64_t big = std::numeric_limits<std::int64_t>::max() - 3;
    std::vector<Domain> doms = {Domain(big, big + 2), Domain(big, big + 2)};
    DomainSnapshot s(doms);
    Linear c{{{std::numeric_limits<std::int64_t>::max() / 2, 0}, {3, 1}}, LinOp::Le, 10};
    CHECK_THROWS_AS(prop_linear(c, s), ArithmeticOverflowError);
}

TEST_CASE("alldiff forward checking") {
    std::vector<Domain> doms = {Domain(1, 1), Domain(1, 2), Domain(1, 3)};
    DomainSnapshot s(doms);
    AllDifferent c{{0, 1, 2}};
    RemovalSet rs = prop_alldiff_fc(c, s);
    CHECK(removed(rs, 1, doms[1]) == std::vector<std::int64_t>{1});
    CHECK(removed(rs, 2, doms[2]) == std::vector<std::int64_t>{1});

    std::vector<Domain> no_singleton = {Domain(1, 2), Domain(1, 2), Domain(1, 3)};
    CHECK(prop_alldiff_fc(c, DomainSnapshot(no_singleton)).empty());

    std::vector<Domain> two = {Domain(1, 1), Domain(1, 1)};
    RemovalSet pigeon = prop_alldiff_fc(AllDifferent{{0, 1}}, DomainSnapshot(two));
    CHECK(removed(pigeon, 1, two[1]) == std::vector<std::int64_t>{1});
}

TEST_CASE("alldiff gac: Hall set") {
    std::vector<Domain> doms = {Domain(1, 2), Domain(1, 2), Domain(1, 3)};
    DomainSnapshot s(doms);
    RemovalSet rs = prop_alldiff_gac(AllDifferent{{0, 1, 2}}, s);
    CHECK(removed(rs, 2, doms[2]) == std::vector<std::int64_t>{1, 2});
    CHECK(removed(rs, 0, doms[0]).empty());
}

TEST_CASE("alldiff gac: disjoint domains") {
    std::vector<Domain> doms = {Domain(1, 2), Domain(3, 4), Domain(5, 6)};
    CHECK(prop_alldiff_gac(AllDifferent{{0, 1, 2}}, DomainSnapshot(doms)).empty());
}

TEST_CASE("alldiff gac: pigeonhole wipeout") {
    std::vector<Domain> doms = {Domain(1, 2), Domain(1, 2), Domain(1, 2)};
    RemovalSet rs = prop_alldiff_gac(AllDifferent{{0, 1, 2}}, DomainSnapshot(doms));
    bool wiped = false;
    for (VarId v = 0; v < 3; ++v)
        if (removed(rs, v, doms[static_cast<std::size_t>(v)]).size() == 2)
            wiped = true;
    CHECK(wiped);
}

TEST_CASE("group_batches") {
    Constraint rb = RelBin{0, RelOp::Lt, false, 0, 3};
    Constraint ad = AllDifferent{{0, 1}};
    Constraint lin = Linear{{{1, 0}}, LinOp::Le, 3};

    auto batches = group_batches({rb, ad, rb, lin});
    REQUIRE(batches.size() == 3);
    CHECK(batches[0].kind == ConstraintKind::RelBin);
    CHECK(batches[0].members == std::vector<int>{0, 2});
    CHECK(batches[1].members == std::vector<int>{1});
    CHECK(batches[2].members == std::vector<int>{3});

    CHECK(group_batches({}).empty());
    CHECK(group_batches({lin, lin}).size() == 1);
}

TEST_CASE("run_batch equals union of member results") {
    // x1 in 1..5, x2 in 1..10, constraints x1 > 3 and x1 < x2.
    std::vector<Domain> doms = {Domain(1, 5), Domain(1, 10)};
    std::vector<Constraint> cs = {RelBin{0, RelOp::Gt, false, 0, 3},
                                  RelBin{0, RelOp::Lt, true, 1, 0}};
    auto batches = group_batches(cs);
    REQUIRE(batches.size() == 1);
    DomainSnapshot s(doms);
    RemovalSet rs = run_batch(cs, batches[0], s, {});
    CHECK(removed(rs, 0, doms[0]) == std::vector<std::int64_t>{1, 2, 3});
    CHECK(removed(rs, 1, doms[1]) == std::vector<std::int64_t>{1});

    // Singleton batch gives the member's own result.
    PropagatorBatch single{ConstraintKind::RelBin, {0}};
    RemovalSet one = run_batch(cs, single, s, {});
    RemovalSet direct = prop_rel_bin(std::get<RelBin>(cs[0]), s);
    CHECK(one.removed_values(0, doms[0]) == direct.removed_values(0, doms[0]));
}

TEST_CASE("propagate_round outcomes") {
    std::vector<Constraint> cs = {RelBin{0, RelOp::Gt, false, 0, 3},
                                  RelBin{0, RelOp::Lt, true, 1, 0}};
    auto batches = group_batches(cs);
    std::vector<Domain> doms = {Domain(1, 5), Domain(1, 10)};
    RoundResult r = propagate_round(doms, cs, batches, {});
    CHECK(r.status == RoundResult::Status::Changed);

    std::vector<Domain> untouched = {Domain(1, 5)};
    CHECK(propagate_round(untouched, {}, {}, {}).status == RoundResult::Status::Stable);

    std::vector<Constraint> impossible = {RelBin{0, RelOp::Gt, false, 0, 5}};
    std::vector<Domain> tiny = {Domain(1, 2)};
    RoundResult f = propagate_round(tiny, impossible, group_batches(impossible), {});
    CHECK(f.status == RoundResult::Status::Failed);
    CHECK(f.failed_var == 0);
}

TEST_CASE("fixpoint on the two-variable example") {
    std::vector<Constraint> cs = {RelBin{0, RelOp::Gt, false, 0, 3},
                                  RelBin{0, RelOp::Lt, true, 1, 0}};
    auto batches = group_batches(cs);
    std::vector<Domain> doms = {Domain(1, 5), Domain(1, 10)};
    FixpointResult fx = propagate_fixpoint(doms, cs, batches, {});
    CHECK_FALSE(fx.failed);
    CHECK(doms[0].values() == std::vector<std::int64_t>{4, 5});
    CHECK(doms[1].values() == std::vector<std::int64_t>{5, 6, 7, 8, 9, 10});
}

TEST_CASE("fixpoint: no constraints / pigeonhole failure") {
    std::vector<Domain> doms = {Domain(1, 3)};
    FixpointResult fx = propagate_fixpoint(doms, {}, {}, {});
    CHECK_FALSE(fx.failed);
    CHECK(fx.rounds == 1);
    CHECK(doms[0].size() == 3);

    std::vector<Constraint> pigeon = {AllDifferent{{0, 1, 2}}};
    std::vector<Domain> tight = {Domain(1, 2), Domain(1, 2), Domain(1, 2)};
    FixpointResult fail = propagate_fixpoint(tight, pigeon, group_batches(pigeon),
                                             {1, AlldiffLevel::ArcConsistent});
    CHECK(fail.failed);
}

TEST_CASE("contraction: removal sets only name present values") {
    Rng rng(7);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<Domain> doms;
        for (int v = 0; v < 3; ++v)
            doms.push_back(random_subset(rng, 0, 7));
        DomainSnapshot s(doms);
        std::vector<Constraint> cs = {
            RelBin{0, static_cast<RelOp>(rng.below(6)), true, 1,
                   static_cast<std::int64_t>(rng.range(-2, 2))},
            Linear{{{rng.range(1, 3), 0}, {rng.range(-3, -1), 2}}, LinOp::Le, rng.range(-4, 10)},
            AllDifferent{{0, 1, 2}},
        };
        for (const auto& c : cs) {
            for (AlldiffLevel lvl : {AlldiffLevel::ForwardChecking, AlldiffLevel::ArcConsistent}) {
                RemovalSet rs = propagate_one(c, s, lvl);
                for (const auto& e : rs.entries()) {
                    const Domain& d = doms[static_cast<std::size_t>(e.var)];
                    auto dw = d.words();
                    for (std::size_t i = 0; i < e.mask.size(); ++i) {
                        std::uint64_t present = i < dw.size() ? dw[i] : 0;
                        CHECK((e.mask[i] & ~present) == 0);
                    }
                }
            }
        }
    }
}

TEST_CASE("soundness: propagators never remove supported values") {
    Rng rng(21);
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<Domain> doms;
        for (int v = 0; v < 4; ++v)
            doms.push_back(random_subset(rng, 1, 8));
        DomainSnapshot s(doms);
        std::vector<Constraint> cs = {
            RelBin{0, static_cast<RelOp>(rng.below(6)), true, 1,
                   static_cast<std::int64_t>(rng.range(-2, 2))},
            RelBin{2, static_cast<RelOp>(rng.below(6)), false, 0,
                   static_cast<std::int64_t>(rng.range(0, 9))},
            Linear{{{rng.range(1, 3), 0}, {rng.range(1, 2), 1}, {rng.range(-2, -1), 3}},
                   rng.below(2) ? LinOp::Le : LinOp::Eq, rng.range(-5, 15)},
            AllDifferent{{0, 1, 2, 3}},
        };
        for (const auto& c : cs) {
            auto unsupported = oracle::unsupported_values(c, doms);
            for (AlldiffLevel lvl : {AlldiffLevel::ForwardChecking, AlldiffLevel::ArcConsistent}) {
                RemovalSet rs = propagate_one(c, s, lvl);
                for (const auto& e : rs.entries()) {
                    const Domain& d = doms[static_cast<std::size_t>(e.var)];
                    // A variable with no supported value at all may be wiped
                    // even beyond the per-value oracle (failure signaling).
                    if (unsupported[e.var].size() == static_cast<std::size_t>(d.size()))
                        continue;
                    for (std::int64_t v : rs.removed_values(e.var, d)) {
                        bool is_unsupported =
                            std::find(unsupported[e.var].begin(), unsupported[e.var].end(), v) !=
                            unsupported[e.var].end();
                        CHECK(is_unsupported);
                    }
                }
            }
        }
    }
}

TEST_CASE("monotonicity on random snapshot pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Domain> larger, smaller;
        for (int v = 0; v < 3; ++v) {
            Domain big = random_subset(rng, 0, 7);
            Domain small = big;
            for (std::int64_t val : big.values())
                if (small.size() > 1 && rng.below(3) == 0)
                    small.remove(val);
            larger.push_back(big);
            smaller.push_back(small);
        }
        std::vector<Constraint> cs = {
            RelBin{0, static_cast<RelOp>(rng.below(6)), true, 1, 0},
            Linear{{{2, 0}, {1, 1}, {-1, 2}}, LinOp::Le, rng.range(-2, 12)},
            AllDifferent{{0, 1, 2}},
        };
        auto batches = group_batches(cs);
        std::vector<Domain> a = smaller, b = larger;
        bool a_failed = propagate_fixpoint(a, cs, batches, {}).failed;
        bool b_failed = propagate_fixpoint(b, cs, batches, {}).failed;
        // A failed store stands for all-empty domains, a subset of anything.
        if (b_failed)
            CHECK(a_failed);
        if (a_failed || b_failed)
            continue;
        for (int v = 0; v < 3; ++v)
            for (std::int64_t val : a[static_cast<std::size_t>(v)].values())
                CHECK(b[static_cast<std::size_t>(v)].contains(val));
    }
}

TEST_CASE("determinism: run_batch invariant under member order") {
    Rng rng(41);
    std::vector<Domain> doms = {Domain(1, 6), Domain(1, 6), Domain(1, 6)};
    std::vector<Constraint> cs;
    for (int i = 0; i < 6; ++i)
        cs.push_back(RelBin{static_cast<VarId>(rng.below(3)), static_cast<RelOp>(rng.below(6)),
                            true, static_cast<VarId>(rng.below(3)),
                            static_cast<std::int64_t>(rng.range(-1, 1))});
    PropagatorBatch batch{ConstraintKind::RelBin, {0, 1, 2, 3, 4, 5}};
    DomainSnapshot s(doms);
    RemovalSet ref = run_batch(cs, batch, s, {});
    for (int shuffle = 0; shuffle < 8; ++shuffle) {
        PropagatorBatch shuffled = batch;
        for (std::size_t i = shuffled.members.size(); i > 1; --i)
            std::swap(shuffled.members[i - 1], shuffled.members[rng.below(i)]);
        RemovalSet rs = run_batch(cs, shuffled, s, {});
        for (VarId v = 0; v < 3; ++v)
            CHECK(rs.removed_values(v, doms[static_cast<std::size_t>(v)]) ==
                  ref.removed_values(v, doms[static_cast<std::size_t>(v)]));
    }
}

TEST_CASE("parallel engine matches sequential engine") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Domain> doms;
        for (int v = 0; v < 5; ++v)
            doms.push_back(random_subset(rng, 0, 9));
        std::vector<Constraint> cs;
        for (int i = 0; i < 6; ++i)
            cs.push_back(RelBin{static_cast<VarId>(rng.below(5)), static_cast<RelOp>(rng.below(6)),
                                true, static_cast<VarId>(rng.below(5)), 0});
        cs.push_back(AllDifferent{{0, 1, 2}});
        auto batches = group_batches(cs);

        std::vector<Domain> seq = doms, par = doms;
        FixpointResult a = propagate_fixpoint(seq, cs, batches, {1, AlldiffLevel::ArcConsistent});
        FixpointResult b = propagate_fixpoint(par, cs, batches, {4, AlldiffLevel::ArcConsistent});
        CHECK(a.failed == b.failed);
        if (!a.failed)
            CHECK(seq == par);
    }
}

TEST_CASE("strength ordering: gac fixpoint within fc fixpoint") {
    std::vector<Constraint> cs = {AllDifferent{{0, 1, 2}}};
    auto batches = group_batches(cs);
    std::vector<Domain> fc_doms = {Domain(1, 2), Domain(1, 2), Domain(1, 3)};
    std::vector<Domain> gac_doms = fc_doms;
    propagate_fixpoint(fc_doms, cs, batches, {1, AlldiffLevel::ForwardChecking});
    FixpointResult g = propagate_fixpoint(gac_doms, cs, batches, {1, AlldiffLevel::ArcConsistent});
    CHECK_FALSE(g.failed);
    CHECK(gac_doms[2].values() == std::vector<std::int64_t>{3});
    // Strict containment on the Hall instance.
    CHECK(fc_doms[2].size() == 3);
    for (int v = 0; v < 3; ++v)
        for (std::int64_t val : gac_doms[static_cast<std::size_t>(v)].values())
            CHECK(fc_doms[static_cast<std::size_t>(v)].contains(val));
}
