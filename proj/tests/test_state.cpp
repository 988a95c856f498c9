// Copyright 2026 The fdsolver Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fd/rng.hpp"
#include "fd/state.hpp"

using namespace fd;

namespace {

std::vector<Domain> three_domains() {
    return {Domain(1, 5), Domain(0, 9), Domain(-3, 3)};
}

} // namespace

TEST_CASE("save on first modification only") {
    SearchStore store(three_domains());
    store.push_level();
    store.push_level();
    store.push_level(); // level 3

    store.save_on_modify(0);
    CHECK(store.stack_depth(0) == 1);
    CHECK(store.top_level(0) == 3);
    store.domains()[0].remove(1);

    store.save_on_modify(0); // second modification at same level: no-op
    CHECK(store.stack_depth(0) == 1);
}

TEST_CASE("levels stack in increasing order") {
    SearchStore store(three_domains());
    store.push_level();
    store.save_on_modify(0);
    store.domains()[0].remove(1);
    store.push_level();
    store.save_on_modify(0);
    store.domains()[0].remove(2);
    CHECK(store.stack_depth(0) == 2);
    CHECK(store.top_level(0) == 2);
}

TEST_CASE("single save and restore round-trip") {
    SearchStore store(three_domains());
    Domain original = store.domain(0);
    store.push_level();
    store.save_on_modify(0);
    store.domains()[0].remove_below(4);
    CHECK(store.domain(0) != original);
    store.restore_to_level(0);
    CHECK(store.domain(0) == original);
    CHECK(store.stack_depth(0) == 0);
}

TEST_CASE("restore at current level is a no-op") {
    SearchStore store(three_domains());
    store.push_level();
    store.save_on_modify(1);
    store.domains()[1].remove(5);
    Domain snapshot = store.domain(1);
    store.restore_to_level(1);
    CHECK(store.domain(1) == snapshot);
    CHECK(store.stack_depth(1) == 1);
}

TEST_CASE("partial restore keeps lower entries") {
    // Saves at levels 1 and 3; restoring to 1 reinstates the state on
    // entering level 3 and keeps the level-1 entry.
    SearchStore store(three_domains());
    store.push_level(); // 1
    store.save_on_modify(0);
    store.domains()[0].remove(1);
    store.push_level(); // 2
    store.push_level(); // 3
    Domain entering_level3 = store.domain(0);
    store.save_on_modify(0);
    store.domains()[0].remove(2);
    store.domains()[0].remove(3);

    store.restore_to_level(1);
    CHECK(store.domain(0) == entering_level3);
    CHECK(store.stack_depth(0) == 1);
    CHECK(store.top_level(0) == 1);
}

TEST_CASE("push and pop level counter") {
    SearchStore store(three_domains());
    CHECK(store.push_level() == 1);
    CHECK(store.push_level() == 2);
    CHECK(store.pop_level() == 1);
    CHECK(store.pop_level() == 0);
    CHECK_THROWS_AS(store.pop_level(), PopAtRootError);
}

TEST_CASE("random trace round-trips against a full-copy shadow") {
    Rng rng(77);
    SearchStore store(three_domains(), 2);
    std::vector<std::vector<Domain>> shadow; // full copy per level

    for (int step = 0; step < 1000; ++step) {
        int action = static_cast<int>(rng.below(3));
        if (action == 0 || store.level() == 0) {
            shadow.push_back(store.domains());
            store.push_level();
        } else if (action == 1) {
            VarId v = static_cast<VarId>(rng.below(3));
            Domain& d = store.domains()[static_cast<std::size_t>(v)];
            if (d.empty())
                continue;
            store.save_on_modify(v);
            switch (rng.below(3)) {
            case 0: d.remove(rng.range(d.min(), d.max())); break;
            case 1: d.remove_below(rng.range(d.min(), d.max())); break;
            default: d.remove_above(rng.range(d.min(), d.max())); break;
            }
        } else {
            store.pop_level();
            REQUIRE(store.domains() == shadow.back());
            shadow.pop_back();
        }
        // Stack discipline: no entry above the current level.
        for (VarId v = 0; v < 3; ++v)
            CHECK(store.top_level(v) <= store.level());
    }
}
