/*
 * Copyright 2026 The treewit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "oracles.hpp"

#include "treewit/chain_gen.hpp"
#include "treewit/generate.hpp"
#include "treewit/partition.hpp"

#include <doctest.h>

#include <random>

using namespace treewit;

namespace {

PartitionErrorKind defect_of(const UnderlyingGraph& g, const std::vector<StateSet>& blocks) {
    try {
        validate_partition(g, blocks);
    } catch (const PartitionError& e) {
        return e.kind();
    }
    FAIL("expected a partition error");
    return PartitionErrorKind::coverage;
}

UnderlyingGraph cycle(std::size_t k) {
    std::vector<std::pair<StateId, StateId>> e;
    for (StateId v = 0; v < k; ++v) {
        e.emplace_back(v, static_cast<StateId>((v + 1) % k));
    }
    return make_graph(k, e);
}

McpInstance small_normalized() {
    return normalize_equal_valued(lift_to_nonnegative_3d(reduce_from_partition({1, 1, 2})));
}

} // namespace

TEST_CASE("cycle in one block has width three") {
    const auto p = validate_partition(cycle(3), {{0, 1, 2}});
    CHECK(width(p) == 3);
    CHECK(p.is_path());
}

TEST_CASE("each violation is its own error") {
    const auto g = cycle(3);
    CHECK(defect_of(g, {{0, 1}, {2}}) == PartitionErrorKind::two_cycle);
    CHECK(defect_of(g, {{0, 1}}) == PartitionErrorKind::coverage);
    CHECK(defect_of(g, {{0, 1}, {1, 2}}) == PartitionErrorKind::disjointness);
    CHECK(defect_of(g, {{0, 1, 2}, {}}) == PartitionErrorKind::empty_block);
    CHECK(defect_of(g, {{0, 1, 2, 5}}) == PartitionErrorKind::unknown_state);
    CHECK(defect_of(cycle(4), {{0}, {1}, {2}, {3}}) == PartitionErrorKind::cycle);
    const auto vee = make_graph(3, {{0, 2}, {1, 2}});
    CHECK(defect_of(vee, {{0}, {1}, {2}}) == PartitionErrorKind::in_degree);
    const auto two = make_graph(2, {});
    CHECK(defect_of(two, {{0}, {1}}) == PartitionErrorKind::disconnected);
    try {
        validate_partition(g, {{0, 1}, {2}});
    } catch (const PartitionError& e) {
        CHECK(std::string(e.what()).find("quotient not a tree") != std::string::npos);
    }
}

TEST_CASE("navigation accessors") {
    // 0 -> {1, 2}; 1 -> 3; 2 -> 4 as blocks A={0}, B={1,3}, C={2}, D={4}.
    const auto g = make_graph(5, {{0, 1}, {0, 2}, {1, 3}, {2, 4}});
    const auto p = validate_partition(g, {{0}, {1, 3}, {2}, {4}}, {0});
    CHECK(p.root() == 0);
    CHECK(p.children(0) == std::vector<BlockId>{1, 2});
    CHECK(p.parent(3) == BlockId{2});
    CHECK_FALSE(p.parent(0).has_value());
    CHECK(p.inc(0) == StateSet{0});
    CHECK(p.inc(1) == StateSet{1});
    CHECK(p.out(0) == StateSet{1, 2});
    CHECK(p.exit(2) == StateSet{2});
    CHECK(p.cl(2) == StateSet{2, 4});
    CHECK(p.cl(0) == StateSet{0, 1, 2, 3, 4});
    CHECK(p.bottom_up().back() == 0);
    CHECK_FALSE(p.is_path());
    for (BlockId b = 0; b < p.num_blocks(); ++b) {
        for (StateId s : p.out(b)) {
            CHECK(p.block_of(s) != b);
            CHECK(p.parent(p.block_of(s)) == b);
        }
    }
}

TEST_CASE("singleton blocks on a path") {
    const auto g = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(width(validate_partition(g, {{0}, {1}, {2}})) == 1);
    CHECK(exact_width(g, PartitionShape::path).first == 1);
    CHECK(exact_width(g, PartitionShape::tree).first == 1);
}

TEST_CASE("an SCC forces its own width") {
    for (std::size_t k = 1; k <= 6; ++k) {
        CHECK(exact_width(cycle(k), PartitionShape::tree).first == k);
    }
}

TEST_CASE("exact width respects the cap") {
    ExactWidthOptions o;
    o.cap = 4;
    CHECK_THROWS_AS(exact_width(cycle(5), PartitionShape::tree, o), CapExceeded);
}

TEST_CASE("path width is at least tree width on random DAGs") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        std::vector<std::pair<StateId, StateId>> e;
        for (StateId a = 0; a < 8; ++a) {
            for (StateId b = a + 1; b < 8; ++b) {
                if (rng() % 4 == 0) {
                    e.emplace_back(a, b);
                }
            }
        }
        const auto g = make_graph(8, e);
        const auto [tw, tp] = exact_width(g, PartitionShape::tree);
        const auto [pw, pp] = exact_width(g, PartitionShape::path);
        CHECK(pw >= tw);
        CHECK(pp.is_path());
        CHECK(width(validate_partition(g, tp.blocks())) == tw);
    }
}

TEST_CASE("exact width equals plain enumeration up to seven vertices") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 40; ++i) {
        const auto g = generate_random_graph(1 + rng() % 7, 0.3, rng());
        CHECK(exact_width(g, PartitionShape::tree).first == oracle::min_partition_width(g, false));
        CHECK(exact_width(g, PartitionShape::path).first == oracle::min_partition_width(g, true));
    }
}

TEST_CASE("SCCs never straddle blocks of a valid partition") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 30; ++i) {
        const auto g = generate_random_graph(7, 0.25, rng());
        const auto scc = strongly_connected_components(g);
        const auto p = exact_width(g, PartitionShape::tree).second;
        for (const auto& comp : scc.members) {
            for (StateId v : comp) {
                CHECK(p.block_of(v) == p.block_of(comp.front()));
            }
        }
    }
}

TEST_CASE("bisection gadget") {
    const auto g = make_graph(2, {{0, 1}});
    const auto gp = bisection_gadget(g);
    CHECK(gp == make_graph(4, {{0, 1}, {2, 0}, {2, 1}, {0, 3}, {1, 3}}));
    std::mt19937_64 rng(34);
    for (int i = 0; i < 20; ++i) {
        const auto h = generate_random_graph(6, 0.3, rng());
        const auto hp = bisection_gadget(h);
        CHECK(hp.num_vertices == 8);
        CHECK(hp.num_edges() == h.num_edges() + 12);
        CHECK((exact_width(hp, PartitionShape::path).first <= 4) == oracle::has_oneway_bisection(h));
        // Every tree partition of the gadget is already a path partition.
        CHECK(exact_width(hp, PartitionShape::tree).first == exact_width(hp, PartitionShape::path).first);
    }
}

TEST_CASE("heuristic layering") {
    const auto dag = make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    const auto p = heuristic_layer_partition(dag);
    CHECK(p.is_path());
    CHECK(p.num_blocks() == 3);
    CHECK(heuristic_layer_partition(cycle(5)).num_blocks() == 1);
    const auto chain = build_m2(small_normalized());
    const auto hp = heuristic_layer_partition(underlying_graph(chain.model), chain.model.initial_support());
    CHECK(hp.width() == 6);
}

TEST_CASE("layer partitions of generated chains") {
    const auto inst = small_normalized();
    for (const auto& c : {build_m1(inst), build_m2(inst)}) {
        const auto p = validate_partition(c.model, c.layer_blocks());
        CHECK(p.width() == 6);
        CHECK(p.is_path());
        CHECK(p.inc(p.root()).size() == 6);
    }
}

TEST_CASE("root merging and goal splitting") {
    // Initial states in two sibling blocks get merged with their parent.
    const auto g = make_graph(4, {{0, 1}, {0, 2}, {1, 3}});
    const auto p = validate_partition(g, {{0}, {1}, {2}, {3}});
    const auto [merged, grown] = merge_root_candidates(g, p, {1, 2});
    CHECK(merged.block_of(1) == merged.root());
    CHECK(merged.block_of(2) == merged.root());
    CHECK(grown == 2);

    // Goal state 2 shares a block with 1; it can move into its own child block.
    const auto h = make_graph(3, {{0, 1}, {1, 2}});
    const auto q = validate_partition(h, {{0}, {1, 2}});
    const auto split = split_goal_blocks(h, q, {0, 0, 1}, {0});
    CHECK(split.num_blocks() == 3);
    CHECK(split.block(split.block_of(2)) == StateSet{2});
}
