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

#pragma once

#include "treewit/model.hpp"

#include <cstdint>
#include <vector>

namespace treewit {

/// A random model together with a tree partition it was built around.
struct GeneratedInstance {
    ProbabilisticModel model;
    std::vector<StateSet> blocks;
};

struct LayeredOptions {
    std::size_t layers = 20;
    std::size_t width = 6;
    /// Entry states per layer, i.e. the interface size of each block.
    std::size_t interface = 2;
    /// Extra intra-layer edges per state, on average.
    double extra_edges = 1.0;
    ModelKind kind = ModelKind::dtmc;
    std::size_t max_actions = 2;
};

/// Chain of layers, each a block of `width` states that is entered through its
/// first `interface` states, followed by a single goal block. Every state
/// leaks some probability, so the goal value decays with the depth.
GeneratedInstance generate_layered(const LayeredOptions& opts, std::uint64_t seed);

struct TreeModelOptions {
    std::size_t min_blocks = 2;
    std::size_t max_blocks = 6;    // non-goal blocks
    std::size_t max_block_size = 4;
    std::size_t max_goal_blocks = 2;
    std::size_t max_states = 20;
    double edge_density = 0.4;
    ModelKind kind = ModelKind::dtmc;
    std::size_t max_actions = 2;
};

/// Random model whose edges only run inside blocks or from a block to one of
/// its children in a random block tree; goal states form leaf blocks.
GeneratedInstance generate_tree_model(const TreeModelOptions& opts, std::uint64_t seed);

/// Unstructured random model: each state gets up to `max_succ` successors.
/// State n-1 is the only goal; state 0 is initial.
ProbabilisticModel generate_random_model(std::size_t n, ModelKind kind, std::uint64_t seed, std::size_t max_succ = 3,
                                         std::size_t max_actions = 2);

/// Random digraph without self-loops, each edge present with probability p.
UnderlyingGraph generate_random_graph(std::size_t n, double p, std::uint64_t seed);

} // namespace treewit
