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

#include <optional>
#include <utility>
#include <vector>

namespace treewit {

using BlockId = std::uint32_t;

enum class PartitionShape { tree, path };

enum class PartitionErrorKind {
    unknown_state,
    empty_block,
    disjointness,
    coverage,
    two_cycle,
    in_degree,
    cycle,
    disconnected,
    not_path,
};

const char* to_string(PartitionErrorKind kind);

class PartitionError : public ValidationError {
public:
    PartitionError(PartitionErrorKind kind, const std::string& what) : ValidationError(what), kind_(kind) {}
    PartitionErrorKind kind() const { return kind_; }

private:
    PartitionErrorKind kind_;
};

/// A partition whose quotient graph is a directed tree, with the navigation
/// accessors used by the witness search. Blocks keep their input order.
class DirectedTreePartition {
public:
    DirectedTreePartition() = default;

    std::size_t num_blocks() const { return blocks_.size(); }
    const std::vector<StateSet>& blocks() const { return blocks_; }
    const StateSet& block(BlockId b) const { return blocks_.at(b); }
    BlockId block_of(StateId s) const { return block_of_.at(s); }
    BlockId root() const { return root_; }
    std::optional<BlockId> parent(BlockId b) const;
    const std::vector<BlockId>& children(BlockId b) const { return children_.at(b); }

    /// States of B entered from parent(B), plus initial states of B.
    const StateSet& inc(BlockId b) const { return inc_.at(b); }
    /// Union of inc(C) over the children C of B.
    const StateSet& out(BlockId b) const { return out_.at(b); }
    /// States of B with a successor outside B.
    const StateSet& exit(BlockId b) const { return exit_.at(b); }
    /// Union of the blocks of the subtree rooted at B.
    const StateSet& cl(BlockId b) const { return cl_.at(b); }

    std::size_t width() const;
    bool is_path() const;
    /// Children before parents; the root comes last.
    const std::vector<BlockId>& bottom_up() const { return bottom_up_; }

    friend DirectedTreePartition validate_partition(const UnderlyingGraph& g, const std::vector<StateSet>& blocks,
                                                    const StateSet& initial_support);

private:
    std::vector<StateSet> blocks_;
    std::vector<BlockId> block_of_;
    BlockId root_ = 0;
    std::vector<std::int64_t> parent_;
    std::vector<std::vector<BlockId>> children_;
    std::vector<StateSet> inc_, out_, exit_, cl_;
    std::vector<BlockId> bottom_up_;
};

/// Checks coverage and disjointness, then that the quotient is a directed
/// tree. Self-loops of the quotient are ignored. Throws PartitionError.
DirectedTreePartition validate_partition(const UnderlyingGraph& g, const std::vector<StateSet>& blocks,
                                         const StateSet& initial_support = {});
DirectedTreePartition validate_partition(const ProbabilisticModel& m, const std::vector<StateSet>& blocks);

std::size_t width(const DirectedTreePartition& p);

/// Reports why (if at all) a block assignment fails to be a tree/path partition,
/// without building navigation data. Used on the hot path of exact_width.
std::optional<PartitionErrorKind> partition_defect(const UnderlyingGraph& g, const std::vector<BlockId>& block_of,
                                                   std::size_t num_blocks, PartitionShape shape);

struct ExactWidthOptions {
    std::size_t cap = 12;
};

/// Minimum width over all directed tree (or path) partitions, together with
/// the first optimal partition in restricted-growth order over the SCCs.
std::pair<std::size_t, DirectedTreePartition> exact_width(const UnderlyingGraph& g, PartitionShape shape,
                                                          const ExactWidthOptions& opts = {});

/// G plus fresh vertices i = |V| and e = |V|+1 with edges i->v and v->e.
UnderlyingGraph bisection_gadget(const UnderlyingGraph& g);

/// Strongly connected components in reverse topological order of the
/// condensation; comp[v] is the component index of v.
struct SccDecomposition {
    std::vector<std::uint32_t> comp;
    std::vector<StateSet> members;
};
SccDecomposition strongly_connected_components(const UnderlyingGraph& g);

/// Condenses SCCs, levels the condensation by longest path and merges level
/// ranges until the quotient is a path. Falls back to a single block.
DirectedTreePartition heuristic_layer_partition(const UnderlyingGraph& g, const StateSet& initial_support = {});

/// Merges the minimal subtree containing the root and every block holding an
/// initial state into the root. Returns the new partition and the width increase.
std::pair<DirectedTreePartition, std::size_t> merge_root_candidates(const UnderlyingGraph& g,
                                                                    const DirectedTreePartition& p,
                                                                    const StateSet& initial_support);

/// Moves goal states out of mixed blocks into fresh child blocks (of B, or
/// of parent(B) when all their predecessors live there). Throws
/// ValidationError when no such split keeps the quotient a tree.
DirectedTreePartition split_goal_blocks(const UnderlyingGraph& g, const DirectedTreePartition& p,
                                        const std::vector<char>& goal, const StateSet& initial_support);

} // namespace treewit
