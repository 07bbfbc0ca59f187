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

#include "treewit/partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace treewit {

const char* to_string(PartitionErrorKind kind) {
    switch (kind) {
    case PartitionErrorKind::unknown_state: return "unknown state";
    case PartitionErrorKind::empty_block: return "empty block";
    case PartitionErrorKind::disjointness: return "disjointness violation";
    case PartitionErrorKind::coverage: return "coverage violation";
    case PartitionErrorKind::two_cycle: return "quotient has a 2-cycle";
    case PartitionErrorKind::in_degree: return "quotient in-degree > 1";
    case PartitionErrorKind::cycle: return "quotient has a cycle";
    case PartitionErrorKind::disconnected: return "quotient is disconnected";
    case PartitionErrorKind::not_path: return "quotient is not a path";
    }
    return "unknown";
}

namespace {

[[noreturn]] void fail(PartitionErrorKind kind, const std::string& detail) {
    std::string msg = to_string(kind);
    if (kind >= PartitionErrorKind::two_cycle) {
        msg = "quotient not a tree: " + msg;
    }
    throw PartitionError(kind, msg + ": " + detail);
}

using EdgeSet = std::set<std::pair<BlockId, BlockId>>;

EdgeSet quotient_edges(const UnderlyingGraph& g, const std::vector<BlockId>& block_of) {
    EdgeSet edges;
    for (StateId s = 0; s < g.num_vertices; ++s) {
        for (StateId t : g.succ[s]) {
            if (block_of[s] != block_of[t]) {
                edges.emplace(block_of[s], block_of[t]);
            }
        }
    }
    return edges;
}

struct QuotientCheck {
    std::optional<PartitionErrorKind> defect;
    std::string detail;
    std::vector<std::int64_t> parent;
};

QuotientCheck check_quotient(const EdgeSet& edges, std::size_t k, PartitionShape shape) {
    QuotientCheck out;
    out.parent.assign(k, -1);
    std::vector<std::size_t> outdeg(k, 0);
    for (auto [a, b] : edges) {
        if (a < b && edges.count({b, a})) {
            out.defect = PartitionErrorKind::two_cycle;
            out.detail = "between blocks " + std::to_string(a) + " and " + std::to_string(b);
            return out;
        }
    }
    for (auto [a, b] : edges) {
        if (out.parent[b] >= 0) {
            out.defect = PartitionErrorKind::in_degree;
            out.detail = "block " + std::to_string(b) + " has parents " + std::to_string(out.parent[b]) + " and " +
                         std::to_string(a);
            return out;
        }
        out.parent[b] = a;
        ++outdeg[a];
    }
    if (k > 0 && edges.size() >= k) {
        out.defect = PartitionErrorKind::cycle;
        out.detail = std::to_string(edges.size()) + " quotient edges on " + std::to_string(k) + " blocks";
        return out;
    }
    if (k > 0 && edges.size() + 1 < k) {
        out.defect = PartitionErrorKind::disconnected;
        out.detail = std::to_string(k - edges.size()) + " roots";
        return out;
    }
    if (shape == PartitionShape::path) {
        for (std::size_t b = 0; b < k; ++b) {
            if (outdeg[b] > 1) {
                out.defect = PartitionErrorKind::not_path;
                out.detail = "block " + std::to_string(b) + " has " + std::to_string(outdeg[b]) +
                             " children in a path partition";
                return out;
            }
        }
    }
    return out;
}

} // namespace

std::optional<BlockId> DirectedTreePartition::parent(BlockId b) const {
    auto p = parent_.at(b);
    if (p < 0) {
        return std::nullopt;
    }
    return static_cast<BlockId>(p);
}

std::size_t DirectedTreePartition::width() const {
    std::size_t w = 0;
    for (const auto& b : blocks_) {
        w = std::max(w, b.size());
    }
    return w;
}

bool DirectedTreePartition::is_path() const {
    return std::all_of(children_.begin(), children_.end(), [](const auto& c) { return c.size() <= 1; });
}

std::size_t width(const DirectedTreePartition& p) {
    return p.width();
}

DirectedTreePartition validate_partition(const UnderlyingGraph& g, const std::vector<StateSet>& blocks,
                                         const StateSet& initial_support) {
    const std::size_t n = g.num_vertices;
    const std::size_t k = blocks.size();
    DirectedTreePartition p;
    p.block_of_.assign(n, UINT32_MAX);
    p.blocks_.reserve(k);
    for (BlockId b = 0; b < k; ++b) {
        if (blocks[b].empty()) {
            fail(PartitionErrorKind::empty_block, "block " + std::to_string(b));
        }
        for (StateId s : blocks[b]) {
            if (s >= n) {
                fail(PartitionErrorKind::unknown_state, "state " + std::to_string(s) + " in block " + std::to_string(b));
            }
            if (p.block_of_[s] != UINT32_MAX) {
                fail(PartitionErrorKind::disjointness, "state " + std::to_string(s) + " in blocks " +
                                                           std::to_string(p.block_of_[s]) + " and " +
                                                           std::to_string(b));
            }
            p.block_of_[s] = b;
        }
        p.blocks_.push_back(make_state_set(blocks[b]));
    }
    for (StateId s = 0; s < n; ++s) {
        if (p.block_of_[s] == UINT32_MAX) {
            fail(PartitionErrorKind::coverage, "state " + std::to_string(s) + " is in no block");
        }
    }
    const EdgeSet edges = quotient_edges(g, p.block_of_);
    auto check = check_quotient(edges, k, PartitionShape::tree);
    if (check.defect) {
        fail(*check.defect, check.detail);
    }
    p.parent_ = std::move(check.parent);
    p.children_.assign(k, {});
    for (auto [a, b] : edges) {
        p.children_[a].push_back(b);
    }
    for (BlockId b = 0; b < k; ++b) {
        if (p.parent_[b] < 0) {
            p.root_ = b;
        }
    }

    const auto init_mask = to_mask(initial_support, n);
    p.inc_.assign(k, {});
    p.exit_.assign(k, {});
    for (StateId s = 0; s < n; ++s) {
        const BlockId b = p.block_of_[s];
        if (init_mask[s]) {
            p.inc_[b].push_back(s);
        }
        for (StateId t : g.succ[s]) {
            const BlockId c = p.block_of_[t];
            if (c != b) {
                p.exit_[b].push_back(s);
                p.inc_[c].push_back(t);
            }
        }
    }
    for (BlockId b = 0; b < k; ++b) {
        p.inc_[b] = make_state_set(std::move(p.inc_[b]));
        p.exit_[b] = make_state_set(std::move(p.exit_[b]));
    }

    // Pre-order from the root, reversed, gives children before parents.
    std::vector<BlockId> order;
    if (k > 0) {
        std::vector<BlockId> stack{p.root_};
        while (!stack.empty()) {
            BlockId b = stack.back();
            stack.pop_back();
            order.push_back(b);
            for (auto it = p.children_[b].rbegin(); it != p.children_[b].rend(); ++it) {
                stack.push_back(*it);
            }
        }
    }
    p.bottom_up_.assign(order.rbegin(), order.rend());
    p.out_.assign(k, {});
    p.cl_.assign(k, {});
    for (BlockId b : p.bottom_up_) {
        std::vector<StateId> out;
        std::vector<StateId> cl = p.blocks_[b];
        for (BlockId c : p.children_[b]) {
            out.insert(out.end(), p.inc_[c].begin(), p.inc_[c].end());
            cl.insert(cl.end(), p.cl_[c].begin(), p.cl_[c].end());
        }
        p.out_[b] = make_state_set(std::move(out));
        p.cl_[b] = make_state_set(std::move(cl));
    }
    return p;
}

DirectedTreePartition validate_partition(const ProbabilisticModel& m, const std::vector<StateSet>& blocks) {
    return validate_partition(underlying_graph(m), blocks, m.initial_support());
}

std::optional<PartitionErrorKind> partition_defect(const UnderlyingGraph& g, const std::vector<BlockId>& block_of,
                                                   std::size_t num_blocks, PartitionShape shape) {
    return check_quotient(quotient_edges(g, block_of), num_blocks, shape).defect;
}

SccDecomposition strongly_connected_components(const UnderlyingGraph& g) {
    const std::size_t n = g.num_vertices;
    SccDecomposition out;
    out.comp.assign(n, UINT32_MAX);
    std::vector<std::uint32_t> index(n, UINT32_MAX), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::uint32_t counter = 0;
    // Iterative Tarjan: frames of (vertex, next successor position).
    std::vector<std::pair<StateId, std::size_t>> frames;
    for (StateId root = 0; root < n; ++root) {
        if (index[root] != UINT32_MAX) {
            continue;
        }
        frames.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < g.succ[v].size()) {
                StateId w = g.succ[v][pos++];
                if (index[w] == UINT32_MAX) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                StateSet members;
                StateId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    out.comp[w] = static_cast<std::uint32_t>(out.members.size());
                    members.push_back(w);
                } while (w != v);
                out.members.push_back(make_state_set(std::move(members)));
            }
            StateId done = v;
            frames.pop_back();
            if (!frames.empty()) {
                StateId parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    return out;
}

namespace {

struct WidthSearch {
    const UnderlyingGraph& g;
    PartitionShape shape;
    std::vector<std::size_t> weight;                   // per SCC node
    std::vector<std::vector<std::uint32_t>> node_succ; // condensation edges
    std::vector<std::uint32_t> assign;
    std::vector<std::size_t> block_weight;
    std::size_t best = SIZE_MAX;
    std::vector<std::uint32_t> best_assign;
    std::vector<BlockId> state_block;

    // Partial feasibility: 2-cycles, in-degree and path out-degree can only
    // get worse as more nodes are assigned.
    bool partial_ok(std::size_t assigned) const {
        const std::size_t k = block_weight.size();
        std::vector<std::int64_t> parent(k, -1);
        std::vector<std::int64_t> child(k, -1);
        for (std::size_t u = 0; u < assigned; ++u) {
            for (auto v : node_succ[u]) {
                if (v >= assigned) {
                    continue;
                }
                auto a = assign[u], b = assign[v];
                if (a == b) {
                    continue;
                }
                if (parent[b] >= 0 && parent[b] != a) {
                    return false;
                }
                parent[b] = a;
                if (shape == PartitionShape::path) {
                    if (child[a] >= 0 && child[a] != b) {
                        return false;
                    }
                    child[a] = b;
                }
            }
        }
        for (std::size_t b = 0; b < k; ++b) {
            if (parent[b] >= 0 && parent[parent[b]] == static_cast<std::int64_t>(b)) {
                return false;
            }
        }
        return true;
    }

    void dfs(std::size_t i) {
        if (i == assign.size()) {
            std::size_t w = *std::max_element(block_weight.begin(), block_weight.end());
            if (w >= best) {
                return;
            }
            for (StateId s = 0; s < g.num_vertices; ++s) {
                state_block[s] = assign[scc->comp[s]];
            }
            if (!partition_defect(g, state_block, block_weight.size(), shape)) {
                best = w;
                best_assign = assign;
            }
            return;
        }
        const std::size_t k = block_weight.size();
        for (std::size_t b = 0; b <= k; ++b) {
            if (b == k) {
                block_weight.push_back(0);
            }
            if (block_weight[b] + weight[i] < best) {
                block_weight[b] += weight[i];
                assign[i] = static_cast<std::uint32_t>(b);
                if (partial_ok(i + 1)) {
                    dfs(i + 1);
                }
                block_weight[b] -= weight[i];
            }
            if (b == k) {
                block_weight.pop_back();
            }
        }
    }

    const SccDecomposition* scc = nullptr;
};

} // namespace

std::pair<std::size_t, DirectedTreePartition> exact_width(const UnderlyingGraph& g, PartitionShape shape,
                                                          const ExactWidthOptions& opts) {
    const std::size_t n = g.num_vertices;
    if (n > opts.cap) {
        throw CapExceeded("exact width search limited to " + std::to_string(opts.cap) + " vertices, graph has " +
                          std::to_string(n));
    }
    if (n == 0) {
        return {0, validate_partition(g, {})};
    }
    SccDecomposition scc = strongly_connected_components(g);
    // Order SCC nodes by their smallest state so the search order is stable.
    std::vector<std::uint32_t> order(scc.members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return scc.members[a].front() < scc.members[b].front(); });
    std::vector<std::uint32_t> rank(order.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
    }
    SccDecomposition ranked;
    ranked.comp.resize(n);
    ranked.members.resize(order.size());
    for (StateId s = 0; s < n; ++s) {
        ranked.comp[s] = rank[scc.comp[s]];
    }
    for (std::uint32_t i = 0; i < order.size(); ++i) {
        ranked.members[i] = scc.members[order[i]];
    }

    WidthSearch search{g, shape, {}, {}, {}, {}, SIZE_MAX, {}, std::vector<BlockId>(n, 0)};
    search.scc = &ranked;
    const std::size_t c = ranked.members.size();
    search.weight.resize(c);
    search.node_succ.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        search.weight[i] = ranked.members[i].size();
    }
    for (StateId s = 0; s < n; ++s) {
        for (StateId t : g.succ[s]) {
            if (ranked.comp[s] != ranked.comp[t]) {
                search.node_succ[ranked.comp[s]].push_back(ranked.comp[t]);
            }
        }
    }
    for (auto& row : search.node_succ) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    search.assign.assign(c, 0);
    search.dfs(0);

    std::size_t k = *std::max_element(search.best_assign.begin(), search.best_assign.end()) + 1;
    std::vector<StateSet> blocks(k);
    for (StateId s = 0; s < n; ++s) {
        blocks[search.best_assign[ranked.comp[s]]].push_back(s);
    }
    return {search.best, validate_partition(g, blocks)};
}

UnderlyingGraph bisection_gadget(const UnderlyingGraph& g) {
    const std::size_t n = g.num_vertices;
    UnderlyingGraph out{n + 2, g.succ};
    const auto i = static_cast<StateId>(n);
    const auto e = static_cast<StateId>(n + 1);
    out.succ.resize(n + 2);
    for (StateId v = 0; v < n; ++v) {
        out.succ[i].push_back(v);
        out.succ[v].push_back(e);
        out.succ[v] = make_state_set(std::move(out.succ[v]));
    }
    return out;
}

DirectedTreePartition heuristic_layer_partition(const UnderlyingGraph& g, const StateSet& initial_support) {
    const std::size_t n = g.num_vertices;
    std::vector<StateSet> single;
    if (n > 0) {
        single.emplace_back(n);
        std::iota(single[0].begin(), single[0].end(), 0);
    }
    if (n == 0) {
        return validate_partition(g, single, initial_support);
    }
    SccDecomposition scc = strongly_connected_components(g);
    const std::size_t c = scc.members.size();
    std::vector<std::vector<std::uint32_t>> csucc(c);
    for (StateId s = 0; s < n; ++s) {
        for (StateId t : g.succ[s]) {
            if (scc.comp[s] != scc.comp[t]) {
                csucc[scc.comp[s]].push_back(scc.comp[t]);
            }
        }
    }
    // Tarjan emits sinks first, so descending component index is topological.
    std::vector<std::size_t> level(c, 0);
    for (std::size_t u = c; u-- > 0;) {
        for (auto v : csucc[u]) {
            level[v] = std::max(level[v], level[u] + 1);
        }
    }
    const std::size_t levels = *std::max_element(level.begin(), level.end()) + 1;
    // group_start marks where a merged range of levels begins.
    std::vector<char> group_start(levels, 1);
    auto group_of = [&](std::size_t lvl) {
        std::size_t gid = 0;
        for (std::size_t l = 1; l <= lvl; ++l) {
            gid += group_start[l];
        }
        return gid;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> gid(levels);
        for (std::size_t l = 0; l < levels; ++l) {
            gid[l] = group_of(l);
        }
        const std::size_t groups = gid.back() + 1;
        std::vector<char> linked(groups, 0);
        for (std::size_t u = 0; u < c && !changed; ++u) {
            for (auto v : csucc[u]) {
                std::size_t a = gid[level[u]], b = gid[level[v]];
                if (b == a + 1) {
                    linked[a] = 1;
                } else if (b > a + 1) {
                    // Pull the skipped groups into the target's group.
                    for (std::size_t l = 0; l < levels; ++l) {
                        if (gid[l] > a + 1 && gid[l] <= b) {
                            group_start[l] = 0;
                        }
                    }
                    changed = true;
                    break;
                }
            }
        }
        if (changed) {
            continue;
        }
        for (std::size_t a = 0; a + 1 < groups; ++a) {
            if (!linked[a]) {
                for (std::size_t l = 0; l < levels; ++l) {
                    if (gid[l] == a + 1) {
                        group_start[l] = 0;
                    }
                }
                changed = true;
                break;
            }
        }
    }
    std::vector<StateSet> blocks(group_of(levels - 1) + 1);
    for (StateId s = 0; s < n; ++s) {
        blocks[group_of(level[scc.comp[s]])].push_back(s);
    }
    try {
        return validate_partition(g, blocks, initial_support);
    } catch (const PartitionError&) {
        return validate_partition(g, single, initial_support);
    }
}

std::pair<DirectedTreePartition, std::size_t> merge_root_candidates(const UnderlyingGraph& g,
                                                                    const DirectedTreePartition& p,
                                                                    const StateSet& initial_support) {
    std::vector<char> merged(p.num_blocks(), 0);
    merged[p.root()] = 1;
    for (StateId s : initial_support) {
        for (std::optional<BlockId> b = p.block_of(s); b && !merged[*b]; b = p.parent(*b)) {
            merged[*b] = 1;
        }
    }
    std::vector<StateSet> blocks;
    StateSet root_block;
    for (BlockId b = 0; b < p.num_blocks(); ++b) {
        if (merged[b]) {
            root_block.insert(root_block.end(), p.block(b).begin(), p.block(b).end());
        }
    }
    for (BlockId b = 0; b < p.num_blocks(); ++b) {
        if (b == p.root()) {
            blocks.push_back(make_state_set(root_block));
        } else if (!merged[b]) {
            blocks.push_back(p.block(b));
        }
    }
    auto out = validate_partition(g, blocks, initial_support);
    const std::size_t increase = out.width() - std::min(out.width(), p.width());
    return {std::move(out), increase};
}

DirectedTreePartition split_goal_blocks(const UnderlyingGraph& g, const DirectedTreePartition& p,
                                        const std::vector<char>& goal, const StateSet& initial_support) {
    const auto pred = g.predecessors();
    const auto init_mask = to_mask(initial_support, g.num_vertices);
    std::vector<StateSet> blocks = p.blocks();
    std::vector<StateSet> extra_child(p.num_blocks());
    bool touched = false;
    for (BlockId b = 0; b < p.num_blocks(); ++b) {
        const auto& blk = p.block(b);
        const bool any_goal = std::any_of(blk.begin(), blk.end(), [&](StateId s) { return goal[s]; });
        const bool all_goal = std::all_of(blk.begin(), blk.end(), [&](StateId s) { return goal[s]; });
        if (!any_goal || all_goal) {
            continue;
        }
        touched = true;
        StateSet rest;
        for (StateId s : blk) {
            if (!goal[s]) {
                rest.push_back(s);
                continue;
            }
            if (init_mask[s]) {
                throw ValidationError("initial goal state " + std::to_string(s) + " cannot leave the root block");
            }
            bool in_b = true, in_parent = !pred[s].empty() && p.parent(b).has_value();
            for (StateId q : pred[s]) {
                in_b = in_b && p.block_of(q) == b;
                in_parent = in_parent && p.block_of(q) == *p.parent(b);
            }
            if (in_b) {
                extra_child[b].push_back(s);
            } else if (in_parent) {
                extra_child[*p.parent(b)].push_back(s);
            } else {
                throw ValidationError("goal state " + std::to_string(s) + " of block " + std::to_string(b) +
                                      " has predecessors in several blocks; cannot split goal states");
            }
        }
        blocks[b] = std::move(rest);
    }
    if (!touched) {
        return p;
    }
    for (auto& extra : extra_child) {
        if (!extra.empty()) {
            blocks.push_back(make_state_set(std::move(extra)));
        }
    }
    try {
        return validate_partition(g, blocks, initial_support);
    } catch (const PartitionError& e) {
        throw ValidationError(std::string("splitting goal states breaks the tree: ") + e.what());
    }
}

} // namespace treewit
