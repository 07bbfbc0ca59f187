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

#include "treewit/generate.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace treewit {
namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Small-denominator probabilities over `targets`, leaving some mass to fail.
void add_distribution(ModelBuilder& b, StateId src, const std::string& action, const std::vector<StateId>& targets,
                      Rng& rng, bool mdp) {
    if (targets.empty()) {
        if (mdp) {
            b.action(src, action);
        }
        return;
    }
    std::vector<unsigned long> w;
    unsigned long total = uniform(rng, 0, 2);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        w.push_back(uniform(rng, 1, 4));
        total += w.back();
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const Rational p = make_rational(static_cast<long>(w[i]), total);
        if (mdp) {
            b.transition(src, action, targets[i], p);
        } else {
            b.transition(src, targets[i], p);
        }
    }
}

// Splits the candidate successors of one state over its actions; `forced`
// targets all land in the first action so structural edges survive.
void add_state(ModelBuilder& b, StateId s, std::vector<StateId> optional, const std::vector<StateId>& forced,
               Rng& rng, ModelKind kind, std::size_t max_actions) {
    const bool mdp = kind == ModelKind::mdp;
    const std::size_t actions = mdp ? uniform(rng, 1, std::max<std::size_t>(1, max_actions)) : 1;
    std::vector<std::set<StateId>> parts(actions);
    for (StateId t : forced) {
        parts[0].insert(t);
    }
    for (StateId t : optional) {
        parts[uniform(rng, 0, actions - 1)].insert(t);
    }
    for (std::size_t a = 0; a < actions; ++a) {
        add_distribution(b, s, "a" + std::to_string(a), {parts[a].begin(), parts[a].end()}, rng, mdp);
    }
}

} // namespace

GeneratedInstance generate_layered(const LayeredOptions& opts, std::uint64_t seed) {
    if (opts.width == 0 || opts.layers == 0 || opts.interface == 0 || opts.interface > opts.width) {
        throw std::invalid_argument("layered generator needs 0 < interface <= width and at least one layer");
    }
    Rng rng(seed);
    const std::size_t w = opts.width;
    const std::size_t n = opts.layers * w + 1;
    const StateId goal = static_cast<StateId>(n - 1);
    ModelBuilder b(opts.kind, n);
    GeneratedInstance out;
    auto state = [&](std::size_t layer, std::size_t j) { return static_cast<StateId>(layer * w + j); };
    for (std::size_t l = 0; l < opts.layers; ++l) {
        StateSet blk;
        for (std::size_t j = 0; j < w; ++j) {
            blk.push_back(state(l, j));
        }
        out.blocks.push_back(blk);
        // Entry states of the next layer, or the goal.
        std::vector<StateId> next;
        if (l + 1 < opts.layers) {
            for (std::size_t j = 0; j < opts.interface; ++j) {
                next.push_back(state(l + 1, j));
            }
        } else {
            next.push_back(goal);
        }
        std::vector<std::vector<StateId>> forced(w), optional(w);
        for (std::size_t j = 0; j + 1 < w; ++j) {
            forced[j].push_back(state(l, j + 1));
        }
        // Each next entry is hit from one of the last states of the layer.
        for (std::size_t k = 0; k < next.size(); ++k) {
            const std::size_t from = w - 1 - uniform(rng, 0, std::min<std::size_t>(w - 1, 1));
            forced[from].push_back(next[k]);
        }
        forced[w - 1].push_back(next[uniform(rng, 0, next.size() - 1)]);
        for (std::size_t j = 0; j < w; ++j) {
            const std::size_t extra = std::poisson_distribution<std::size_t>(opts.extra_edges)(rng);
            for (std::size_t e = 0; e < extra; ++e) {
                const std::size_t t = uniform(rng, 0, w - 1);
                if (t != j) {
                    optional[j].push_back(state(l, t));
                }
            }
            if (j + 2 >= w && coin(rng, 0.5)) {
                optional[j].push_back(next[uniform(rng, 0, next.size() - 1)]);
            }
            add_state(b, state(l, j), optional[j], forced[j], rng, opts.kind, opts.max_actions);
        }
    }
    out.blocks.push_back({goal});
    b.goal(goal);
    b.initial(0, 1);
    out.model = b.build();
    return out;
}

GeneratedInstance generate_tree_model(const TreeModelOptions& opts, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t k = uniform(rng, opts.min_blocks, std::max(opts.min_blocks, opts.max_blocks));
    const std::size_t g = uniform(rng, 1, std::max<std::size_t>(1, opts.max_goal_blocks));
    std::vector<std::size_t> sizes;
    std::size_t total = 0;
    for (std::size_t i = 0; i < k + g; ++i) {
        std::size_t sz = i < k ? uniform(rng, 1, opts.max_block_size) : uniform(rng, 1, 2);
        const std::size_t left = opts.max_states > total ? opts.max_states - total : 0;
        const std::size_t needed = k + g - i - 1;
        sz = std::max<std::size_t>(1, std::min(sz, left > needed ? left - needed : 1));
        sizes.push_back(sz);
        total += sz;
    }
    std::vector<StateSet> blocks;
    StateId next_id = 0;
    for (std::size_t sz : sizes) {
        StateSet blk;
        for (std::size_t j = 0; j < sz; ++j) {
            blk.push_back(next_id++);
        }
        blocks.push_back(blk);
    }
    // Block 0 is the root; goal blocks hang below non-goal blocks.
    std::vector<std::size_t> parent(k + g, 0);
    for (std::size_t i = 1; i < k + g; ++i) {
        parent[i] = uniform(rng, 0, std::min(i, k) - 1);
    }
    ModelBuilder b(opts.kind, total);
    std::vector<std::vector<StateId>> forced(total), optional(total);
    for (std::size_t i = 1; i < k + g; ++i) {
        const auto& pb = blocks[parent[i]];
        const auto& cb = blocks[i];
        forced[pb[uniform(rng, 0, pb.size() - 1)]].push_back(cb[uniform(rng, 0, cb.size() - 1)]);
        for (StateId s : pb) {
            for (StateId t : cb) {
                if (coin(rng, opts.edge_density / 2)) {
                    optional[s].push_back(t);
                }
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (StateId s : blocks[i]) {
            for (StateId t : blocks[i]) {
                if (s != t && coin(rng, opts.edge_density)) {
                    optional[s].push_back(t);
                }
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (StateId s : blocks[i]) {
            add_state(b, s, optional[s], forced[s], rng, opts.kind, opts.max_actions);
        }
    }
    for (std::size_t i = k; i < k + g; ++i) {
        for (StateId s : blocks[i]) {
            b.goal(s);
        }
    }
    const auto& root = blocks[0];
    if (root.size() >= 2 && coin(rng, 0.3)) {
        b.initial(root[0], make_rational(1, 2));
        b.initial(root[1], make_rational(1, 2));
    } else {
        b.initial(root[0], 1);
    }
    return {b.build(), blocks};
}

ProbabilisticModel generate_random_model(std::size_t n, ModelKind kind, std::uint64_t seed, std::size_t max_succ,
                                         std::size_t max_actions) {
    if (n < 2) {
        throw std::invalid_argument("random model needs at least two states");
    }
    Rng rng(seed);
    ModelBuilder b(kind, n);
    for (StateId s = 0; s + 1 < n; ++s) {
        std::vector<StateId> succ;
        const std::size_t m = uniform(rng, 1, max_succ);
        for (std::size_t i = 0; i < m; ++i) {
            succ.push_back(static_cast<StateId>(uniform(rng, 0, n - 1)));
        }
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        add_state(b, s, succ, {}, rng, kind, max_actions);
    }
    b.goal(static_cast<StateId>(n - 1));
    b.initial(0, 1);
    return b.build();
}

UnderlyingGraph generate_random_graph(std::size_t n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<StateId, StateId>> edges;
    for (StateId a = 0; a < n; ++a) {
        for (StateId c = 0; c < n; ++c) {
            if (a != c && coin(rng, p)) {
                edges.emplace_back(a, c);
            }
        }
    }
    return make_graph(n, edges);
}

} // namespace treewit
