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

#include "treewit/witness.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace treewit {

const char* to_string(WitnessMode mode) {
    switch (mode) {
    case WitnessMode::dtmc:
        return "dtmc";
    case WitnessMode::mdp_max:
        return "mdp-max";
    case WitnessMode::mdp_min:
        return "mdp-min";
    }
    return "?";
}

std::optional<WitnessMode> parse_witness_mode(const std::string& text) {
    if (text == "dtmc") {
        return WitnessMode::dtmc;
    }
    if (text == "mdp-max") {
        return WitnessMode::mdp_max;
    }
    if (text == "mdp-min") {
        return WitnessMode::mdp_min;
    }
    return std::nullopt;
}

Objective objective_of(WitnessMode mode) {
    switch (mode) {
    case WitnessMode::dtmc:
        return Objective::dtmc;
    case WitnessMode::mdp_max:
        return Objective::max;
    case WitnessMode::mdp_min:
        return Objective::min;
    }
    return Objective::dtmc;
}

DominationMode domination_of(WitnessMode mode) {
    return mode == WitnessMode::mdp_min ? DominationMode::strong : DominationMode::standard;
}

void check_mode(const ProbabilisticModel& m, WitnessMode mode) {
    if (mode == WitnessMode::dtmc && !m.is_dtmc()) {
        throw ModeMismatch("mode dtmc needs a DTMC model; use mdp-max or mdp-min");
    }
    if (mode != WitnessMode::dtmc && m.is_dtmc()) {
        throw ModeMismatch(std::string("mode ") + to_string(mode) + " needs an MDP model; use dtmc");
    }
}

const char* to_string(PruneVerdict v) {
    switch (v) {
    case PruneVerdict::keep:
        return "keep";
    case PruneVerdict::value_bound:
        return "value-bound";
    case PruneVerdict::distance_bound:
        return "distance-bound";
    }
    return "?";
}

namespace {

template <typename T>
struct LocalAction {
    std::vector<std::pair<std::uint32_t, T>> inner;  // local state index
    std::vector<std::pair<std::uint32_t, T>> outer;  // index into the assumption domain
};

template <typename T>
struct LocalState {
    bool goal = false;
    std::vector<LocalAction<T>> actions;
};

std::uint32_t position(const StateSet& set, StateId s) {
    auto it = std::lower_bound(set.begin(), set.end(), s);
    return it != set.end() && *it == s ? static_cast<std::uint32_t>(it - set.begin()) : UINT32_MAX;
}

// `kept` restricted model where transitions into `outside` become assumption
// edges and every other transition leaving `kept` is dropped.
template <typename T>
std::vector<LocalState<T>> build_local(const ProbabilisticModel& m, const StateSet& kept, const StateSet& outside) {
    std::vector<LocalState<T>> loc(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const StateId s = kept[i];
        loc[i].goal = m.is_goal(s);
        if (loc[i].goal) {
            continue;
        }
        for (const auto& a : m.actions(s)) {
            LocalAction<T> la;
            for (const auto& t : a.transitions) {
                if (sgn(t.prob) <= 0) {
                    continue;
                }
                if (auto k = position(kept, t.target); k != UINT32_MAX) {
                    la.inner.emplace_back(k, from_rational<T>(t.prob));
                } else if (auto o = position(outside, t.target); o != UINT32_MAX) {
                    la.outer.emplace_back(o, from_rational<T>(t.prob));
                }
            }
            loc[i].actions.push_back(std::move(la));
        }
    }
    return loc;
}

template <typename T>
ReachSystem<T> local_system(const std::vector<LocalState<T>>& loc, const std::vector<T>& f) {
    ReachSystem<T> sys;
    sys.choices.resize(loc.size());
    sys.goal.resize(loc.size());
    for (std::size_t i = 0; i < loc.size(); ++i) {
        sys.goal[i] = loc[i].goal;
        for (const auto& a : loc[i].actions) {
            typename ReachSystem<T>::Choice c;
            c.succ = a.inner;
            for (const auto& [k, p] : a.outer) {
                c.to_goal += p * f[k];
            }
            sys.choices[i].push_back(std::move(c));
        }
    }
    return sys;
}

// Gaussian elimination with several right-hand sides.
template <typename T>
std::vector<std::vector<T>> solve_multi(std::vector<std::vector<T>> a, std::vector<std::vector<T>> b) {
    const std::size_t n = a.size();
    const std::size_t r = n ? b[0].size() : 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        if constexpr (is_exact_v<T>) {
            for (std::size_t i = col; i < n && pivot == n; ++i) {
                if (sgn(a[i][col]) != 0) {
                    pivot = i;
                }
            }
        } else {
            double best = 0.0;
            for (std::size_t i = col; i < n; ++i) {
                if (std::abs(a[i][col]) > best) {
                    best = std::abs(a[i][col]);
                    pivot = i;
                }
            }
        }
        if (pivot == n) {
            throw std::domain_error("singular linear system");
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const T inv = T(1) / a[col][col];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == 0) {
                continue;
            }
            const T factor = a[i][col] * inv;
            for (std::size_t c = col; c < n; ++c) {
                if (a[col][c] != 0) {
                    a[i][c] -= factor * a[col][c];
                }
            }
            for (std::size_t c = 0; c < r; ++c) {
                if (b[col][c] != 0) {
                    b[i][c] -= factor * b[col][c];
                }
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const T inv = T(1) / a[i][i];
        for (auto& x : b[i]) {
            x *= inv;
        }
    }
    return b;
}

// DTMC values as affine functions of the assumption: value(s) = coef[s][0] + sum_k coef[s][k+1] f_k.
template <typename T>
std::vector<std::vector<T>> affine_values(const std::vector<LocalState<T>>& loc, std::size_t num_outer) {
    const std::size_t n = loc.size();
    std::vector<std::vector<T>> out(n, std::vector<T>(num_outer + 1, T(0)));
    std::vector<char> rel(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (loc[i].goal) {
            out[i][0] = T(1);
            continue;
        }
        for (const auto& a : loc[i].actions) {
            if (!a.outer.empty()) {
                rel[i] = 1;
            }
            for (const auto& [k, p] : a.inner) {
                if (loc[k].goal) {
                    rel[i] = 1;
                }
            }
        }
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (rel[i] || loc[i].goal) {
                continue;
            }
            for (const auto& a : loc[i].actions) {
                for (const auto& [k, p] : a.inner) {
                    if (rel[k] && !loc[k].goal) {
                        rel[i] = 1;
                        changed = true;
                    }
                }
            }
        }
    }
    std::vector<std::uint32_t> index(n, UINT32_MAX);
    std::vector<std::uint32_t> vars;
    for (std::uint32_t i = 0; i < n; ++i) {
        if (rel[i]) {
            index[i] = static_cast<std::uint32_t>(vars.size());
            vars.push_back(i);
        }
    }
    const std::size_t k = vars.size();
    if (k == 0) {
        return out;
    }
    std::vector<std::vector<T>> a(k, std::vector<T>(k, T(0)));
    std::vector<std::vector<T>> b(k, std::vector<T>(num_outer + 1, T(0)));
    for (std::size_t r = 0; r < k; ++r) {
        a[r][r] = T(1);
        for (const auto& act : loc[vars[r]].actions) {
            for (const auto& [t, p] : act.inner) {
                if (loc[t].goal) {
                    b[r][0] += p;
                } else if (index[t] != UINT32_MAX) {
                    a[r][index[t]] -= p;
                }
            }
            for (const auto& [o, p] : act.outer) {
                b[r][o + 1] += p;
            }
        }
    }
    auto x = solve_multi<T>(std::move(a), std::move(b));
    for (std::size_t r = 0; r < k; ++r) {
        out[vars[r]] = std::move(x[r]);
    }
    return out;
}

std::vector<std::size_t> bfs_distance(const UnderlyingGraph& g, const StateSet& sources) {
    std::vector<std::size_t> dist(g.num_vertices, SIZE_MAX);
    std::deque<StateId> queue;
    for (StateId s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId t : g.succ[s]) {
            if (dist[t] == SIZE_MAX) {
                dist[t] = dist[s] + 1;
                queue.push_back(t);
            }
        }
    }
    return dist;
}

StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool lex_less(const StateSet& a, const StateSet& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    return a < b;
}

} // namespace

template <typename T>
T subsystem_value(const ProbabilisticModel& m, const StateSet& kept, Objective objective, const SolverOptions& opts) {
    auto loc = build_local<T>(m, kept, {});
    auto values = solve_reach(local_system<T>(loc, {}), objective, opts);
    T acc(0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const Rational& w = m.initial(kept[i]);
        if (sgn(w) != 0) {
            acc += from_rational<T>(w) * values[i];
        }
    }
    return acc;
}

StateSet relevant_states(const ProbabilisticModel& m) {
    const auto g = underlying_graph(m);
    const auto fwd = forward_reachable(g, m.initial_support());
    const auto bwd = backward_reachable(g, m.goal_states());
    StateSet out;
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (fwd[s] && bwd[s]) {
            out.push_back(s);
        }
    }
    return out;
}

template <typename T>
bool meets_threshold(const T& value, const T& lambda, const Tolerance& tol) {
    return approx_le(lambda, value, tol) && is_positive(value, tol);
}

std::vector<StateSet> phi_models(const UnderlyingGraph& g, const DirectedTreePartition& p, BlockId b,
                                 const std::vector<char>& goal, std::size_t cap) {
    const StateSet& blk = p.block(b);
    const std::size_t n = blk.size();
    const auto pred = g.predecessors();
    const auto inc = to_mask(p.inc(b), g.num_vertices);
    const auto exit = to_mask(p.exit(b), g.num_vertices);
    // A clause "s -> some neighbour kept" is checked once its last variable is decided.
    struct Clause {
        std::uint32_t state;
        std::vector<std::uint32_t> others;
    };
    std::vector<std::vector<Clause>> due(n);
    auto add_clause = [&](std::uint32_t i, const std::vector<StateId>& nbrs) {
        Clause c{i, {}};
        std::uint32_t last = i;
        for (StateId t : nbrs) {
            auto k = position(blk, t);
            if (k != UINT32_MAX && k != i) {
                c.others.push_back(k);
                last = std::max(last, k);
            }
        }
        due[last].push_back(std::move(c));
    };
    for (std::uint32_t i = 0; i < n; ++i) {
        const StateId s = blk[i];
        if (!inc[s]) {
            add_clause(i, pred[s]);
        }
        if (!exit[s] && !goal[s]) {
            add_clause(i, g.succ[s]);
        }
    }
    std::vector<StateSet> models;
    std::vector<char> chosen(n, 0);
    auto satisfied = [&](std::size_t depth) {
        for (const auto& c : due[depth]) {
            if (!chosen[c.state]) {
                continue;
            }
            bool ok = false;
            for (auto k : c.others) {
                ok = ok || chosen[k];
            }
            if (!ok) {
                return false;
            }
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            StateSet m;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i]) {
                    m.push_back(blk[i]);
                }
            }
            models.push_back(std::move(m));
            if (models.size() > cap) {
                throw CapExceeded("block " + std::to_string(b) + " has more than " + std::to_string(cap) +
                                  " candidate subsets; refine the partition");
            }
            return;
        }
        for (char v : {0, 1}) {
            chosen[depth] = v;
            if (satisfied(depth)) {
                self(self, depth + 1);
            }
        }
        chosen[depth] = 0;
    };
    rec(rec, 0);
    return models;
}

template <typename T>
std::vector<PartialSubsystem<T>> successor_points(const std::vector<std::vector<PartialSubsystem<T>>>& table,
                                                  const DirectedTreePartition& p, BlockId b) {
    const StateSet& out = p.out(b);
    const auto& kids = p.children(b);
    for (BlockId c : kids) {
        if (table.at(c).empty()) {
            return {};
        }
    }
    std::vector<std::vector<std::uint32_t>> slot(kids.size());
    for (std::size_t ci = 0; ci < kids.size(); ++ci) {
        for (StateId q : p.inc(kids[ci])) {
            slot[ci].push_back(position(out, q));
        }
    }
    std::vector<PartialSubsystem<T>> result;
    std::vector<std::size_t> pick(kids.size(), 0);
    while (true) {
        PartialSubsystem<T> ps;
        ps.interface = out;
        ps.point.assign(out.size(), T(0));
        for (std::size_t ci = 0; ci < kids.size(); ++ci) {
            const auto& part = table[kids[ci]][pick[ci]];
            ps.states = set_union(ps.states, part.states);
            for (std::size_t j = 0; j < part.point.size(); ++j) {
                ps.point[slot[ci][j]] = part.point[j];
            }
        }
        result.push_back(std::move(ps));
        std::size_t ci = 0;
        while (ci < kids.size() && ++pick[ci] == table[kids[ci]].size()) {
            pick[ci++] = 0;
        }
        if (ci == kids.size()) {
            break;
        }
    }
    return result;
}

template <typename T>
PruneVerdict prune_partial(const PruneContext<T>& ctx, const PartialSubsystem<T>& candidate) {
    if (ctx.use_value && ctx.goal_inside) {
        T sum(0);
        for (const auto& x : candidate.point) {
            sum += x;
        }
        if (!meets_threshold(sum, ctx.lambda, ctx.tol)) {
            return PruneVerdict::value_bound;
        }
    }
    if (ctx.use_distance && candidate.size() > 0) {
        if (!ctx.distance || *ctx.distance + candidate.size() > ctx.upper_bound) {
            return PruneVerdict::distance_bound;
        }
    }
    return PruneVerdict::keep;
}

template <typename T>
std::optional<std::size_t> greedy_upper_bound(const ProbabilisticModel& m, WitnessMode mode, const Rational& lambda,
                                              const SolverOptions& opts) {
    const Objective obj = objective_of(mode);
    StateSet current = relevant_states(m);
    const double lam = lambda.get_d();
    const double margin = 1e-7;
    auto good = [&](const StateSet& kept) {
        double v = subsystem_value<double>(m, kept, obj, opts);
        return v >= lam + margin && v > margin;
    };
    if (!good(current)) {
        if (meets_threshold(subsystem_value<T>(m, current, obj, opts), from_rational<T>(lambda), opts.tol)) {
            return current.size();
        }
        return std::nullopt;
    }
    const StateSet all = current;
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
        StateSet trial;
        for (StateId s : current) {
            if (s != *it) {
                trial.push_back(s);
            }
        }
        if (good(trial)) {
            current = std::move(trial);
        }
    }
    if (meets_threshold(subsystem_value<T>(m, current, obj, opts), from_rational<T>(lambda), opts.tol)) {
        return current.size();
    }
    return all.size();
}

template <typename T>
WitnessResult<T> solve(const WitnessQuery& query) {
    if (!query.model || !query.partition) {
        throw std::invalid_argument("witness query needs a model and a partition");
    }
    const ProbabilisticModel& m = *query.model;
    check_mode(m, query.mode);
    const auto& opts = query.options;
    const Tolerance tol = opts.solver.tol;
    if (query.partition->blocks().empty() && m.num_states() > 0) {
        throw ValidationError("empty partition");
    }
    // Recompute navigation against this model so inc() reflects its initial states.
    const DirectedTreePartition p = validate_partition(m, query.partition->blocks());
    const auto g = underlying_graph(m);
    for (StateId s : m.initial_support()) {
        if (p.block_of(s) != p.root()) {
            throw ValidationError("initial state " + std::to_string(s) +
                                  " lies outside the root block; merge root candidates first");
        }
    }
    for (BlockId b = 0; b < p.num_blocks(); ++b) {
        std::size_t goals = 0;
        for (StateId s : p.block(b)) {
            goals += m.is_goal(s);
        }
        if (goals != 0 && goals != p.block(b).size()) {
            throw ValidationError("block " + std::to_string(b) + " mixes goal and non-goal states; split it first");
        }
        if (p.inc(b).size() > opts.interface_cap) {
            throw CapExceeded("block " + std::to_string(b) + " has " + std::to_string(p.inc(b).size()) +
                              " interface states (cap " + std::to_string(opts.interface_cap) +
                              "); refine the partition");
        }
    }

    WitnessResult<T> result;
    auto& stats = result.stats;
    const T lambda = from_rational<T>(query.threshold);
    const Objective obj = objective_of(query.mode);

    std::size_t bound = m.num_states();
    if (opts.prune_distance) {
        if (opts.upper_bound) {
            bound = *opts.upper_bound;
        } else {
            const auto relevant = relevant_states(m);
            std::optional<std::size_t> greedy;
            if (relevant.size() <= opts.greedy_cap) {
                greedy = greedy_upper_bound<T>(m, query.mode, query.threshold, opts.solver);
                if (!greedy) {
                    return result;
                }
            }
            bound = greedy.value_or(relevant.size());
        }
        stats.upper_bound = bound;
    }
    const auto dist = bfs_distance(g, m.initial_support());
    const auto goal_states = m.goal_states();

    RemoveDominatedOptions full;
    full.mode = domination_of(query.mode);
    full.interface_cap = opts.interface_cap;
    full.tol = tol;
    RemoveDominatedOptions batch = full;
    if (opts.batch_domination == BatchDomination::strong) {
        batch.mode = DominationMode::strong;
    }

    std::vector<std::vector<PartialSubsystem<T>>> table(p.num_blocks());
    for (BlockId b : p.bottom_up()) {
        BlockStats bs;
        bs.block = b;
        bs.block_size = p.block(b).size();
        const StateSet& inc = p.inc(b);
        const StateSet& out = p.out(b);
        bs.interface_size = inc.size();

        PruneContext<T> ctx;
        ctx.use_value = opts.prune_value;
        ctx.use_distance = opts.prune_distance;
        ctx.goal_inside = std::includes(p.cl(b).begin(), p.cl(b).end(), goal_states.begin(), goal_states.end());
        ctx.lambda = lambda;
        ctx.upper_bound = bound;
        ctx.tol = tol;
        for (StateId q : inc) {
            if (dist[q] != SIZE_MAX && (!ctx.distance || dist[q] < *ctx.distance)) {
                ctx.distance = dist[q];
            }
        }

        const auto models = phi_models(g, p, b, m.goal_mask(), opts.max_block_models);
        const auto succ = successor_points(table, p, b);
        bs.phi_models = models.size();
        bs.successor_points = succ.size();
        stats.subsets_enumerated += models.size();

        std::vector<PartialSubsystem<T>> tab;
        for (const StateSet& sb : models) {
            const auto loc = build_local<T>(m, sb, out);
            std::vector<std::uint32_t> inc_local(inc.size());
            for (std::size_t i = 0; i < inc.size(); ++i) {
                inc_local[i] = position(sb, inc[i]);
            }
            std::vector<std::vector<T>> affine;
            if (obj == Objective::dtmc) {
                affine = affine_values<T>(loc, out.size());
                ++stats.local_solves;
            }
            for (const auto& sp : succ) {
                PartialSubsystem<T> cand;
                cand.interface = inc;
                cand.states = set_union(sb, sp.states);
                cand.point.assign(inc.size(), T(0));
                if (obj == Objective::dtmc) {
                    for (std::size_t i = 0; i < inc.size(); ++i) {
                        if (inc_local[i] == UINT32_MAX) {
                            continue;
                        }
                        const auto& row = affine[inc_local[i]];
                        T v = row[0];
                        for (std::size_t k = 0; k < out.size(); ++k) {
                            if (row[k + 1] != 0 && sp.point[k] != 0) {
                                v += row[k + 1] * sp.point[k];
                            }
                        }
                        cand.point[i] = v;
                    }
                } else {
                    const auto values = solve_reach(local_system<T>(loc, sp.point), obj, opts.solver);
                    ++stats.local_solves;
                    for (std::size_t i = 0; i < inc.size(); ++i) {
                        if (inc_local[i] != UINT32_MAX) {
                            cand.point[i] = values[inc_local[i]];
                        }
                    }
                }
                ++bs.candidates;
                switch (prune_partial(ctx, cand)) {
                case PruneVerdict::value_bound:
                    ++bs.pruned_value;
                    continue;
                case PruneVerdict::distance_bound:
                    ++bs.pruned_distance;
                    continue;
                case PruneVerdict::keep:
                    break;
                }
                tab.push_back(std::move(cand));
            }
            if (opts.batch_domination != BatchDomination::none) {
                tab = remove_dominated(std::move(tab), batch);
                ++stats.domination_calls;
            }
            bs.peak_table = std::max(bs.peak_table, tab.size());
        }
        tab = remove_dominated(std::move(tab), full);
        ++stats.domination_calls;
        bs.survivors = tab.size();
        stats.candidates += bs.candidates;
        stats.pruned_value += bs.pruned_value;
        stats.pruned_distance += bs.pruned_distance;
        stats.pruned_dominated += bs.candidates - bs.pruned_value - bs.pruned_distance - bs.survivors;
        stats.blocks.push_back(bs);
        table[b] = std::move(tab);
        // Children's tables are no longer needed.
        for (BlockId c : p.children(b)) {
            table[c].clear();
            table[c].shrink_to_fit();
        }
    }

    const BlockId root = p.root();
    const StateSet& rinc = p.inc(root);
    const PartialSubsystem<T>* best = nullptr;
    T best_value(0);
    for (const auto& cand : table[root]) {
        T v(0);
        for (std::size_t i = 0; i < rinc.size(); ++i) {
            const Rational& w = m.initial(rinc[i]);
            if (sgn(w) != 0) {
                v += from_rational<T>(w) * cand.point[i];
            }
        }
        if (!meets_threshold(v, lambda, tol)) {
            continue;
        }
        if (!best || lex_less(cand.states, best->states)) {
            best = &cand;
            best_value = v;
        }
    }
    if (best) {
        result.feasible = true;
        result.states = best->states;
        result.value = best_value;
    }
    return result;
}

template <typename T>
WitnessResult<T> brute_force_witness(const ProbabilisticModel& m, WitnessMode mode, const Rational& lambda,
                                     const BruteForceWitnessOptions& opts) {
    check_mode(m, mode);
    const StateSet rel = relevant_states(m);
    const std::size_t r = rel.size();
    if (r > opts.cap) {
        throw CapExceeded("brute force limited to " + std::to_string(opts.cap) + " relevant states, model has " +
                          std::to_string(r));
    }
    WitnessResult<T> result;
    const T lam = from_rational<T>(lambda);
    const Objective obj = objective_of(mode);
    const auto g = underlying_graph(m);
    // Bit masks over the relevant states.
    std::vector<std::uint32_t> succ(r, 0), pred(r, 0);
    std::uint32_t init = 0, goal = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (sgn(m.initial(rel[i])) > 0) {
            init |= 1u << i;
        }
        if (m.is_goal(rel[i])) {
            goal |= 1u << i;
        }
        for (StateId t : g.succ[rel[i]]) {
            auto k = position(rel, t);
            if (k != UINT32_MAX) {
                succ[i] |= 1u << k;
                pred[k] |= 1u << i;
            }
        }
    }
    auto closure = [&](std::uint32_t seed, const std::vector<std::uint32_t>& adj, std::uint32_t within) {
        std::uint32_t seen = seed & within, frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) {
                next |= adj[static_cast<std::size_t>(__builtin_ctz(f))];
            }
            next &= within & ~seen;
            seen |= next;
            frontier = next;
        }
        return seen;
    };
    // A minimum witness is clean: each state is reachable from an initial
    // state and reaches Goal inside the set.
    auto clean = [&](std::uint32_t mask) {
        return closure(init, succ, mask) == mask && closure(goal, pred, mask) == mask;
    };
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k <= r; ++k) {
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            idx[i] = i;
        }
        while (true) {
            std::uint32_t mask = 0;
            for (auto i : idx) {
                mask |= 1u << i;
            }
            ++result.stats.subsets_enumerated;
            if (k > 0 && clean(mask)) {
                StateSet kept;
                for (auto i : idx) {
                    kept.push_back(rel[i]);
                }
                T v = subsystem_value<T>(m, kept, obj, opts.solver);
                ++result.stats.local_solves;
                if (meets_threshold(v, lam, opts.solver.tol)) {
                    result.feasible = true;
                    result.states = std::move(kept);
                    result.value = v;
                    return result;
                }
            }
            // Next k-combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == r - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return result;
}

#define TREEWIT_INSTANTIATE(T)                                                                                    \
    template T subsystem_value<T>(const ProbabilisticModel&, const StateSet&, Objective, const SolverOptions&);   \
    template bool meets_threshold<T>(const T&, const T&, const Tolerance&);                                       \
    template std::vector<PartialSubsystem<T>> successor_points<T>(                                                \
        const std::vector<std::vector<PartialSubsystem<T>>>&, const DirectedTreePartition&, BlockId);             \
    template PruneVerdict prune_partial<T>(const PruneContext<T>&, const PartialSubsystem<T>&);                   \
    template std::optional<std::size_t> greedy_upper_bound<T>(const ProbabilisticModel&, WitnessMode,             \
                                                              const Rational&, const SolverOptions&);             \
    template WitnessResult<T> solve<T>(const WitnessQuery&);                                                      \
    template WitnessResult<T> brute_force_witness<T>(const ProbabilisticModel&, WitnessMode, const Rational&,     \
                                                     const BruteForceWitnessOptions&);

TREEWIT_INSTANTIATE(double)
TREEWIT_INSTANTIATE(Rational)

} // namespace treewit
