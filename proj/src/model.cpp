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

#include "treewit/model.hpp"

#include <algorithm>
#include <deque>

namespace treewit {

StateSet make_state_set(std::vector<StateId> states) {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    return states;
}

std::vector<char> to_mask(const StateSet& set, std::size_t num_states) {
    std::vector<char> mask(num_states, 0);
    for (StateId s : set) {
        if (s >= num_states) {
            throw std::out_of_range("state " + std::to_string(s) + " does not exist");
        }
        mask[s] = 1;
    }
    return mask;
}

StateSet from_mask(const std::vector<char>& mask) {
    StateSet out;
    for (std::size_t s = 0; s < mask.size(); ++s) {
        if (mask[s]) {
            out.push_back(static_cast<StateId>(s));
        }
    }
    return out;
}

ProbabilisticModel::ProbabilisticModel(ModelKind kind, std::vector<std::vector<Action>> actions,
                                       std::vector<Rational> initial, std::vector<char> goal,
                                       std::vector<std::string> names)
    : kind_(kind), actions_(std::move(actions)), initial_(std::move(initial)), goal_(std::move(goal)),
      names_(std::move(names)) {
    if (initial_.size() != actions_.size() || goal_.size() != actions_.size()) {
        throw std::invalid_argument("model component sizes disagree");
    }
    if (!names_.empty() && names_.size() != actions_.size()) {
        throw std::invalid_argument("name map must cover all states");
    }
}

StateSet ProbabilisticModel::goal_states() const {
    return from_mask(goal_);
}

StateSet ProbabilisticModel::initial_support() const {
    StateSet out;
    for (std::size_t s = 0; s < initial_.size(); ++s) {
        if (sgn(initial_[s]) > 0) {
            out.push_back(static_cast<StateId>(s));
        }
    }
    return out;
}

Rational ProbabilisticModel::row_sum(StateId s, std::size_t action) const {
    Rational sum = 0;
    for (const auto& t : actions_.at(s).at(action).transitions) {
        sum += t.prob;
    }
    return sum;
}

ModelBuilder::ModelBuilder(ModelKind kind, std::size_t num_states)
    : kind_(kind), num_states_(num_states), actions_(num_states), initial_(num_states, Rational(0)),
      goal_(num_states, 0) {}

Action& ModelBuilder::find_action(StateId src, const std::string& label) {
    if (src >= num_states_) {
        throw std::out_of_range("state " + std::to_string(src) + " does not exist");
    }
    auto& acts = actions_[src];
    for (auto& a : acts) {
        if (a.label == label) {
            return a;
        }
    }
    acts.push_back(Action{label, {}});
    return acts.back();
}

ModelBuilder& ModelBuilder::transition(StateId src, StateId dst, const Rational& prob) {
    return transition(src, std::string{}, dst, prob);
}

ModelBuilder& ModelBuilder::transition(StateId src, const std::string& action, StateId dst, const Rational& prob) {
    Action& a = find_action(src, kind_ == ModelKind::dtmc ? std::string{} : action);
    for (auto& t : a.transitions) {
        if (t.target == dst) {
            t.prob += prob;
            return *this;
        }
    }
    a.transitions.push_back(Transition{dst, prob});
    return *this;
}

ModelBuilder& ModelBuilder::action(StateId src, const std::string& action) {
    find_action(src, kind_ == ModelKind::dtmc ? std::string{} : action);
    return *this;
}

ModelBuilder& ModelBuilder::initial(StateId s, const Rational& prob) {
    initial_.at(s) = prob;
    return *this;
}

ModelBuilder& ModelBuilder::goal(StateId s) {
    goal_.at(s) = 1;
    return *this;
}

ModelBuilder& ModelBuilder::name(StateId s, std::string name) {
    if (names_.empty()) {
        names_.resize(num_states_);
    }
    names_.at(s) = std::move(name);
    return *this;
}

ProbabilisticModel ModelBuilder::build() const {
    auto actions = actions_;
    for (auto& acts : actions) {
        for (auto& a : acts) {
            std::sort(a.transitions.begin(), a.transitions.end(),
                      [](const Transition& x, const Transition& y) { return x.target < y.target; });
        }
        if (kind_ == ModelKind::dtmc && acts.empty()) {
            acts.push_back(Action{});
        }
    }
    return ProbabilisticModel(kind_, std::move(actions), initial_, goal_, names_);
}

std::vector<Violation> validate_model(const ProbabilisticModel& m) {
    std::vector<Violation> out;
    const std::size_t n = m.num_states();
    Rational init_sum = 0;
    for (StateId s = 0; s < n; ++s) {
        const Rational& iota = m.initial(s);
        if (sgn(iota) < 0 || iota > 1) {
            out.push_back({s, std::nullopt, "initial probability " + to_string(iota) + " of state " +
                                                std::to_string(s) + " outside [0,1]"});
        }
        init_sum += iota;
        const auto& acts = m.actions(s);
        if (m.is_dtmc() && acts.size() != 1) {
            out.push_back({s, std::nullopt, "DTMC state " + std::to_string(s) + " must have exactly one action"});
        }
        bool has_outgoing = false;
        for (const auto& a : acts) {
            Rational sum = 0;
            for (const auto& t : a.transitions) {
                if (t.target >= n) {
                    out.push_back({s, a.label, "transition from " + std::to_string(s) + " to unknown state " +
                                                   std::to_string(t.target)});
                }
                if (sgn(t.prob) < 0 || t.prob > 1) {
                    out.push_back({s, a.label, "probability " + to_string(t.prob) + " at " + std::to_string(s) +
                                                   " outside [0,1]"});
                }
                if (sgn(t.prob) > 0) {
                    has_outgoing = true;
                }
                sum += t.prob;
            }
            if (sum > 1) {
                std::string where = "s" + std::to_string(s);
                if (!m.is_dtmc()) {
                    where += " action " + a.label;
                }
                out.push_back({s, a.label, "row sum " + to_string(sum) + " > 1 at " + where});
            }
        }
        if (m.is_goal(s) && has_outgoing) {
            out.push_back({s, std::nullopt, "goal state " + std::to_string(s) + " is not a trap"});
        }
    }
    if (init_sum > 1) {
        out.push_back({std::nullopt, std::nullopt, "initial distribution sums to " + to_string(init_sum) + " > 1"});
    }
    return out;
}

ProbabilisticModel induce_subsystem(const ProbabilisticModel& m, const StateSet& kept) {
    const auto mask = to_mask(kept, m.num_states());
    std::vector<std::vector<Action>> actions(m.num_states());
    std::vector<Rational> initial(m.num_states(), Rational(0));
    for (StateId s = 0; s < m.num_states(); ++s) {
        for (const auto& a : m.actions(s)) {
            Action na{a.label, {}};
            if (mask[s]) {
                for (const auto& t : a.transitions) {
                    if (mask[t.target]) {
                        na.transitions.push_back(t);
                    }
                }
            }
            actions[s].push_back(std::move(na));
        }
        if (mask[s]) {
            initial[s] = m.initial(s);
        }
    }
    return ProbabilisticModel(m.kind(), std::move(actions), std::move(initial), m.goal_mask(), m.names());
}

std::vector<std::vector<StateId>> UnderlyingGraph::predecessors() const {
    std::vector<std::vector<StateId>> pred(num_vertices);
    for (StateId s = 0; s < num_vertices; ++s) {
        for (StateId t : succ[s]) {
            pred[t].push_back(s);
        }
    }
    return pred;
}

std::size_t UnderlyingGraph::num_edges() const {
    std::size_t e = 0;
    for (const auto& row : succ) {
        e += row.size();
    }
    return e;
}

bool UnderlyingGraph::has_edge(StateId a, StateId b) const {
    const auto& row = succ.at(a);
    return std::binary_search(row.begin(), row.end(), b);
}

UnderlyingGraph make_graph(std::size_t n, const std::vector<std::pair<StateId, StateId>>& edges) {
    UnderlyingGraph g{n, std::vector<std::vector<StateId>>(n)};
    for (auto [a, b] : edges) {
        g.succ.at(a).push_back(b);
    }
    for (auto& row : g.succ) {
        row = make_state_set(std::move(row));
    }
    return g;
}

UnderlyingGraph underlying_graph(const ProbabilisticModel& m) {
    UnderlyingGraph g{m.num_states(), std::vector<std::vector<StateId>>(m.num_states())};
    for (StateId s = 0; s < m.num_states(); ++s) {
        std::vector<StateId> row;
        for (const auto& a : m.actions(s)) {
            for (const auto& t : a.transitions) {
                if (sgn(t.prob) > 0) {
                    row.push_back(t.target);
                }
            }
        }
        g.succ[s] = make_state_set(std::move(row));
    }
    return g;
}

namespace {

std::vector<char> bfs(const std::vector<std::vector<StateId>>& adj, const StateSet& sources) {
    std::vector<char> seen(adj.size(), 0);
    std::deque<StateId> queue;
    for (StateId s : sources) {
        if (!seen.at(s)) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId t : adj[s]) {
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

} // namespace

std::vector<char> forward_reachable(const UnderlyingGraph& g, const StateSet& sources) {
    return bfs(g.succ, sources);
}

std::vector<char> backward_reachable(const UnderlyingGraph& g, const StateSet& targets) {
    return bfs(g.predecessors(), targets);
}

} // namespace treewit
