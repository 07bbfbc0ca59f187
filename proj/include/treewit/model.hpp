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

#include "treewit/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace treewit {

using StateId = std::uint32_t;

/// Sorted, duplicate-free list of state ids.
using StateSet = std::vector<StateId>;

StateSet make_state_set(std::vector<StateId> states);
std::vector<char> to_mask(const StateSet& set, std::size_t num_states);
StateSet from_mask(const std::vector<char>& mask);

enum class ModelKind { dtmc, mdp };

struct Transition {
    StateId target;
    Rational prob;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct Action {
    std::string label;
    std::vector<Transition> transitions;

    friend bool operator==(const Action&, const Action&) = default;
};

/// Substochastic DTMC or MDP over dense state ids 0..n-1.
///
/// DTMC states carry exactly one (possibly empty) action. Missing probability
/// mass goes to an implicit fail state that is never materialized.
class ProbabilisticModel {
public:
    ProbabilisticModel() = default;
    ProbabilisticModel(ModelKind kind, std::vector<std::vector<Action>> actions, std::vector<Rational> initial,
                       std::vector<char> goal, std::vector<std::string> names = {});

    ModelKind kind() const { return kind_; }
    bool is_dtmc() const { return kind_ == ModelKind::dtmc; }
    std::size_t num_states() const { return actions_.size(); }

    const std::vector<Action>& actions(StateId s) const { return actions_.at(s); }
    const Rational& initial(StateId s) const { return initial_.at(s); }
    const std::vector<Rational>& initial() const { return initial_; }
    bool is_goal(StateId s) const { return goal_.at(s) != 0; }
    const std::vector<char>& goal_mask() const { return goal_; }
    StateSet goal_states() const;
    StateSet initial_support() const;

    /// Optional side map of human-readable names; empty when unnamed.
    const std::vector<std::string>& names() const { return names_; }

    /// Sum of outgoing probabilities of one action.
    Rational row_sum(StateId s, std::size_t action) const;

    friend bool operator==(const ProbabilisticModel&, const ProbabilisticModel&) = default;

private:
    ModelKind kind_ = ModelKind::dtmc;
    std::vector<std::vector<Action>> actions_;
    std::vector<Rational> initial_;
    std::vector<char> goal_;
    std::vector<std::string> names_;
};

/// Incremental construction helper. Parallel entries for the same
/// (state, action, target) are summed.
class ModelBuilder {
public:
    ModelBuilder(ModelKind kind, std::size_t num_states);

    ModelBuilder& transition(StateId src, StateId dst, const Rational& prob);
    ModelBuilder& transition(StateId src, const std::string& action, StateId dst, const Rational& prob);
    /// Declares an action without transitions (an MDP dead-end choice).
    ModelBuilder& action(StateId src, const std::string& action);
    ModelBuilder& initial(StateId s, const Rational& prob);
    ModelBuilder& goal(StateId s);
    ModelBuilder& name(StateId s, std::string name);

    ProbabilisticModel build() const;

private:
    Action& find_action(StateId src, const std::string& label);

    ModelKind kind_;
    std::size_t num_states_;
    std::vector<std::vector<Action>> actions_;
    std::vector<Rational> initial_;
    std::vector<char> goal_;
    std::vector<std::string> names_;
};

struct Violation {
    std::optional<StateId> state;
    std::optional<std::string> action;
    std::string message;
};

/// Returns every violated model invariant; an empty list means the model is valid.
std::vector<Violation> validate_model(const ProbabilisticModel& m);

/// Zeroes every transition and initial entry with an endpoint outside `kept`.
/// State ids are preserved; dropped states become isolated non-initial states.
ProbabilisticModel induce_subsystem(const ProbabilisticModel& m, const StateSet& kept);

/// A `ProbabilisticModel` restricted to a kept state set.
struct Subsystem {
    const ProbabilisticModel* base;
    StateSet kept;

    ProbabilisticModel induced() const { return induce_subsystem(*base, kept); }
};

/// Directed graph with sorted, duplicate-free successor lists.
struct UnderlyingGraph {
    std::size_t num_vertices = 0;
    std::vector<std::vector<StateId>> succ;

    std::vector<std::vector<StateId>> predecessors() const;
    std::size_t num_edges() const;
    bool has_edge(StateId a, StateId b) const;

    friend bool operator==(const UnderlyingGraph&, const UnderlyingGraph&) = default;
};

UnderlyingGraph make_graph(std::size_t n, const std::vector<std::pair<StateId, StateId>>& edges);

/// Edge (s, t) iff some action of s moves to t with positive probability.
UnderlyingGraph underlying_graph(const ProbabilisticModel& m);

/// States reachable from `sources` (inclusive).
std::vector<char> forward_reachable(const UnderlyingGraph& g, const StateSet& sources);
/// States that can reach `targets` (inclusive).
std::vector<char> backward_reachable(const UnderlyingGraph& g, const StateSet& targets);

} // namespace treewit
