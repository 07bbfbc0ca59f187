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
#include <utility>
#include <vector>

namespace treewit {

/// Which probability of eventually reaching Goal is computed.
enum class Objective { dtmc, min, max };

struct SolverOptions {
    Tolerance tol;
    std::size_t max_iterations = 100000;
};

/// Compact reachability problem: local states, per-state choices, and a
/// direct probability mass into Goal per choice. Goal states have value 1.
template <typename T>
struct ReachSystem {
    struct Choice {
        std::vector<std::pair<std::uint32_t, T>> succ;
        T to_goal = T(0);
    };

    std::vector<std::vector<Choice>> choices;
    std::vector<char> goal;

    std::size_t size() const { return choices.size(); }
};

/// Optimal (or, for DTMCs, the unique) probability to reach Goal from each
/// local state. DTMCs use Gaussian elimination on the states that can reach
/// Goal; MDPs use policy iteration with linear solves per policy.
template <typename T>
std::vector<T> solve_reach(const ReachSystem<T>& sys, Objective objective, const SolverOptions& opts = {});

template <typename T>
ReachSystem<T> make_reach_system(const ProbabilisticModel& m);

/// Solves A x = b in place (A square). Singular systems raise std::domain_error.
template <typename T>
std::vector<T> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b);

/// Partial function f: dom(f) -> [0,1]; `domain` and `values` are parallel.
struct InterfaceAssumption {
    StateSet domain;
    std::vector<Rational> values;

    Rational at(StateId s) const;
};

/// Builds the subsystem induced by `kept` in which every state of dom(f) has a
/// single action moving to a designated goal state with probability f(s). The
/// designated target is the first goal state inside `kept`; when there is none,
/// a fresh goal state is appended.
ProbabilisticModel apply_assumption(const ProbabilisticModel& m, const StateSet& kept,
                                    const InterfaceAssumption& f);

template <typename T>
std::vector<T> reach_value(const ProbabilisticModel& m, Objective objective, const SolverOptions& opts = {});

/// Values of Goal-reachability in the assumption-transformed subsystem,
/// indexed by the states of `m` (a synthetic goal, if any, is dropped).
template <typename T>
std::vector<T> value_with_assumption(const ProbabilisticModel& m, const StateSet& kept, const InterfaceAssumption& f,
                                     Objective objective, const SolverOptions& opts = {});

/// Σ ι(s)·value(s).
template <typename T>
T initial_value(const ProbabilisticModel& m, const std::vector<T>& values);

} // namespace treewit
