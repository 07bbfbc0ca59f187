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

#include "treewit/mcp.hpp"
#include "treewit/model.hpp"

namespace treewit {

enum class ChainVariant { m1, m2 };

/// Layered DTMC encoding a normalized 3-dimensional matrix-pair chain.
///
/// State layout: for layer i = 1..n the left triple l_i^{x,y,z} followed by
/// the right triple r_i^{x,y,z}, then the final triple and the goal state.
struct LayeredChain {
    ProbabilisticModel model;
    ChainVariant variant = ChainVariant::m1;
    McpInstance instance;
    std::size_t n = 0;
    /// Probability of staying on the cycle of a triple (M2 only, else 0).
    Rational gamma;

    StateId left(std::size_t layer, std::size_t c) const { return static_cast<StateId>(6 * (layer - 1) + c); }
    StateId right(std::size_t layer, std::size_t c) const { return static_cast<StateId>(6 * (layer - 1) + 3 + c); }
    StateId final_state(std::size_t c) const { return static_cast<StateId>(6 * n + c); }
    StateId goal() const { return static_cast<StateId>(6 * n + 3); }

    /// Blocks L_i u R_i for each layer, the final triple, and {goal}.
    std::vector<StateSet> layer_blocks() const;
};

/// 1 - gamma: midpoint of (12 eps, good_value_floor(n) / 3), a subinterval of
/// (12 eps, (1/3) (3 (1/12 - eps))^(n+2)).
Rational one_minus_gamma(std::size_t n);

/// (3 (1/12 - eps))^(n+2).
Rational good_value_lower_bound(std::size_t n);

/// 3^(n+1) (1/12 - eps)^(n+2), the smallest possible value of a good
/// subsystem: n + 1 index sums over n + 2 factors. This is a third of
/// good_value_lower_bound.
Rational good_value_floor(std::size_t n);

LayeredChain build_m1(const McpInstance& inst);
LayeredChain build_m2(const McpInstance& inst);

StateSet good_subsystem(const LayeredChain& chain, const Selection& sigma);

/// Contains the final triple and goal, and exactly one full triple per layer.
bool is_good(const LayeredChain& chain, const StateSet& kept);

struct GoodValue {
    Rational chain_probability;
    Rational mcp_value;
};

/// Exact DTMC solve on the good subsystem next to the exact matrix product.
GoodValue verify_good_value(const LayeredChain& chain, const Selection& sigma);

/// Exact reachability probability of the subsystem induced by `kept`.
Rational subsystem_probability(const LayeredChain& chain, const StateSet& kept);

/// For an M2 chain and a bad set of 3n+4 states containing goal: the
/// probability is at most 3(1 - gamma), and 3(1 - gamma) is below
/// good_value_floor, hence below every good value.
bool bad_subsystem_bound_check(const LayeredChain& chain, const StateSet& kept);

} // namespace treewit
