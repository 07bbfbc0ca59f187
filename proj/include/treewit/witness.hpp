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

#include "treewit/dominate.hpp"
#include "treewit/partition.hpp"
#include "treewit/reach.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treewit {

enum class WitnessMode { dtmc, mdp_max, mdp_min };

const char* to_string(WitnessMode mode);
std::optional<WitnessMode> parse_witness_mode(const std::string& text);
Objective objective_of(WitnessMode mode);
/// dtmc and mdp-max prune with domination, mdp-min with strong domination.
DominationMode domination_of(WitnessMode mode);

/// The witness mode does not fit the model kind (dtmc needs a DTMC, mdp-* an MDP).
class ModeMismatch : public Error {
public:
    using Error::Error;
};

/// Throws ModeMismatch.
void check_mode(const ProbabilisticModel& m, WitnessMode mode);

/// Optimal reachability value of the subsystem induced by `kept`, weighted by
/// the initial distribution.
template <typename T>
T subsystem_value(const ProbabilisticModel& m, const StateSet& kept, Objective objective,
                  const SolverOptions& opts = {});

/// States reachable from the initial support that can also reach Goal.
StateSet relevant_states(const ProbabilisticModel& m);

/// True iff `value` meets the threshold. A threshold of zero still asks for a
/// positive value, so the empty set never witnesses anything.
template <typename T>
bool meets_threshold(const T& value, const T& lambda, const Tolerance& tol);

/// Subsets of block b satisfying: every kept state outside inc(b) has a kept
/// predecessor in b, and every kept non-goal state outside exit(b) has a kept
/// successor in b. Self-loops do not count. Ordered by their membership bit
/// strings over the sorted block, excluded before included.
std::vector<StateSet> phi_models(const UnderlyingGraph& g, const DirectedTreePartition& p, BlockId b,
                                 const std::vector<char>& goal, std::size_t cap = std::size_t{1} << 20);

/// Cartesian product of the children's tables as partial subsystems for
/// out(b): state sets are unioned and I-points laid out over sorted out(b).
template <typename T>
std::vector<PartialSubsystem<T>> successor_points(const std::vector<std::vector<PartialSubsystem<T>>>& table,
                                                  const DirectedTreePartition& p, BlockId b);

enum class PruneVerdict { keep, value_bound, distance_bound };
const char* to_string(PruneVerdict v);

template <typename T>
struct PruneContext {
    bool use_value = true;
    bool use_distance = true;
    bool goal_inside = false;           // Goal is contained in cl(B)
    T lambda = T(0);
    std::optional<std::size_t> distance; // shortest initial-to-inc(B) path, in edges; nullopt if unreachable
    std::size_t upper_bound = 0;         // size of some known witness
    Tolerance tol;
};

/// Drops a candidate only when it cannot be part of any minimal witness.
template <typename T>
PruneVerdict prune_partial(const PruneContext<T>& ctx, const PartialSubsystem<T>& candidate);

enum class BatchDomination { none, strong, full };

struct WitnessOptions {
    bool prune_value = true;
    bool prune_distance = true;
    /// Known witness size; when absent a greedy pass supplies one.
    std::optional<std::size_t> upper_bound;
    /// Largest relevant-state count for which the greedy pass runs; above it
    /// the relevant-state count itself is the bound.
    std::size_t greedy_cap = 96;
    std::size_t interface_cap = kDefaultInterfaceCap;
    std::size_t max_block_models = std::size_t{1} << 20;
    /// Filter applied after each subset batch; the mode's full relation always
    /// runs once per block.
    BatchDomination batch_domination = BatchDomination::strong;
    SolverOptions solver;
};

struct WitnessQuery {
    const ProbabilisticModel* model = nullptr;
    const DirectedTreePartition* partition = nullptr;
    WitnessMode mode = WitnessMode::dtmc;
    Rational threshold;
    WitnessOptions options;
};

struct BlockStats {
    BlockId block = 0;
    std::size_t block_size = 0;
    std::size_t interface_size = 0;
    std::size_t phi_models = 0;
    std::size_t successor_points = 0;
    std::size_t candidates = 0;
    std::size_t pruned_value = 0;
    std::size_t pruned_distance = 0;
    std::size_t peak_table = 0;  // largest table after a batch filter
    std::size_t survivors = 0;
};

struct WitnessStats {
    std::size_t subsets_enumerated = 0;
    std::size_t candidates = 0;
    std::size_t pruned_value = 0;
    std::size_t pruned_distance = 0;
    std::size_t pruned_dominated = 0;
    std::size_t domination_calls = 0;
    std::size_t local_solves = 0;
    std::optional<std::size_t> upper_bound;
    std::vector<BlockStats> blocks;   // in processing order
};

template <typename T>
struct WitnessResult {
    bool feasible = false;
    StateSet states;
    T value = T(0);
    WitnessStats stats;

    std::size_t size() const { return states.size(); }
};

/// Size of a witness found by greedily dropping relevant states, or nullopt
/// when even all relevant states miss the threshold. Runs in floating point
/// and confirms the final set in T.
template <typename T>
std::optional<std::size_t> greedy_upper_bound(const ProbabilisticModel& m, WitnessMode mode, const Rational& lambda,
                                              const SolverOptions& opts = {});

/// Minimum-size witness via bottom-up traversal of the partition. The
/// partition must have all initial states in the root block and no block
/// mixing goal and non-goal states.
template <typename T>
WitnessResult<T> solve(const WitnessQuery& query);

struct BruteForceWitnessOptions {
    std::size_t cap = 22;
    SolverOptions solver;
};

/// Exhaustive search over subsets of the relevant states by increasing size;
/// the lexicographically smallest minimum witness is returned.
template <typename T>
WitnessResult<T> brute_force_witness(const ProbabilisticModel& m, WitnessMode mode, const Rational& lambda,
                                     const BruteForceWitnessOptions& opts = {});

} // namespace treewit
