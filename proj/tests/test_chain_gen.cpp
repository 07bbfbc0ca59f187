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


#include "oracles.hpp"

#include "treewit/chain_gen.hpp"
#include "treewit/witness.hpp"

#include <doctest.h>

using namespace treewit;

namespace {

McpInstance pipeline(const std::vector<long>& s) {
    return normalize_equal_valued(lift_to_nonnegative_3d(reduce_from_partition(s)));
}

std::vector<Selection> selections(std::size_t n) {
    std::vector<Selection> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
        Selection s(n);
        for (std::size_t j = 0; j < n; ++j) {
            s[j] = (bits >> j) & 1;
        }
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("state layout") {
    const auto c = build_m1(pipeline({1, 2}));
    CHECK(c.n == 2);
    CHECK(c.model.num_states() == 16);
    CHECK(c.left(1, 0) == 0);
    CHECK(c.right(1, 2) == 5);
    CHECK(c.left(2, 1) == 7);
    CHECK(c.final_state(0) == 12);
    CHECK(c.goal() == 15);
    CHECK(c.model.goal_states() == StateSet{15});
    CHECK(c.model.initial_support() == StateSet{0, 1, 2, 3, 4, 5});
    CHECK(c.gamma == 0);
    CHECK(c.layer_blocks().size() == 4);
}

TEST_CASE("M2 constants") {
    for (std::size_t n = 1; n <= 6; ++n) {
        const Rational eps = normalization_epsilon(n);
        const Rational omg = one_minus_gamma(n);
        CHECK(12 * eps < omg);
        CHECK(3 * omg < good_value_floor(n));
        CHECK(good_value_floor(n) * 3 == good_value_lower_bound(n));
        Rational pow = 1;
        for (std::size_t i = 0; i < n + 2; ++i) {
            pow *= Rational(1, 12) - eps;
        }
        for (std::size_t i = 0; i < n + 1; ++i) {
            pow *= 3;
        }
        CHECK(pow == good_value_floor(n));
    }
}

TEST_CASE("the gamma cycle of a lone triple") {
    // With only the final triple and goal kept, each triple state still
    // reaches goal with its final-vector entry: the cycle restores the mass.
    const auto c = build_m2(pipeline({1}));
    CHECK(c.gamma > 0);
    CHECK(c.gamma < 1);
    const StateSet kept{c.final_state(0), c.final_state(1), c.final_state(2), c.goal()};
    const auto vals = oracle::values(c.model, oracle::kept_mask(c.model, kept), oracle::Opt::dtmc);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(vals[c.final_state(k)] == c.instance.final[k]);
    }
}

TEST_CASE("good subsystems carry the matrix product") {
    for (const auto& s : std::vector<std::vector<long>>{{1}, {2, 2}, {1, 2, 3}}) {
        const auto inst = pipeline(s);
        for (const auto& c : {build_m1(inst), build_m2(inst)}) {
            for (const auto& sigma : selections(inst.length())) {
                const auto g = good_subsystem(c, sigma);
                CHECK(is_good(c, g));
                CHECK(g.size() == 3 * inst.length() + 4);
                const auto v = verify_good_value(c, sigma);
                CHECK(v.chain_probability == v.mcp_value);
                CHECK(v.mcp_value == evaluate(inst, sigma));
                CHECK(subsystem_probability(c, g) == v.mcp_value);
            }
        }
    }
}

TEST_CASE("mixed triples are not good") {
    const auto c = build_m2(pipeline({1}));
    StateSet kept{c.left(1, 0), c.left(1, 1), c.right(1, 2), c.final_state(0), c.final_state(1), c.final_state(2),
                  c.goal()};
    kept = make_state_set(kept);
    CHECK_FALSE(is_good(c, kept));
    CHECK(bad_subsystem_bound_check(c, kept));
    CHECK(subsystem_probability(c, kept) <= 3 * (1 - c.gamma));
}

TEST_CASE("minimal witness of M2 decides the partition instance") {
    for (const auto& s : std::vector<std::vector<long>>{{1}, {1, 1}, {1, 2}, {2, 2}}) {
        const auto inst = pipeline(s);
        const auto c = build_m2(inst);
        const auto p = validate_partition(c.model, c.layer_blocks());
        WitnessQuery q;
        q.model = &c.model;
        q.partition = &p;
        q.threshold = inst.threshold;
        const auto r = solve<Rational>(q);
        const bool yes = oracle::has_equal_split(s);
        CHECK(r.feasible);
        CHECK((r.size() <= 3 * inst.length() + 4) == yes);
        const auto brute = brute_force_witness<Rational>(c.model, WitnessMode::dtmc, inst.threshold);
        CHECK(brute.size() == r.size());
    }
}
