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
#include "treewit/model.hpp"

#include <doctest.h>

#include <random>

using namespace treewit;

namespace {

bool has_message(const std::vector<Violation>& v, const std::string& text) {
    for (const auto& x : v) {
        if (x.message.find(text) != std::string::npos) {
            return true;
        }
    }
    return false;
}

ProbabilisticModel chain3() {
    ModelBuilder b(ModelKind::dtmc, 3);
    b.transition(0, 1, 1).transition(1, 2, 1).initial(0, 1).goal(2);
    return b.build();
}

} // namespace

TEST_CASE("absorbing goal state is valid") {
    ModelBuilder b(ModelKind::dtmc, 1);
    b.initial(0, 1).goal(0);
    CHECK(validate_model(b.build()).empty());
}

TEST_CASE("row sum above one is reported with the state") {
    ModelBuilder b(ModelKind::dtmc, 3);
    b.transition(0, 1, parse_rational("0.7")).transition(0, 2, parse_rational("0.5")).initial(0, 1);
    const auto v = validate_model(b.build());
    REQUIRE(v.size() == 1);
    CHECK(v[0].state == StateId{0});
    CHECK(has_message(v, "row sum 6/5 > 1 at s0"));
}

TEST_CASE("goal with a self loop is not a trap") {
    ModelBuilder b(ModelKind::dtmc, 1);
    b.transition(0, 0, Rational(1, 2)).goal(0);
    CHECK(has_message(validate_model(b.build()), "goal state 0 is not a trap"));
}

TEST_CASE("other invariant violations") {
    ModelBuilder b(ModelKind::mdp, 2);
    b.transition(0, "a", 1, Rational(3, 2)).initial(0, Rational(2, 3)).initial(1, Rational(2, 3));
    const auto v = validate_model(b.build());
    CHECK(v.size() >= 2);
    CHECK(has_message(v, "outside [0,1]"));
}

TEST_CASE("induce_subsystem examples") {
    const auto m = chain3();
    CHECK(induce_subsystem(m, {0, 1, 2}) == m);
    const auto cut = induce_subsystem(m, {0, 2});
    CHECK(cut.actions(0).size() == 1);
    CHECK(cut.actions(0)[0].transitions.empty());
    CHECK(cut.initial(0) == 1);
    const auto empty = induce_subsystem(m, {});
    CHECK(empty.initial_support().empty());
    CHECK(underlying_graph(empty).num_edges() == 0);
    CHECK_THROWS(induce_subsystem(m, {7}));
}

TEST_CASE("underlying graph erases actions and zero entries") {
    ModelBuilder b(ModelKind::mdp, 3);
    b.transition(0, "alpha", 1, Rational(3, 10)).transition(0, "beta", 1, Rational(9, 10));
    b.transition(0, "alpha", 2, 0);
    const auto g = underlying_graph(b.build());
    CHECK(g.num_edges() == 1);
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("induction properties on random models") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        const auto kind = i % 2 ? ModelKind::mdp : ModelKind::dtmc;
        const auto m = generate_random_model(10, kind, rng());
        REQUIRE(validate_model(m).empty());
        StateSet k2, k1;
        for (StateId s = 0; s < 10; ++s) {
            if (rng() % 4 != 0) {
                k2.push_back(s);
                if (rng() % 3 != 0) {
                    k1.push_back(s);
                }
            }
        }
        const auto m2 = induce_subsystem(m, k2);
        CHECK(validate_model(m2).empty());
        CHECK(induce_subsystem(m, k1) == induce_subsystem(m2, k1));
        // Graph of the induced model is the induced subgraph.
        const auto g = underlying_graph(m);
        const auto gi = underlying_graph(m2);
        const auto mask = to_mask(k2, 10);
        for (StateId s = 0; s < 10; ++s) {
            for (StateId t = 0; t < 10; ++t) {
                CHECK(gi.has_edge(s, t) == (mask[s] && mask[t] && g.has_edge(s, t)));
            }
        }
    }
}

TEST_CASE("state set helpers") {
    CHECK(make_state_set({3, 1, 3, 2}) == StateSet{1, 2, 3});
    const auto mask = to_mask({0, 2}, 4);
    CHECK(from_mask(mask) == StateSet{0, 2});
    const auto g = make_graph(4, {{0, 1}, {1, 2}, {3, 2}});
    CHECK(from_mask(forward_reachable(g, {0})) == StateSet{0, 1, 2});
    CHECK(from_mask(backward_reachable(g, {2})) == StateSet{0, 1, 2, 3});
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("-4") == -4);
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}
