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


#include "treewit/chain_gen.hpp"
#include "treewit/generate.hpp"
#include "treewit/io.hpp"

#include <doctest.h>

#include <random>

using namespace treewit;

namespace {

std::string parse_error(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("rationals") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational("0.125") == make_rational(1, 8));
    CHECK(parse_rational("2.5e-3") == make_rational(1, 400));
    CHECK(parse_rational("-4") == -4);
    CHECK(to_string(make_rational(6, 4)) == "3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("dtmc text") {
    const auto m = parse_model(R"(# two steps
dtmc
states 3
0 1 1/2
1 2 0.5
init:
0 1
goal:
2
names:
0 start
2 done
)");
    CHECK(m.is_dtmc());
    CHECK(m.num_states() == 3);
    CHECK(m.actions(0).front().transitions == std::vector<Transition>{{1, make_rational(1, 2)}});
    CHECK(m.goal_states() == StateSet{2});
    CHECK(m.names()[2] == "done");
    CHECK(parse_model(serialize_model(m)) == m);
}

TEST_CASE("mdp text with an empty action") {
    const auto m = parse_model(R"(mdp
states 2
transitions:
0 a 1 1
0 stop
init:
0 1
goal:
1
)");
    CHECK_FALSE(m.is_dtmc());
    REQUIRE(m.actions(0).size() == 2);
    CHECK(m.actions(0)[1].label == "stop");
    CHECK(m.actions(0)[1].transitions.empty());
    CHECK(parse_model(serialize_model(m)) == m);
}

TEST_CASE("model parse errors carry line numbers") {
    CHECK(parse_error("dtmc\nstates 2\n0 5 1\n").find("line 3") != std::string::npos);
    CHECK(parse_error("ctmc\n").find("line 1") != std::string::npos);
    CHECK(parse_error("dtmc\nstates 2\n0 1 1/2\n0 1 1/4\n").find("line 4") != std::string::npos);
    CHECK(parse_error("dtmc\nstates 2\n0 1 x\n").find("line 3") != std::string::npos);
    CHECK(parse_error("dtmc\nstates 2\ninit:\n0 1\n0 1\n").find("line 5") != std::string::npos);
    CHECK_FALSE(parse_error("").empty());
}

TEST_CASE("random models round trip") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 30; ++i) {
        const auto m = generate_random_model(2 + rng() % 10, rng() % 2 ? ModelKind::mdp : ModelKind::dtmc, rng());
        CHECK(parse_model(serialize_model(m)) == m);
    }
}

TEST_CASE("partitions") {
    const auto blocks = parse_partition("A: 0 1\n# comment\nB: 2\n");
    CHECK(blocks == std::vector<StateSet>{{0, 1}, {2}});
    CHECK(parse_partition(serialize_partition(blocks)) == blocks);
    CHECK(serialize_partition(blocks).find("B0:") != std::string::npos);
    CHECK_THROWS_AS(parse_partition("A 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_partition("A: 0 x\n"), ParseError);
}

TEST_CASE("graphs") {
    const auto g = parse_graph("graph\nvertices 3\n0 1\n1 2\n");
    CHECK(g == make_graph(3, {{0, 1}, {1, 2}}));
    CHECK(parse_graph(serialize_graph(g)) == g);
    CHECK_THROWS_AS(parse_graph("graph\nvertices 2\n0 2\n"), ParseError);
}

TEST_CASE("mcp instances") {
    const auto inst = normalize_equal_valued(lift_to_nonnegative_3d(reduce_from_partition({1, 2})));
    CHECK(parse_mcp(serialize_mcp(inst)) == inst);
    const auto small = reduce_from_partition({3});
    CHECK(parse_mcp(serialize_mcp(small)) == small);
    CHECK_THROWS_AS(parse_mcp("mcp\ndimension 2\nlength 1\n"), ParseError);
}

TEST_CASE("format detection") {
    CHECK(detect_format("# x\n\ndtmc\n") == "dtmc");
    CHECK(detect_format("mdp\n") == "mdp");
    CHECK(detect_format("graph\nvertices 1\n") == "graph");
    CHECK(detect_format("mcp\n") == "mcp");
    CHECK(detect_format("A: 0\n") == "");
}

TEST_CASE("result documents") {
    ResultDocument d;
    d.set("feasible", true);
    d.set("size", std::size_t{3});
    d.set("value", make_rational(3, 8));
    d.set("states", format_states({0, 2, 5}));
    d.set_timing("solve_seconds", 0.25);
    const auto plain = d.render(false);
    CHECK(plain.find("timing") == std::string::npos);
    CHECK(d.render(true).find("timing:") != std::string::npos);
    const auto back = ResultDocument::parse(plain);
    CHECK(back.entries() == d.entries());
    CHECK(back.get("value") == "3/8");
    CHECK(back.get("missing").empty());
    CHECK_FALSE(back.has("missing"));
    CHECK(plain.find("feasible: true\nsize: 3\n") == 0);
}
