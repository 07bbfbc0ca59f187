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

#include "treewit/generate.hpp"
#include "treewit/reach.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace treewit;

TEST_CASE("goal states have value one") {
    ModelBuilder b(ModelKind::dtmc, 2);
    b.transition(0, 1, Rational(1, 3)).goal(1).initial(0, 1);
    const auto v = reach_value<Rational>(b.build(), Objective::dtmc);
    CHECK(v[1] == 1);
    CHECK(v[0] == Rational(1, 3));
}

TEST_CASE("one-step gamble") {
    ModelBuilder b(ModelKind::dtmc, 3);
    b.transition(0, 2, Rational(1, 2)).transition(0, 1, Rational(1, 2)).goal(2).initial(0, 1);
    CHECK(reach_value<Rational>(b.build(), Objective::dtmc)[0] == Rational(1, 2));
    CHECK(reach_value<double>(b.build(), Objective::dtmc)[0] == doctest::Approx(0.5));
}

TEST_CASE("random DTMCs match the dense rational solve") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 40; ++i) {
        const auto m = generate_random_model(10, ModelKind::dtmc, rng(), 3);
        const auto exact = reach_value<Rational>(m, Objective::dtmc);
        const auto fl = reach_value<double>(m, Objective::dtmc);
        std::vector<char> all(10, 1);
        const auto ref = oracle::values(m, all, oracle::Opt::dtmc);
        for (StateId s = 0; s < 10; ++s) {
            CHECK(exact[s] == ref[s]);
            CHECK(std::abs(fl[s] - ref[s].get_d()) < 1e-9);
        }
    }
}

TEST_CASE("random MDPs match policy enumeration") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 40; ++i) {
        const auto m = generate_random_model(8, ModelKind::mdp, rng(), 3, 2);
        std::vector<char> all(8, 1);
        for (auto [obj, opt] : {std::pair{Objective::max, oracle::Opt::max}, std::pair{Objective::min, oracle::Opt::min}}) {
            const auto exact = reach_value<Rational>(m, obj);
            const auto fl = reach_value<double>(m, obj);
            const auto ref = oracle::values(m, all, opt);
            for (StateId s = 0; s < 8; ++s) {
                CHECK(exact[s] == ref[s]);
                CHECK(std::abs(fl[s] - ref[s].get_d()) < 1e-8);
            }
        }
    }
}

TEST_CASE("apply_assumption examples") {
    ModelBuilder b(ModelKind::dtmc, 2);
    b.transition(0, 1, Rational(1, 2)).initial(0, 1);
    const auto m = b.build();
    InterfaceAssumption f{{1}, {Rational(2, 5)}};
    CHECK(value_with_assumption<Rational>(m, {0, 1}, f, Objective::dtmc)[0] == Rational(1, 5));
    const auto mf = apply_assumption(m, {0, 1}, f);
    // No goal inside: a synthetic goal is appended.
    CHECK(mf.num_states() == 3);
    CHECK(mf.is_goal(2));
    CHECK(mf.actions(1).size() == 1);
    CHECK(mf.actions(1)[0].transitions == std::vector<Transition>{{2, Rational(2, 5)}});

    InterfaceAssumption zero{{1}, {Rational(0)}};
    CHECK(value_with_assumption<Rational>(m, {0, 1}, zero, Objective::dtmc)[0] == 0);
    CHECK_THROWS(apply_assumption(m, {0}, f));
}

TEST_CASE("apply_assumption targets the first kept goal") {
    ModelBuilder b(ModelKind::dtmc, 4);
    b.transition(0, 1, Rational(1, 2)).transition(0, 3, Rational(1, 4)).goal(2).goal(3).initial(0, 1);
    const auto m = b.build();
    InterfaceAssumption f{{1}, {Rational(1, 2)}};
    const auto mf = apply_assumption(m, {0, 1, 2, 3}, f);
    CHECK(mf.num_states() == 4);
    CHECK(mf.actions(1)[0].transitions == std::vector<Transition>{{2, Rational(1, 2)}});
    CHECK(value_with_assumption<Rational>(m, {0, 1, 2, 3}, f, Objective::dtmc)[0] == Rational(1, 2));
}

TEST_CASE("closed-form product with a total assumption") {
    ModelBuilder b(ModelKind::dtmc, 3);
    b.transition(0, 1, Rational(1, 3)).transition(0, 2, Rational(1, 2)).initial(0, 1);
    InterfaceAssumption f{{1, 2}, {Rational(3, 4), Rational(1, 5)}};
    CHECK(value_with_assumption<Rational>(b.build(), {0, 1, 2}, f, Objective::dtmc)[0] ==
          Rational(1, 3) * Rational(3, 4) + Rational(1, 2) * Rational(1, 5));
}

TEST_CASE("subsystems never beat the full system") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        const auto kind = i % 2 ? ModelKind::mdp : ModelKind::dtmc;
        const auto m = generate_random_model(9, kind, rng());
        const auto obj = kind == ModelKind::dtmc ? Objective::dtmc : Objective::max;
        const Rational full = initial_value<Rational>(m, reach_value<Rational>(m, obj));
        StateSet kept;
        for (StateId s = 0; s < 9; ++s) {
            if (rng() % 2) {
                kept.push_back(s);
            }
        }
        const auto sub = induce_subsystem(m, kept);
        CHECK(initial_value<Rational>(sub, reach_value<Rational>(sub, obj)) <= full);
    }
}

TEST_CASE("non-convergence carries the residual") {
    // A slowly converging loop with a tiny iteration budget.
    ModelBuilder b(ModelKind::mdp, 3);
    b.transition(0, "a", 0, Rational(999, 1000)).transition(0, "a", 2, Rational(1, 1000));
    b.transition(0, "b", 1, 1).goal(2).initial(0, 1);
    SolverOptions opts;
    opts.max_iterations = 0;
    try {
        reach_value<double>(b.build(), Objective::max, opts);
        CHECK(true);
    } catch (const NonConvergence& e) {
        CHECK(e.residual() > 0);
    }
}

TEST_CASE("linear solver") {
    const auto x = solve_linear<Rational>({{2, 1}, {1, 3}}, {3, 5});
    CHECK(x == std::vector<Rational>{Rational(4, 5), Rational(7, 5)});
    CHECK_THROWS_AS(solve_linear<Rational>({{1, 2}, {2, 4}}, {1, 2}), std::domain_error);
}
