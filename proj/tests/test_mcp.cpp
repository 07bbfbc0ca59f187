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

#include "treewit/mcp.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace treewit;

namespace {

McpInstance random_instance(std::mt19937_64& rng, std::size_t d, std::size_t n, bool nonneg) {
    auto entry = [&]() -> Rational {
        const long lo = nonneg ? 0 : -4;
        return make_rational(lo + static_cast<long>(rng() % 9), 1 + rng() % 4);
    };
    McpInstance inst;
    inst.dimension = d;
    for (std::size_t i = 0; i < n; ++i) {
        std::array<Matrix, 2> pair;
        for (auto& m : pair) {
            m.assign(d, std::vector<Rational>(d));
            for (auto& row : m) {
                for (auto& x : row) {
                    x = entry();
                }
            }
        }
        inst.pairs.push_back(pair);
    }
    inst.iota.resize(d);
    inst.final.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        inst.iota[i] = entry();
        inst.final[i] = entry();
    }
    inst.threshold = entry();
    return inst;
}

} // namespace

TEST_CASE("matrix helpers") {
    const Matrix a{{1, 2}, {3, 4}};
    const Matrix b{{0, 1}, {1, 0}};
    CHECK(multiply(a, b) == Matrix{{2, 1}, {4, 3}});
    CHECK(multiply(a, identity_matrix(2)) == a);
    CHECK(row_times({1, 1}, a) == std::vector<Rational>{4, 6});
    CHECK(times_column(a, {1, 0}) == std::vector<Rational>{1, 3});
    CHECK(dot({1, 2}, {3, 4}) == 11);
}

TEST_CASE("evaluate agrees with an independent product") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 30; ++i) {
        const auto inst = random_instance(rng, 1 + rng() % 3, 1 + rng() % 4, false);
        Selection sigma(inst.length());
        for (auto& b : sigma) {
            b = rng() % 2;
        }
        CHECK(evaluate(inst, sigma) == oracle::chain_product(inst, sigma));
    }
}

TEST_CASE("brute force finds the best selection with lexicographic ties") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 30; ++i) {
        const auto inst = random_instance(rng, 2, 1 + rng() % 5, false);
        const auto v = brute_force(inst);
        CHECK(v.best_value == oracle::mcp_best_value(inst));
        CHECK(v.accepted == (v.best_value >= inst.threshold));
        CHECK(evaluate(inst, v.best_sigma) == v.best_value);
    }
    McpInstance flat;
    flat.dimension = 1;
    flat.pairs = {{Matrix{{1}}, Matrix{{1}}}};
    flat.iota = {1};
    flat.final = {1};
    flat.threshold = 1;
    CHECK(brute_force(flat).best_sigma == Selection{0});
}

TEST_CASE("brute force cap") {
    std::mt19937_64 rng(43);
    const auto inst = random_instance(rng, 1, 6, true);
    BruteForceOptions o;
    o.cap = 5;
    CHECK_THROWS_AS(brute_force(inst, o), CapExceeded);
}

TEST_CASE("shape errors") {
    McpInstance bad;
    bad.dimension = 2;
    bad.pairs = {{Matrix{{1, 0}, {0, 1}}, Matrix{{1}}}};
    bad.iota = {1, 0};
    bad.final = {0, 1};
    CHECK_THROWS_AS(bad.check_shape(), ValidationError);
}

TEST_CASE("rational rotation lies on the unit circle") {
    const Rational eps = make_rational(1, 1000000);
    for (long k = -10; k <= 10; ++k) {
        const Rational angle = make_rational(k, 10);
        const auto [c, s] = rational_rotation(angle, eps);
        CHECK(c * c + s * s == 1);
        CHECK(std::abs(std::atan2(s.get_d(), c.get_d()) - angle.get_d()) <= eps.get_d() + 1e-12);
    }
}

TEST_CASE("partition reduction decides equal splits") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 60; ++i) {
        std::vector<long> s(1 + rng() % 5);
        for (auto& x : s) {
            x = 1 + static_cast<long>(rng() % 6);
        }
        const auto inst = reduce_from_partition(s);
        CHECK(inst.dimension == 2);
        CHECK(inst.length() == s.size());
        CHECK(brute_force(inst).accepted == oracle::has_equal_split(s));
    }
    CHECK(brute_force(reduce_from_partition({1, 1, 2})).accepted);
    CHECK_FALSE(brute_force(reduce_from_partition({1, 2})).accepted);
    CHECK_THROWS_AS(reduce_from_partition({}), ValidationError);
    CHECK_THROWS_AS(reduce_from_partition({0, 0}), ValidationError);
}

TEST_CASE("lift keeps every selection value") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 20; ++i) {
        const auto inst = random_instance(rng, 2, 1 + rng() % 4, false);
        Rational kappa;
        const auto lifted = lift_to_nonnegative_3d(inst, &kappa);
        CHECK(lifted.dimension == 3);
        CHECK(lifted.nonnegative());
        CHECK(kappa > 0);
        const std::size_t n = inst.length();
        for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
            Selection sigma(n);
            for (std::size_t j = 0; j < n; ++j) {
                sigma[j] = (bits >> j) & 1;
            }
            CHECK((evaluate(lifted, sigma) >= lifted.threshold) == (evaluate(inst, sigma) >= inst.threshold));
        }
    }
}

TEST_CASE("normalization epsilon and entry range") {
    for (std::size_t n = 1; n <= 8; ++n) {
        const Rational eps = normalization_epsilon(n);
        CHECK(epsilon_bound_holds(eps, n));
        CHECK(eps < make_rational(1, 12));
    }
    CHECK_FALSE(epsilon_bound_holds(make_rational(1, 100), 2));

    std::mt19937_64 rng(46);
    for (int i = 0; i < 15; ++i) {
        std::vector<long> s(1 + rng() % 3);
        for (auto& x : s) {
            x = 1 + static_cast<long>(rng() % 4);
        }
        const auto lifted = lift_to_nonnegative_3d(reduce_from_partition(s));
        const auto norm = normalize_equal_valued(lifted);
        CHECK(entries_in_normal_range(norm, normalization_epsilon(norm.length())));
        CHECK(brute_force(norm).accepted == oracle::has_equal_split(s));
        const std::size_t n = norm.length();
        for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
            Selection sigma(n);
            for (std::size_t j = 0; j < n; ++j) {
                sigma[j] = (bits >> j) & 1;
            }
            CHECK((evaluate(norm, sigma) >= norm.threshold) == (evaluate(lifted, sigma) >= lifted.threshold));
        }
    }
}
