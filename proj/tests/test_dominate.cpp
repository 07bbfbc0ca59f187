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

#include "treewit/dominate.hpp"
#include "treewit/hull.hpp"
#include "treewit/linear_feasibility.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace treewit;

namespace {

using PS = PartialSubsystem<Rational>;

PS make_ps(StateSet states, Point<Rational> point) {
    PS p;
    p.interface = {0, 1, 2};
    p.interface.resize(point.size());
    p.states = std::move(states);
    p.point = std::move(point);
    return p;
}

std::vector<PS> random_family(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    std::vector<PS> out;
    for (std::size_t i = 0; i < count; ++i) {
        Point<Rational> pt(dim);
        for (auto& x : pt) {
            x = make_rational(static_cast<long>(rng() % 5), 4);
        }
        StateSet st;
        const std::size_t size = 1 + rng() % 4;
        for (StateId s = 0; st.size() < size; ++s) {
            if (rng() % 2) {
                st.push_back(s);
            }
        }
        out.push_back(make_ps(st, pt));
    }
    return out;
}

std::vector<Point<Rational>> candidate_points(const std::vector<PS>& s, const PS& t) {
    std::vector<Point<Rational>> pts;
    for (const auto& u : s) {
        if (u.size() <= t.size()) {
            for (const auto& q : projections(u.point)) {
                pts.push_back(q);
            }
        }
    }
    return pts;
}

} // namespace

TEST_CASE("projections zero every coordinate subset") {
    const auto p = projections<Rational>({1, 2});
    CHECK(p == std::vector<Point<Rational>>{{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    CHECK(projections<Rational>({0, 3}).size() == 2);
    CHECK(projections<double>({1, 1, 1}).size() == 8);
    CHECK_THROWS_AS(projections<Rational>({1, 1, 1}, 2), CapExceeded);
}

TEST_CASE("hull of a square with its projections") {
    HullAccumulator<Rational> h(2);
    h.add_points(projections<Rational>({1, 1}));
    h.add_points(projections<Rational>({make_rational(1, 2), make_rational(1, 2)}));
    CHECK(h.is_vertex({1, 1}));
    CHECK_FALSE(h.is_vertex({make_rational(1, 2), make_rational(1, 2)}));
    CHECK(h.vertices().size() == 4);
}

TEST_CASE("3-d hull vertices agree with a membership oracle") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 40; ++i) {
        HullAccumulator<Rational> h(3);
        std::vector<Point<Rational>> all;
        for (int k = 0; k < 6; ++k) {
            Point<Rational> pt{make_rational(rng() % 7, 6), make_rational(rng() % 7, 6), make_rational(rng() % 7, 6)};
            for (const auto& q : projections(pt)) {
                all.push_back(q);
            }
            h.add_points(projections(pt));
        }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        for (const auto& q : all) {
            std::vector<Point<Rational>> others;
            for (const auto& r : all) {
                if (r != q) {
                    others.push_back(r);
                }
            }
            // A vertex is exactly a point outside the convex hull of the others.
            std::vector<LinearConstraint<Rational>> cons;
            for (std::size_t c = 0; c < 3; ++c) {
                LinearConstraint<Rational> row;
                for (const auto& r : others) {
                    row.coeffs.push_back(r[c]);
                }
                row.rel = Relation::eq;
                row.rhs = q[c];
                cons.push_back(row);
            }
            cons.push_back({std::vector<Rational>(others.size(), Rational(1)), Relation::eq, Rational(1)});
            const bool outside = !find_feasible(cons, others.size()).has_value();
            CHECK(h.is_vertex(q) == outside);
        }
    }
}

TEST_CASE("linear feasibility") {
    using C = LinearConstraint<Rational>;
    // x + y = 1, x - y >= 1/2  =>  x >= 3/4.
    const std::vector<C> cons{{{1, 1}, Relation::eq, 1}, {{1, -1}, Relation::ge, make_rational(1, 2)}};
    const auto x = find_feasible(cons, 2);
    REQUIRE(x.has_value());
    CHECK((*x)[0] + (*x)[1] == 1);
    CHECK((*x)[0] - (*x)[1] >= make_rational(1, 2));
    const std::vector<C> bad{{{1, 1}, Relation::le, 1}, {{1, 1}, Relation::ge, 2}};
    CHECK_FALSE(find_feasible(bad, 2).has_value());
    CHECK(in_projection_hull<Rational>({make_rational(1, 2), make_rational(1, 2)}, {{1, 0}, {0, 1}}));
    CHECK_FALSE(in_projection_hull<Rational>({make_rational(2, 3), make_rational(2, 3)}, {{1, 0}, {0, 1}}));
}

TEST_CASE("dominates matches the down-hull oracle") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = 1 + rng() % 3;
        const auto s = random_family(rng, 1 + rng() % 5, dim);
        const auto t = random_family(rng, 1, dim).front();
        const auto pts = candidate_points(s, t);
        CHECK(dominates(s, t) == (!pts.empty() && oracle::in_down_hull(t.point, pts)));
        bool strong = false;
        for (const auto& u : s) {
            strong = strong || (u.size() <= t.size() && oracle::pointwise_ge(u.point, t.point));
        }
        CHECK(strongly_dominates(s, t) == strong);
        if (strong) {
            CHECK(dominates(s, t));
        }
    }
}

TEST_CASE("a larger subsystem never dominates") {
    const std::vector<PS> s{make_ps({0, 1, 2}, {1, 1})};
    CHECK_FALSE(dominates(s, make_ps({3}, {0, 0})));
    CHECK(dominates(s, make_ps({3, 4, 5, 6}, {1, 1})));
}

TEST_CASE("midpoint is dominated but not strongly") {
    const std::vector<PS> s{make_ps({0}, {1, 0}), make_ps({1}, {0, 1})};
    const auto mid = make_ps({2}, {make_rational(1, 2), make_rational(1, 2)});
    CHECK(dominates(s, mid));
    CHECK_FALSE(strongly_dominates(s, mid));
}

TEST_CASE("remove_dominated contract") {
    std::mt19937_64 rng(53);
    for (const auto mode : {DominationMode::standard, DominationMode::strong}) {
        for (int i = 0; i < 100; ++i) {
            const std::size_t dim = 1 + rng() % 3;
            auto s = random_family(rng, 2 + rng() % 8, dim);
            RemoveDominatedOptions o;
            o.mode = mode;
            const auto kept = remove_dominated(s, o);
            CHECK(std::is_sorted(kept.begin(), kept.end(), [](const PS& a, const PS& b) {
                return std::make_pair(a.size(), a.states) < std::make_pair(b.size(), b.states);
            }));
            auto rel = [&](const std::vector<PS>& f, const PS& t) {
                return mode == DominationMode::strong ? strongly_dominates(f, t) : dominates(f, t);
            };
            for (const auto& t : s) {
                const bool in = std::any_of(kept.begin(), kept.end(), [&](const PS& k) { return k.states == t.states && k.point == t.point; });
                if (!in) {
                    CHECK(rel(kept, t));
                }
            }
            for (std::size_t a = 0; a < kept.size(); ++a) {
                std::vector<PS> others;
                for (std::size_t b = 0; b < kept.size(); ++b) {
                    if (b != a) {
                        others.push_back(kept[b]);
                    }
                }
                CHECK_FALSE(rel(others, kept[a]));
            }
            CHECK(remove_dominated(kept, o).size() == kept.size());
        }
    }
}

TEST_CASE("equal points keep the smallest subsystem") {
    const std::vector<PS> s{make_ps({4, 5}, {1}), make_ps({3}, {1}), make_ps({2}, {1})};
    const auto kept = remove_dominated(s);
    REQUIRE(kept.size() == 1);
    CHECK(kept.front().states == StateSet{2});
}

TEST_CASE("float and exact modes agree on well separated points") {
    std::mt19937_64 rng(54);
    for (int i = 0; i < 60; ++i) {
        const auto s = random_family(rng, 1 + rng() % 6, 2);
        std::vector<PartialSubsystem<double>> d;
        for (const auto& p : s) {
            PartialSubsystem<double> q;
            q.interface = p.interface;
            q.states = p.states;
            for (const auto& x : p.point) {
                q.point.push_back(x.get_d());
            }
            d.push_back(q);
        }
        CHECK(remove_dominated(d).size() == remove_dominated(s).size());
    }
}
