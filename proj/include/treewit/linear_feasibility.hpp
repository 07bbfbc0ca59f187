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

#include <optional>
#include <vector>

namespace treewit {

enum class Relation { le, eq, ge };

template <typename T>
struct LinearConstraint {
    std::vector<T> coeffs;
    Relation rel = Relation::le;
    T rhs = T(0);
};

/// Phase-one simplex with Bland's rule: returns some x >= 0 satisfying all
/// constraints, or nullopt when the system is infeasible. Exact for Rational.
template <typename T>
std::optional<std::vector<T>> find_feasible(const std::vector<LinearConstraint<T>>& constraints, std::size_t num_vars,
                                            const Tolerance& tol = {});

/// True iff some weights w >= 0 with sum(w) <= 1 have sum_j w_j q_j >= theta
/// componentwise, i.e. theta lies in the convex hull of all coordinate
/// projections of the points q_j.
template <typename T>
bool in_projection_hull(const std::vector<T>& theta, const std::vector<std::vector<T>>& points,
                        const Tolerance& tol = {});

} // namespace treewit
