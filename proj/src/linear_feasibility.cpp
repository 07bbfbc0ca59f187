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

#include "treewit/linear_feasibility.hpp"

namespace treewit {
namespace {

template <typename T>
bool is_neg(const T& v, const Tolerance& tol) {
    return definitely_less(v, T(0), tol);
}

} // namespace

template <typename T>
std::optional<std::vector<T>> find_feasible(const std::vector<LinearConstraint<T>>& constraints, std::size_t num_vars,
                                            const Tolerance& tol) {
    const std::size_t m = constraints.size();
    // Columns: original vars, one slack/surplus per inequality, one artificial per row that needs it.
    std::size_t num_slack = 0;
    for (const auto& c : constraints) {
        if (c.rel != Relation::eq) {
            ++num_slack;
        }
    }
    std::vector<std::vector<T>> rows(m);
    std::vector<T> rhs(m);
    std::vector<int> sign(m, 1);
    std::vector<std::size_t> basis(m);
    std::size_t slack_col = num_vars;
    std::vector<int> needs_artificial(m, 0);
    std::vector<std::size_t> slack_of(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        if (c.coeffs.size() != num_vars) {
            throw std::invalid_argument("constraint width mismatch");
        }
        if (c.rel != Relation::eq) {
            slack_of[i] = slack_col++;
        }
    }
    std::size_t num_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        const bool flip = c.rhs < T(0);
        sign[i] = flip ? -1 : 1;
        // After flipping, a <= row becomes >= and vice versa.
        Relation rel = c.rel;
        if (flip && rel != Relation::eq) {
            rel = rel == Relation::le ? Relation::ge : Relation::le;
        }
        needs_artificial[i] = rel != Relation::le;
        num_art += needs_artificial[i];
    }
    const std::size_t cols = num_vars + num_slack + num_art;
    std::size_t art_col = num_vars + num_slack;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = constraints[i];
        rows[i].assign(cols, T(0));
        for (std::size_t j = 0; j < num_vars; ++j) {
            rows[i][j] = sign[i] > 0 ? c.coeffs[j] : T(-c.coeffs[j]);
        }
        rhs[i] = sign[i] > 0 ? c.rhs : T(-c.rhs);
        if (slack_of[i] != SIZE_MAX) {
            // Original "<=" gets +s, ">=" gets -s; the row flip negates it.
            T coef = c.rel == Relation::le ? T(1) : T(-1);
            rows[i][slack_of[i]] = sign[i] > 0 ? coef : T(-coef);
        }
        if (needs_artificial[i]) {
            rows[i][art_col] = T(1);
            basis[i] = art_col++;
        } else {
            basis[i] = slack_of[i];
        }
    }
    // Phase-one objective: minimize the sum of artificials. Reduced costs
    // are kept as z_j = -sum of artificial rows.
    std::vector<T> cost(cols, T(0));
    T value(0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= num_vars + num_slack) {
            for (std::size_t j = 0; j < num_vars + num_slack; ++j) {
                cost[j] -= rows[i][j];
            }
            value -= rhs[i];
        }
    }
    for (std::size_t iter = 0; iter < 100000; ++iter) {
        std::size_t enter = SIZE_MAX;
        for (std::size_t j = 0; j < cols; ++j) {
            if (is_neg(cost[j], tol)) {
                enter = j;
                break;
            }
        }
        if (enter == SIZE_MAX) {
            break;
        }
        std::size_t leave = SIZE_MAX;
        T best_ratio(0);
        for (std::size_t i = 0; i < m; ++i) {
            if (is_positive(rows[i][enter], tol)) {
                T ratio = rhs[i] / rows[i][enter];
                if (leave == SIZE_MAX || definitely_less(ratio, best_ratio, tol) ||
                    (approx_eq(ratio, best_ratio, tol) && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == SIZE_MAX) {
            break; // unbounded direction cannot occur in phase one
        }
        const T piv = rows[leave][enter];
        for (auto& x : rows[leave]) {
            x /= piv;
        }
        rhs[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || rows[i][enter] == T(0)) {
                continue;
            }
            const T factor = rows[i][enter];
            for (std::size_t j = 0; j < cols; ++j) {
                if (rows[leave][j] != T(0)) {
                    rows[i][j] -= factor * rows[leave][j];
                }
            }
            rhs[i] -= factor * rhs[leave];
        }
        if (cost[enter] != T(0)) {
            const T factor = cost[enter];
            for (std::size_t j = 0; j < cols; ++j) {
                if (rows[leave][j] != T(0)) {
                    cost[j] -= factor * rows[leave][j];
                }
            }
            value -= factor * rhs[leave];
        }
        basis[leave] = enter;
    }
    if (is_neg(value, tol)) {
        return std::nullopt;
    }
    std::vector<T> x(num_vars, T(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < num_vars) {
            x[basis[i]] = rhs[i];
        }
    }
    return x;
}

template <typename T>
bool in_projection_hull(const std::vector<T>& theta, const std::vector<std::vector<T>>& points, const Tolerance& tol) {
    if (points.empty()) {
        return false;
    }
    const std::size_t k = points.size();
    std::vector<LinearConstraint<T>> cons;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        LinearConstraint<T> c;
        c.coeffs.resize(k);
        for (std::size_t j = 0; j < k; ++j) {
            c.coeffs[j] = points[j].at(i);
        }
        c.rel = Relation::ge;
        c.rhs = theta[i];
        cons.push_back(std::move(c));
    }
    cons.push_back(LinearConstraint<T>{std::vector<T>(k, T(1)), Relation::le, T(1)});
    return find_feasible(cons, k, tol).has_value();
}

template std::optional<std::vector<double>> find_feasible<double>(const std::vector<LinearConstraint<double>>&,
                                                                  std::size_t, const Tolerance&);
template std::optional<std::vector<Rational>> find_feasible<Rational>(const std::vector<LinearConstraint<Rational>>&,
                                                                      std::size_t, const Tolerance&);
template bool in_projection_hull<double>(const std::vector<double>&, const std::vector<std::vector<double>>&,
                                         const Tolerance&);
template bool in_projection_hull<Rational>(const std::vector<Rational>&, const std::vector<std::vector<Rational>>&,
                                           const Tolerance&);

} // namespace treewit
