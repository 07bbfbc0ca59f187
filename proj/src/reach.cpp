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

#include "treewit/reach.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace treewit {

template <typename T>
std::vector<T> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        if constexpr (is_exact_v<T>) {
            for (std::size_t r = col; r < n; ++r) {
                if (sgn(a[r][col]) != 0) {
                    pivot = r;
                    break;
                }
            }
        } else {
            double best = 0.0;
            for (std::size_t r = col; r < n; ++r) {
                if (std::abs(a[r][col]) > best) {
                    best = std::abs(a[r][col]);
                    pivot = r;
                }
            }
        }
        if (pivot == n) {
            throw std::domain_error("singular linear system");
        }
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const T inv = T(1) / a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) {
                continue;
            }
            const T factor = a[r][col] * inv;
            for (std::size_t c = col; c < n; ++c) {
                if (a[col][c] != 0) {
                    a[r][c] -= factor * a[col][c];
                }
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<T> x(n, T(0));
    for (std::size_t i = n; i-- > 0;) {
        T acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            if (a[i][c] != 0) {
                acc -= a[i][c] * x[c];
            }
        }
        x[i] = acc / a[i][i];
    }
    return x;
}

namespace {

template <typename T>
bool positive(const T& v) {
    if constexpr (is_exact_v<T>) {
        return sgn(v) > 0;
    } else {
        return v > 0.0;
    }
}

/// Solves the DTMC obtained by fixing one choice per state. `choice_of[s]` may
/// be -1 for goal states. Values of states that cannot reach Goal are 0.
template <typename T>
std::vector<T> evaluate_policy(const ReachSystem<T>& sys, const std::vector<int>& choice_of,
                               const std::vector<char>& fixed_zero) {
    const std::size_t n = sys.size();
    std::vector<std::vector<std::uint32_t>> pred(n);
    std::vector<char> reaches(n, 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (sys.goal[s]) {
            reaches[s] = 1;
            queue.push_back(s);
            continue;
        }
        if (fixed_zero[s] || choice_of[s] < 0) {
            continue;
        }
        const auto& c = sys.choices[s][static_cast<std::size_t>(choice_of[s])];
        if (positive(c.to_goal) && !reaches[s]) {
            reaches[s] = 1;
            queue.push_back(s);
        }
        for (const auto& [t, p] : c.succ) {
            if (positive(p)) {
                pred[t].push_back(s);
            }
        }
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto p : pred[s]) {
            if (!reaches[p]) {
                reaches[p] = 1;
                queue.push_back(p);
            }
        }
    }

    std::vector<std::uint32_t> index(n, UINT32_MAX);
    std::vector<std::uint32_t> vars;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (reaches[s] && !sys.goal[s]) {
            index[s] = static_cast<std::uint32_t>(vars.size());
            vars.push_back(s);
        }
    }
    const std::size_t k = vars.size();
    std::vector<std::vector<T>> a(k, std::vector<T>(k, T(0)));
    std::vector<T> b(k, T(0));
    for (std::size_t i = 0; i < k; ++i) {
        const auto s = vars[i];
        const auto& c = sys.choices[s][static_cast<std::size_t>(choice_of[s])];
        a[i][i] = T(1);
        b[i] = c.to_goal;
        for (const auto& [t, p] : c.succ) {
            if (sys.goal[t]) {
                b[i] += p;
            } else if (index[t] != UINT32_MAX) {
                a[i][index[t]] -= p;
            }
        }
    }
    auto x = solve_linear<T>(std::move(a), std::move(b));
    std::vector<T> values(n, T(0));
    for (std::uint32_t s = 0; s < n; ++s) {
        if (sys.goal[s]) {
            values[s] = T(1);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        values[vars[i]] = x[i];
    }
    return values;
}

template <typename T>
T choice_value(const typename ReachSystem<T>::Choice& c, const std::vector<T>& v) {
    T acc = c.to_goal;
    for (const auto& [t, p] : c.succ) {
        acc += p * v[t];
    }
    return acc;
}

/// States from which some scheduler avoids Goal surely (value 0 under min).
template <typename T>
std::vector<char> avoid_set(const ReachSystem<T>& sys) {
    const std::size_t n = sys.size();
    std::vector<char> in(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        in[s] = sys.goal[s] ? 0 : 1;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (!in[s]) {
                continue;
            }
            bool can_stay = sys.choices[s].empty();
            for (const auto& c : sys.choices[s]) {
                if (positive(c.to_goal)) {
                    continue;
                }
                bool ok = true;
                for (const auto& [t, p] : c.succ) {
                    if (positive(p) && !in[t]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    can_stay = true;
                    break;
                }
            }
            if (!can_stay) {
                in[s] = 0;
                changed = true;
            }
        }
    }
    return in;
}

/// States that can reach Goal under some scheduler.
template <typename T>
std::vector<char> can_reach_set(const ReachSystem<T>& sys) {
    const std::size_t n = sys.size();
    std::vector<std::vector<std::uint32_t>> pred(n);
    std::vector<char> seen(n, 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < n; ++s) {
        bool direct = sys.goal[s] != 0;
        for (const auto& c : sys.choices[s]) {
            if (positive(c.to_goal)) {
                direct = true;
            }
            for (const auto& [t, p] : c.succ) {
                if (positive(p)) {
                    pred[t].push_back(s);
                }
            }
        }
        if (direct) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (auto p : pred[s]) {
            if (!seen[p]) {
                seen[p] = 1;
                queue.push_back(p);
            }
        }
    }
    return seen;
}

/// Initial policy preferring choices that move closer to Goal.
template <typename T>
std::vector<int> attractor_policy(const ReachSystem<T>& sys) {
    const std::size_t n = sys.size();
    std::vector<int> choice(n, -1);
    std::vector<char> done(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        if (sys.goal[s]) {
            done[s] = 1;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<char> next = done;
        for (std::size_t s = 0; s < n; ++s) {
            if (done[s]) {
                continue;
            }
            for (std::size_t ci = 0; ci < sys.choices[s].size(); ++ci) {
                const auto& c = sys.choices[s][ci];
                bool hit = positive(c.to_goal);
                for (const auto& [t, p] : c.succ) {
                    if (positive(p) && done[t]) {
                        hit = true;
                    }
                }
                if (hit) {
                    choice[s] = static_cast<int>(ci);
                    next[s] = 1;
                    changed = true;
                    break;
                }
            }
        }
        done = std::move(next);
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (!sys.goal[s] && choice[s] < 0 && !sys.choices[s].empty()) {
            choice[s] = 0;
        }
    }
    return choice;
}

template <typename T>
std::vector<T> policy_iteration(const ReachSystem<T>& sys, bool maximize, const SolverOptions& opts) {
    const std::size_t n = sys.size();
    std::vector<char> fixed_zero(n, 0);
    if (maximize) {
        auto reach = can_reach_set(sys);
        for (std::size_t s = 0; s < n; ++s) {
            fixed_zero[s] = !reach[s];
        }
    } else {
        fixed_zero = avoid_set(sys);
    }
    std::vector<int> policy = attractor_policy(sys);
    for (std::size_t s = 0; s < n; ++s) {
        if (fixed_zero[s] || sys.goal[s] || sys.choices[s].empty()) {
            policy[s] = -1;
        }
    }
    const Tolerance& tol = opts.tol;
    for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
        auto values = evaluate_policy(sys, policy, fixed_zero);
        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) {
            if (policy[s] < 0) {
                continue;
            }
            T current = choice_value<T>(sys.choices[s][static_cast<std::size_t>(policy[s])], values);
            int best = policy[s];
            T best_value = current;
            for (std::size_t ci = 0; ci < sys.choices[s].size(); ++ci) {
                T q = choice_value<T>(sys.choices[s][ci], values);
                bool better = maximize ? definitely_less(best_value, q, tol) : definitely_less(q, best_value, tol);
                if (better) {
                    best = static_cast<int>(ci);
                    best_value = q;
                }
            }
            if (best != policy[s]) {
                policy[s] = best;
                changed = true;
            }
        }
        if (!changed) {
            return values;
        }
    }
    throw NonConvergence("policy iteration exceeded its iteration cap", tol.eps);
}

} // namespace

template <typename T>
std::vector<T> solve_reach(const ReachSystem<T>& sys, Objective objective, const SolverOptions& opts) {
    const std::size_t n = sys.size();
    bool single_choice = true;
    for (std::size_t s = 0; s < n; ++s) {
        if (!sys.goal[s] && sys.choices[s].size() > 1) {
            single_choice = false;
        }
    }
    if (objective == Objective::dtmc && !single_choice) {
        throw std::invalid_argument("DTMC objective on a system with nondeterministic choices");
    }
    if (objective == Objective::dtmc || single_choice) {
        std::vector<int> policy(n, -1);
        for (std::size_t s = 0; s < n; ++s) {
            if (!sys.goal[s] && !sys.choices[s].empty()) {
                policy[s] = 0;
            }
        }
        return evaluate_policy(sys, policy, std::vector<char>(n, 0));
    }
    return policy_iteration(sys, objective == Objective::max, opts);
}

template <typename T>
ReachSystem<T> make_reach_system(const ProbabilisticModel& m) {
    ReachSystem<T> sys;
    const std::size_t n = m.num_states();
    sys.choices.resize(n);
    sys.goal.assign(m.goal_mask().begin(), m.goal_mask().end());
    for (StateId s = 0; s < n; ++s) {
        if (sys.goal[s]) {
            continue;
        }
        for (const auto& a : m.actions(s)) {
            typename ReachSystem<T>::Choice c;
            for (const auto& t : a.transitions) {
                if (sgn(t.prob) > 0) {
                    c.succ.emplace_back(t.target, from_rational<T>(t.prob));
                }
            }
            sys.choices[s].push_back(std::move(c));
        }
    }
    return sys;
}

Rational InterfaceAssumption::at(StateId s) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), s);
    if (it == domain.end() || *it != s) {
        throw std::out_of_range("state " + std::to_string(s) + " not in assumption domain");
    }
    return values[static_cast<std::size_t>(it - domain.begin())];
}

ProbabilisticModel apply_assumption(const ProbabilisticModel& m, const StateSet& kept, const InterfaceAssumption& f) {
    if (f.domain.size() != f.values.size()) {
        throw std::invalid_argument("assumption domain and values differ in length");
    }
    const auto kept_mask = to_mask(kept, m.num_states());
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
        StateId q = f.domain[i];
        if (q >= m.num_states() || !kept_mask[q]) {
            throw std::invalid_argument("assumption domain state " + std::to_string(q) + " is not kept");
        }
        if (sgn(f.values[i]) < 0 || f.values[i] > 1) {
            throw std::invalid_argument("assumption value outside [0,1] at state " + std::to_string(q));
        }
        if (i > 0 && f.domain[i - 1] >= q) {
            throw std::invalid_argument("assumption domain must be sorted and duplicate-free");
        }
    }
    ProbabilisticModel induced = induce_subsystem(m, kept);
    std::optional<StateId> target;
    for (StateId s : kept) {
        if (m.is_goal(s)) {
            target = s;
            break;
        }
    }
    std::size_t n = m.num_states();
    std::vector<std::vector<Action>> actions(n);
    std::vector<Rational> initial = induced.initial();
    std::vector<char> goal = induced.goal_mask();
    std::vector<std::string> names = induced.names();
    for (StateId s = 0; s < n; ++s) {
        actions[s] = induced.actions(s);
    }
    if (!target) {
        target = static_cast<StateId>(n);
        actions.emplace_back(m.is_dtmc() ? std::vector<Action>{Action{}} : std::vector<Action>{});
        initial.emplace_back(0);
        goal.push_back(1);
        if (!names.empty()) {
            names.push_back("goal*");
        }
    }
    for (std::size_t i = 0; i < f.domain.size(); ++i) {
        Action a{m.is_dtmc() ? std::string{} : std::string{"f"}, {}};
        if (sgn(f.values[i]) > 0) {
            a.transitions.push_back(Transition{*target, f.values[i]});
        }
        actions[f.domain[i]] = {std::move(a)};
    }
    return ProbabilisticModel(m.kind(), std::move(actions), std::move(initial), std::move(goal), std::move(names));
}

template <typename T>
std::vector<T> reach_value(const ProbabilisticModel& m, Objective objective, const SolverOptions& opts) {
    if (objective == Objective::dtmc && !m.is_dtmc()) {
        throw std::invalid_argument("dtmc objective requires a DTMC");
    }
    return solve_reach(make_reach_system<T>(m), objective, opts);
}

template <typename T>
std::vector<T> value_with_assumption(const ProbabilisticModel& m, const StateSet& kept, const InterfaceAssumption& f,
                                     Objective objective, const SolverOptions& opts) {
    auto transformed = apply_assumption(m, kept, f);
    auto values = reach_value<T>(transformed, objective, opts);
    values.resize(m.num_states());
    return values;
}

template <typename T>
T initial_value(const ProbabilisticModel& m, const std::vector<T>& values) {
    T acc = T(0);
    for (StateId s = 0; s < m.num_states(); ++s) {
        if (sgn(m.initial(s)) > 0) {
            acc += from_rational<T>(m.initial(s)) * values.at(s);
        }
    }
    return acc;
}

#define TREEWIT_INSTANTIATE(T)                                                                                       \
    template std::vector<T> solve_linear<T>(std::vector<std::vector<T>>, std::vector<T>);                          \
    template std::vector<T> solve_reach<T>(const ReachSystem<T>&, Objective, const SolverOptions&);                \
    template ReachSystem<T> make_reach_system<T>(const ProbabilisticModel&);                                       \
    template std::vector<T> reach_value<T>(const ProbabilisticModel&, Objective, const SolverOptions&);            \
    template std::vector<T> value_with_assumption<T>(const ProbabilisticModel&, const StateSet&,                   \
                                                     const InterfaceAssumption&, Objective, const SolverOptions&); \
    template T initial_value<T>(const ProbabilisticModel&, const std::vector<T>&);

TREEWIT_INSTANTIATE(double)
TREEWIT_INSTANTIATE(Rational)

#undef TREEWIT_INSTANTIATE

} // namespace treewit
