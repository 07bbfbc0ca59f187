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

#include "treewit/dominate.hpp"

#include "treewit/linear_feasibility.hpp"

#include <algorithm>
#include <numeric>

namespace treewit {
namespace {

template <typename T>
bool same_point(const Point<T>& a, const Point<T>& b, const Tolerance& tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!approx_eq(a[i], b[i], tol)) {
            return false;
        }
    }
    return true;
}

template <typename T>
bool pointwise_ge(const Point<T>& a, const Point<T>& b, const Tolerance& tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (definitely_less(a[i], b[i], tol)) {
            return false;
        }
    }
    return true;
}

// theta is pi(q, D) for some D with pi(q, D) != q.
template <typename T>
bool strict_projection_of(const Point<T>& theta, const Point<T>& q, const Tolerance& tol) {
    bool dropped = false;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (approx_eq(theta[i], q[i], tol)) {
            continue;
        }
        if (!approx_eq(theta[i], T(0), tol)) {
            return false;
        }
        dropped = true;
    }
    return dropped;
}

template <typename T>
void check_common_interface(const std::vector<PartialSubsystem<T>>& s, const PartialSubsystem<T>& t) {
    if (t.point.size() != t.interface.size()) {
        throw ValidationError("I-point dimension differs from the interface size");
    }
    for (const auto& p : s) {
        if (p.interface != t.interface || p.point.size() != t.point.size()) {
            throw ValidationError("partial subsystems have different interfaces");
        }
    }
}

} // namespace

template <typename T>
std::vector<Point<T>> projections(const Point<T>& point, std::size_t cap) {
    const std::size_t d = point.size();
    if (d > cap) {
        throw CapExceeded("interface of size " + std::to_string(d) + " exceeds the cap of " + std::to_string(cap));
    }
    std::vector<Point<T>> out;
    out.reserve(std::size_t{1} << d);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        Point<T> p(d, T(0));
        for (std::size_t i = 0; i < d; ++i) {
            if (mask >> i & 1) {
                p[i] = point[i];
            }
        }
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

template <typename T>
bool dominates(const std::vector<PartialSubsystem<T>>& s, const PartialSubsystem<T>& t, const Tolerance& tol) {
    check_common_interface(s, t);
    std::vector<Point<T>> pts;
    for (const auto& p : s) {
        if (p.size() <= t.size()) {
            pts.push_back(p.point);
        }
    }
    return in_projection_hull(t.point, pts, tol);
}

template <typename T>
bool strongly_dominates(const std::vector<PartialSubsystem<T>>& s, const PartialSubsystem<T>& t,
                        const Tolerance& tol) {
    check_common_interface(s, t);
    return std::any_of(s.begin(), s.end(), [&](const PartialSubsystem<T>& p) {
        return p.size() <= t.size() && pointwise_ge(p.point, t.point, tol);
    });
}

template <typename T>
std::vector<PartialSubsystem<T>> remove_dominated(std::vector<PartialSubsystem<T>> s,
                                                  const RemoveDominatedOptions& opts) {
    if (s.empty()) {
        return s;
    }
    check_common_interface(s, s.front());
    const std::size_t d = s.front().interface.size();
    if (d > opts.interface_cap) {
        throw CapExceeded("interface of size " + std::to_string(d) + " exceeds the cap of " +
                          std::to_string(opts.interface_cap));
    }
    std::sort(s.begin(), s.end(), [](const PartialSubsystem<T>& a, const PartialSubsystem<T>& b) {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return a.states < b.states;
    });
    const auto& tol = opts.tol;
    const std::size_t n = s.size();
    // j may witness against i: no larger, and not an equal point that comes later.
    auto competes = [&](std::size_t j, std::size_t i) {
        return j != i && s[j].size() <= s[i].size() && !(j > i && same_point(s[j].point, s[i].point, tol));
    };
    std::vector<char> keep(n, 0);

    if (opts.mode == DominationMode::strong) {
        for (std::size_t i = 0; i < n; ++i) {
            keep[i] = 1;
            for (std::size_t j = 0; j < n && keep[i]; ++j) {
                if (competes(j, i) && pointwise_ge(s[j].point, s[i].point, tol)) {
                    keep[i] = 0;
                }
            }
        }
    } else if (d > 3) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Point<T>> others;
            for (std::size_t j = 0; j < n; ++j) {
                if (competes(j, i)) {
                    others.push_back(s[j].point);
                }
            }
            keep[i] = !in_projection_hull(s[i].point, others, tol);
        }
    } else {
        HullAccumulator<T> hull(d, tol);
        for (std::size_t lo = 0; lo < n;) {
            std::size_t hi = lo;
            while (hi < n && s[hi].size() == s[lo].size()) {
                ++hi;
            }
            for (std::size_t i = lo; i < hi; ++i) {
                hull.add_points(projections(s[i].point, opts.interface_cap));
            }
            for (std::size_t i = lo; i < hi; ++i) {
                if (!hull.is_vertex(s[i].point)) {
                    continue;
                }
                // A vertex generated by another subsystem too is already covered by it.
                bool covered = false;
                for (std::size_t j = 0; j < hi && !covered; ++j) {
                    covered = competes(j, i) && (same_point(s[j].point, s[i].point, tol) ||
                                                 strict_projection_of(s[i].point, s[j].point, tol));
                }
                keep[i] = !covered;
            }
            lo = hi;
        }
    }
    std::vector<PartialSubsystem<T>> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (keep[i]) {
            out.push_back(std::move(s[i]));
        }
    }
    return out;
}

#define TREEWIT_INSTANTIATE(T)                                                                                   \
    template std::vector<Point<T>> projections<T>(const Point<T>&, std::size_t);                                 \
    template bool dominates<T>(const std::vector<PartialSubsystem<T>>&, const PartialSubsystem<T>&,             \
                               const Tolerance&);                                                                \
    template bool strongly_dominates<T>(const std::vector<PartialSubsystem<T>>&, const PartialSubsystem<T>&,    \
                                        const Tolerance&);                                                       \
    template std::vector<PartialSubsystem<T>> remove_dominated<T>(std::vector<PartialSubsystem<T>>,             \
                                                                  const RemoveDominatedOptions&);

TREEWIT_INSTANTIATE(double)
TREEWIT_INSTANTIATE(Rational)

} // namespace treewit
