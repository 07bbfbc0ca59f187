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

#include "treewit/hull.hpp"

#include "treewit/linear_feasibility.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace treewit {

template <typename T>
HullAccumulator<T>::HullAccumulator(std::size_t dimension, Tolerance tol) : dim_(dimension), tol_(tol) {
    if (dimension > 3) {
        throw CapExceeded("incremental hull supports at most 3 dimensions");
    }
}

template <typename T>
int HullAccumulator<T>::sign(const T& x) const {
    if (definitely_less(T(0), x, tol_)) {
        return 1;
    }
    if (definitely_less(x, T(0), tol_)) {
        return -1;
    }
    return 0;
}

template <typename T>
T HullAccumulator<T>::orient(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    const auto& pa = reduced_[a];
    const auto& pb = reduced_[b];
    const auto& pc = reduced_[c];
    const auto& pd = reduced_[d];
    T u0 = pb[0] - pa[0], u1 = pb[1] - pa[1], u2 = pb[2] - pa[2];
    T v0 = pc[0] - pa[0], v1 = pc[1] - pa[1], v2 = pc[2] - pa[2];
    T w0 = pd[0] - pa[0], w1 = pd[1] - pa[1], w2 = pd[2] - pa[2];
    return u0 * (v1 * w2 - v2 * w1) - u1 * (v0 * w2 - v2 * w0) + u2 * (v0 * w1 - v1 * w0);
}

template <typename T>
void HullAccumulator<T>::add_point(const Point<T>& p) {
    if (p.size() != dim_) {
        throw std::invalid_argument("hull point has wrong dimension");
    }
    if constexpr (is_exact_v<T>) {
        if (!seen_.insert(p).second) {
            return;
        }
    } else {
        for (const auto& q : points_) {
            bool same = true;
            for (std::size_t i = 0; i < dim_ && same; ++i) {
                same = approx_eq(p[i], q[i], tol_);
            }
            if (same) {
                return;
            }
        }
    }
    points_.push_back(p);
    bool new_axis = false;
    for (std::size_t i = 0; i < dim_; ++i) {
        if (sign(p[i]) > 0 && std::find(active_.begin(), active_.end(), i) == active_.end()) {
            new_axis = true;
        }
    }
    if (new_axis || active_.size() < 3 || faces_.empty()) {
        rebuild();
        return;
    }
    Point<T> r(active_.size());
    for (std::size_t k = 0; k < active_.size(); ++k) {
        r[k] = p[active_[k]];
    }
    reduced_.push_back(std::move(r));
    insert_reduced(points_.size() - 1);
    dirty_ = true;
}

template <typename T>
void HullAccumulator<T>::add_points(const std::vector<Point<T>>& ps) {
    for (const auto& p : ps) {
        add_point(p);
    }
}

template <typename T>
void HullAccumulator<T>::rebuild() {
    active_.clear();
    for (std::size_t i = 0; i < dim_; ++i) {
        for (const auto& p : points_) {
            if (sign(p[i]) > 0) {
                active_.push_back(i);
                break;
            }
        }
    }
    reduced_.clear();
    for (const auto& p : points_) {
        Point<T> r(active_.size());
        for (std::size_t k = 0; k < active_.size(); ++k) {
            r[k] = p[active_[k]];
        }
        reduced_.push_back(std::move(r));
    }
    faces_.clear();
    const std::size_t n = points_.size();
    if (active_.size() < 3) {
        dirty_ = true;
        return;
    }

    // Initial simplex: four affinely independent points.
    std::vector<std::size_t> simplex{0};
    for (std::size_t i = 1; i < n && simplex.size() < 2; ++i) {
        simplex.push_back(i);
    }
    auto collinear = [&](std::size_t a, std::size_t b, std::size_t c) {
        const auto &pa = reduced_[a], &pb = reduced_[b], &pc = reduced_[c];
        T u0 = pb[0] - pa[0], u1 = pb[1] - pa[1], u2 = pb[2] - pa[2];
        T v0 = pc[0] - pa[0], v1 = pc[1] - pa[1], v2 = pc[2] - pa[2];
        return sign(u1 * v2 - u2 * v1) == 0 && sign(u2 * v0 - u0 * v2) == 0 && sign(u0 * v1 - u1 * v0) == 0;
    };
    for (std::size_t i = 0; i < n && simplex.size() < 3; ++i) {
        if (i != simplex[0] && i != simplex[1] && !collinear(simplex[0], simplex[1], i)) {
            simplex.push_back(i);
        }
    }
    for (std::size_t i = 0; i < n && simplex.size() == 3; ++i) {
        if (sign(orient(simplex[0], simplex[1], simplex[2], i)) != 0) {
            simplex.push_back(i);
        }
    }
    if (simplex.size() < 4) {
        // Not full-dimensional; vertices come from the exact convex-combination test.
        dirty_ = true;
        return;
    }
    for (int skip = 0; skip < 4; ++skip) {
        std::array<std::size_t, 3> f{};
        std::size_t k = 0;
        for (int j = 0; j < 4; ++j) {
            if (j != skip) {
                f[k++] = simplex[j];
            }
        }
        if (sign(orient(f[0], f[1], f[2], simplex[skip])) > 0) {
            std::swap(f[1], f[2]);
        }
        faces_.push_back(Face{f, true});
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(simplex.begin(), simplex.end(), i) == simplex.end()) {
            insert_reduced(i);
        }
    }
    dirty_ = true;
}

template <typename T>
void HullAccumulator<T>::insert_reduced(std::size_t idx) {
    std::set<std::pair<std::size_t, std::size_t>> visible_edges;
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const auto& face = faces_[f];
        if (face.alive && sign(orient(face.v[0], face.v[1], face.v[2], idx)) > 0) {
            visible.push_back(f);
            for (int e = 0; e < 3; ++e) {
                visible_edges.emplace(face.v[e], face.v[(e + 1) % 3]);
            }
        }
    }
    if (visible.empty()) {
        return;
    }
    for (std::size_t f : visible) {
        faces_[f].alive = false;
    }
    for (auto [u, v] : visible_edges) {
        if (!visible_edges.count({v, u})) {
            faces_.push_back(Face{{u, v, idx}, true});
        }
    }
    if (faces_.size() > 64 && faces_.size() > 4 * visible_edges.size()) {
        faces_.erase(std::remove_if(faces_.begin(), faces_.end(), [](const Face& f) { return !f.alive; }),
                     faces_.end());
    }
}

template <typename T>
void HullAccumulator<T>::recompute_vertices() const {
    vertex_ids_.clear();
    const std::size_t n = points_.size();
    const std::size_t r = active_.size();
    if (n == 0) {
        return;
    }
    if (r == 0) {
        vertex_ids_.push_back(0);
        return;
    }
    if (r == 1) {
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (definitely_less(reduced_[i][0], reduced_[lo][0], tol_)) {
                lo = i;
            }
            if (definitely_less(reduced_[hi][0], reduced_[i][0], tol_)) {
                hi = i;
            }
        }
        vertex_ids_.push_back(lo);
        if (hi != lo) {
            vertex_ids_.push_back(hi);
        }
        return;
    }
    if (r == 2) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return reduced_[a] < reduced_[b]; });
        auto cross = [&](std::size_t o, std::size_t a, std::size_t b) -> T {
            const auto &po = reduced_[o], &pa = reduced_[a], &pb = reduced_[b];
            return (pa[0] - po[0]) * (pb[1] - po[1]) - (pa[1] - po[1]) * (pb[0] - po[0]);
        };
        std::vector<std::size_t> hull;
        for (int pass = 0; pass < 2; ++pass) {
            const std::size_t base = hull.size();
            for (std::size_t k = 0; k < n; ++k) {
                std::size_t i = pass == 0 ? idx[k] : idx[n - 1 - k];
                while (hull.size() >= base + 2 && sign(cross(hull[hull.size() - 2], hull.back(), i)) <= 0) {
                    hull.pop_back();
                }
                hull.push_back(i);
            }
            hull.pop_back();
        }
        std::sort(hull.begin(), hull.end());
        hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
        vertex_ids_ = hull;
        return;
    }
    if (faces_.empty()) {
        // Degenerate 3-d input: p is a vertex iff it is no convex combination of the others.
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<LinearConstraint<T>> cons;
            for (std::size_t c = 0; c < 3; ++c) {
                LinearConstraint<T> lc;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j != i) {
                        lc.coeffs.push_back(reduced_[j][c]);
                    }
                }
                lc.rel = Relation::eq;
                lc.rhs = reduced_[i][c];
                cons.push_back(std::move(lc));
            }
            cons.push_back(LinearConstraint<T>{std::vector<T>(n - 1, T(1)), Relation::eq, T(1)});
            if (n == 1 || !find_feasible(cons, n - 1, tol_)) {
                vertex_ids_.push_back(i);
            }
        }
        return;
    }
    // A hull vertex is incident to faces on at least three distinct planes.
    std::vector<std::vector<std::array<T, 3>>> normals(n);
    for (const auto& f : faces_) {
        if (!f.alive) {
            continue;
        }
        const auto &pa = reduced_[f.v[0]], &pb = reduced_[f.v[1]], &pc = reduced_[f.v[2]];
        T u0 = pb[0] - pa[0], u1 = pb[1] - pa[1], u2 = pb[2] - pa[2];
        T v0 = pc[0] - pa[0], v1 = pc[1] - pa[1], v2 = pc[2] - pa[2];
        std::array<T, 3> nrm{u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0};
        for (std::size_t v : f.v) {
            auto& list = normals[v];
            if (list.size() >= 3) {
                continue;
            }
            bool seen = false;
            for (const auto& m : list) {
                T c0 = nrm[1] * m[2] - nrm[2] * m[1];
                T c1 = nrm[2] * m[0] - nrm[0] * m[2];
                T c2 = nrm[0] * m[1] - nrm[1] * m[0];
                T d = nrm[0] * m[0] + nrm[1] * m[1] + nrm[2] * m[2];
                if (sign(c0) == 0 && sign(c1) == 0 && sign(c2) == 0 && sign(d) > 0) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                list.push_back(nrm);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (normals[i].size() >= 3) {
            vertex_ids_.push_back(i);
        }
    }
}

template <typename T>
bool HullAccumulator<T>::is_vertex(const Point<T>& p) const {
    if (dirty_) {
        recompute_vertices();
        dirty_ = false;
    }
    for (std::size_t id : vertex_ids_) {
        bool same = true;
        for (std::size_t i = 0; i < dim_ && same; ++i) {
            same = approx_eq(p[i], points_[id][i], tol_);
        }
        if (same) {
            return true;
        }
    }
    return false;
}

template <typename T>
std::vector<Point<T>> HullAccumulator<T>::vertices() const {
    if (dirty_) {
        recompute_vertices();
        dirty_ = false;
    }
    std::vector<Point<T>> out;
    for (std::size_t id : vertex_ids_) {
        out.push_back(points_[id]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

template class HullAccumulator<double>;
template class HullAccumulator<Rational>;

} // namespace treewit
