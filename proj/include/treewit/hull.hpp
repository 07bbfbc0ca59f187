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

#include <array>
#include <set>
#include <vector>

namespace treewit {

template <typename T>
using Point = std::vector<T>;

/// Convex hull of a growing set of points in the nonnegative orthant of
/// dimension at most 3. Every added point is expected to come together with
/// its coordinate projections, so the hull always contains the origin.
///
/// Work happens in the reduced space of coordinates that are positive for
/// some point; there the origin and the axis points make the hull
/// full-dimensional. 1-d is a maximum, 2-d a monotone chain, 3-d an
/// incremental beneath-beyond triangulation.
template <typename T>
class HullAccumulator {
public:
    explicit HullAccumulator(std::size_t dimension, Tolerance tol = {});

    std::size_t dimension() const { return dim_; }
    std::size_t num_points() const { return points_.size(); }

    void add_point(const Point<T>& p);
    void add_points(const std::vector<Point<T>>& ps);

    /// True iff p is a vertex of the current hull.
    bool is_vertex(const Point<T>& p) const;
    /// Current hull vertices, lexicographically sorted.
    std::vector<Point<T>> vertices() const;

private:
    struct Face {
        std::array<std::size_t, 3> v;
        bool alive = true;
    };

    void rebuild();
    void insert_reduced(std::size_t idx);
    void recompute_vertices() const;
    T orient(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
    int sign(const T& x) const;

    std::size_t dim_;
    Tolerance tol_;
    std::vector<Point<T>> points_;   // distinct, original coordinates
    std::set<Point<T>> seen_;        // exact mode duplicate filter
    std::vector<std::size_t> active_; // reduced coordinate indices
    std::vector<Point<T>> reduced_;  // points_ in reduced coordinates
    mutable std::vector<std::size_t> vertex_ids_;
    mutable bool dirty_ = false;  // vertex_ids_ is stale
    std::vector<Face> faces_;
};

} // namespace treewit
