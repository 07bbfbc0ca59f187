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

#include "treewit/hull.hpp"
#include "treewit/model.hpp"

#include <vector>

namespace treewit {

/// A state set T below an interface I together with its I-point: the value
/// achieved by each interface state inside T, zero for interface states
/// outside T.
template <typename T>
struct PartialSubsystem {
    StateSet interface;
    StateSet states;
    Point<T> point;

    std::size_t size() const { return states.size(); }
};

inline constexpr std::size_t kDefaultInterfaceCap = 8;

/// All coordinate-subset zeroings of `point`, duplicates removed, sorted.
template <typename T>
std::vector<Point<T>> projections(const Point<T>& point, std::size_t cap = kDefaultInterfaceCap);

/// val(T) lies in the convex hull of the projections of all points of
/// subsystems in `s` that are no larger than T.
template <typename T>
bool dominates(const std::vector<PartialSubsystem<T>>& s, const PartialSubsystem<T>& t, const Tolerance& tol = {});

/// Some single subsystem of `s`, no larger than T, is pointwise >= val(T).
template <typename T>
bool strongly_dominates(const std::vector<PartialSubsystem<T>>& s, const PartialSubsystem<T>& t,
                        const Tolerance& tol = {});

enum class DominationMode { standard, strong };

struct RemoveDominatedOptions {
    DominationMode mode = DominationMode::standard;
    std::size_t interface_cap = kDefaultInterfaceCap;
    Tolerance tol;
};

/// Keeps the subsystems not dominated by the others, processing size stages
/// in ascending order. Among equal points the smallest subsystem (then the
/// lexicographically smallest state set) survives. The result is sorted by
/// (size, states).
template <typename T>
std::vector<PartialSubsystem<T>> remove_dominated(std::vector<PartialSubsystem<T>> s,
                                                  const RemoveDominatedOptions& opts = {});

} // namespace treewit
