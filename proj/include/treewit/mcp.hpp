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
#include <cstdint>
#include <vector>

namespace treewit {

/// Dense row-major matrix over rationals.
using Matrix = std::vector<std::vector<Rational>>;

Matrix identity_matrix(std::size_t d);
Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<Rational> row_times(const std::vector<Rational>& v, const Matrix& m);
std::vector<Rational> times_column(const Matrix& m, const std::vector<Rational>& v);
Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Matrix-pair chain instance: accept iff some selection sigma gives
/// iota * M^1_{sigma_1} ... M^n_{sigma_n} * final >= threshold.
struct McpInstance {
    std::size_t dimension = 0;
    std::vector<std::array<Matrix, 2>> pairs;
    std::vector<Rational> iota;
    std::vector<Rational> final;
    Rational threshold;

    std::size_t length() const { return pairs.size(); }
    bool nonnegative() const;
    /// Throws ValidationError on shape mismatches.
    void check_shape() const;

    friend bool operator==(const McpInstance&, const McpInstance&) = default;
};

/// One bit per pair; 0 selects M_0.
using Selection = std::vector<std::uint8_t>;

Rational evaluate(const McpInstance& inst, const Selection& sigma);

struct BruteForceOptions {
    std::size_t cap = 24;
};

struct McpVerdict {
    bool accepted = false;
    Selection best_sigma;
    Rational best_value;
};

/// Exhaustive maximum over all 2^n selections. Ties keep the
/// lexicographically smallest selection.
McpVerdict brute_force(const McpInstance& inst, const BruteForceOptions& opts = {});

/// Rational point (c, s) on the unit circle whose angle is within `eps` of
/// `angle` (radians, |angle| <= 1), from the tangent half-angle t.
std::pair<Rational, Rational> rational_rotation(const Rational& angle, const Rational& eps);

/// 2-dimensional instance that accepts iff S splits into two parts of equal sum.
/// Throws ValidationError when S is empty or all zero.
McpInstance reduce_from_partition(const std::vector<long>& s);

/// d = 3 nonnegative instance N = B diag(M, kappa) B^-1 with shifted vectors;
/// kappa is the smallest power of two making every entry nonnegative.
McpInstance lift_to_nonnegative_3d(const McpInstance& inst, Rational* kappa_out = nullptr);

/// 1 / (3 * 12^(n+3) * 2^(n+2)).
Rational normalization_epsilon(std::size_t n);

/// 0 < 12 eps < (1/3) (1/12 - eps)^(n+2).
bool epsilon_bound_holds(const Rational& eps, std::size_t n);

/// Rescales a lifted instance so all matrix and vector entries lie in
/// [1/12 - eps, 1/12] while preserving the accepted selections.
McpInstance normalize_equal_valued(const McpInstance& inst);

/// True iff every matrix/vector entry is inside [1/12 - eps, 1/12].
bool entries_in_normal_range(const McpInstance& inst, const Rational& eps);

} // namespace treewit
