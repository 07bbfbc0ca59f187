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

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace treewit {

using Rational = mpq_class;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured size limit (states, interface width, selection length ...) was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Iterative solver hit its iteration cap without meeting the tolerance.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double residual) : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Parses "p/q", an integer, or a decimal such as "0.125" or "2.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q" form, or "p" for integers.
std::string to_string(const Rational& value);

inline Rational make_rational(long num, unsigned long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Float-mode comparisons go through an explicit tolerance; exact mode ignores it.
struct Tolerance {
    double eps = 1e-9;
};

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <typename T>
T from_rational(const Rational& r) {
    if constexpr (is_exact_v<T>) {
        return r;
    } else {
        return r.get_d();
    }
}

template <typename T>
Rational to_rational(const T& v) {
    if constexpr (is_exact_v<T>) {
        return v;
    } else {
        return Rational(v);
    }
}

template <typename T>
bool approx_eq(const T& a, const T& b, const Tolerance& tol) {
    if constexpr (is_exact_v<T>) {
        return a == b;
    } else {
        return (a > b ? a - b : b - a) <= tol.eps;
    }
}

/// a < b beyond the tolerance.
template <typename T>
bool definitely_less(const T& a, const T& b, const Tolerance& tol) {
    if constexpr (is_exact_v<T>) {
        return a < b;
    } else {
        return a < b - tol.eps;
    }
}

/// a <= b up to the tolerance.
template <typename T>
bool approx_le(const T& a, const T& b, const Tolerance& tol) {
    return !definitely_less(b, a, tol);
}

template <typename T>
bool is_positive(const T& a, const Tolerance& tol) {
    return definitely_less(T(0), a, tol);
}

template <typename T>
double to_double(const T& v) {
    if constexpr (is_exact_v<T>) {
        return v.get_d();
    } else {
        return v;
    }
}

template <typename T>
std::string scalar_to_string(const T& v) {
    if constexpr (is_exact_v<T>) {
        return to_string(v);
    } else {
        return std::to_string(v);
    }
}

} // namespace treewit
