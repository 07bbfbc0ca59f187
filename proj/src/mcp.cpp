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

#include "treewit/mcp.hpp"

#include <algorithm>

namespace treewit {

Matrix identity_matrix(std::size_t d) {
    Matrix m(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) {
        m[i][i] = 1;
    }
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    Matrix out(r, std::vector<Rational>(c, Rational(0)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < c; ++j) {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    return out;
}

std::vector<Rational> row_times(const std::vector<Rational>& v, const Matrix& m) {
    const std::size_t c = m.empty() ? 0 : m[0].size();
    std::vector<Rational> out(c, Rational(0));
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            out[j] += v[i] * m[i][j];
        }
    }
    return out;
}

std::vector<Rational> times_column(const Matrix& m, const std::vector<Rational>& v) {
    std::vector<Rational> out(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

bool McpInstance::nonnegative() const {
    auto nonneg = [](const std::vector<Rational>& v) {
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) >= 0; });
    };
    for (const auto& pair : pairs) {
        for (const auto& m : pair) {
            for (const auto& row : m) {
                if (!nonneg(row)) {
                    return false;
                }
            }
        }
    }
    return nonneg(iota) && nonneg(final);
}

void McpInstance::check_shape() const {
    if (iota.size() != dimension || final.size() != dimension) {
        throw ValidationError("initial/final vectors must have dimension " + std::to_string(dimension));
    }
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        for (const auto& m : pairs[j]) {
            if (m.size() != dimension ||
                std::any_of(m.begin(), m.end(), [&](const auto& row) { return row.size() != dimension; })) {
                throw ValidationError("matrix of pair " + std::to_string(j + 1) + " is not " +
                                      std::to_string(dimension) + "x" + std::to_string(dimension));
            }
        }
    }
}

Rational evaluate(const McpInstance& inst, const Selection& sigma) {
    inst.check_shape();
    if (sigma.size() != inst.length()) {
        throw ValidationError("selection has length " + std::to_string(sigma.size()) + ", instance has " +
                              std::to_string(inst.length()) + " pairs");
    }
    std::vector<Rational> v = inst.iota;
    for (std::size_t j = 0; j < sigma.size(); ++j) {
        v = row_times(v, inst.pairs[j][sigma[j] ? 1 : 0]);
    }
    return dot(v, inst.final);
}

namespace {

mpz_class lcm_of_denominators(const std::vector<const Rational*>& xs) {
    mpz_class l = 1;
    for (const Rational* x : xs) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->get_den_mpz_t());
    }
    return l;
}

// Integer-scaled search: every matrix is multiplied by the common
// denominator of the matrices, the vectors by their own.
struct ScaledSearch {
    std::size_t d;
    std::vector<std::array<std::vector<mpz_class>, 2>> mats; // row-major d*d
    std::vector<mpz_class> fin;
    bool have_best = false;
    mpz_class best;
    Selection sigma, best_sigma;

    void dfs(std::size_t j, const std::vector<mpz_class>& v) {
        if (j == mats.size()) {
            mpz_class val = 0;
            for (std::size_t i = 0; i < d; ++i) {
                val += v[i] * fin[i];
            }
            if (!have_best || val > best) {
                best = val;
                best_sigma = sigma;
                have_best = true;
            }
            return;
        }
        std::vector<mpz_class> next(d);
        for (std::uint8_t bit = 0; bit < 2; ++bit) {
            const auto& m = mats[j][bit];
            for (std::size_t c = 0; c < d; ++c) {
                next[c] = 0;
                for (std::size_t r = 0; r < d; ++r) {
                    next[c] += v[r] * m[r * d + c];
                }
            }
            sigma[j] = bit;
            dfs(j + 1, next);
        }
    }
};

} // namespace

McpVerdict brute_force(const McpInstance& inst, const BruteForceOptions& opts) {
    inst.check_shape();
    const std::size_t n = inst.length(), d = inst.dimension;
    if (n > opts.cap) {
        throw CapExceeded("brute force limited to " + std::to_string(opts.cap) + " pairs, instance has " +
                          std::to_string(n));
    }
    std::vector<const Rational*> mat_entries, iota_entries, fin_entries;
    for (const auto& pair : inst.pairs) {
        for (const auto& m : pair) {
            for (const auto& row : m) {
                for (const auto& x : row) {
                    mat_entries.push_back(&x);
                }
            }
        }
    }
    for (const auto& x : inst.iota) {
        iota_entries.push_back(&x);
    }
    for (const auto& x : inst.final) {
        fin_entries.push_back(&x);
    }
    const mpz_class lm = lcm_of_denominators(mat_entries);
    const mpz_class li = lcm_of_denominators(iota_entries);
    const mpz_class lf = lcm_of_denominators(fin_entries);
    auto scale = [](const Rational& x, const mpz_class& l) {
        mpz_class out = x.get_num() * (l / x.get_den());
        return out;
    };

    ScaledSearch search;
    search.d = d;
    search.mats.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int b = 0; b < 2; ++b) {
            auto& flat = search.mats[j][b];
            flat.reserve(d * d);
            for (const auto& row : inst.pairs[j][b]) {
                for (const auto& x : row) {
                    flat.push_back(scale(x, lm));
                }
            }
        }
    }
    std::vector<mpz_class> v0(d);
    for (std::size_t i = 0; i < d; ++i) {
        v0[i] = scale(inst.iota[i], li);
        search.fin.push_back(scale(inst.final[i], lf));
    }
    search.sigma.assign(n, 0);
    search.dfs(0, v0);

    mpz_class denom = li * lf;
    for (std::size_t j = 0; j < n; ++j) {
        denom *= lm;
    }
    McpVerdict out;
    out.best_sigma = search.best_sigma;
    out.best_value = Rational(search.best, denom);
    out.best_value.canonicalize();
    out.accepted = out.best_value >= inst.threshold;
    return out;
}

namespace {

// Brackets of atan(t) from the alternating series, valid for 0 <= t < 1.
// Returns -1, 0, +1 for 2*atan(t) <, undecided, > target.
int compare_double_atan(const Rational& t, const Rational& target) {
    const Rational half_target = target / 2;
    const Rational t2 = t * t;
    Rational term = t; // t^(2k+1)
    Rational sum = 0;
    for (int k = 0; k < 400; ++k) {
        Rational next = sum + (k % 2 == 0 ? term : Rational(-term)) / (2 * k + 1);
        Rational lo = std::min(sum, next), hi = std::max(sum, next);
        // After at least one term, the true value lies between consecutive partial sums.
        if (k > 0) {
            if (hi < half_target) {
                return -1;
            }
            if (lo > half_target) {
                return 1;
            }
        }
        sum = next;
        term *= t2;
        if (sgn(term) == 0) {
            break;
        }
    }
    return 0;
}

} // namespace

std::pair<Rational, Rational> rational_rotation(const Rational& angle, const Rational& eps) {
    if (abs(angle) > 1) {
        throw ValidationError("rotation angle must lie in [-1, 1]");
    }
    if (sgn(eps) <= 0) {
        throw ValidationError("rotation tolerance must be positive");
    }
    const bool negative = sgn(angle) < 0;
    const Rational target = abs(angle);
    // tan(1/2) < 3/5 bounds the half-angle tangent.
    Rational lo = 0, hi(3, 5);
    while (hi - lo >= eps / 4) {
        Rational mid = (lo + hi) / 2;
        if (compare_double_atan(mid, target) <= 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Rational t = negative ? Rational(-lo) : lo;
    const Rational t2 = t * t;
    Rational c = (1 - t2) / (1 + t2);
    Rational s = 2 * t / (1 + t2);
    return {c, s};
}

namespace {

// Bounds on cos(x) for 0 <= x <= 1: 1 - x^2/2 <= cos x <= 1 - x^2/2 + x^4/24.
Rational cos_lower(const Rational& x) {
    return 1 - x * x / 2;
}
Rational cos_upper(const Rational& x) {
    const Rational x2 = x * x;
    return 1 - x2 / 2 + x2 * x2 / 24;
}

} // namespace

McpInstance reduce_from_partition(const std::vector<long>& s) {
    if (s.empty()) {
        throw ValidationError("partition instance must be nonempty");
    }
    long pos = 0, neg = 0;
    for (long x : s) {
        (x > 0 ? pos : neg) += x;
    }
    const long m = std::max(pos, -neg);
    if (m == 0) {
        throw ValidationError("partition instance with all-zero entries has no rotation granularity");
    }
    const std::size_t n = s.size();
    const Rational gamma(3, 4 * m);
    const Rational eps_rot = Rational(3, 16 * m) / static_cast<unsigned long>(n);

    McpInstance inst;
    inst.dimension = 2;
    for (long x : s) {
        auto [c, sn] = rational_rotation(gamma * x, eps_rot);
        Matrix clockwise{{c, sn}, {-sn, c}};
        Matrix counter{{c, -sn}, {sn, c}};
        inst.pairs.push_back({clockwise, counter});
    }
    inst.iota = {Rational(1, 2), Rational(1, 2)};
    inst.final = {Rational(1, 2), Rational(1, 2)};
    // The value equals cos(total angle)/2. Yes-splits have |angle| < n*eps,
    // no-splits have |angle| > gamma/2; the midpoint separates both.
    const Rational yes_bound = cos_lower(eps_rot * static_cast<unsigned long>(n)) / 2;
    const Rational no_bound = cos_upper(gamma / 2) / 2;
    inst.threshold = (yes_bound + no_bound) / 2;
    return inst;
}

namespace {

const Matrix& basis() {
    static const Matrix b{{1, 1, 1}, {-1, 1, 1}, {0, -2, 1}};
    return b;
}

const Matrix& basis_inverse() {
    static const Matrix bi{{Rational(1, 2), Rational(-1, 2), 0},
                           {Rational(1, 6), Rational(1, 6), Rational(-1, 3)},
                           {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
    return bi;
}

Rational pow(const Rational& x, std::size_t k) {
    Rational out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= x;
    }
    return out;
}

} // namespace

McpInstance lift_to_nonnegative_3d(const McpInstance& inst, Rational* kappa_out) {
    inst.check_shape();
    if (inst.dimension != 2) {
        throw ValidationError("lift expects a 2-dimensional instance");
    }
    auto embed = [](const Matrix& m, const Rational& kappa) {
        return Matrix{{m[0][0], m[0][1], 0}, {m[1][0], m[1][1], 0}, {0, 0, kappa}};
    };
    auto build = [&](const Rational& kappa) {
        McpInstance out;
        out.dimension = 3;
        for (const auto& pair : inst.pairs) {
            std::array<Matrix, 2> lifted;
            for (int b = 0; b < 2; ++b) {
                lifted[b] = multiply(multiply(basis(), embed(pair[b], kappa)), basis_inverse());
            }
            out.pairs.push_back(std::move(lifted));
        }
        out.iota = row_times({inst.iota[0], inst.iota[1], kappa}, basis_inverse());
        out.final = times_column(basis(), {inst.final[0], inst.final[1], kappa});
        out.threshold = inst.threshold + pow(kappa, inst.length() + 2);
        return out;
    };
    Rational kappa = 1;
    for (;;) {
        McpInstance out = build(kappa);
        if (out.nonnegative()) {
            if (kappa_out) {
                *kappa_out = kappa;
            }
            return out;
        }
        kappa *= 2;
    }
}

Rational normalization_epsilon(std::size_t n) {
    mpz_class den = 3;
    for (std::size_t i = 0; i < n + 3; ++i) {
        den *= 12;
    }
    for (std::size_t i = 0; i < n + 2; ++i) {
        den *= 2;
    }
    return Rational(mpz_class(1), den);
}

bool epsilon_bound_holds(const Rational& eps, std::size_t n) {
    return sgn(eps) > 0 && 12 * eps < pow(Rational(1, 12) - eps, n + 2) / 3;
}

McpInstance normalize_equal_valued(const McpInstance& inst) {
    inst.check_shape();
    if (inst.dimension != 3 || !inst.nonnegative()) {
        throw ValidationError("normalization expects a nonnegative 3-dimensional instance");
    }
    const std::size_t n = inst.length();
    // Recover N = A + k J with zero row and column sums of A, iota' = iota_A + c_i 1, f' = f_A + c_f 1.
    std::vector<std::array<Rational, 2>> shifts(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int b = 0; b < 2; ++b) {
            const Matrix& m = inst.pairs[j][b];
            Rational total = 0;
            for (const auto& row : m) {
                for (const auto& x : row) {
                    total += x;
                }
            }
            const Rational k = total / 9;
            for (std::size_t r = 0; r < 3; ++r) {
                Rational row_sum = m[r][0] + m[r][1] + m[r][2];
                Rational col_sum = m[0][r] + m[1][r] + m[2][r];
                if (row_sum != 3 * k || col_sum != 3 * k) {
                    throw ValidationError("matrix of pair " + std::to_string(j + 1) +
                                          " does not have constant row and column sums");
                }
            }
            shifts[j][b] = k;
        }
    }
    const Rational c_iota = (inst.iota[0] + inst.iota[1] + inst.iota[2]) / 3;
    const Rational c_final = (inst.final[0] + inst.final[1] + inst.final[2]) / 3;
    if (sgn(c_iota) <= 0 || sgn(c_final) <= 0) {
        throw ValidationError("lifted vectors must have a positive uniform shift");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (shifts[j][0] != shifts[j][1]) {
            throw ValidationError("both matrices of pair " + std::to_string(j + 1) + " must share one shift");
        }
    }

    // Value of the lifted instance = core + 3^(n+1) c_iota c_final prod_j k_j.
    Rational extra = c_iota * c_final * pow(Rational(3), n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        extra *= shifts[j][0];
    }
    const Rational core_threshold = inst.threshold - extra;

    bool first = true;
    Rational hi, lo;
    auto see = [&](const Rational& x) {
        if (first || x > hi) {
            hi = x;
        }
        if (first || x < lo) {
            lo = x;
        }
        first = false;
    };
    for (std::size_t j = 0; j < n; ++j) {
        for (int b = 0; b < 2; ++b) {
            for (const auto& row : inst.pairs[j][b]) {
                for (const auto& x : row) {
                    see(x - shifts[j][b]);
                }
            }
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        see(inst.iota[i] - c_iota);
        see(inst.final[i] - c_final);
    }

    const Rational eps = normalization_epsilon(n);
    const Rational shift = hi == lo ? Rational(1 - lo) : Rational((hi - lo) / (12 * eps) - hi);
    const Rational scale = 1 / (12 * (hi + shift));

    McpInstance out;
    out.dimension = 3;
    for (std::size_t j = 0; j < n; ++j) {
        std::array<Matrix, 2> pair;
        for (int b = 0; b < 2; ++b) {
            pair[b] = inst.pairs[j][b];
            for (auto& row : pair[b]) {
                for (auto& x : row) {
                    x = (x - shifts[j][b] + shift) * scale;
                }
            }
        }
        out.pairs.push_back(std::move(pair));
    }
    out.iota.resize(3);
    out.final.resize(3);
    for (std::size_t i = 0; i < 3; ++i) {
        out.iota[i] = (inst.iota[i] - c_iota + shift) * scale;
        out.final[i] = (inst.final[i] - c_final + shift) * scale;
    }
    // Uniform shift s in every part adds 3^(n+1) s^(n+2); scaling multiplies by scale^(n+2).
    const Rational shifted_threshold = core_threshold + pow(Rational(3), n + 1) * pow(shift, n + 2);
    out.threshold = pow(scale, n + 2) * shifted_threshold;

    if (!epsilon_bound_holds(eps, n)) {
        throw ValidationError("epsilon bound violated for n = " + std::to_string(n));
    }
    if (!entries_in_normal_range(out, eps)) {
        throw ValidationError("normalized entries left [1/12 - eps, 1/12]");
    }
    return out;
}

bool entries_in_normal_range(const McpInstance& inst, const Rational& eps) {
    const Rational top(1, 12);
    const Rational bottom = top - eps;
    auto ok = [&](const Rational& x) { return x >= bottom && x <= top; };
    for (const auto& pair : inst.pairs) {
        for (const auto& m : pair) {
            for (const auto& row : m) {
                if (!std::all_of(row.begin(), row.end(), ok)) {
                    return false;
                }
            }
        }
    }
    return std::all_of(inst.iota.begin(), inst.iota.end(), ok) && std::all_of(inst.final.begin(), inst.final.end(), ok);
}

} // namespace treewit
