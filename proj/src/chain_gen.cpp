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

#include "treewit/chain_gen.hpp"

#include "treewit/reach.hpp"

#include <algorithm>

namespace treewit {
namespace {

constexpr const char* kCoord = "xyz";

Rational power(const Rational& x, std::size_t k) {
    Rational out = 1;
    for (std::size_t i = 0; i < k; ++i) {
        out *= x;
    }
    return out;
}

void check_normalized(const McpInstance& inst) {
    inst.check_shape();
    if (inst.dimension != 3) {
        throw ValidationError("chain construction needs a 3-dimensional instance");
    }
    if (inst.length() == 0) {
        throw ValidationError("chain construction needs at least one matrix pair");
    }
    if (!entries_in_normal_range(inst, normalization_epsilon(inst.length()))) {
        throw ValidationError("instance entries must lie in [1/12 - eps, 1/12]; normalize first");
    }
}

void name_states(ModelBuilder& b, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            b.name(static_cast<StateId>(6 * (i - 1) + c), "l" + std::to_string(i) + kCoord[c]);
            b.name(static_cast<StateId>(6 * (i - 1) + 3 + c), "r" + std::to_string(i) + kCoord[c]);
        }
    }
    for (std::size_t c = 0; c < 3; ++c) {
        b.name(static_cast<StateId>(6 * n + c), std::string(1, kCoord[c]) + std::to_string(n + 1));
    }
    b.name(static_cast<StateId>(6 * n + 3), "goal");
}

// Edge weights realizing `m` through a triple with a gamma-cycle x->y->z->x:
// e[c][c'] = m[c][c'] - gamma * m[next(c)][c'].
Matrix cycle_compensated(const Matrix& m, const Rational& gamma) {
    Matrix e = m;
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t d = 0; d < 3; ++d) {
            e[c][d] = m[c][d] - gamma * m[(c + 1) % 3][d];
        }
    }
    return e;
}

LayeredChain build(const McpInstance& inst, ChainVariant variant) {
    check_normalized(inst);
    LayeredChain chain;
    chain.variant = variant;
    chain.instance = inst;
    chain.n = inst.length();
    const std::size_t n = chain.n;
    const Rational gamma = variant == ChainVariant::m2 ? Rational(1 - one_minus_gamma(n)) : Rational(0);
    chain.gamma = gamma;
    if (variant == ChainVariant::m2) {
        const Rational eps = normalization_epsilon(n);
        const Rational omg = 1 - gamma;
        if (!(12 * eps < omg && 3 * omg < good_value_floor(n))) {
            throw ValidationError("no admissible gamma for n = " + std::to_string(n));
        }
    }

    ModelBuilder b(ModelKind::dtmc, 6 * n + 4);
    name_states(b, n);
    auto triple_cycle = [&](auto state_of) {
        if (variant == ChainVariant::m2) {
            for (std::size_t c = 0; c < 3; ++c) {
                b.transition(state_of(c), state_of((c + 1) % 3), gamma);
            }
        }
    };
    for (std::size_t i = 1; i <= n; ++i) {
        for (int side = 0; side < 2; ++side) {
            const Matrix& m = inst.pairs[i - 1][side];
            const Matrix e = variant == ChainVariant::m2 ? cycle_compensated(m, gamma) : m;
            auto from = [&](std::size_t c) { return side == 0 ? chain.left(i, c) : chain.right(i, c); };
            triple_cycle(from);
            for (std::size_t c = 0; c < 3; ++c) {
                for (std::size_t d = 0; d < 3; ++d) {
                    if (i < n) {
                        b.transition(from(c), chain.left(i + 1, d), e[c][d]);
                        b.transition(from(c), chain.right(i + 1, d), e[c][d]);
                    } else {
                        b.transition(from(c), chain.final_state(d), e[c][d]);
                    }
                }
            }
        }
    }
    triple_cycle([&](std::size_t c) { return chain.final_state(c); });
    for (std::size_t c = 0; c < 3; ++c) {
        Rational fc = inst.final[c];
        if (variant == ChainVariant::m2) {
            fc = inst.final[c] - gamma * inst.final[(c + 1) % 3];
        }
        b.transition(chain.final_state(c), chain.goal(), fc);
        b.initial(chain.left(1, c), inst.iota[c]);
        b.initial(chain.right(1, c), inst.iota[c]);
    }
    b.goal(chain.goal());
    chain.model = b.build();
    auto violations = validate_model(chain.model);
    if (!violations.empty()) {
        throw ValidationError("generated chain is invalid: " + violations.front().message);
    }
    return chain;
}

} // namespace

std::vector<StateSet> LayeredChain::layer_blocks() const {
    std::vector<StateSet> blocks;
    for (std::size_t i = 1; i <= n; ++i) {
        StateSet blk;
        for (std::size_t c = 0; c < 6; ++c) {
            blk.push_back(static_cast<StateId>(6 * (i - 1) + c));
        }
        blocks.push_back(std::move(blk));
    }
    blocks.push_back({final_state(0), final_state(1), final_state(2)});
    blocks.push_back({goal()});
    return blocks;
}

Rational good_value_lower_bound(std::size_t n) {
    return power(3 * (Rational(1, 12) - normalization_epsilon(n)), n + 2);
}

Rational good_value_floor(std::size_t n) {
    return good_value_lower_bound(n) / 3;
}

Rational one_minus_gamma(std::size_t n) {
    return (12 * normalization_epsilon(n) + good_value_floor(n) / 3) / 2;
}

LayeredChain build_m1(const McpInstance& inst) {
    return build(inst, ChainVariant::m1);
}

LayeredChain build_m2(const McpInstance& inst) {
    return build(inst, ChainVariant::m2);
}

StateSet good_subsystem(const LayeredChain& chain, const Selection& sigma) {
    if (sigma.size() != chain.n) {
        throw ValidationError("selection has length " + std::to_string(sigma.size()) + ", chain has " +
                              std::to_string(chain.n) + " layers");
    }
    StateSet out;
    for (std::size_t i = 1; i <= chain.n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            out.push_back(sigma[i - 1] ? chain.right(i, c) : chain.left(i, c));
        }
    }
    for (std::size_t c = 0; c < 3; ++c) {
        out.push_back(chain.final_state(c));
    }
    out.push_back(chain.goal());
    return make_state_set(std::move(out));
}

bool is_good(const LayeredChain& chain, const StateSet& kept) {
    const auto mask = to_mask(kept, chain.model.num_states());
    for (std::size_t c = 0; c < 3; ++c) {
        if (!mask[chain.final_state(c)]) {
            return false;
        }
    }
    if (!mask[chain.goal()]) {
        return false;
    }
    for (std::size_t i = 1; i <= chain.n; ++i) {
        std::size_t l = 0, r = 0;
        for (std::size_t c = 0; c < 3; ++c) {
            l += mask[chain.left(i, c)];
            r += mask[chain.right(i, c)];
        }
        if (!((l == 3 && r == 0) || (l == 0 && r == 3))) {
            return false;
        }
    }
    return true;
}

Rational subsystem_probability(const LayeredChain& chain, const StateSet& kept) {
    const auto sub = induce_subsystem(chain.model, kept);
    return initial_value<Rational>(sub, reach_value<Rational>(sub, Objective::dtmc));
}

GoodValue verify_good_value(const LayeredChain& chain, const Selection& sigma) {
    return {subsystem_probability(chain, good_subsystem(chain, sigma)), evaluate(chain.instance, sigma)};
}

bool bad_subsystem_bound_check(const LayeredChain& chain, const StateSet& kept) {
    if (chain.variant != ChainVariant::m2) {
        throw std::invalid_argument("bad-subsystem bound applies to the cycle variant only");
    }
    if (kept.size() != 3 * chain.n + 4 || !std::binary_search(kept.begin(), kept.end(), chain.goal()) ||
        is_good(chain, kept)) {
        throw std::invalid_argument("expected a bad set of 3n+4 states containing goal");
    }
    const Rational bound = 3 * (1 - chain.gamma);
    return subsystem_probability(chain, kept) <= bound && bound < good_value_floor(chain.n);
}

} // namespace treewit
