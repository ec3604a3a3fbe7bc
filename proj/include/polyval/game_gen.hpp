/*
 * Copyright 2026 the polyval authors
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

#include <cstdint>
#include <vector>

#include "polyval/game.hpp"

namespace polyval {

/**
 * Seeded generator configuration. Weights come from `weight_set` when it
 * is nonempty; otherwise a denominator is drawn from `weight_dens` and an
 * integer numerator puts the weight in [weight_num_lo, weight_num_hi].
 */
struct GenConfig {
    GameKind kind = GameKind::Energy;
    int n = 4;
    int out_degree_min = 1;
    int out_degree_max = 2;
    std::vector<Rational> weight_set;
    long weight_num_lo = -10;
    long weight_num_hi = 10;
    std::vector<long> weight_dens = {1};
    Rational lambda = make_rational(1, 2);
    Rational threshold = make_rational(0);
    bool bipartite = false;
    std::uint64_t seed = 0;
};

/**
 * Identity string of the generator algorithm, recorded with generated
 * batches so regression baselines survive library upgrades. The stream is
 * the C++ standard mt19937_64 with plain modulo reduction, which makes
 * equal configs produce byte-identical games on every platform.
 */
const char* generator_version();

/**
 * Deterministic random game: owners first (adjusted so a bipartite game
 * has both), then per node an out-degree and that many target/weight
 * draws. Throws parse_error on unsatisfiable configs.
 */
RationalGame random_game(const GenConfig& cfg);

/** Bounded-exhaustive enumeration space. */
struct EnumConfig {
    GameKind kind = GameKind::Discounted;
    int n = 2;
    int out_degree_max = 2; // 1 or 2
    std::vector<Rational> weight_set;
    Rational lambda = make_rational(1, 2);
    Rational threshold = make_rational(0);
    std::uint64_t cap = 5000000;
};

/**
 * Every game of the configuration exactly once, indexed canonically so
 * sweeps can be chunked. Per node the edge bag is a multiset of one or
 * two (target, weight) pairs, pairs ordered by target then weight-set
 * position, multisets of size one first and then size-two multisets in
 * lexicographic order. A game index decomposes into the owner bitmask
 * (node j = bit j, set means Min) in the most significant position,
 * followed by one bag digit per node, node 0 most significant.
 */
class GameEnumerator {
public:
    explicit GameEnumerator(EnumConfig cfg); // throws cap_error beyond cfg.cap

    std::uint64_t size() const { return total_; }
    RationalGame game_at(std::uint64_t index) const;

private:
    EnumConfig cfg_;
    std::vector<std::vector<std::pair<int, int>>> bags_; // (target, weight idx) multisets
    std::uint64_t total_ = 0;
};

} // namespace polyval
