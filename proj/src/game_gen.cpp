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

#include "polyval/game_gen.hpp"

#include <random>

#include "polyval/errors.hpp"

namespace polyval {

namespace {

// Plain modulo keeps the draw sequence identical across standard library
// implementations; the small bias is irrelevant for test workloads.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) { return rng() % k; }

} // namespace

const char* generator_version() { return "polyval-gen/1 (mt19937_64, mod reduction)"; }

RationalGame random_game(const GenConfig& cfg) {
    if (cfg.n < 1 || cfg.out_degree_min < 1 || cfg.out_degree_max < cfg.out_degree_min)
        throw parse_error("generator config: bad size or degree range");
    if (cfg.bipartite && cfg.n < 2)
        throw parse_error("generator config: bipartite needs at least two nodes");
    if (cfg.weight_set.empty() &&
        (cfg.weight_dens.empty() || cfg.weight_num_lo > cfg.weight_num_hi))
        throw parse_error("generator config: empty weight space");

    std::mt19937_64 rng(cfg.seed);
    RationalGame g;
    g.kind = cfg.kind;
    g.lambda = cfg.lambda;
    g.threshold = cfg.threshold;

    for (int v = 0; v < cfg.n; ++v)
        g.nodes.push_back({"v" + std::to_string(v),
                           bounded(rng, 2) == 0 ? Owner::Max : Owner::Min});
    if (cfg.bipartite) {
        bool has_max = false, has_min = false;
        for (const auto& nd : g.nodes) {
            has_max = has_max || nd.owner == Owner::Max;
            has_min = has_min || nd.owner == Owner::Min;
        }
        if (!has_max)
            g.nodes[0].owner = Owner::Max;
        if (!has_min)
            g.nodes[0].owner = Owner::Min;
    }

    std::vector<int> max_side, min_side;
    for (int v = 0; v < cfg.n; ++v)
        (g.nodes[static_cast<size_t>(v)].owner == Owner::Max ? max_side : min_side).push_back(v);

    auto draw_weight = [&]() -> Rational {
        if (!cfg.weight_set.empty())
            return cfg.weight_set[bounded(rng, cfg.weight_set.size())];
        long den = cfg.weight_dens[bounded(rng, cfg.weight_dens.size())];
        long long span = static_cast<long long>(cfg.weight_num_hi - cfg.weight_num_lo) * den + 1;
        long long num = cfg.weight_num_lo * den +
                        static_cast<long long>(bounded(rng, static_cast<std::uint64_t>(span)));
        return make_rational(num, den);
    };

    for (int v = 0; v < cfg.n; ++v) {
        int deg = cfg.out_degree_min +
                  static_cast<int>(bounded(
                      rng, static_cast<std::uint64_t>(cfg.out_degree_max - cfg.out_degree_min + 1)));
        for (int k = 0; k < deg; ++k) {
            int to;
            if (cfg.bipartite) {
                const auto& pool =
                    g.nodes[static_cast<size_t>(v)].owner == Owner::Max ? min_side : max_side;
                to = pool[bounded(rng, pool.size())];
            } else {
                to = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(cfg.n)));
            }
            g.edges.push_back({v, to, draw_weight()});
        }
    }
    return g;
}

GameEnumerator::GameEnumerator(EnumConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.n < 1 || cfg_.weight_set.empty() || cfg_.out_degree_max < 1 ||
        cfg_.out_degree_max > 2)
        throw parse_error("enumeration config: need nodes, weights, degree 1 or 2");
    int pairs = cfg_.n * static_cast<int>(cfg_.weight_set.size());
    for (int p = 0; p < pairs; ++p)
        bags_.push_back({{p / static_cast<int>(cfg_.weight_set.size()),
                          p % static_cast<int>(cfg_.weight_set.size())}});
    if (cfg_.out_degree_max >= 2)
        for (int p = 0; p < pairs; ++p)
            for (int q = p; q < pairs; ++q)
                bags_.push_back({{p / static_cast<int>(cfg_.weight_set.size()),
                                  p % static_cast<int>(cfg_.weight_set.size())},
                                 {q / static_cast<int>(cfg_.weight_set.size()),
                                  q % static_cast<int>(cfg_.weight_set.size())}});

    // total = 2^n * bags^n, guarded against the cap
    unsigned __int128 total = 1;
    for (int i = 0; i < cfg_.n; ++i)
        total *= 2;
    for (int i = 0; i < cfg_.n; ++i) {
        total *= bags_.size();
        if (total > cfg_.cap)
            throw cap_error("enumeration space exceeds the cap");
    }
    total_ = static_cast<std::uint64_t>(total);
}

RationalGame GameEnumerator::game_at(std::uint64_t index) const {
    POLYVAL_CHECK(index < total_, "enumeration index out of range");
    const auto b = static_cast<std::uint64_t>(bags_.size());
    std::vector<std::uint64_t> digit(static_cast<size_t>(cfg_.n));
    for (int v = cfg_.n - 1; v >= 0; --v) {
        digit[static_cast<size_t>(v)] = index % b;
        index /= b;
    }
    std::uint64_t owner_mask = index;

    RationalGame g;
    g.kind = cfg_.kind;
    g.lambda = cfg_.lambda;
    g.threshold = cfg_.threshold;
    for (int v = 0; v < cfg_.n; ++v)
        g.nodes.push_back({"v" + std::to_string(v),
                           (owner_mask >> v) & 1 ? Owner::Min : Owner::Max});
    for (int v = 0; v < cfg_.n; ++v)
        for (const auto& [to, w] : bags_[static_cast<size_t>(digit[static_cast<size_t>(v)])])
            g.edges.push_back({v, to, cfg_.weight_set[static_cast<size_t>(w)]});
    return g;
}

} // namespace polyval
