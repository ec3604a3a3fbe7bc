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
#include <tuple>
#include <vector>

#include "polyval/energy_solver.hpp"
#include "polyval/game.hpp"

namespace polyval {

/**
 * A deterministic memoryless strategy: one chosen out-edge per node of
 * the owning player.
 */
struct PositionalStrategy {
    Owner owner = Owner::Max;
    std::vector<int> choice; // node -> edge index; -1 on opponent nodes
};

/**
 * Ground truth by exhaustive strategy enumeration: for every pair of
 * positional strategies the play from each node is a lasso whose exact
 * discounted value has the closed geometric form; the result is the
 * per-node max over Max strategies of the min over Min strategies.
 * Throws cap_error when the strategy-pair count exceeds `cap`.
 */
std::vector<Rational> brute_disc(const RationalGame& g, std::uint64_t cap = 1000000);

/** Both orders of aggregation; positional determinacy makes them equal. */
struct BruteDiscFull {
    std::vector<Rational> max_min;
    std::vector<Rational> min_max;
};
BruteDiscFull brute_disc_full(const RationalGame& g, std::uint64_t cap = 1000000);

/**
 * Ground truth for energy games: a node is winning for Max iff some Max
 * strategy leaves no negative cycle reachable from it. Zero cycles count
 * as non-negative, so no perturbation is involved.
 */
template <typename W>
WinnerPartition brute_energy(const Game<W>& g, std::uint64_t cap = 1000000);

/**
 * Classical value iteration in floating point: `sweeps` applications of
 * the one-step max/min operator from the zero vector. The sup-norm error
 * is at most lambda^sweeps * W / (1 - lambda).
 */
std::vector<double> shapley_vi(const RationalGame& g, int sweeps);

// ---------------------------------------------------------------------------

namespace oracle_detail {

/// Enumerates one player's strategies as per-node choice-index vectors.
struct StrategySpace {
    std::vector<int> nodes;                 // the player's nodes
    std::vector<std::vector<int>> options;  // out-edge ids per such node
    std::uint64_t count = 1;
    bool overflow = false;

    template <typename W>
    StrategySpace(const Game<W>& g, Owner o) {
        for (int v = 0; v < g.node_count(); ++v) {
            if (g.owner(v) != o)
                continue;
            nodes.push_back(v);
            options.emplace_back();
            for (int e = 0; e < g.edge_count(); ++e)
                if (g.edges[static_cast<size_t>(e)].from == v)
                    options.back().push_back(e);
        }
        for (const auto& o2 : options) {
            if (count > (std::uint64_t(1) << 62) / std::max<size_t>(o2.size(), 1))
                overflow = true;
            count *= static_cast<std::uint64_t>(o2.size());
        }
    }

    /// Writes the k-th strategy's edge choices into `choice`.
    void assign(std::uint64_t k, std::vector<int>& choice) const {
        for (size_t i = 0; i < nodes.size(); ++i) {
            const auto& opts = options[i];
            choice[static_cast<size_t>(nodes[i])] = opts[k % opts.size()];
            k /= opts.size();
        }
    }
};

} // namespace oracle_detail

template <typename W>
WinnerPartition brute_energy(const Game<W>& g, std::uint64_t cap) {
    const int n = g.node_count();
    oracle_detail::StrategySpace sigmas(g, Owner::Max);
    if (sigmas.overflow || sigmas.count > cap)
        throw cap_error("strategy enumeration cap exceeded");

    std::vector<char> winning(static_cast<size_t>(n), 0);
    std::vector<int> choice(static_cast<size_t>(n), -1);
    for (std::uint64_t k = 0; k < sigmas.count; ++k) {
        sigmas.assign(k, choice);
        // edges consistent with the strategy
        std::vector<std::tuple<int, int, W>> edges;
        std::vector<std::vector<int>> succ(static_cast<size_t>(n));
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            if (g.owner(ed.from) == Owner::Max && choice[static_cast<size_t>(ed.from)] != e)
                continue;
            edges.emplace_back(ed.from, ed.to, ed.weight);
            succ[static_cast<size_t>(ed.from)].push_back(ed.to);
        }
        for (int v = 0; v < n; ++v) {
            if (winning[static_cast<size_t>(v)])
                continue;
            std::vector<char> reach(static_cast<size_t>(n), 0);
            std::vector<int> stack{v};
            reach[static_cast<size_t>(v)] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (int b : succ[static_cast<size_t>(u)])
                    if (!reach[static_cast<size_t>(b)]) {
                        reach[static_cast<size_t>(b)] = 1;
                        stack.push_back(b);
                    }
            }
            if (energy_detail::find_negative_cycle(n, reach, edges).empty())
                winning[static_cast<size_t>(v)] = 1;
        }
    }
    WinnerPartition part;
    for (int v = 0; v < n; ++v)
        (winning[static_cast<size_t>(v)] ? part.w_max : part.w_min).push_back(v);
    return part;
}

} // namespace polyval
