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
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "polyval/lex_weight.hpp"
#include "polyval/rational.hpp"

namespace polyval {

enum class Owner : std::uint8_t { Max, Min };

inline Owner opponent(Owner o) { return o == Owner::Max ? Owner::Min : Owner::Max; }

enum class GameKind : std::uint8_t { Discounted, Energy, MeanPayoffDecision };

struct NodeSpec {
    std::string id;
    Owner owner;
};

template <typename W>
struct EdgeSpec {
    int from;
    int to;
    W weight;
};

/**
 * A two-player game on a weighted directed multigraph. Nodes are addressed
 * by index internally; the string ids exist for I/O. Parallel edges and
 * self-loops are permitted, and edge identity is the index into `edges`.
 *
 * Immutable by convention after construction; every operation on games in
 * this library is a pure function, so instances can be shared freely
 * across threads.
 */
template <typename W>
struct Game {
    GameKind kind = GameKind::Energy;
    Rational lambda;    // Discounted only, in (0, 1)
    Rational threshold; // MeanPayoffDecision only
    std::vector<NodeSpec> nodes;
    std::vector<EdgeSpec<W>> edges;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
    Owner owner(int v) const { return nodes[static_cast<size_t>(v)].owner; }

    /// Index of the node with the given id, or -1.
    int index_of(std::string_view id) const {
        for (int i = 0; i < node_count(); ++i)
            if (nodes[static_cast<size_t>(i)].id == id)
                return i;
        return -1;
    }

    std::vector<Owner> owners() const {
        std::vector<Owner> out;
        out.reserve(nodes.size());
        for (const auto& n : nodes)
            out.push_back(n.owner);
        return out;
    }
};

using RationalGame = Game<Rational>;
using LexGame = Game<LexWeight>;

/** One named invariant failure; `where` is the offending node/edge id. */
struct Violation {
    std::string what;
    std::string where;
};

/**
 * Checks every structural invariant and returns the violations found
 * (empty means the game is well formed). Violations are data, not errors.
 */
template <typename W>
std::vector<Violation> validate(const Game<W>& g) {
    std::vector<Violation> out;
    std::unordered_set<std::string_view> seen;
    for (const auto& n : g.nodes) {
        if (!seen.insert(n.id).second)
            out.push_back({"duplicate node id", n.id});
    }
    std::vector<int> out_deg(static_cast<size_t>(g.node_count()), 0);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[static_cast<size_t>(e)];
        if (ed.from < 0 || ed.from >= g.node_count() || ed.to < 0 || ed.to >= g.node_count()) {
            out.push_back({"edge endpoint out of range", "e" + std::to_string(e)});
            continue;
        }
        ++out_deg[static_cast<size_t>(ed.from)];
    }
    for (int v = 0; v < g.node_count(); ++v)
        if (out_deg[static_cast<size_t>(v)] == 0)
            out.push_back({"sink node", g.nodes[static_cast<size_t>(v)].id});
    if (g.kind == GameKind::Discounted) {
        if (!(g.lambda > 0 && g.lambda < 1))
            out.push_back({"discount out of range", "lambda"});
    }
    return out;
}

/// True iff every edge joins nodes of different owners.
template <typename W>
bool is_bipartite(const Game<W>& g) {
    for (const auto& e : g.edges)
        if (g.owner(e.from) == g.owner(e.to))
            return false;
    return true;
}

/// Largest absolute edge weight; zero for an empty edge set.
template <typename W>
W max_abs_weight(const Game<W>& g) {
    W best{};
    for (const auto& e : g.edges) {
        W a = weight_abs(e.weight);
        if (best < a)
            best = a;
    }
    return best;
}

} // namespace polyval
