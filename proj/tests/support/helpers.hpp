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

#include <initializer_list>
#include <string>

#include "polyval/game.hpp"

namespace polyval::testing {

struct EdgeIn {
    std::string from, to;
    long long num = 0;
    long long den = 1;
};

/// Compact game builder for tests: nodes as (id, owner), edges by id.
inline RationalGame make_game(GameKind kind,
                              std::initializer_list<std::pair<const char*, Owner>> nodes,
                              std::initializer_list<EdgeIn> edges,
                              Rational lambda = make_rational(1, 2),
                              Rational threshold = make_rational(0)) {
    RationalGame g;
    g.kind = kind;
    g.lambda = lambda;
    g.threshold = threshold;
    for (const auto& [id, owner] : nodes)
        g.nodes.push_back({id, owner});
    for (const auto& e : edges) {
        int from = g.index_of(e.from), to = g.index_of(e.to);
        g.edges.push_back({from, to, make_rational(e.num, e.den)});
    }
    return g;
}

inline RationalGame disc_game(std::initializer_list<std::pair<const char*, Owner>> nodes,
                              std::initializer_list<EdgeIn> edges,
                              Rational lambda = make_rational(1, 2)) {
    return make_game(GameKind::Discounted, nodes, edges, lambda);
}

inline RationalGame energy_game(std::initializer_list<std::pair<const char*, Owner>> nodes,
                                std::initializer_list<EdgeIn> edges) {
    return make_game(GameKind::Energy, nodes, edges);
}

} // namespace polyval::testing
