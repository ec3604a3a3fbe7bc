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

#include <optional>
#include <span>
#include <vector>

#include "polyval/game.hpp"
#include "polyval/monitor.hpp"

namespace polyval {

/**
 * A point of the per-edge relaxation of the optimality equations (Max
 * edges x_a >= w + lambda*x_b, Min edges x_a <= w + lambda*x_b), with its
 * tight-edge set cached.
 */
struct PolyhedronPoint {
    std::vector<Rational> coords; // by node index
    std::vector<int> tight;       // edge indices, ascending
};

/** Outcome of one boundary step x -> x + eps*shift. */
struct StepReport {
    Rational eps_max;
    std::vector<int> binding; // edges becoming tight exactly at eps_max
    std::vector<Rational> shift;
    std::vector<int> tight_before;
    std::vector<int> tight_after;
    PolyhedronPoint next; // x + eps_max*shift
};

/**
 * pass_through keeps the boundary point itself (exact, but coordinates
 * may grow); exact_vertex re-solves for a basic feasible point with the
 * same tight set forced, keeping coordinate bit-length polynomial.
 */
enum class RealizeStrategy { PassThrough, ExactVertex };

struct DiscOptions {
    // default: PassThrough for n <= 16, ExactVertex for larger games
    std::optional<RealizeStrategy> realize;
    bool monitor = true;
};

struct DiscResult {
    std::vector<Rational> values; // by node index
    int iterations = 0;
    std::optional<MonitorReport> monitor;
};

/**
 * Closed-form starting point +/- W/(1-lambda) on Max/Min nodes; always
 * feasible, verified before return.
 */
PolyhedronPoint initial_point(const RationalGame& g);

/**
 * Exact-equality tight set of x. Throws internal_error naming an edge if
 * x is outside the polyhedron.
 */
std::vector<int> tight_edges(const RationalGame& g, std::span<const Rational> x);

/**
 * The shift direction at x: the symbolic subgame values on the tight
 * subgraph, instantiated with the game's discount. Nonzero whenever x
 * fails the optimality equations.
 */
std::vector<Rational> feasible_shift(const RationalGame& g, const PolyhedronPoint& x);

/**
 * Largest step along `delta` that stays inside the polyhedron, found by
 * solving one linear equation per non-tight edge. Requires that x fails
 * the optimality equations; the result is always positive and finite.
 */
StepReport epsilon_max(const RationalGame& g, const PolyhedronPoint& x,
                       std::span<const Rational> delta);

/**
 * A polyhedron point whose tight set contains S. PassThrough returns the
 * witness unchanged; ExactVertex runs the phase-1 simplex with S forced
 * to equalities. nullopt means no such point exists (never legitimate
 * when a valid witness was supplied).
 */
std::optional<PolyhedronPoint> realize_graph(const RationalGame& g, std::span<const int> S,
                                             const PolyhedronPoint* witness,
                                             RealizeStrategy strategy);

/// True iff x solves the optimality equations exactly.
bool check_optimality(const RationalGame& g, std::span<const Rational> x);

/**
 * Polyhedral value iteration: walk the border of the relaxation along
 * subgame-value shifts until the optimality equations hold. The result is
 * exact and independent of the realize strategy.
 */
DiscResult solve_discounted(const RationalGame& g, const DiscOptions& opts = {});

} // namespace polyval
