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

#include "polyval/disc_solver.hpp"

#include <algorithm>
#include <cstdlib>

#include "polyval/errors.hpp"
#include "polyval/simplex.hpp"

namespace polyval {

namespace {

// x_a - w - lambda*x_b; >= 0 on Max edges, <= 0 on Min edges when feasible.
Rational edge_slack(const RationalGame& g, std::span<const Rational> x, int e) {
    const auto& ed = g.edges[static_cast<size_t>(e)];
    return x[static_cast<size_t>(ed.from)] - ed.weight -
           g.lambda * x[static_cast<size_t>(ed.to)];
}

std::vector<std::pair<int, int>> edge_pairs(const RationalGame& g, std::span<const int> edges) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (int e : edges)
        out.emplace_back(g.edges[static_cast<size_t>(e)].from, g.edges[static_cast<size_t>(e)].to);
    return out;
}

DnpGraph tight_subgraph(const RationalGame& g, std::span<const int> tight) {
    return {g.owners(), edge_pairs(g, tight)};
}

bool tight_graph_has_sink(const RationalGame& g, std::span<const int> tight) {
    std::vector<bool> has_out(static_cast<size_t>(g.node_count()), false);
    for (int e : tight)
        has_out[static_cast<size_t>(g.edges[static_cast<size_t>(e)].from)] = true;
    return std::find(has_out.begin(), has_out.end(), false) != has_out.end();
}

// Test fixture: set POLYVAL_CORRUPT=epsmax to flip the min/max comparison
// in the step-length choice. Used to prove the verify harness can see a
// broken solver; never set in production.
bool corrupt_epsmax() {
    static bool flag = [] {
        const char* s = std::getenv("POLYVAL_CORRUPT");
        return s && std::string_view(s) == "epsmax";
    }();
    return flag;
}

} // namespace

std::vector<int> tight_edges(const RationalGame& g, std::span<const Rational> x) {
    std::vector<int> tight;
    for (int e = 0; e < g.edge_count(); ++e) {
        Rational s = edge_slack(g, x, e);
        if (s == 0) {
            tight.push_back(e);
            continue;
        }
        bool ok = g.owner(g.edges[static_cast<size_t>(e)].from) == Owner::Max ? s > 0 : s < 0;
        if (!ok)
            throw internal_error("point outside the optimality polyhedron at edge e" +
                                 std::to_string(e));
    }
    return tight;
}

PolyhedronPoint initial_point(const RationalGame& g) {
    Rational w = max_abs_weight(g);
    Rational c = w / (1 - g.lambda);
    PolyhedronPoint p;
    p.coords.reserve(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v)
        p.coords.push_back(g.owner(v) == Owner::Max ? c : Rational(-c));
    p.tight = tight_edges(g, p.coords); // also verifies feasibility
    return p;
}

std::vector<Rational> feasible_shift(const RationalGame& g, const PolyhedronPoint& x) {
    std::vector<DnpValue> delta = dnp_solve(tight_subgraph(g, x.tight));
    std::vector<Rational> out(static_cast<size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v)
        out[static_cast<size_t>(v)] = dnp_instantiate(delta[static_cast<size_t>(v)], g.lambda);
    return out;
}

StepReport epsilon_max(const RationalGame& g, const PolyhedronPoint& x,
                       std::span<const Rational> delta) {
    StepReport rep;
    rep.shift.assign(delta.begin(), delta.end());
    rep.tight_before = x.tight;

    auto is_tight = [&](int e) {
        return std::binary_search(x.tight.begin(), x.tight.end(), e);
    };
    bool found = false;
    for (int e = 0; e < g.edge_count(); ++e) {
        if (is_tight(e))
            continue;
        const auto& ed = g.edges[static_cast<size_t>(e)];
        // slack(eps) = slack(0) + eps*(delta_a - lambda*delta_b); the edge
        // contributes a candidate only if its slack closes.
        Rational rate = delta[static_cast<size_t>(ed.from)] -
                        g.lambda * delta[static_cast<size_t>(ed.to)];
        Rational slack = edge_slack(g, x.coords, e);
        bool closes = g.owner(ed.from) == Owner::Max ? rate < 0 : rate > 0;
        if (!closes)
            continue;
        Rational root = -slack / rate;
        bool better = !found || (corrupt_epsmax() ? root > rep.eps_max : root < rep.eps_max);
        if (better) {
            rep.eps_max = root;
            rep.binding.assign(1, e);
            found = true;
        } else if (root == rep.eps_max) {
            rep.binding.push_back(e);
        }
    }
    if (!found)
        throw internal_error("no edge bounds the step length (finiteness violated)");
    POLYVAL_CHECK(rep.eps_max > 0, "non-positive step length");

    rep.next.coords.reserve(x.coords.size());
    for (size_t v = 0; v < x.coords.size(); ++v)
        rep.next.coords.push_back(x.coords[v] + rep.eps_max * delta[v]);
    rep.next.tight = tight_edges(g, rep.next.coords);
    rep.tight_after = rep.next.tight;
    return rep;
}

std::optional<PolyhedronPoint> realize_graph(const RationalGame& g, std::span<const int> S,
                                             const PolyhedronPoint* witness,
                                             RealizeStrategy strategy) {
    if (strategy == RealizeStrategy::PassThrough) {
        POLYVAL_CHECK(witness != nullptr, "pass-through realize needs a witness point");
        for (int e : S)
            POLYVAL_CHECK(std::binary_search(witness->tight.begin(), witness->tight.end(), e),
                          "witness does not realize the requested edge set");
        return *witness;
    }

    std::vector<LinearConstraint> cons;
    cons.reserve(static_cast<size_t>(g.edge_count()));
    auto in_s = [&](int e) { return std::find(S.begin(), S.end(), e) != S.end(); };
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[static_cast<size_t>(e)];
        LinearConstraint c;
        c.terms = {{ed.from, Rational(1)}, {ed.to, Rational(-g.lambda)}};
        c.rhs = ed.weight;
        c.rel = in_s(e) ? Rel::Eq : (g.owner(ed.from) == Owner::Max ? Rel::Ge : Rel::Le);
        cons.push_back(std::move(c));
    }
    auto sol = find_feasible_point(g.node_count(), cons);
    if (!sol)
        return std::nullopt;
    PolyhedronPoint p;
    p.coords = std::move(*sol);
    p.tight = tight_edges(g, p.coords);
    for (int e : S)
        POLYVAL_CHECK(std::binary_search(p.tight.begin(), p.tight.end(), e),
                      "realized point misses a forced equality");
    return p;
}

bool check_optimality(const RationalGame& g, std::span<const Rational> x) {
    std::vector<int> tight;
    for (int e = 0; e < g.edge_count(); ++e) {
        Rational s = edge_slack(g, x, e);
        if (s == 0) {
            tight.push_back(e);
            continue;
        }
        if (g.owner(g.edges[static_cast<size_t>(e)].from) == Owner::Max ? s < 0 : s > 0)
            return false;
    }
    return !tight_graph_has_sink(g, tight);
}

DiscResult solve_discounted(const RationalGame& g, const DiscOptions& opts) {
    if (auto v = validate(g); !v.empty())
        throw parse_error("invalid game: " + v.front().what + " (" + v.front().where + ")");
    POLYVAL_CHECK(g.kind == GameKind::Discounted, "solve_discounted needs a discounted game");

    int n = g.node_count();
    RealizeStrategy strategy = opts.realize.value_or(
        n <= 16 ? RealizeStrategy::PassThrough : RealizeStrategy::ExactVertex);
    bool bipartite = is_bipartite(g);
    std::vector<Owner> owners = g.owners();

    PolyhedronPoint x = initial_point(g);
    std::optional<IterationMonitor> monitor;
    if (opts.monitor) {
        monitor.emplace(owners, IterationMode::Plain, bipartite);
        monitor->start(edge_pairs(g, x.tight));
    }

    mpz_class bound = 2 * count_signature_space(n, bipartite, n);
    DiscResult res;
    while (tight_graph_has_sink(g, x.tight)) {
        std::vector<DnpValue> delta_sym = dnp_solve(tight_subgraph(g, x.tight));
        std::vector<Rational> delta(static_cast<size_t>(n));
        bool all_zero = true;
        for (int v = 0; v < n; ++v) {
            delta[static_cast<size_t>(v)] =
                dnp_instantiate(delta_sym[static_cast<size_t>(v)], g.lambda);
            all_zero = all_zero && delta_sym[static_cast<size_t>(v)].sign == 0;
        }
        POLYVAL_CHECK(!all_zero, "zero shift although optimality equations fail");

        StepReport step = epsilon_max(g, x, delta);

        // Optimal tight edges must survive the move, and something new
        // must have become tight.
        for (int e : x.tight) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            if (classify_pair(ed.from, ed.to, delta_sym, owners) == PairClass::Optimal)
                POLYVAL_CHECK(std::binary_search(step.tight_after.begin(),
                                                 step.tight_after.end(), e),
                              "optimal edge lost its tightness");
        }
        bool gained = false;
        for (int e : step.tight_after)
            gained = gained || !std::binary_search(x.tight.begin(), x.tight.end(), e);
        POLYVAL_CHECK(gained, "step produced no new tight edge");

        auto realized = realize_graph(g, step.tight_after, &step.next, strategy);
        POLYVAL_CHECK(realized.has_value(), "realize failed on a realizable edge set");
        x = std::move(*realized);

        if (monitor)
            monitor->advance(edge_pairs(g, x.tight));
        ++res.iterations;
        POLYVAL_CHECK(mpz_class(res.iterations) <= bound, "iteration bound exceeded");
    }

    POLYVAL_CHECK(check_optimality(g, x.coords), "loop left without reaching optimality");
    if (monitor)
        res.monitor = monitor->finish();
    res.values = std::move(x.coords);
    return res;
}

} // namespace polyval
