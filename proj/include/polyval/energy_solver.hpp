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

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "polyval/game.hpp"
#include "polyval/monitor.hpp"

namespace polyval {

/** Disjoint winner sets covering all nodes (indices, ascending). */
struct WinnerPartition {
    std::vector<int> w_max;
    std::vector<int> w_min;
};

/** A node decided before the polyhedral loop, with its evidence. */
struct PreDecision {
    enum class Reason { TrivialNode, TrivialCycle, Attractor };
    int node = -1;
    Owner winner = Owner::Max;
    Reason reason = Reason::TrivialNode;
    std::vector<int> evidence; // witness cycle, or the attractor seed set
};

/** One reduced edge together with its underlying path in the input graph. */
template <typename W>
struct ReducedEdgeCert {
    int from = -1;
    int to = -1;
    std::vector<int> path;       // node sequence from..to, single-owner interior
    std::vector<int> path_edges; // the edges realizing it; weights sum to `weight`
    W weight{};
};

template <typename W>
struct TrivialElimination {
    Game<W> reduced;          // no trivial nodes or cycles; out-degree >= 1 kept
    std::vector<int> kept;    // reduced index -> original index
    std::vector<PreDecision> decided; // original indices
};

template <typename W>
struct BipartiteReduction {
    Game<W> reduced; // same node set, edges only across owners
    std::vector<ReducedEdgeCert<W>> cert;
};

/** x_a - x_b <= bound, or x_a - x_b == bound when equality is set. */
template <typename W>
struct DifferenceConstraint {
    int a = -1;
    int b = -1;
    W bound{};
    bool equality = false;
};

template <typename W>
using DifferenceSystem = std::vector<DifferenceConstraint<W>>;

template <typename W>
struct EnergyResultT {
    WinnerPartition partition; // original node indices
    int iterations = 0;
    std::optional<MonitorReport> monitor;
    std::vector<PreDecision> pre_decided;
    std::vector<ReducedEdgeCert<W>> reduction_cert;
};
using EnergyResult = EnergyResultT<Rational>;

struct EnergyOptions {
    // solve over integers scaled so the implicit perturbation becomes
    // 1/(n+1), instead of running on lexicographic pairs
    bool integer_fast_path = false;
    bool monitor = true;
};

/**
 * Symbolic perturbation: every weight w becomes the pair (w, 1), so every
 * cycle carries its length in the second component and zero cycles
 * disappear without choosing a numeric epsilon.
 */
LexGame perturb(const RationalGame& g);

/**
 * Shortest-path potentials for a two-variable difference system, over any
 * ordered additive weight group (additions and comparisons only). The
 * virtual source potential is pinned to 0 and relaxation keeps the first
 * writer on ties, so the output is reproducible byte for byte. Returns
 * nullopt exactly when the constraint graph has a negative cycle.
 */
template <typename W>
std::optional<std::vector<W>> pratt_realize(int num_vars, const DifferenceSystem<W>& system);

/**
 * Removes trivial nodes (reaching only their own owner) and trivial
 * cycles (single-owner, favorable), deciding each by one-player analysis
 * or cycle ownership and propagating decisions by attractor removal.
 * Decisions use perturbed comparisons so zero cycles are unambiguous.
 */
template <typename W>
TrivialElimination<W> eliminate_trivial(const Game<W>& g);

/**
 * Collapses owner-controllable paths into single cross-owner edges with
 * extremal path weights (max for the Max player, min for Min). Requires
 * the absence of trivial nodes and cycles; winners are preserved.
 */
template <typename W>
BipartiteReduction<W> bipartite_reduce(const Game<W>& g);

/**
 * Full pipeline: trivial elimination, bipartite reduction, perturbation
 * (or the integer fast path), then polyhedral value iteration on the
 * potentials polyhedron until no edge is strongly violating.
 */
EnergyResult solve_energy(const RationalGame& g, const EnergyOptions& opts = {});

/** Pipeline over lexicographic weights; the input must have no zero cycles. */
EnergyResultT<LexWeight> solve_energy(const LexGame& g, const EnergyOptions& opts = {});

/**
 * Mean-payoff threshold decision: subtract the threshold from every
 * weight and solve the resulting energy game; Max's set is exactly the
 * nodes whose mean-payoff value reaches the threshold.
 */
EnergyResult decide_mean_payoff(const RationalGame& g, const EnergyOptions& opts = {});

// ---------------------------------------------------------------------------
// template implementations

namespace energy_detail {

template <typename W>
LexWeight perturbed_weight(const W& w) {
    if constexpr (std::is_same_v<W, LexWeight>)
        return w;
    else
        return LexWeight{w, Rational(1)};
}

/**
 * Bellman-Ford negative-cycle search restricted to `allowed` nodes, from
 * a virtual source connected to every node with weight zero. Returns the
 * nodes of one negative cycle, or empty.
 */
template <typename W>
std::vector<int> find_negative_cycle(int n, const std::vector<char>& allowed,
                                     const std::vector<std::tuple<int, int, W>>& edges) {
    std::vector<W> dist(static_cast<size_t>(n));
    std::vector<int> pred(static_cast<size_t>(n), -1);
    int improved = -1;
    for (int round = 0; round <= n; ++round) {
        improved = -1;
        for (const auto& [a, b, w] : edges) {
            if (!allowed[static_cast<size_t>(a)] || !allowed[static_cast<size_t>(b)])
                continue;
            W cand = dist[static_cast<size_t>(a)] + w;
            if (cand < dist[static_cast<size_t>(b)]) {
                dist[static_cast<size_t>(b)] = std::move(cand);
                pred[static_cast<size_t>(b)] = a;
                improved = b;
            }
        }
        if (improved < 0)
            return {};
    }
    // still relaxing after n+1 sweeps: walk predecessors onto the cycle
    int v = improved;
    for (int i = 0; i < n; ++i) {
        POLYVAL_CHECK(pred[static_cast<size_t>(v)] >= 0, "broken predecessor chain");
        v = pred[static_cast<size_t>(v)];
    }
    std::vector<int> cycle{v};
    for (int u = pred[static_cast<size_t>(v)]; u != v; u = pred[static_cast<size_t>(u)])
        cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

/** Winner's attractor to `seeds` within the alive subgraph. */
template <typename W>
std::vector<char> attractor(const Game<W>& g, const std::vector<char>& alive,
                            Owner winner, const std::vector<int>& seeds) {
    std::vector<char> attr(static_cast<size_t>(g.node_count()), 0);
    for (int s : seeds)
        attr[static_cast<size_t>(s)] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.node_count(); ++v) {
            if (!alive[static_cast<size_t>(v)] || attr[static_cast<size_t>(v)])
                continue;
            bool any = false, all = true, has_edge = false;
            for (const auto& e : g.edges) {
                if (e.from != v || !alive[static_cast<size_t>(e.to)])
                    continue;
                has_edge = true;
                bool in = attr[static_cast<size_t>(e.to)] != 0;
                any = any || in;
                all = all && in;
            }
            bool take = g.owner(v) == winner ? any : (has_edge && all);
            if (take) {
                attr[static_cast<size_t>(v)] = 1;
                changed = true;
            }
        }
    }
    return attr;
}

/** Edge slacks of the potentials polyhedron; throws when x is outside it. */
template <typename W>
std::vector<int> potential_tight_edges(const Game<W>& g, const std::vector<W>& x) {
    std::vector<int> tight;
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto& ed = g.edges[static_cast<size_t>(e)];
        W lhs = x[static_cast<size_t>(ed.from)];
        W rhs = ed.weight + x[static_cast<size_t>(ed.to)];
        if (lhs == rhs) {
            tight.push_back(e);
            continue;
        }
        bool ok = g.owner(ed.from) == Owner::Max ? rhs < lhs : lhs < rhs;
        if (!ok)
            throw internal_error("point outside the potentials polyhedron at edge e" +
                                 std::to_string(e));
    }
    return tight;
}

template <typename W>
std::vector<std::pair<int, int>> edge_pairs(const Game<W>& g, const std::vector<int>& edges) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (int e : edges)
        out.emplace_back(g.edges[static_cast<size_t>(e)].from, g.edges[static_cast<size_t>(e)].to);
    return out;
}

template <typename W>
struct CoreOutcome {
    std::vector<DnpValue> delta; // final shift values; signs are the winners
    int iterations = 0;
    std::optional<MonitorReport> monitor;
};

/**
 * Polyhedral value iteration on the polyhedron of potentials. The game
 * must be bipartite, valid, and free of zero cycles in W's order; under
 * those assumptions every tight subgraph is acyclic and the shift is the
 * indicator of the positive-value set.
 */
template <typename W>
CoreOutcome<W> energy_core(const Game<W>& g, bool monitor_on) {
    const int n = g.node_count();
    const std::vector<Owner> owners = g.owners();
    POLYVAL_CHECK(is_bipartite(g), "energy core requires a bipartite game");

    W wmax = max_abs_weight(g);
    std::vector<W> x(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        if (g.owner(v) == Owner::Max)
            x[static_cast<size_t>(v)] = wmax;
    std::vector<int> tight = potential_tight_edges(g, x);

    std::optional<IterationMonitor> monitor;
    if (monitor_on) {
        monitor.emplace(owners, IterationMode::Strong, true);
        monitor->start(edge_pairs(g, tight));
    }
    const mpz_class bound = 2 * count_signature_space(n, true, n / 2);

    CoreOutcome<W> out;
    for (;;) {
        POLYVAL_CHECK(edges_acyclic(n, edge_pairs(g, tight)),
                      "tight subgraph has a cycle (zero cycle in the weights)");
        std::vector<DnpValue> delta = dnp_solve({owners, edge_pairs(g, tight)});
        for (int v = 0; v < n; ++v)
            POLYVAL_CHECK(delta[static_cast<size_t>(v)].sign != 0,
                          "zero shift value on an acyclic tight subgraph");

        // the indicator of the positive set must be a feasible shift:
        // it may not separate the endpoints of a tight edge the wrong way
        for (int e : tight) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            int sa = delta[static_cast<size_t>(ed.from)].sign;
            int sb = delta[static_cast<size_t>(ed.to)].sign;
            bool ok = g.owner(ed.from) == Owner::Max ? !(sa < 0 && sb > 0)
                                                     : !(sa > 0 && sb < 0);
            POLYVAL_CHECK(ok, "shift indicator infeasible on a tight edge");
        }

        bool violated = false;
        for (const auto& e : g.edges)
            if (classify_pair(e.from, e.to, delta, owners) == PairClass::StronglyViolating) {
                violated = true;
                break;
            }
        if (!violated) {
            out.delta = std::move(delta);
            break;
        }

        // largest step along the positive-set indicator: only strongly
        // violating edges close, each at its own slack
        auto is_tight = [&](int e) {
            return std::binary_search(tight.begin(), tight.end(), e);
        };
        bool found = false;
        W eps{};
        for (int e = 0; e < g.edge_count(); ++e) {
            if (is_tight(e))
                continue;
            const auto& ed = g.edges[static_cast<size_t>(e)];
            int sa = delta[static_cast<size_t>(ed.from)].sign;
            int sb = delta[static_cast<size_t>(ed.to)].sign;
            bool closes = g.owner(ed.from) == Owner::Max ? (sa < 0 && sb > 0)
                                                         : (sa > 0 && sb < 0);
            if (!closes)
                continue;
            W slack;
            if (g.owner(ed.from) == Owner::Max)
                slack = x[static_cast<size_t>(ed.from)] - ed.weight -
                        x[static_cast<size_t>(ed.to)];
            else
                slack = ed.weight + x[static_cast<size_t>(ed.to)] -
                        x[static_cast<size_t>(ed.from)];
            if (!found || slack < eps) {
                eps = std::move(slack);
                found = true;
            }
        }
        POLYVAL_CHECK(found, "no closing edge although a strongly violating edge exists");
        POLYVAL_CHECK(W{} < eps, "non-positive step length");

        std::vector<W> y = x;
        for (int v = 0; v < n; ++v)
            if (delta[static_cast<size_t>(v)].sign > 0)
                y[static_cast<size_t>(v)] += eps;
        std::vector<int> tight_y = potential_tight_edges(g, y);

        bool gained = false;
        for (int e : tight_y) {
            if (is_tight(e))
                continue;
            gained = true;
            const auto& ed = g.edges[static_cast<size_t>(e)];
            POLYVAL_CHECK(classify_pair(ed.from, ed.to, delta, owners) ==
                              PairClass::StronglyViolating,
                          "new tight edge is not strongly violating");
        }
        POLYVAL_CHECK(gained, "step produced no new tight edge");
        for (int e : tight) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            if (classify_pair(ed.from, ed.to, delta, owners) == PairClass::Optimal)
                POLYVAL_CHECK(std::binary_search(tight_y.begin(), tight_y.end(), e),
                              "optimal edge lost its tightness");
        }

        DifferenceSystem<W> sys;
        sys.reserve(static_cast<size_t>(g.edge_count()));
        for (int e = 0; e < g.edge_count(); ++e) {
            const auto& ed = g.edges[static_cast<size_t>(e)];
            DifferenceConstraint<W> c;
            c.equality = std::binary_search(tight_y.begin(), tight_y.end(), e);
            if (g.owner(ed.from) == Owner::Max) {
                c.a = ed.to;
                c.b = ed.from;
                c.bound = -ed.weight;
            } else {
                c.a = ed.from;
                c.b = ed.to;
                c.bound = ed.weight;
            }
            sys.push_back(std::move(c));
        }
        auto realized = pratt_realize(n, sys);
        POLYVAL_CHECK(realized.has_value(), "realize failed on a realizable edge set");
        x = std::move(*realized);
        tight = potential_tight_edges(g, x);
        for (int e : tight_y)
            POLYVAL_CHECK(std::binary_search(tight.begin(), tight.end(), e),
                          "realized point misses a forced equality");

        if (monitor)
            monitor->advance(edge_pairs(g, tight));
        ++out.iterations;
        POLYVAL_CHECK(mpz_class(out.iterations) <= bound, "iteration bound exceeded");
    }
    if (monitor)
        out.monitor = monitor->finish();
    return out;
}

} // namespace energy_detail

template <typename W>
std::optional<std::vector<W>> pratt_realize(int num_vars, const DifferenceSystem<W>& system) {
    // x_a - x_b <= c becomes the relaxation edge b -> a with weight c; the
    // virtual source contributes the all-zero initial distances.
    std::vector<std::tuple<int, int, W>> edges;
    edges.reserve(system.size() * 2);
    for (const auto& c : system) {
        POLYVAL_CHECK(c.a >= 0 && c.a < num_vars && c.b >= 0 && c.b < num_vars,
                      "difference constraint names unknown variable");
        edges.emplace_back(c.b, c.a, c.bound);
        if (c.equality)
            edges.emplace_back(c.a, c.b, -c.bound);
    }
    std::vector<W> dist(static_cast<size_t>(num_vars));
    for (int round = 0; round <= num_vars; ++round) {
        bool improved = false;
        for (const auto& [b, a, w] : edges) {
            W cand = dist[static_cast<size_t>(b)] + w;
            if (cand < dist[static_cast<size_t>(a)]) {
                dist[static_cast<size_t>(a)] = std::move(cand);
                improved = true;
            }
        }
        if (!improved)
            return dist;
    }
    return std::nullopt; // negative cycle: the system is infeasible
}

template <typename W>
TrivialElimination<W> eliminate_trivial(const Game<W>& g) {
    using energy_detail::attractor;
    using energy_detail::find_negative_cycle;
    using energy_detail::perturbed_weight;

    const int n = g.node_count();
    std::vector<char> alive(static_cast<size_t>(n), 1);
    TrivialElimination<W> out;

    std::vector<std::tuple<int, int, LexWeight>> pedges, nedges; // perturbed, negated
    for (const auto& e : g.edges) {
        LexWeight w = perturbed_weight<W>(e.weight);
        pedges.emplace_back(e.from, e.to, w);
        nedges.emplace_back(e.from, e.to, -w);
    }

    auto decide = [&](Owner winner, PreDecision::Reason reason, const std::vector<int>& seeds,
                      std::vector<int> evidence) {
        std::vector<char> attr = attractor(g, alive, winner, seeds);
        for (int s : seeds)
            out.decided.push_back({s, winner, reason, evidence});
        for (int v = 0; v < n; ++v) {
            if (!attr[static_cast<size_t>(v)])
                continue;
            if (std::find(seeds.begin(), seeds.end(), v) == seeds.end())
                out.decided.push_back({v, winner, PreDecision::Reason::Attractor, seeds});
            alive[static_cast<size_t>(v)] = 0;
        }
    };

    for (;;) {
        // lowest-id trivial node first
        int trivial = -1;
        std::vector<char> region;
        for (int a = 0; a < n && trivial < 0; ++a) {
            if (!alive[static_cast<size_t>(a)])
                continue;
            Owner o = g.owner(a);
            std::vector<char> reach(static_cast<size_t>(n), 0);
            std::vector<int> stack{a};
            reach[static_cast<size_t>(a)] = 1;
            bool pure = true;
            while (!stack.empty() && pure) {
                int v = stack.back();
                stack.pop_back();
                if (g.owner(v) != o) {
                    pure = false;
                    break;
                }
                for (const auto& e : g.edges) {
                    if (e.from != v || !alive[static_cast<size_t>(e.to)])
                        continue;
                    if (!reach[static_cast<size_t>(e.to)]) {
                        reach[static_cast<size_t>(e.to)] = 1;
                        stack.push_back(e.to);
                    }
                }
            }
            if (pure) {
                trivial = a;
                region = std::move(reach);
            }
        }
        if (trivial >= 0) {
            Owner o = g.owner(trivial);
            // one-player analysis on the reachable region: the owner wins
            // iff a favorable (perturbed-strict) cycle exists there
            std::vector<int> cyc = o == Owner::Max
                                       ? find_negative_cycle(n, region, nedges)
                                       : find_negative_cycle(n, region, pedges);
            Owner winner = cyc.empty() ? opponent(o) : o;
            decide(winner, PreDecision::Reason::TrivialNode, {trivial}, cyc);
            continue;
        }

        // trivial cycles: favorable single-owner cycles among alive nodes
        std::vector<char> max_only(static_cast<size_t>(n), 0), min_only(static_cast<size_t>(n), 0);
        for (int v = 0; v < n; ++v) {
            if (!alive[static_cast<size_t>(v)])
                continue;
            (g.owner(v) == Owner::Max ? max_only : min_only)[static_cast<size_t>(v)] = 1;
        }
        std::vector<int> cyc = find_negative_cycle(n, max_only, nedges);
        Owner winner = Owner::Max;
        if (cyc.empty()) {
            cyc = find_negative_cycle(n, min_only, pedges);
            winner = Owner::Min;
        }
        if (cyc.empty())
            break;
        decide(winner, PreDecision::Reason::TrivialCycle, cyc, cyc);
    }

    std::vector<int> remap(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (alive[static_cast<size_t>(v)]) {
            remap[static_cast<size_t>(v)] = static_cast<int>(out.kept.size());
            out.kept.push_back(v);
        }
    out.reduced.kind = g.kind;
    out.reduced.lambda = g.lambda;
    out.reduced.threshold = g.threshold;
    for (int v : out.kept)
        out.reduced.nodes.push_back(g.nodes[static_cast<size_t>(v)]);
    for (const auto& e : g.edges)
        if (alive[static_cast<size_t>(e.from)] && alive[static_cast<size_t>(e.to)])
            out.reduced.edges.push_back({remap[static_cast<size_t>(e.from)],
                                         remap[static_cast<size_t>(e.to)], e.weight});
    for (int v = 0; v < out.reduced.node_count(); ++v) {
        bool has_out = false;
        for (const auto& e : out.reduced.edges)
            has_out = has_out || e.from == v;
        POLYVAL_CHECK(has_out, "attractor removal produced a sink");
    }
    return out;
}

template <typename W>
BipartiteReduction<W> bipartite_reduce(const Game<W>& g) {
    const int n = g.node_count();
    BipartiteReduction<W> out;
    out.reduced.kind = g.kind;
    out.reduced.lambda = g.lambda;
    out.reduced.threshold = g.threshold;
    out.reduced.nodes = g.nodes;

    for (int a = 0; a < n; ++a) {
        const Owner o = g.owner(a);
        const bool maximize = o == Owner::Max;
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::vector<W> dist(static_cast<size_t>(n));
        std::vector<int> pred(static_cast<size_t>(n), -1); // incoming edge index
        seen[static_cast<size_t>(a)] = 1;
        for (int round = 0; round <= n; ++round) {
            bool improved = false;
            for (int e = 0; e < g.edge_count(); ++e) {
                const auto& ed = g.edges[static_cast<size_t>(e)];
                if (g.owner(ed.from) != o || !seen[static_cast<size_t>(ed.from)])
                    continue;
                W cand = dist[static_cast<size_t>(ed.from)] + ed.weight;
                bool better = !seen[static_cast<size_t>(ed.to)] ||
                              (maximize ? dist[static_cast<size_t>(ed.to)] < cand
                                        : cand < dist[static_cast<size_t>(ed.to)]);
                if (better) {
                    seen[static_cast<size_t>(ed.to)] = 1;
                    dist[static_cast<size_t>(ed.to)] = std::move(cand);
                    pred[static_cast<size_t>(ed.to)] = e;
                    improved = true;
                }
            }
            if (!improved)
                break;
            if (round == n)
                throw internal_error(
                    std::string("single-owner ") +
                    (maximize ? "positive" : "negative") +
                    " cycle found: trivial elimination was skipped");
        }
        for (int b = 0; b < n; ++b) {
            if (!seen[static_cast<size_t>(b)] || g.owner(b) == o)
                continue;
            ReducedEdgeCert<W> cert;
            cert.from = a;
            cert.to = b;
            cert.weight = dist[static_cast<size_t>(b)];
            W total{};
            for (int v = b; v != a;) {
                int e = pred[static_cast<size_t>(v)];
                cert.path.push_back(v);
                cert.path_edges.push_back(e);
                total += g.edges[static_cast<size_t>(e)].weight;
                v = g.edges[static_cast<size_t>(e)].from;
            }
            cert.path.push_back(a);
            std::reverse(cert.path.begin(), cert.path.end());
            std::reverse(cert.path_edges.begin(), cert.path_edges.end());
            POLYVAL_CHECK(total == cert.weight, "certificate path weight drifted");
            out.reduced.edges.push_back({a, b, cert.weight});
            out.cert.push_back(std::move(cert));
        }
    }
    return out;
}

} // namespace polyval
