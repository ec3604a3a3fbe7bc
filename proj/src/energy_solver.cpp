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

#include "polyval/energy_solver.hpp"

#include <algorithm>

namespace polyval {

LexGame perturb(const RationalGame& g) {
    POLYVAL_CHECK(g.kind == GameKind::Energy, "perturb needs an energy game");
    LexGame out;
    out.kind = GameKind::Energy;
    out.nodes = g.nodes;
    out.edges.reserve(g.edges.size());
    for (const auto& e : g.edges)
        out.edges.push_back({e.from, e.to, LexWeight{e.weight, Rational(1)}});
    return out;
}

namespace {

// Integer fast path: clear denominators, then scale by (n+1) and add 1 so
// the implicit perturbation is 1/(n+1) of the cleared weights. Negative
// cycles stay negative, non-negative ones become strictly positive.
RationalGame integerize(const RationalGame& g) {
    mpz_class den_lcm = 1;
    for (const auto& e : g.edges)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), e.weight.get_den_mpz_t());
    Rational scale(den_lcm * (g.node_count() + 1));
    RationalGame out;
    out.kind = GameKind::Energy;
    out.nodes = g.nodes;
    out.edges.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        Rational w = e.weight * scale + 1;
        POLYVAL_CHECK(w.get_den() == 1, "fast-path weight failed to integerize");
        out.edges.push_back({e.from, e.to, std::move(w)});
    }
    return out;
}

template <typename W>
void merge_partition(EnergyResultT<W>& res, int original_n,
                     const std::vector<int>& kept, const std::vector<DnpValue>& delta) {
    for (size_t i = 0; i < kept.size(); ++i) {
        auto& side = delta[i].sign > 0 ? res.partition.w_max : res.partition.w_min;
        side.push_back(kept[i]);
    }
    for (const auto& d : res.pre_decided)
        (d.winner == Owner::Max ? res.partition.w_max : res.partition.w_min).push_back(d.node);
    std::sort(res.partition.w_max.begin(), res.partition.w_max.end());
    std::sort(res.partition.w_min.begin(), res.partition.w_min.end());
    POLYVAL_CHECK(res.partition.w_max.size() + res.partition.w_min.size() ==
                      static_cast<size_t>(original_n),
                  "winner partition does not cover the node set");
    for (const auto* side : {&res.partition.w_max, &res.partition.w_min})
        POLYVAL_CHECK(std::adjacent_find(side->begin(), side->end()) == side->end(),
                      "node decided twice");
}

template <typename W>
EnergyResultT<W> run_pipeline(const Game<W>& g, const EnergyOptions& opts) {
    if (auto v = validate(g); !v.empty())
        throw parse_error("invalid game: " + v.front().what + " (" + v.front().where + ")");
    POLYVAL_CHECK(g.kind == GameKind::Energy, "solve_energy needs an energy game");

    EnergyResultT<W> res;
    TrivialElimination<W> elim = eliminate_trivial(g);
    res.pre_decided = elim.decided;
    if (elim.reduced.node_count() == 0) {
        merge_partition(res, g.node_count(), {}, {});
        return res;
    }

    BipartiteReduction<W> red = bipartite_reduce(elim.reduced);
    res.reduction_cert = red.cert;
    if (auto v = validate(red.reduced); !v.empty())
        throw internal_error("bipartite reduction broke the game: " + v.front().what);

    std::vector<DnpValue> delta;
    if constexpr (std::is_same_v<W, Rational>) {
        if (opts.integer_fast_path) {
            auto core = energy_detail::energy_core(integerize(red.reduced), opts.monitor);
            res.iterations = core.iterations;
            res.monitor = std::move(core.monitor);
            delta = std::move(core.delta);
        } else {
            LexGame lex = perturb(red.reduced);
            auto core = energy_detail::energy_core(lex, opts.monitor);
            res.iterations = core.iterations;
            res.monitor = std::move(core.monitor);
            delta = std::move(core.delta);
        }
    } else {
        POLYVAL_CHECK(!opts.integer_fast_path,
                      "integer fast path needs rational weights");
        auto core = energy_detail::energy_core(red.reduced, opts.monitor);
        res.iterations = core.iterations;
        res.monitor = std::move(core.monitor);
        delta = std::move(core.delta);
    }

    merge_partition(res, g.node_count(), elim.kept, delta);
    return res;
}

} // namespace

EnergyResult solve_energy(const RationalGame& g, const EnergyOptions& opts) {
    return run_pipeline(g, opts);
}

EnergyResultT<LexWeight> solve_energy(const LexGame& g, const EnergyOptions& opts) {
    return run_pipeline(g, opts);
}

EnergyResult decide_mean_payoff(const RationalGame& g, const EnergyOptions& opts) {
    POLYVAL_CHECK(g.kind == GameKind::MeanPayoffDecision,
                  "decide_mean_payoff needs an mpd game");
    RationalGame shifted;
    shifted.kind = GameKind::Energy;
    shifted.nodes = g.nodes;
    shifted.edges.reserve(g.edges.size());
    for (const auto& e : g.edges)
        shifted.edges.push_back({e.from, e.to, e.weight - g.threshold});
    return solve_energy(shifted, opts);
}

} // namespace polyval
