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

#include "polyval/oracles.hpp"

#include <algorithm>

namespace polyval {

namespace {

using oracle_detail::StrategySpace;

/**
 * Exact play value from every node when all choices are fixed: follow the
 * lasso, close the cycle with the geometric identity, then unwind.
 */
void eval_play(const RationalGame& g, const std::vector<int>& choice,
               std::vector<Rational>& val, std::vector<int>& state,
               std::vector<int>& stack) {
    const int n = g.node_count();
    std::fill(state.begin(), state.end(), 0); // 0 fresh, 1 on stack, 2 done
    for (int start = 0; start < n; ++start) {
        if (state[static_cast<size_t>(start)] == 2)
            continue;
        stack.clear();
        int v = start;
        while (state[static_cast<size_t>(v)] == 0) {
            state[static_cast<size_t>(v)] = 1;
            stack.push_back(v);
            v = g.edges[static_cast<size_t>(choice[static_cast<size_t>(v)])].to;
        }
        if (state[static_cast<size_t>(v)] == 1) {
            // v closes a cycle: discounted cycle weight / (1 - lambda^len)
            size_t pos = stack.size();
            while (stack[pos - 1] != v)
                --pos;
            Rational sum(0), p(1);
            for (size_t i = pos - 1; i < stack.size(); ++i) {
                sum += p * g.edges[static_cast<size_t>(choice[static_cast<size_t>(stack[i])])].weight;
                p *= g.lambda;
            }
            val[static_cast<size_t>(v)] = sum / (1 - p);
            state[static_cast<size_t>(v)] = 2;
        }
        for (size_t i = stack.size(); i-- > 0;) {
            int u = stack[i];
            if (state[static_cast<size_t>(u)] == 2)
                continue;
            const auto& e = g.edges[static_cast<size_t>(choice[static_cast<size_t>(u)])];
            val[static_cast<size_t>(u)] = e.weight + g.lambda * val[static_cast<size_t>(e.to)];
            state[static_cast<size_t>(u)] = 2;
        }
    }
}

std::vector<Rational> aggregate(const RationalGame& g, const StrategySpace& outer,
                                const StrategySpace& inner, bool outer_is_max) {
    const int n = g.node_count();
    std::vector<int> choice(static_cast<size_t>(n), -1);
    std::vector<Rational> val(static_cast<size_t>(n));
    std::vector<int> state(static_cast<size_t>(n));
    std::vector<int> stack;
    std::vector<Rational> best_outer;
    for (std::uint64_t ko = 0; ko < outer.count; ++ko) {
        outer.assign(ko, choice);
        std::vector<Rational> best_inner;
        for (std::uint64_t ki = 0; ki < inner.count; ++ki) {
            inner.assign(ki, choice);
            eval_play(g, choice, val, state, stack);
            if (ki == 0) {
                best_inner = val;
                continue;
            }
            for (int v = 0; v < n; ++v) {
                auto& b = best_inner[static_cast<size_t>(v)];
                const auto& x = val[static_cast<size_t>(v)];
                if (outer_is_max ? x < b : x > b) // inner optimizes against outer
                    b = x;
            }
        }
        if (ko == 0) {
            best_outer = std::move(best_inner);
            continue;
        }
        for (int v = 0; v < n; ++v) {
            auto& b = best_outer[static_cast<size_t>(v)];
            auto& x = best_inner[static_cast<size_t>(v)];
            if (outer_is_max ? x > b : x < b)
                b = std::move(x);
        }
    }
    return best_outer;
}

void check_caps(const StrategySpace& a, const StrategySpace& b, std::uint64_t cap) {
    if (a.overflow || b.overflow || a.count > cap || b.count > cap ||
        a.count * b.count > cap)
        throw cap_error("strategy enumeration cap exceeded");
}

} // namespace

std::vector<Rational> brute_disc(const RationalGame& g, std::uint64_t cap) {
    POLYVAL_CHECK(g.kind == GameKind::Discounted, "brute_disc needs a discounted game");
    StrategySpace sigmas(g, Owner::Max), taus(g, Owner::Min);
    check_caps(sigmas, taus, cap);
    return aggregate(g, sigmas, taus, true);
}

BruteDiscFull brute_disc_full(const RationalGame& g, std::uint64_t cap) {
    POLYVAL_CHECK(g.kind == GameKind::Discounted, "brute_disc needs a discounted game");
    StrategySpace sigmas(g, Owner::Max), taus(g, Owner::Min);
    check_caps(sigmas, taus, cap);
    BruteDiscFull out;
    out.max_min = aggregate(g, sigmas, taus, true);
    out.min_max = aggregate(g, taus, sigmas, false);
    return out;
}

std::vector<double> shapley_vi(const RationalGame& g, int sweeps) {
    POLYVAL_CHECK(g.kind == GameKind::Discounted && sweeps >= 1,
                  "shapley_vi needs a discounted game and at least one sweep");
    const int n = g.node_count();
    const double lam = g.lambda.get_d();
    std::vector<double> x(static_cast<size_t>(n), 0.0), next(static_cast<size_t>(n));
    for (int s = 0; s < sweeps; ++s) {
        for (int v = 0; v < n; ++v) {
            bool first = true;
            double best = 0.0;
            for (const auto& e : g.edges) {
                if (e.from != v)
                    continue;
                double cand = e.weight.get_d() + lam * x[static_cast<size_t>(e.to)];
                if (first || (g.owner(v) == Owner::Max ? cand > best : cand < best)) {
                    best = cand;
                    first = false;
                }
            }
            next[static_cast<size_t>(v)] = best;
        }
        x.swap(next);
    }
    return x;
}

} // namespace polyval
