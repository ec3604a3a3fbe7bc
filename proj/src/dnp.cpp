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

#include "polyval/dnp.hpp"

#include "polyval/errors.hpp"

namespace polyval {

int dnp_compare(const DnpValue& u, const DnpValue& v) {
    if (u.sign != v.sign)
        return u.sign < v.sign ? -1 : 1;
    if (u.sign == 0)
        return 0;
    if (u.exponent == v.exponent)
        return 0;
    // Positive values shrink with the exponent, negative ones grow.
    bool u_greater = (u.sign > 0) == (u.exponent < v.exponent);
    return u_greater ? 1 : -1;
}

Rational dnp_instantiate(const DnpValue& v, const Rational& lambda) {
    if (v.sign == 0)
        return Rational(0);
    Rational p = rational_pow(lambda, static_cast<unsigned>(v.exponent));
    return v.sign > 0 ? p : Rational(-p);
}

namespace {

struct Adjacency {
    std::vector<int> heads;   // flattened successor lists
    std::vector<int> offsets; // per node into heads
    std::vector<int> out_deg;

    explicit Adjacency(const DnpGraph& g) {
        int n = g.node_count();
        out_deg.assign(static_cast<size_t>(n), 0);
        for (const auto& [a, b] : g.edges)
            ++out_deg[static_cast<size_t>(a)];
        offsets.assign(static_cast<size_t>(n) + 1, 0);
        for (int v = 0; v < n; ++v)
            offsets[static_cast<size_t>(v) + 1] = offsets[static_cast<size_t>(v)] + out_deg[static_cast<size_t>(v)];
        heads.resize(g.edges.size());
        std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
        for (const auto& [a, b] : g.edges)
            heads[static_cast<size_t>(cursor[static_cast<size_t>(a)]++)] = b;
    }

    std::span<const int> succ(int v) const {
        return {heads.data() + offsets[static_cast<size_t>(v)],
                heads.data() + offsets[static_cast<size_t>(v) + 1]};
    }
};

// One-sided layer peeling. `eager` is the owner that needs a single edge
// into already-assigned layers, the other owner needs all of them.
void peel(const Adjacency& adj, std::span<const Owner> owners, Owner eager,
          std::vector<int>& level) {
    int n = static_cast<int>(owners.size());
    Owner lazy = opponent(eager);
    // layer 0: sinks owned by the lazy player
    std::vector<int> frontier;
    for (int v = 0; v < n; ++v)
        if (adj.out_deg[static_cast<size_t>(v)] == 0 && owners[static_cast<size_t>(v)] == lazy) {
            level[static_cast<size_t>(v)] = 0;
            frontier.push_back(v);
        }
    for (int k = 1; k < n && !frontier.empty(); ++k) {
        frontier.clear();
        for (int v = 0; v < n; ++v) {
            if (level[static_cast<size_t>(v)] >= 0 || adj.out_deg[static_cast<size_t>(v)] == 0)
                continue;
            bool take;
            if (owners[static_cast<size_t>(v)] == eager) {
                take = false;
                for (int b : adj.succ(v))
                    if (level[static_cast<size_t>(b)] >= 0 && level[static_cast<size_t>(b)] < k) {
                        take = true;
                        break;
                    }
            } else {
                take = true;
                for (int b : adj.succ(v))
                    if (level[static_cast<size_t>(b)] < 0 || level[static_cast<size_t>(b)] >= k) {
                        take = false;
                        break;
                    }
            }
            if (take)
                frontier.push_back(v);
        }
        for (int v : frontier)
            level[static_cast<size_t>(v)] = k;
    }
}

} // namespace

std::vector<DnpValue> dnp_solve(const DnpGraph& g) {
    int n = g.node_count();
    Adjacency adj(g);

    std::vector<int> pos_level(static_cast<size_t>(n), -1);
    std::vector<int> neg_level(static_cast<size_t>(n), -1);
    peel(adj, g.owners, Owner::Max, pos_level);

    // The negative side is the mirror image: flip owners, reuse the peel.
    std::vector<Owner> flipped(g.owners.size());
    for (size_t i = 0; i < flipped.size(); ++i)
        flipped[i] = opponent(g.owners[i]);
    peel(adj, flipped, Owner::Max, neg_level);

    std::vector<DnpValue> out(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        int p = pos_level[static_cast<size_t>(v)];
        int m = neg_level[static_cast<size_t>(v)];
        POLYVAL_CHECK(p < 0 || m < 0, "node assigned both a positive and a negative value");
        if (p >= 0)
            out[static_cast<size_t>(v)] = {+1, p};
        else if (m >= 0)
            out[static_cast<size_t>(v)] = {-1, m};
    }
    return out;
}

bool dnp_fixpoint_check(const DnpGraph& g, std::span<const DnpValue> delta,
                        const Rational& lambda) {
    int n = g.node_count();
    Adjacency adj(g);
    std::vector<Rational> x(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        x[static_cast<size_t>(v)] = dnp_instantiate(delta[static_cast<size_t>(v)], lambda);
    for (int v = 0; v < n; ++v) {
        Rational want;
        if (adj.out_deg[static_cast<size_t>(v)] == 0) {
            want = g.owners[static_cast<size_t>(v)] == Owner::Max ? Rational(-1) : Rational(1);
        } else {
            bool first = true;
            Rational best;
            for (int b : adj.succ(v)) {
                const Rational& xb = x[static_cast<size_t>(b)];
                if (first || (g.owners[static_cast<size_t>(v)] == Owner::Max ? xb > best : xb < best)) {
                    best = xb;
                    first = false;
                }
            }
            want = lambda * best;
        }
        if (want != x[static_cast<size_t>(v)])
            return false;
    }
    return true;
}

PairClass classify_pair(int a, int b, std::span<const DnpValue> delta,
                        std::span<const Owner> owners) {
    const DnpValue& va = delta[static_cast<size_t>(a)];
    const DnpValue& vb = delta[static_cast<size_t>(b)];
    int c = dnp_compare(va, scaled_by_lambda(vb));
    if (c == 0)
        return PairClass::Optimal;
    Owner oa = owners[static_cast<size_t>(a)];
    bool violating = oa == Owner::Max ? c < 0 : c > 0;
    if (!violating)
        return PairClass::Neutral;
    bool strongly = oa == Owner::Max ? (va.sign < 0 && vb.sign > 0)
                                     : (va.sign > 0 && vb.sign < 0);
    return strongly ? PairClass::StronglyViolating : PairClass::Violating;
}

Signature signature_of(std::span<const DnpValue> delta, std::span<const Owner> owners) {
    int n = static_cast<int>(owners.size());
    Signature sig;
    sig.f.assign(static_cast<size_t>(2 * n - 1), 0);
    sig.g.assign(static_cast<size_t>(2 * n - 1), 0);
    for (int v = 0; v < n; ++v) {
        const DnpValue& d = delta[static_cast<size_t>(v)];
        if (d.sign == 0)
            continue;
        bool is_max = owners[static_cast<size_t>(v)] == Owner::Max;
        auto& vec = d.sign > 0 ? sig.f : sig.g;
        // In f the i-th pair is (Max, Min); in g the roles are reversed.
        bool first_slot = d.sign > 0 ? is_max : !is_max;
        if (d.exponent == 0)
            ++vec[0];
        else
            ++vec[static_cast<size_t>(2 * d.exponent - (first_slot ? 1 : 0))];
    }
    return sig;
}

int alt_lex_compare(std::span<const int> u, std::span<const int> v) {
    POLYVAL_CHECK(u.size() == v.size(), "alternating-lex comparison of unequal lengths");
    for (size_t i = 0; i < u.size(); ++i) {
        if (u[i] == v[i])
            continue;
        bool odd_pos = i % 2 == 0; // 1-based coordinate i+1
        bool u_smaller = odd_pos ? u[i] > v[i] : u[i] < v[i];
        return u_smaller ? -1 : 1;
    }
    return 0;
}

std::vector<long long> transformed_signature(std::span<const int> v) {
    std::vector<long long> out;
    out.reserve(v.size() / 2 + 1);
    out.push_back(-static_cast<long long>(v[0]));
    for (size_t i = 1; i + 1 < v.size(); i += 2)
        out.push_back(static_cast<long long>(v[i]) - static_cast<long long>(v[i + 1]));
    return out;
}

int std_lex_compare(std::span<const long long> u, std::span<const long long> v) {
    POLYVAL_CHECK(u.size() == v.size(), "lex comparison of unequal lengths");
    for (size_t i = 0; i < u.size(); ++i)
        if (u[i] != v[i])
            return u[i] < v[i] ? -1 : 1;
    return 0;
}

bool edges_acyclic(int n, std::span<const std::pair<int, int>> edges) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    std::vector<int> in_deg(static_cast<size_t>(n), 0);
    for (const auto& [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        ++in_deg[static_cast<size_t>(b)];
    }
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (in_deg[static_cast<size_t>(v)] == 0)
            queue.push_back(v);
    size_t seen = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++seen;
        for (int b : adj[static_cast<size_t>(v)])
            if (--in_deg[static_cast<size_t>(b)] == 0)
                queue.push_back(b);
    }
    return seen == static_cast<size_t>(n);
}

mpz_class count_signature_space(int n, bool bipartite, int norm_cap) {
    POLYVAL_CHECK(n >= 1 && norm_cap >= 0 && norm_cap <= n, "signature-space count out of domain");
    // Vectors split into v1 and n-1 pairs. A vector is zero, or has v1 >= 1
    // and some prefix of t >= 0 pairs each with positive sum. A pair of sum
    // p admits p+1 layouts, or exactly 1 under the bipartite parity pattern.
    mpz_class total = 1; // the zero vector
    total += norm_cap;   // t = 0: v1 in 1..norm_cap
    std::vector<mpz_class> ways(static_cast<size_t>(norm_cap) + 1);
    ways[0] = 1;
    for (int t = 1; t <= n - 1; ++t) {
        std::vector<mpz_class> next(static_cast<size_t>(norm_cap) + 1);
        for (int s = 0; s <= norm_cap; ++s) {
            if (ways[static_cast<size_t>(s)] == 0)
                continue;
            for (int p = 1; s + p <= norm_cap; ++p)
                next[static_cast<size_t>(s + p)] +=
                    ways[static_cast<size_t>(s)] * (bipartite ? 1 : p + 1);
        }
        ways = std::move(next);
        for (int s = t; s <= norm_cap; ++s)
            if (norm_cap - s >= 1)
                total += ways[static_cast<size_t>(s)] * (norm_cap - s);
    }
    return total;
}

} // namespace polyval
