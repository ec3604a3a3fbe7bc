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

#include <span>
#include <utility>
#include <vector>

#include "polyval/game.hpp"
#include "polyval/rational.hpp"

namespace polyval {

/**
 * Symbolic value of a discounted normal play game in one node:
 * sign * lambda^exponent, or zero. Stored symbolically so the solve is
 * independent of the discount factor; numeric instantiation is a separate,
 * explicit step.
 */
struct DnpValue {
    int sign = 0;     // -1, 0, +1
    int exponent = 0; // meaningful only when sign != 0

    friend bool operator==(const DnpValue& a, const DnpValue& b) {
        if (a.sign != b.sign)
            return false;
        return a.sign == 0 || a.exponent == b.exponent;
    }
    friend bool operator!=(const DnpValue& a, const DnpValue& b) { return !(a == b); }
};

/**
 * Total order on symbolic values; agrees with the numeric order
 * +1 > lambda > lambda^2 > ... > 0 > ... > -lambda^2 > -lambda > -1
 * for every lambda in (0,1). Returns -1, 0, +1.
 */
int dnp_compare(const DnpValue& u, const DnpValue& v);

/// Multiplication by the discount: (s,k) -> (s,k+1), 0 -> 0.
inline DnpValue scaled_by_lambda(const DnpValue& v) {
    return v.sign == 0 ? v : DnpValue{v.sign, v.exponent + 1};
}

/// Numeric instantiation sign * lambda^exponent.
Rational dnp_instantiate(const DnpValue& v, const Rational& lambda);

/**
 * Subgraph view: the node set (with owners) of some parent game together
 * with an arbitrary edge subset. Sinks are allowed.
 */
struct DnpGraph {
    std::vector<Owner> owners;
    std::vector<std::pair<int, int>> edges; // (from, to)

    int node_count() const { return static_cast<int>(owners.size()); }
};

/**
 * The unique solution of the sink/step equations on the subgraph:
 * sinks get -1 (Max) or +1 (Min); elsewhere the value is lambda times the
 * best successor value (max for Max, min for Min); nodes that never reach
 * a sink under optimal play get 0. Computed by layer peeling from the
 * extremes, so the result is independent of lambda.
 */
std::vector<DnpValue> dnp_solve(const DnpGraph& g);

/**
 * Instantiates `delta` with the given discount and applies the one-step
 * operator once; true iff the input is its fixed point.
 */
bool dnp_fixpoint_check(const DnpGraph& g, std::span<const DnpValue> delta,
                        const Rational& lambda);

enum class PairClass { Optimal, Violating, StronglyViolating, Neutral };

/**
 * Classifies an arbitrary node pair (a,b) against the values `delta`:
 * optimal when delta(a) equals lambda*delta(b) symbolically; violating
 * when the owner's inequality at a is broken; strongly violating when in
 * addition the signs flip across the pair (always reported in preference
 * to plain violating).
 */
PairClass classify_pair(int a, int b, std::span<const DnpValue> delta,
                        std::span<const Owner> owners);

/**
 * Counting summary of a value assignment, in N^(2n-1) each: coordinate 1
 * counts value +1 (resp. -1), then n-1 pairs count (Max, Min) nodes at
 * +lambda^i (resp. (Min, Max) nodes at -lambda^i).
 */
struct Signature {
    std::vector<int> f;
    std::vector<int> g;
};

Signature signature_of(std::span<const DnpValue> delta, std::span<const Owner> owners);

/**
 * Lexicographic comparison with the integer order reversed on odd
 * (1-based) coordinates and standard on even ones. Returns -1, 0, +1.
 * Throws internal_error on length mismatch.
 */
int alt_lex_compare(std::span<const int> u, std::span<const int> v);

/// (-v1, v2-v3, ..., v_{2n-2}-v_{2n-1}); input length 2n-1, output length n.
std::vector<long long> transformed_signature(std::span<const int> v);

/// Standard lexicographic comparison; returns -1, 0, +1.
int std_lex_compare(std::span<const long long> u, std::span<const long long> v);

/// True iff the edge set contains no directed cycle on n nodes.
bool edges_acyclic(int n, std::span<const std::pair<int, int>> edges);

/**
 * Exact count of vectors v in N^(2n-1) that can occur as a signature:
 * ||v||_1 <= norm_cap, v1 = 0 forces v = 0, an all-zero pair forces all
 * later pairs zero, and (when bipartite) the parity pattern zeroes one
 * coordinate of every pair. Computed by dynamic programming.
 */
mpz_class count_signature_space(int n, bool bipartite, int norm_cap);

} // namespace polyval
