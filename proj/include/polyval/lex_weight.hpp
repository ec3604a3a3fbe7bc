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

#include "polyval/rational.hpp"

namespace polyval {

/**
 * Element of the additive group of pairs (base, rho), ordered
 * lexicographically. The rho component is the coefficient of a formal
 * infinitesimal, so (a, b) compares the way a + b*eps does for every small
 * enough eps > 0. Addition is componentwise. There is deliberately no
 * multiplication or division: the energy solver is written against
 * add/compare only, and omitting scaling keeps it honest.
 */
struct LexWeight {
    Rational base;
    Rational rho;

    LexWeight() = default;
    LexWeight(Rational b, Rational r) : base(std::move(b)), rho(std::move(r)) {}

    LexWeight operator-() const { return {-base, -rho}; }

    LexWeight& operator+=(const LexWeight& o) {
        base += o.base;
        rho += o.rho;
        return *this;
    }
    LexWeight& operator-=(const LexWeight& o) {
        base -= o.base;
        rho -= o.rho;
        return *this;
    }

    friend LexWeight operator+(LexWeight a, const LexWeight& b) { return a += b; }
    friend LexWeight operator-(LexWeight a, const LexWeight& b) { return a -= b; }

    friend bool operator==(const LexWeight& a, const LexWeight& b) {
        return a.base == b.base && a.rho == b.rho;
    }
    friend bool operator!=(const LexWeight& a, const LexWeight& b) { return !(a == b); }
    friend bool operator<(const LexWeight& a, const LexWeight& b) {
        int c = cmp(a.base, b.base);
        return c != 0 ? c < 0 : a.rho < b.rho;
    }
    friend bool operator>(const LexWeight& a, const LexWeight& b) { return b < a; }
    friend bool operator<=(const LexWeight& a, const LexWeight& b) { return !(b < a); }
    friend bool operator>=(const LexWeight& a, const LexWeight& b) { return !(a < b); }
};

inline std::string lex_weight_str(const LexWeight& w) {
    return rational_str(w.base) + "+" + rational_str(w.rho) + "r";
}

// Componentwise absolute value. It dominates the group absolute value
// max(w, -w) in the lexicographic order, which is what the feasibility
// witnesses require.
inline LexWeight weight_abs(const LexWeight& w) {
    return {rational_abs(w.base), rational_abs(w.rho)};
}

inline Rational weight_abs(const Rational& q) { return rational_abs(q); }

inline std::string weight_str(const Rational& q) { return rational_str(q); }
inline std::string weight_str(const LexWeight& w) { return lex_weight_str(w); }

} // namespace polyval
