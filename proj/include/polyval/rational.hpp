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

#include <gmpxx.h>

#include <string>

#include "polyval/errors.hpp"

namespace polyval {

/**
 * Exact rational number, always in lowest terms with positive denominator.
 * All solver-core arithmetic runs on this type; floating point is confined
 * to the classical value-iteration oracle and benchmark reporting.
 */
using Rational = mpq_class;

inline Rational make_rational(long long num, long long den = 1) {
    if (den == 0)
        throw parse_error("rational with zero denominator");
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

inline Rational rational_abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

/// lambda^k as an exact rational; lambda must already be canonical.
inline Rational rational_pow(const Rational& base, unsigned k) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), k);
    return r;
}

/// "num/den" rendering for diagnostics and CSV cells.
inline std::string rational_str(const Rational& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1)
        s += "/" + q.get_den().get_str();
    return s;
}

} // namespace polyval
