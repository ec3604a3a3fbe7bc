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
#include <vector>

#include "polyval/rational.hpp"

namespace polyval {

enum class Rel { Le, Eq, Ge };

/** sum of terms (rel) rhs over free real variables. */
struct LinearConstraint {
    std::vector<std::pair<int, Rational>> terms;
    Rel rel = Rel::Le;
    Rational rhs;
};

/**
 * Exact-rational phase-1 simplex over free variables (internally split
 * into nonnegative pairs). Returns a basic feasible point, or nullopt
 * when the system is infeasible. Bland's rule, so it always terminates;
 * coordinates of the result are determinant ratios of the input data and
 * thus of polynomially bounded bit-length.
 */
std::optional<std::vector<Rational>>
find_feasible_point(int num_vars, const std::vector<LinearConstraint>& constraints);

} // namespace polyval
