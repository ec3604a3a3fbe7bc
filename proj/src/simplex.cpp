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

#include "polyval/simplex.hpp"

#include "polyval/errors.hpp"

namespace polyval {

namespace {

struct Tableau {
    int rows, cols; // cols excludes the rhs column
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> rhs;
    std::vector<int> basis; // basic column per row

    Tableau(int r, int c)
        : rows(r), cols(c), a(static_cast<size_t>(r), std::vector<Rational>(static_cast<size_t>(c))),
          rhs(static_cast<size_t>(r)), basis(static_cast<size_t>(r), -1) {}

    void pivot(int pr, int pc) {
        auto& prow = a[static_cast<size_t>(pr)];
        Rational inv = prow[static_cast<size_t>(pc)];
        for (auto& x : prow)
            x /= inv;
        rhs[static_cast<size_t>(pr)] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == pr)
                continue;
            Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(pc)];
            if (f == 0)
                continue;
            auto& row = a[static_cast<size_t>(r)];
            for (int c = 0; c < cols; ++c)
                if (prow[static_cast<size_t>(c)] != 0)
                    row[static_cast<size_t>(c)] -= f * prow[static_cast<size_t>(c)];
            rhs[static_cast<size_t>(r)] -= f * rhs[static_cast<size_t>(pr)];
        }
        basis[static_cast<size_t>(pr)] = pc;
    }
};

} // namespace

std::optional<std::vector<Rational>>
find_feasible_point(int num_vars, const std::vector<LinearConstraint>& constraints) {
    int m = static_cast<int>(constraints.size());
    // columns: u_0..u_{n-1}, v_0..v_{n-1} (x = u - v), then one slack per
    // inequality, then one artificial per row that still needs a basis.
    int slack_base = 2 * num_vars;
    int num_slacks = 0;
    for (const auto& c : constraints)
        if (c.rel != Rel::Eq)
            ++num_slacks;
    int art_base = slack_base + num_slacks;

    // First pass to know which rows need artificials.
    std::vector<int> slack_col(static_cast<size_t>(m), -1);
    std::vector<bool> negated(static_cast<size_t>(m), false);
    std::vector<bool> needs_art(static_cast<size_t>(m), false);
    {
        int s = 0;
        for (int r = 0; r < m; ++r) {
            const auto& c = constraints[static_cast<size_t>(r)];
            if (c.rel != Rel::Eq)
                slack_col[static_cast<size_t>(r)] = slack_base + s++;
            bool rhs_neg = c.rhs < 0;
            negated[static_cast<size_t>(r)] = rhs_neg;
            // After sign normalization the slack coefficient is +1 exactly
            // for (Le, rhs>=0) and (Ge, rhs<0); those rows self-basis.
            bool slack_basic = c.rel != Rel::Eq &&
                               ((c.rel == Rel::Le) != rhs_neg);
            needs_art[static_cast<size_t>(r)] = !slack_basic;
        }
    }
    int num_arts = 0;
    for (bool b : needs_art)
        num_arts += b ? 1 : 0;
    int cols = art_base + num_arts;

    Tableau t(m, cols);
    std::vector<bool> is_art(static_cast<size_t>(cols), false);
    {
        int art = 0;
        for (int r = 0; r < m; ++r) {
            const auto& c = constraints[static_cast<size_t>(r)];
            auto& row = t.a[static_cast<size_t>(r)];
            for (const auto& [var, coef] : c.terms) {
                POLYVAL_CHECK(var >= 0 && var < num_vars, "constraint names unknown variable");
                row[static_cast<size_t>(var)] += coef;
                row[static_cast<size_t>(num_vars + var)] -= coef;
            }
            if (c.rel != Rel::Eq)
                row[static_cast<size_t>(slack_col[static_cast<size_t>(r)])] =
                    c.rel == Rel::Le ? 1 : -1;
            t.rhs[static_cast<size_t>(r)] = c.rhs;
            if (negated[static_cast<size_t>(r)]) {
                for (auto& x : row)
                    x = -x;
                t.rhs[static_cast<size_t>(r)] = -t.rhs[static_cast<size_t>(r)];
            }
            if (needs_art[static_cast<size_t>(r)]) {
                int ac = art_base + art++;
                row[static_cast<size_t>(ac)] = 1;
                is_art[static_cast<size_t>(ac)] = true;
                t.basis[static_cast<size_t>(r)] = ac;
            } else {
                t.basis[static_cast<size_t>(r)] = slack_col[static_cast<size_t>(r)];
            }
        }
    }

    // Phase 1: minimize the sum of artificials, Bland's rule throughout.
    Rational rc;
    for (int guard = 0;; ++guard) {
        POLYVAL_CHECK(guard < 100000, "simplex failed to terminate");
        int enter = -1;
        for (int j = 0; j < cols && enter < 0; ++j) {
            if (is_art[static_cast<size_t>(j)])
                continue;
            rc = 0;
            for (int r = 0; r < m; ++r)
                if (is_art[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] &&
                    t.a[static_cast<size_t>(r)][static_cast<size_t>(j)] != 0)
                    rc -= t.a[static_cast<size_t>(r)][static_cast<size_t>(j)];
            if (rc < 0)
                enter = j;
        }
        if (enter < 0)
            break;
        int leave = -1;
        Rational best;
        for (int r = 0; r < m; ++r) {
            const Rational& arj = t.a[static_cast<size_t>(r)][static_cast<size_t>(enter)];
            if (arj <= 0)
                continue;
            Rational ratio = t.rhs[static_cast<size_t>(r)] / arj;
            if (leave < 0 || ratio < best ||
                (ratio == best &&
                 t.basis[static_cast<size_t>(r)] < t.basis[static_cast<size_t>(leave)])) {
                best = ratio;
                leave = r;
            }
        }
        POLYVAL_CHECK(leave >= 0, "phase-1 objective unbounded");
        t.pivot(leave, enter);
    }

    for (int r = 0; r < m; ++r)
        if (is_art[static_cast<size_t>(t.basis[static_cast<size_t>(r)])] &&
            t.rhs[static_cast<size_t>(r)] != 0)
            return std::nullopt;

    std::vector<Rational> x(static_cast<size_t>(num_vars));
    for (int r = 0; r < m; ++r) {
        int b = t.basis[static_cast<size_t>(r)];
        if (b < num_vars)
            x[static_cast<size_t>(b)] += t.rhs[static_cast<size_t>(r)];
        else if (b < 2 * num_vars)
            x[static_cast<size_t>(b - num_vars)] -= t.rhs[static_cast<size_t>(r)];
    }
    return x;
}

} // namespace polyval
