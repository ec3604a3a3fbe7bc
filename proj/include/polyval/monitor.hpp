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
#include <string>
#include <variant>
#include <vector>

#include "polyval/dnp.hpp"

namespace polyval {

/**
 * Plain mode admits any violating pair per step and requires one of the
 * two signature vectors to grow; strong mode requires a strongly violating
 * pair and both vectors to grow, and all graphs to be bipartite and
 * acyclic.
 */
enum class IterationMode { Plain, Strong };

/** One verified snapshot of the evolving tight-edge graph. */
struct IterationRecord {
    int step = 0;
    std::vector<std::pair<int, int>> edges; // sorted unique node pairs
    std::vector<DnpValue> delta;
    Signature sig;
    std::vector<long long> f_transformed;
    std::vector<long long> g_transformed;
    // the pair in this graph that was violating for the previous one
    std::optional<std::pair<int, int>> witness;
};

/** A failed step condition; always indicates a solver bug. */
struct MonitorViolation {
    std::string condition;
    std::string detail;
};

struct StepVerdict {
    bool f_increased = false;
    bool g_increased = false;
};

struct MonitorReport {
    int steps = 0;
    IterationMode mode = IterationMode::Plain;
    bool bipartite = false;
    mpz_class bound; // twice the signature-space size
    std::vector<StepVerdict> per_step;
    bool pass = false;

    std::string to_json() const;
};

/// Builds a record (values, signatures, transforms) for an edge set.
IterationRecord make_record(int step, std::span<const Owner> owners,
                            std::vector<std::pair<int, int>> edges);

/**
 * Verifies one step: (i) every edge optimal in `prev` survives,
 * (ii) the new edge set contains a (strongly, in strong mode) violating
 * pair for `prev`, (iii) neither signature vector decreases and at least
 * one (both, in strong mode) strictly increases in the alternating
 * lexicographic order, (iv) a transformed signature never decreases in
 * standard lexicographic order when its source vector increased.
 */
std::variant<IterationRecord, MonitorViolation>
record_step(const IterationRecord& prev, std::vector<std::pair<int, int>> next_edges,
            std::span<const Owner> owners, IterationMode mode);

/**
 * Step-count verdict for a completed run: steps must not exceed twice the
 * signature-space size (norm cap n for plain mode, the bipartite count
 * with cap floor(n/2) for strong mode).
 */
MonitorReport finalize(const std::vector<IterationRecord>& records, IterationMode mode,
                       bool bipartite, int n);

/**
 * Stateful wrapper used by the solvers: feed the tight-edge graph of every
 * iterate; a violated condition throws internal_error. Never mutates
 * solver state, and disabling it cannot change solver output.
 */
class IterationMonitor {
public:
    IterationMonitor(std::vector<Owner> owners, IterationMode mode, bool bipartite);

    void start(std::vector<std::pair<int, int>> edges);
    void advance(std::vector<std::pair<int, int>> edges);
    MonitorReport finish() const;

    const std::vector<IterationRecord>& records() const { return records_; }

private:
    std::vector<Owner> owners_;
    IterationMode mode_;
    bool bipartite_;
    std::vector<IterationRecord> records_;
};

} // namespace polyval
