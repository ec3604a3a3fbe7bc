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

#include "polyval/monitor.hpp"

#include <algorithm>

#include "polyval/errors.hpp"

namespace polyval {

namespace {

std::string pair_str(const std::pair<int, int>& p) {
    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

} // namespace

IterationRecord make_record(int step, std::span<const Owner> owners,
                            std::vector<std::pair<int, int>> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    IterationRecord rec;
    rec.step = step;
    rec.edges = std::move(edges);
    DnpGraph g{std::vector<Owner>(owners.begin(), owners.end()), rec.edges};
    rec.delta = dnp_solve(g);
    rec.sig = signature_of(rec.delta, owners);
    rec.f_transformed = transformed_signature(rec.sig.f);
    rec.g_transformed = transformed_signature(rec.sig.g);
    return rec;
}

std::variant<IterationRecord, MonitorViolation>
record_step(const IterationRecord& prev, std::vector<std::pair<int, int>> next_edges,
            std::span<const Owner> owners, IterationMode mode) {
    std::sort(next_edges.begin(), next_edges.end());
    next_edges.erase(std::unique(next_edges.begin(), next_edges.end()), next_edges.end());
    auto has_next = [&](const std::pair<int, int>& e) {
        return std::binary_search(next_edges.begin(), next_edges.end(), e);
    };

    // (i) optimal edges survive
    for (const auto& e : prev.edges) {
        if (classify_pair(e.first, e.second, prev.delta, owners) == PairClass::Optimal &&
            !has_next(e))
            return MonitorViolation{"optimal edge dropped", pair_str(e)};
    }

    // (ii) a (strongly) violating pair appears
    std::optional<std::pair<int, int>> witness;
    for (const auto& e : next_edges) {
        PairClass c = classify_pair(e.first, e.second, prev.delta, owners);
        if (c == PairClass::StronglyViolating) {
            witness = e;
            break;
        }
        if (c == PairClass::Violating && mode == IterationMode::Plain && !witness)
            witness = e;
    }
    if (!witness)
        return MonitorViolation{mode == IterationMode::Strong ? "no strongly violating pair"
                                                              : "no violating pair",
                                "step " + std::to_string(prev.step + 1)};

    if (mode == IterationMode::Strong) {
        for (const auto& [a, b] : next_edges)
            if (owners[static_cast<size_t>(a)] == owners[static_cast<size_t>(b)])
                return MonitorViolation{"non-bipartite graph in strong mode", pair_str({a, b})};
        if (!edges_acyclic(static_cast<int>(owners.size()), next_edges))
            return MonitorViolation{"cyclic graph in strong mode",
                                    "step " + std::to_string(prev.step + 1)};
    }

    IterationRecord next = make_record(prev.step + 1, owners, std::move(next_edges));
    next.witness = witness;

    // (iii) signature monotonicity
    int fc = alt_lex_compare(prev.sig.f, next.sig.f);
    int gc = alt_lex_compare(prev.sig.g, next.sig.g);
    if (fc > 0)
        return MonitorViolation{"signature decreased", "f at step " + std::to_string(next.step)};
    if (gc > 0)
        return MonitorViolation{"signature decreased", "g at step " + std::to_string(next.step)};
    if (mode == IterationMode::Plain && fc == 0 && gc == 0)
        return MonitorViolation{"no signature increase", "step " + std::to_string(next.step)};
    if (mode == IterationMode::Strong && (fc == 0 || gc == 0))
        return MonitorViolation{"signature not strictly increased",
                                std::string(fc == 0 ? "f" : "g") + " at step " +
                                    std::to_string(next.step)};

    // (iv) transformed signatures follow along in standard lex order
    if (fc < 0 && std_lex_compare(prev.f_transformed, next.f_transformed) > 0)
        return MonitorViolation{"transformed signature decreased",
                                "f at step " + std::to_string(next.step)};
    if (gc < 0 && std_lex_compare(prev.g_transformed, next.g_transformed) > 0)
        return MonitorViolation{"transformed signature decreased",
                                "g at step " + std::to_string(next.step)};

    return next;
}

MonitorReport finalize(const std::vector<IterationRecord>& records, IterationMode mode,
                       bool bipartite, int n) {
    MonitorReport rep;
    rep.mode = mode;
    rep.bipartite = bipartite;
    rep.steps = records.empty() ? 0 : static_cast<int>(records.size()) - 1;
    rep.bound = mode == IterationMode::Strong
                    ? 2 * count_signature_space(n, true, n / 2)
                    : 2 * count_signature_space(n, bipartite, n);
    bool steps_ok = true;
    for (size_t i = 1; i < records.size(); ++i) {
        StepVerdict v;
        v.f_increased = alt_lex_compare(records[i - 1].sig.f, records[i].sig.f) < 0;
        v.g_increased = alt_lex_compare(records[i - 1].sig.g, records[i].sig.g) < 0;
        bool ok = mode == IterationMode::Strong ? (v.f_increased && v.g_increased)
                                                : (v.f_increased || v.g_increased);
        steps_ok = steps_ok && ok;
        rep.per_step.push_back(v);
    }
    rep.pass = steps_ok && mpz_class(rep.steps) <= rep.bound;
    return rep;
}

std::string MonitorReport::to_json() const {
    std::string s = "{\"steps\":" + std::to_string(steps);
    s += ",\"mode\":\"";
    s += mode == IterationMode::Strong ? "strong" : "plain";
    s += "\",\"bipartite\":";
    s += bipartite ? "true" : "false";
    s += ",\"bound\":" + bound.get_str();
    s += ",\"per_step\":[";
    for (size_t i = 0; i < per_step.size(); ++i) {
        if (i)
            s += ",";
        s += "{\"f_increased\":";
        s += per_step[i].f_increased ? "true" : "false";
        s += ",\"g_increased\":";
        s += per_step[i].g_increased ? "true" : "false";
        s += "}";
    }
    s += "],\"pass\":";
    s += pass ? "true" : "false";
    s += "}";
    return s;
}

IterationMonitor::IterationMonitor(std::vector<Owner> owners, IterationMode mode, bool bipartite)
    : owners_(std::move(owners)), mode_(mode), bipartite_(bipartite) {}

void IterationMonitor::start(std::vector<std::pair<int, int>> edges) {
    POLYVAL_CHECK(records_.empty(), "monitor started twice");
    records_.push_back(make_record(0, owners_, std::move(edges)));
}

void IterationMonitor::advance(std::vector<std::pair<int, int>> edges) {
    POLYVAL_CHECK(!records_.empty(), "monitor advanced before start");
    auto res = record_step(records_.back(), std::move(edges), owners_, mode_);
    if (auto* viol = std::get_if<MonitorViolation>(&res))
        throw internal_error("iteration monitor: " + viol->condition + " [" + viol->detail + "]");
    records_.push_back(std::move(std::get<IterationRecord>(res)));
}

MonitorReport IterationMonitor::finish() const {
    MonitorReport rep =
        finalize(records_, mode_, bipartite_, static_cast<int>(owners_.size()));
    POLYVAL_CHECK(rep.pass, "iteration monitor: step bound exceeded");
    return rep;
}

} // namespace polyval
