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

#include <doctest.h>

#include "polyval/errors.hpp"
#include "polyval/monitor.hpp"

using namespace polyval;

namespace {
const std::vector<Owner> kTwo{Owner::Max, Owner::Min};
}

TEST_CASE("a legal step is accepted and both signatures can increase") {
    IterationRecord start = make_record(0, kTwo, {});
    CHECK(start.delta[0] == DnpValue{-1, 0});
    CHECK(start.delta[1] == DnpValue{+1, 0});
    CHECK(start.sig.f == std::vector<int>{1, 0, 0});
    CHECK(start.sig.g == std::vector<int>{1, 0, 0});

    auto res = record_step(start, {{0, 1}, {1, 0}}, kTwo, IterationMode::Plain);
    auto* rec = std::get_if<IterationRecord>(&res);
    REQUIRE(rec != nullptr);
    CHECK(rec->sig.f == std::vector<int>{0, 0, 0});
    CHECK(rec->sig.g == std::vector<int>{0, 0, 0});
    CHECK(alt_lex_compare(start.sig.f, rec->sig.f) < 0);
    CHECK(alt_lex_compare(start.sig.g, rec->sig.g) < 0);

    auto rep = finalize({start, *rec}, IterationMode::Plain, false, 2);
    CHECK(rep.steps == 1);
    CHECK(rep.bound == 10); // twice the 5-vector space
    CHECK(rep.pass);
    CHECK(rep.per_step.size() == 1);
    CHECK(rep.per_step[0].f_increased);
    CHECK(rep.per_step[0].g_increased);
}

TEST_CASE("dropping an optimal edge is rejected") {
    // Max node a tight to the Min sink b: (a,b) is optimal
    IterationRecord prev = make_record(0, kTwo, {{0, 1}});
    REQUIRE(prev.delta[0] == DnpValue{+1, 1});
    auto res = record_step(prev, {{1, 0}}, kTwo, IterationMode::Plain);
    auto* viol = std::get_if<MonitorViolation>(&res);
    REQUIRE(viol != nullptr);
    CHECK(viol->condition == "optimal edge dropped");
}

TEST_CASE("a step without a violating pair is rejected") {
    IterationRecord prev = make_record(0, kTwo, {});
    auto res = record_step(prev, {}, kTwo, IterationMode::Plain);
    auto* viol = std::get_if<MonitorViolation>(&res);
    REQUIRE(viol != nullptr);
    CHECK(viol->condition == "no violating pair");

    // repeating the identical record fails the same way
    IterationRecord mid = make_record(0, kTwo, {{0, 1}});
    auto rep = record_step(mid, {{0, 1}}, kTwo, IterationMode::Plain);
    CHECK(std::get_if<MonitorViolation>(&rep) != nullptr);
}

TEST_CASE("strong mode rejects cyclic graphs") {
    IterationRecord prev = make_record(0, kTwo, {});
    auto res = record_step(prev, {{0, 1}, {1, 0}}, kTwo, IterationMode::Strong);
    auto* viol = std::get_if<MonitorViolation>(&res);
    REQUIRE(viol != nullptr);
    CHECK(viol->condition == "cyclic graph in strong mode");
}

TEST_CASE("strong mode accepts an acyclic strongly violating step") {
    std::vector<Owner> owners{Owner::Max, Owner::Min, Owner::Max, Owner::Min};
    // b is a Min sink, a steps to it; c is a Max sink, d steps to it
    IterationRecord prev = make_record(0, owners, {{0, 1}, {3, 2}});
    CHECK(prev.delta[0] == DnpValue{+1, 1});
    CHECK(prev.delta[1] == DnpValue{+1, 0});
    CHECK(prev.delta[2] == DnpValue{-1, 0});
    CHECK(prev.delta[3] == DnpValue{-1, 1});
    // (c,b): a negative Max node pointing at a positive node
    auto res = record_step(prev, {{0, 1}, {3, 2}, {2, 1}}, owners, IterationMode::Strong);
    auto* rec = std::get_if<IterationRecord>(&res);
    REQUIRE(rec != nullptr);
    CHECK(rec->witness == std::pair<int, int>{2, 1});

    auto rep = finalize({prev, *rec}, IterationMode::Strong, true, 4);
    CHECK(rep.pass);
    CHECK(rep.bound == 2 * count_signature_space(4, true, 2));
}

TEST_CASE("strong mode insists on a strongly violating witness") {
    std::vector<Owner> owners{Owner::Max, Owner::Min, Owner::Max, Owner::Min};
    IterationRecord prev = make_record(0, owners, {{0, 1}, {3, 2}});
    // (0,3) adds nothing: a positive Max node above a negative target
    CHECK(classify_pair(0, 3, prev.delta, owners) == PairClass::Neutral);
    auto res = record_step(prev, {{0, 1}, {3, 2}, {0, 3}}, owners, IterationMode::Strong);
    auto* viol = std::get_if<MonitorViolation>(&res);
    REQUIRE(viol != nullptr);
    CHECK(viol->condition == "no strongly violating pair");
}

TEST_CASE("empty record sequence finalizes to a passing zero-step report") {
    auto rep = finalize({}, IterationMode::Plain, false, 3);
    CHECK(rep.steps == 0);
    CHECK(rep.pass);
    CHECK(rep.per_step.empty());
}

TEST_CASE("monitor report serializes to json") {
    IterationRecord start = make_record(0, kTwo, {});
    auto res = record_step(start, {{0, 1}, {1, 0}}, kTwo, IterationMode::Plain);
    auto rep = finalize({start, std::get<IterationRecord>(res)}, IterationMode::Plain,
                        false, 2);
    CHECK(rep.to_json() ==
          R"({"steps":1,"mode":"plain","bipartite":false,"bound":10,)"
          R"("per_step":[{"f_increased":true,"g_increased":true}],"pass":true})");
}

TEST_CASE("the stateful monitor throws on violations") {
    IterationMonitor mon(kTwo, IterationMode::Plain, false);
    mon.start({{0, 1}});
    CHECK_THROWS_AS(mon.advance({{1, 0}}), internal_error); // drops optimal (0,1)

    IterationMonitor ok(kTwo, IterationMode::Plain, false);
    ok.start({});
    ok.advance({{0, 1}, {1, 0}});
    auto rep = ok.finish();
    CHECK(rep.pass);
    CHECK(rep.steps == 1);
}
