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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Runs the installed binary with a shell line; stdin comes from a file.
RunResult run_cli(const std::string& args, const std::string& stdin_data = "",
                  const std::string& env = "") {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "polyval_cli_test";
    fs::create_directories(dir);
    fs::path in = dir / ("in" + std::to_string(counter) + ".json");
    fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    {
        std::ofstream f(in, std::ios::binary);
        f << stdin_data;
    }
    std::string cmd = env + " " + POLYVAL_BIN + " " + args + " < " + in.string() + " > " +
                      out.string() + " 2> " + err.string();
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out);
    res.err = slurp(err);
    return res;
}

const char* kDiscLoop =
    R"({"kind":"discounted","lambda":[1,2],"nodes":[{"id":"a","owner":"max"}],)"
    R"("edges":[{"from":"a","to":"a","weight":[1,1]}]})";

const char* kEnergyCycle =
    R"({"kind":"energy","nodes":[{"id":"a","owner":"max"},{"id":"b","owner":"min"}],)"
    R"("edges":[{"from":"a","to":"b","weight":[1,1]},{"from":"b","to":"a","weight":[-1,1]}]})";

const char* kSink =
    R"({"kind":"energy","nodes":[{"id":"lonely","owner":"max"}],"edges":[]})";

} // namespace

TEST_CASE("solve emits exact values with exit 0") {
    auto r = run_cli("solve --in -", kDiscLoop);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "{\"values\":{\"a\":[2,1]}}\n");
}

TEST_CASE("input errors exit 2 and name the problem") {
    auto r = run_cli("solve --in -", kSink);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("lonely") != std::string::npos);

    auto r2 = run_cli("solve --in -", "{broken");
    CHECK(r2.exit_code == 2);

    auto r3 = run_cli("solve --in /nonexistent/path.json");
    CHECK(r3.exit_code == 2);
}

TEST_CASE("energy games report winner sets") {
    auto r = run_cli("solve --in -", kEnergyCycle);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"w_max\":[\"a\",\"b\"]") != std::string::npos);
    CHECK(r.out.find("\"w_min\":[]") != std::string::npos);
}

TEST_CASE("decide-mp honors the threshold flag") {
    const char* loop3 =
        R"({"kind":"energy","nodes":[{"id":"a","owner":"max"}],)"
        R"("edges":[{"from":"a","to":"a","weight":[3,1]}]})";
    auto lo = run_cli("decide-mp --in - --threshold 2", loop3);
    CHECK(lo.out.find("\"w_max\":[\"a\"]") != std::string::npos);
    auto edge = run_cli("decide-mp --in - --threshold 3", loop3);
    CHECK(edge.out.find("\"w_max\":[\"a\"]") != std::string::npos);
    auto hi = run_cli("decide-mp --in - --threshold 4", loop3);
    CHECK(hi.out.find("\"w_min\":[\"a\"]") != std::string::npos);
    auto missing = run_cli("decide-mp --in -", loop3);
    CHECK(missing.exit_code == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    auto a = run_cli("solve --in -", kEnergyCycle);
    auto b = run_cli("solve --in -", kEnergyCycle);
    CHECK(a.out == b.out);

    auto g1 = run_cli("gen --kind disc --n 5 --count 3 --seed 11");
    auto g2 = run_cli("gen --kind disc --n 5 --count 3 --seed 11");
    CHECK(g1.out == g2.out);
    CHECK(!g1.out.empty());
    CHECK(g1.err.find("mt19937_64") != std::string::npos);

    auto b1 = run_cli("bench --kind energy --n 4 --count 6 --seed 2");
    auto b2 = run_cli("bench --kind energy --n 4 --count 6 --seed 2");
    CHECK(b1.out == b2.out);
}

TEST_CASE("verify sweeps match and parallel jobs keep output order") {
    auto r = run_cli("verify --kind disc --n 4 --count 20 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"mismatches\":0") != std::string::npos);

    auto seq = run_cli("verify --kind energy --n 5 --count 20 --seed 6 --jobs 1");
    auto par = run_cli("verify --kind energy --n 5 --count 20 --seed 6 --jobs 2");
    CHECK(seq.exit_code == 0);
    CHECK(seq.out == par.out);

    // monitor off cannot change verdicts
    auto off = run_cli("verify --kind energy --n 5 --count 20 --seed 6 --monitor off");
    CHECK(off.exit_code == 0);
    CHECK(off.out.find("\"mismatches\":0") != std::string::npos);
}

TEST_CASE("exhaustive verify sweeps every game of the bounded space") {
    auto disc = run_cli("verify --kind disc --n 2 --exhaustive --weights -1,1 --lambda 1/2");
    CHECK(disc.exit_code == 0);
    CHECK(disc.out.find("\"mismatches\":0") != std::string::npos);

    auto energy = run_cli("verify --kind energy --n 2 --exhaustive --weights -1,0,1");
    CHECK(energy.exit_code == 0);
    CHECK(energy.out.find("\"mismatches\":0") != std::string::npos);
}

TEST_CASE("verify over a generated directory") {
    fs::path dir = fs::temp_directory_path() / "polyval_gen_dir";
    fs::remove_all(dir);
    auto g = run_cli("gen --kind energy --n 3 --count 4 --seed 21 --out " +
                     (dir / "").string());
    CHECK(g.exit_code == 0);
    auto r = run_cli("verify --dir " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"count\":4") != std::string::npos);
}

TEST_CASE("a corrupted comparison is caught with a trace dump") {
    fs::path dir = fs::temp_directory_path() / "polyval_traces";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // the fixture flips the min/max choice of the step length; the very
    // first move leaves the polyhedron and the invariant machinery fires
    const char* game =
        R"({"kind":"discounted","lambda":[1,2],)"
        R"("nodes":[{"id":"a","owner":"max"},{"id":"b","owner":"min"}],)"
        R"("edges":[{"from":"a","to":"b","weight":[0,1]},{"from":"b","to":"a","weight":[0,1]},)"
        R"({"from":"b","to":"b","weight":[1,1]}]})";
    auto clean = run_cli("solve --in -", game);
    CHECK(clean.exit_code == 0);

    auto broken = run_cli("solve --in -", game,
                          "POLYVAL_CORRUPT=epsmax POLYVAL_TRACE_DIR=" + dir.string());
    CHECK(broken.exit_code == 3);
    CHECK(broken.err.find("trace dumped to") != std::string::npos);
    bool have_dump = false;
    for (const auto& e : fs::directory_iterator(dir))
        have_dump = have_dump || e.path().filename().string().rfind("trace_", 0) == 0;
    CHECK(have_dump);

    auto vbroken = run_cli("verify --kind disc --n 3 --count 5 --seed 5", "",
                           "POLYVAL_CORRUPT=epsmax");
    CHECK(vbroken.exit_code != 0);
}

TEST_CASE("stats embeds monitor reports") {
    auto r = run_cli("stats --kind disc --n 4 --count 5 --seed 8");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"monitor\":{") != std::string::npos);
    CHECK(r.out.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("solve handles mpd inputs with the embedded threshold") {
    const char* mpd =
        R"({"kind":"mpd","threshold":[2,1],"nodes":[{"id":"a","owner":"max"}],)"
        R"("edges":[{"from":"a","to":"a","weight":[3,1]}]})";
    auto r = run_cli("solve --in -", mpd);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"w_max\":[\"a\"]") != std::string::npos);
}

TEST_CASE("zero-instance bench emits just the header") {
    auto r = run_cli("bench --kind energy --n 3 --count 0 --seed 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "kind,n,seed,iterations,bound,ratio\n");
}
