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

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "polyval/disc_solver.hpp"
#include "polyval/energy_solver.hpp"
#include "polyval/game_gen.hpp"
#include "polyval/json_io.hpp"
#include "polyval/oracles.hpp"

namespace fs = std::filesystem;
using namespace polyval;

namespace {

// ---------------------------------------------------------------- plumbing

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_all(const std::string& path, const std::string& data) {
    if (path == "-") {
        std::cout << data;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw parse_error("cannot open output file: " + path);
    f << data;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return make_rational(std::stoll(s));
        return make_rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw parse_error("bad fraction: " + s);
    }
}

std::vector<Rational> parse_weight_csv(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(parse_fraction(item));
    if (out.empty())
        throw parse_error("empty weight list");
    return out;
}

/// Writes a failure dump when POLYVAL_TRACE_DIR is set; returns the path.
std::string dump_trace(const std::string& input_bytes, const std::string& message) {
    const char* dir = std::getenv("POLYVAL_TRACE_DIR");
    if (!dir)
        return {};
    fs::path p = fs::path(dir) / ("trace_" + hex64(fnv1a(input_bytes)) + ".json");
    std::ofstream f(p);
    f << "{\"error\":\"" << json_escape(message) << "\",\"input\":" << input_bytes << "}\n";
    return p.string();
}

template <typename Fn>
void parallel_for(int jobs, int count, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error)
                        first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

// ------------------------------------------------------------- rendering

std::string values_json(const RationalGame& g, const std::vector<Rational>& values) {
    std::string s = "{\"values\":{";
    for (int v = 0; v < g.node_count(); ++v) {
        if (v)
            s += ",";
        s += "\"" + json_escape(g.nodes[static_cast<size_t>(v)].id) +
             "\":" + rational_json(values[static_cast<size_t>(v)]);
    }
    s += "}}\n";
    return s;
}

const char* reason_tag(PreDecision::Reason r) {
    switch (r) {
    case PreDecision::Reason::TrivialNode: return "trivial_node";
    case PreDecision::Reason::TrivialCycle: return "trivial_cycle";
    case PreDecision::Reason::Attractor: return "attractor";
    }
    return "?";
}

std::string cert_weight_json(const Rational& q) { return rational_json(q); }
std::string cert_weight_json(const LexWeight& w) {
    return "{\"base\":" + rational_json(w.base) + ",\"rho\":" + rational_json(w.rho) + "}";
}

/**
 * Winner sets plus the audit certificate. Certificate node indices live
 * in the reduced game, so they are mapped through the surviving-node list
 * before rendering.
 */
template <typename W, typename G>
std::string partition_json(const G& g, const EnergyResultT<W>& res) {
    std::vector<char> alive(static_cast<size_t>(g.node_count()), 1);
    for (const auto& d : res.pre_decided)
        alive[static_cast<size_t>(d.node)] = 0;
    std::vector<int> kept;
    for (int v = 0; v < g.node_count(); ++v)
        if (alive[static_cast<size_t>(v)])
            kept.push_back(v);

    auto id = [&](int v) { return json_escape(g.nodes[static_cast<size_t>(v)].id); };
    std::string s = "{\"w_max\":[";
    for (size_t i = 0; i < res.partition.w_max.size(); ++i)
        s += (i ? ",\"" : "\"") + id(res.partition.w_max[i]) + "\"";
    s += "],\"w_min\":[";
    for (size_t i = 0; i < res.partition.w_min.size(); ++i)
        s += (i ? ",\"" : "\"") + id(res.partition.w_min[i]) + "\"";
    s += "],\"certificate\":{\"pre_decided\":[";
    for (size_t i = 0; i < res.pre_decided.size(); ++i) {
        const auto& d = res.pre_decided[i];
        if (i)
            s += ",";
        s += "{\"node\":\"" + id(d.node) + "\",\"winner\":\"";
        s += d.winner == Owner::Max ? "max" : "min";
        s += "\",\"reason\":\"";
        s += reason_tag(d.reason);
        s += "\",\"evidence\":[";
        for (size_t j = 0; j < d.evidence.size(); ++j)
            s += (j ? ",\"" : "\"") + id(d.evidence[j]) + "\"";
        s += "]}";
    }
    s += "],\"reduced_edges\":[";
    for (size_t i = 0; i < res.reduction_cert.size(); ++i) {
        const auto& c = res.reduction_cert[i];
        if (i)
            s += ",";
        auto orig = [&](int v) { return id(kept[static_cast<size_t>(v)]); };
        s += "{\"from\":\"" + orig(c.from) + "\",\"to\":\"" + orig(c.to) +
             "\",\"weight\":" + cert_weight_json(c.weight) + ",\"path\":[";
        for (size_t j = 0; j < c.path.size(); ++j)
            s += (j ? ",\"" : "\"") + orig(c.path[j]) + "\"";
        s += "]}";
    }
    s += "]}}\n";
    return s;
}

// --------------------------------------------------------------- configs

struct CommonOpts {
    std::string in = "-";
    std::string out = "-";
    std::string monitor = "on";
    std::string realize = "auto";
    std::string fast_int = "off";
    int jobs = 1;

    DiscOptions disc() const {
        DiscOptions o;
        o.monitor = monitor == "on";
        if (realize == "pass")
            o.realize = RealizeStrategy::PassThrough;
        else if (realize == "vertex")
            o.realize = RealizeStrategy::ExactVertex;
        return o;
    }
    EnergyOptions energy() const {
        EnergyOptions o;
        o.monitor = monitor == "on";
        o.integer_fast_path = fast_int == "on";
        return o;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_in = true) {
    if (with_in)
        cmd->add_option("--in", c.in, "input game file or - for stdin");
    cmd->add_option("--out", c.out, "output file or - for stdout");
    cmd->add_option("--monitor", c.monitor, "on|off")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--realize", c.realize, "pass|vertex")
        ->check(CLI::IsMember({"pass", "vertex", "auto"}));
    cmd->add_option("--fast-int", c.fast_int, "on|off")->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--jobs", c.jobs, "parallel instances");
}

GameKind parse_kind(const std::string& k) {
    if (k == "disc")
        return GameKind::Discounted;
    if (k == "energy")
        return GameKind::Energy;
    if (k == "mpd")
        return GameKind::MeanPayoffDecision;
    throw parse_error("unknown kind: " + k);
}

struct BatchOpts {
    std::string kind = "energy";
    int n = 4;
    int count = 100;
    std::uint64_t seed = 0;
    std::string weights = "-2,-1,0,1,2";
    std::string lambda = "1/2";
    std::string threshold = "0";
    int deg_max = 2;
    bool bipartite = false;
    bool exhaustive = false;
    std::string dir;
};

void add_batch(CLI::App* cmd, BatchOpts& b, bool with_dir) {
    cmd->add_option("--kind", b.kind, "disc|energy|mpd")
        ->check(CLI::IsMember({"disc", "energy", "mpd"}));
    cmd->add_option("--n", b.n, "max node count");
    cmd->add_option("--count", b.count, "instance count");
    cmd->add_option("--seed", b.seed, "base seed");
    cmd->add_option("--weights", b.weights, "comma list of weights");
    cmd->add_option("--lambda", b.lambda, "discount num/den");
    cmd->add_option("--threshold", b.threshold, "mpd threshold num/den");
    cmd->add_option("--deg-max", b.deg_max, "max out-degree");
    cmd->add_flag("--bipartite", b.bipartite, "force bipartite instances");
    if (with_dir) {
        cmd->add_flag("--exhaustive", b.exhaustive,
                      "enumerate all games of sizes 1..n instead of sampling");
        cmd->add_option("--dir", b.dir, "verify every *.json game in a directory");
    }
}

RationalGame batch_instance(const BatchOpts& b, int index) {
    GenConfig cfg;
    cfg.kind = parse_kind(b.kind);
    cfg.n = 1 + index % std::max(1, b.n);
    if (b.bipartite)
        cfg.n = std::max(cfg.n, 2);
    cfg.out_degree_max = b.deg_max;
    cfg.weight_set = parse_weight_csv(b.weights);
    cfg.lambda = parse_fraction(b.lambda);
    cfg.threshold = parse_fraction(b.threshold);
    cfg.bipartite = b.bipartite;
    cfg.seed = b.seed + static_cast<std::uint64_t>(index);
    return random_game(cfg);
}

// ------------------------------------------------------------- run record

struct RunRecord {
    int index = 0;
    std::string kind;
    int n = 0;
    std::uint64_t seed = 0;
    std::string input_digest;
    std::string output_digest;
    bool match = true;
    int iterations = 0;
    std::string bound = "0";
    double ratio = 0.0;
    double wall_ms = 0.0;
    std::string monitor_json = "null";
    std::string dump_path;
};

/// Solves one instance against its oracle and fills the record.
RunRecord run_instance(const RationalGame& g, const CommonOpts& opts, int index,
                       std::uint64_t seed) {
    RunRecord rec;
    rec.index = index;
    rec.seed = seed;
    rec.n = g.node_count();
    std::string bytes = serialize_game(g);
    rec.input_digest = hex64(fnv1a(bytes));

    auto started = std::chrono::steady_clock::now();
    std::optional<MonitorReport> monitor;
    std::string out_bytes;
    switch (g.kind) {
    case GameKind::Discounted: {
        rec.kind = "disc";
        auto got = solve_discounted(g, opts.disc());
        rec.iterations = got.iterations;
        monitor = got.monitor;
        rec.match = got.values == brute_disc(g);
        out_bytes = values_json(g, got.values);
        break;
    }
    case GameKind::Energy: {
        rec.kind = "energy";
        auto got = solve_energy(g, opts.energy());
        rec.iterations = got.iterations;
        monitor = got.monitor;
        auto expect = brute_energy(g);
        rec.match = got.partition.w_max == expect.w_max &&
                    got.partition.w_min == expect.w_min;
        out_bytes = partition_json(g, got);
        break;
    }
    case GameKind::MeanPayoffDecision: {
        rec.kind = "mpd";
        auto got = decide_mean_payoff(g, opts.energy());
        rec.iterations = got.iterations;
        monitor = got.monitor;
        RationalGame shifted;
        shifted.kind = GameKind::Energy;
        shifted.nodes = g.nodes;
        for (const auto& e : g.edges)
            shifted.edges.push_back({e.from, e.to, e.weight - g.threshold});
        auto expect = brute_energy(shifted);
        rec.match = got.partition.w_max == expect.w_max &&
                    got.partition.w_min == expect.w_min;
        out_bytes = partition_json(g, got);
        break;
    }
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    rec.output_digest = hex64(fnv1a(out_bytes));
    if (monitor) {
        rec.bound = monitor->bound.get_str();
        rec.monitor_json = monitor->to_json();
        if (monitor->bound > 0)
            rec.ratio = static_cast<double>(rec.iterations) / monitor->bound.get_d();
        rec.match = rec.match && monitor->pass;
    }
    if (!rec.match)
        rec.dump_path =
            dump_trace(bytes, "verify mismatch at instance " + std::to_string(index));
    return rec;
}

// ------------------------------------------------------------- commands

int cmd_solve(const std::string& bytes, const CommonOpts& opts) {
    ParsedGame parsed = parse_game(bytes);
    return std::visit(
        [&](const auto& g) -> int {
            using G = std::decay_t<decltype(g)>;
            if (auto v = validate(g); !v.empty()) {
                std::cerr << "invalid game: " << v.front().what << " (" << v.front().where
                          << ")\n";
                return 2;
            }
            if constexpr (std::is_same_v<G, RationalGame>) {
                switch (g.kind) {
                case GameKind::Discounted:
                    write_all(opts.out, values_json(g, solve_discounted(g, opts.disc()).values));
                    return 0;
                case GameKind::Energy:
                    write_all(opts.out, partition_json(g, solve_energy(g, opts.energy())));
                    return 0;
                case GameKind::MeanPayoffDecision:
                    write_all(opts.out,
                              partition_json(g, decide_mean_payoff(g, opts.energy())));
                    return 0;
                }
                return 2;
            } else {
                if (g.kind != GameKind::Energy) {
                    std::cerr << "lexicographic weights are supported for energy games only\n";
                    return 2;
                }
                write_all(opts.out, partition_json(g, solve_energy(g, opts.energy())));
                return 0;
            }
        },
        parsed);
}

int cmd_decide_mp(const std::string& bytes, const CommonOpts& opts,
                  const std::string& threshold_arg) {
    ParsedGame parsed = parse_game(bytes);
    auto* g = std::get_if<RationalGame>(&parsed);
    if (!g) {
        std::cerr << "decide-mp needs rational weights\n";
        return 2;
    }
    RationalGame mpd = *g;
    if (!threshold_arg.empty()) {
        mpd.threshold = parse_fraction(threshold_arg);
    } else if (mpd.kind != GameKind::MeanPayoffDecision) {
        std::cerr << "decide-mp needs --threshold or an mpd input\n";
        return 2;
    }
    mpd.kind = GameKind::MeanPayoffDecision;
    if (auto v = validate(mpd); !v.empty()) {
        std::cerr << "invalid game: " << v.front().what << " (" << v.front().where << ")\n";
        return 2;
    }
    write_all(opts.out, partition_json(mpd, decide_mean_payoff(mpd, opts.energy())));
    return 0;
}

int cmd_gen(const CommonOpts& opts, const BatchOpts& batch) {
    std::cerr << "generator: " << generator_version() << "\n";
    bool dir_mode = opts.out != "-" &&
                    (fs::is_directory(opts.out) || opts.out.back() == '/');
    if (dir_mode) {
        fs::create_directories(opts.out);
        std::string manifest = "{\"generator\":\"" + std::string(generator_version()) +
                               "\",\"count\":" + std::to_string(batch.count) +
                               ",\"seed\":" + std::to_string(batch.seed) + "}\n";
        write_all((fs::path(opts.out) / "manifest.json").string(), manifest);
    }
    std::string stream;
    for (int i = 0; i < batch.count; ++i) {
        GenConfig cfg;
        cfg.kind = parse_kind(batch.kind);
        cfg.n = std::max(1, batch.n);
        cfg.out_degree_max = batch.deg_max;
        cfg.weight_set = parse_weight_csv(batch.weights);
        cfg.lambda = parse_fraction(batch.lambda);
        cfg.threshold = parse_fraction(batch.threshold);
        cfg.bipartite = batch.bipartite;
        cfg.seed = batch.seed + static_cast<std::uint64_t>(i);
        std::string bytes = serialize_game(random_game(cfg)) + "\n";
        if (dir_mode) {
            char name[32];
            std::snprintf(name, sizeof name, "game_%06d.json", i);
            write_all((fs::path(opts.out) / name).string(), bytes);
        } else {
            stream += bytes;
        }
    }
    if (!dir_mode)
        write_all(opts.out, stream);
    return 0;
}

int cmd_verify(const CommonOpts& opts, const BatchOpts& batch) {
    std::vector<RationalGame> games;
    if (!batch.dir.empty()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(batch.dir))
            if (entry.path().extension() == ".json" &&
                entry.path().filename() != "manifest.json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            auto parsed = parse_game(read_all(f.string()));
            if (auto* rg = std::get_if<RationalGame>(&parsed))
                games.push_back(*rg);
        }
    } else if (batch.exhaustive) {
        for (int n = 1; n <= batch.n; ++n) {
            EnumConfig ec;
            ec.kind = parse_kind(batch.kind);
            ec.n = n;
            ec.out_degree_max = batch.deg_max;
            ec.weight_set = parse_weight_csv(batch.weights);
            ec.lambda = parse_fraction(batch.lambda);
            ec.threshold = parse_fraction(batch.threshold);
            GameEnumerator en(ec);
            for (std::uint64_t i = 0; i < en.size(); ++i)
                games.push_back(en.game_at(i));
        }
    } else {
        for (int i = 0; i < batch.count; ++i)
            games.push_back(batch_instance(batch, i));
    }

    std::vector<RunRecord> records(games.size());
    parallel_for(opts.jobs, static_cast<int>(games.size()), [&](int i) {
        records[static_cast<size_t>(i)] =
            run_instance(games[static_cast<size_t>(i)], opts, i,
                         batch.seed + static_cast<std::uint64_t>(i));
    });

    int mismatches = 0;
    std::string s = "{\"instances\":[";
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (i)
            s += ",";
        char ratio[32];
        std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
        s += "{\"index\":" + std::to_string(r.index) + ",\"kind\":\"" + r.kind +
             "\",\"n\":" + std::to_string(r.n) + ",\"digest\":\"" + r.input_digest +
             "\",\"match\":" + (r.match ? "true" : "false") +
             ",\"iterations\":" + std::to_string(r.iterations) + ",\"bound\":" + r.bound +
             ",\"ratio\":" + ratio + "}";
        mismatches += r.match ? 0 : 1;
        if (!r.match && !r.dump_path.empty())
            std::cerr << "mismatch dumped to " << r.dump_path << "\n";
    }
    s += "],\"summary\":{\"count\":" + std::to_string(records.size()) +
         ",\"mismatches\":" + std::to_string(mismatches) + "}}\n";
    write_all(opts.out, s);
    return mismatches == 0 ? 0 : 1;
}

int cmd_bench(const CommonOpts& opts, const BatchOpts& batch, bool stats_mode, bool timings) {
    std::vector<RationalGame> games;
    for (int i = 0; i < batch.count; ++i)
        games.push_back(batch_instance(batch, i));

    std::vector<RunRecord> records(games.size());
    parallel_for(opts.jobs, static_cast<int>(games.size()), [&](int i) {
        records[static_cast<size_t>(i)] =
            run_instance(games[static_cast<size_t>(i)], opts, i,
                         batch.seed + static_cast<std::uint64_t>(i));
    });

    std::string s;
    if (stats_mode) {
        s = "{\"instances\":[";
        for (size_t i = 0; i < records.size(); ++i) {
            const auto& r = records[i];
            if (i)
                s += ",";
            char ratio[32];
            std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
            s += "{\"index\":" + std::to_string(r.index) + ",\"n\":" + std::to_string(r.n) +
                 ",\"seed\":" + std::to_string(r.seed) +
                 ",\"iterations\":" + std::to_string(r.iterations) + ",\"bound\":" + r.bound +
                 ",\"ratio\":" + ratio + ",\"monitor\":" + r.monitor_json + "}";
        }
        s += "]}\n";
    } else {
        s = timings ? "kind,n,seed,iterations,bound,ratio,wall_ms\n"
                    : "kind,n,seed,iterations,bound,ratio\n";
        for (const auto& r : records) {
            char ratio[32];
            std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
            s += r.kind + "," + std::to_string(r.n) + "," + std::to_string(r.seed) + "," +
                 std::to_string(r.iterations) + "," + r.bound + "," + ratio;
            if (timings) {
                char wall[32];
                std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
                s += std::string(",") + wall;
            }
            s += "\n";
        }
    }
    write_all(opts.out, s);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact polyhedral value iteration for discounted, energy, and "
                 "mean-payoff games"};
    app.require_subcommand(1);

    CommonOpts solve_opts;
    auto* solve = app.add_subcommand("solve", "solve one game from JSON");
    add_common(solve, solve_opts);

    CommonOpts mp_opts;
    std::string threshold_arg;
    auto* decide = app.add_subcommand("decide-mp", "mean-payoff threshold decision");
    add_common(decide, mp_opts);
    decide->add_option("--threshold", threshold_arg, "threshold num/den");

    CommonOpts gen_opts;
    BatchOpts gen_batch;
    auto* gen = app.add_subcommand("gen", "generate seeded games");
    add_common(gen, gen_opts, false);
    add_batch(gen, gen_batch, false);

    CommonOpts verify_opts;
    BatchOpts verify_batch;
    auto* verify = app.add_subcommand("verify", "solver vs oracle sweep");
    add_common(verify, verify_opts, false);
    add_batch(verify, verify_batch, true);

    CommonOpts bench_opts;
    BatchOpts bench_batch;
    std::string timings = "off";
    auto* bench = app.add_subcommand("bench", "iteration counts and bound ratios as CSV");
    add_common(bench, bench_opts, false);
    add_batch(bench, bench_batch, false);
    bench->add_option("--timings", timings, "include wall-clock column (breaks determinism)")
        ->check(CLI::IsMember({"on", "off"}));

    CommonOpts stats_opts;
    BatchOpts stats_batch;
    auto* stats = app.add_subcommand("stats", "per-instance monitor reports as JSON");
    add_common(stats, stats_opts, false);
    add_batch(stats, stats_batch, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string context = "{}";
    try {
        if (solve->parsed()) {
            context = read_all(solve_opts.in);
            return cmd_solve(context, solve_opts);
        }
        if (decide->parsed()) {
            context = read_all(mp_opts.in);
            return cmd_decide_mp(context, mp_opts, threshold_arg);
        }
        if (gen->parsed())
            return cmd_gen(gen_opts, gen_batch);
        if (verify->parsed())
            return cmd_verify(verify_opts, verify_batch);
        if (bench->parsed())
            return cmd_bench(bench_opts, bench_batch, false, timings == "on");
        if (stats->parsed())
            return cmd_bench(stats_opts, stats_batch, true, false);
        return 2;
    } catch (const internal_error& e) {
        std::string path = dump_trace(context, e.what());
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        if (!path.empty())
            std::cerr << "trace dumped to " << path << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cap_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
