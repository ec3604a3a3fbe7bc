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

#include "polyval/json_io.hpp"

#include <json.hpp>

#include <unordered_map>

namespace polyval {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw parse_error(where + ": " + what);
}

long long require_int(const json& j, const std::string& where) {
    // nlohmann degrades out-of-range integers to double; reject the loss.
    if (j.is_number_integer())
        return j.get<long long>();
    if (j.is_number_unsigned()) {
        auto u = j.get<unsigned long long>();
        if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
            fail(where, "integer out of range");
        return static_cast<long long>(u);
    }
    fail(where, "non-integer rational component");
}

Rational parse_rational(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        fail(where, "expected [num,den]");
    long long num = require_int(j[0], where);
    long long den = require_int(j[1], where);
    if (den <= 0)
        fail(where, "denominator must be positive");
    return make_rational(num, den);
}

Owner parse_owner(const json& j, const std::string& where) {
    if (!j.is_string())
        fail(where, "expected \"max\" or \"min\"");
    auto s = j.get<std::string>();
    if (s == "max")
        return Owner::Max;
    if (s == "min")
        return Owner::Min;
    fail(where, "unknown owner \"" + s + "\"");
}

template <typename W>
Game<W> build_game(const json& root, GameKind kind,
                   W (*parse_weight)(const json&, const std::string&)) {
    Game<W> g;
    g.kind = kind;
    if (kind == GameKind::Discounted) {
        if (!root.contains("lambda"))
            fail("lambda", "missing for discounted game");
        g.lambda = parse_rational(root["lambda"], "lambda");
    }
    if (kind == GameKind::MeanPayoffDecision) {
        if (!root.contains("threshold"))
            fail("threshold", "missing for mpd game");
        g.threshold = parse_rational(root["threshold"], "threshold");
    }

    if (!root.contains("nodes") || !root["nodes"].is_array())
        fail("nodes", "missing or not an array");
    std::unordered_map<std::string, int> index;
    int i = 0;
    for (const auto& jn : root["nodes"]) {
        std::string where = "nodes[" + std::to_string(i) + "]";
        if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_string())
            fail(where, "expected {\"id\":str,\"owner\":...}");
        NodeSpec n;
        n.id = jn["id"].get<std::string>();
        if (!jn.contains("owner"))
            fail(where + ".owner", "missing");
        n.owner = parse_owner(jn["owner"], where + ".owner");
        if (!index.emplace(n.id, i).second)
            fail(where + ".id", "duplicate id \"" + n.id + "\"");
        g.nodes.push_back(std::move(n));
        ++i;
    }

    if (!root.contains("edges") || !root["edges"].is_array())
        fail("edges", "missing or not an array");
    int e = 0;
    for (const auto& je : root["edges"]) {
        std::string where = "edges[" + std::to_string(e) + "]";
        if (!je.is_object())
            fail(where, "expected an object");
        EdgeSpec<W> ed;
        for (const char* key : {"from", "to"}) {
            if (!je.contains(key) || !je[key].is_string())
                fail(where + "." + key, "expected a node id");
            auto it = index.find(je[key].get<std::string>());
            if (it == index.end())
                fail(where + "." + key, "unknown node \"" + je[key].get<std::string>() + "\"");
            (std::string_view(key) == "from" ? ed.from : ed.to) = it->second;
        }
        if (!je.contains("weight"))
            fail(where + ".weight", "missing");
        ed.weight = parse_weight(je["weight"], where + ".weight");
        g.edges.push_back(std::move(ed));
        ++e;
    }
    return g;
}

Rational parse_rat_weight(const json& j, const std::string& where) {
    if (j.is_object())
        fail(where, "mixed weight domains: expected [num,den]");
    return parse_rational(j, where);
}

LexWeight parse_lex_weight(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("base") || !j.contains("rho"))
        fail(where, "mixed weight domains: expected {\"base\":...,\"rho\":...}");
    return {parse_rational(j["base"], where + ".base"),
            parse_rational(j["rho"], where + ".rho")};
}

const char* kind_tag(GameKind k) {
    switch (k) {
    case GameKind::Discounted: return "discounted";
    case GameKind::Energy: return "energy";
    case GameKind::MeanPayoffDecision: return "mpd";
    }
    return "?";
}

std::string weight_json(const Rational& q) { return rational_json(q); }

std::string weight_json(const LexWeight& w) {
    return "{\"base\":" + rational_json(w.base) + ",\"rho\":" + rational_json(w.rho) + "}";
}

template <typename W>
std::string serialize_impl(const Game<W>& g) {
    std::string s = "{\"kind\":\"";
    s += kind_tag(g.kind);
    s += "\"";
    if (g.kind == GameKind::Discounted)
        s += ",\"lambda\":" + rational_json(g.lambda);
    if (g.kind == GameKind::MeanPayoffDecision)
        s += ",\"threshold\":" + rational_json(g.threshold);
    s += ",\"nodes\":[";
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        if (i)
            s += ",";
        s += "{\"id\":\"" + json_escape(g.nodes[i].id) + "\",\"owner\":\"";
        s += g.nodes[i].owner == Owner::Max ? "max" : "min";
        s += "\"}";
    }
    s += "],\"edges\":[";
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (i)
            s += ",";
        const auto& e = g.edges[i];
        s += "{\"from\":\"" + json_escape(g.nodes[static_cast<size_t>(e.from)].id) +
             "\",\"to\":\"" + json_escape(g.nodes[static_cast<size_t>(e.to)].id) +
             "\",\"weight\":" + weight_json(e.weight) + "}";
    }
    s += "]}";
    return s;
}

} // namespace

ParsedGame parse_game(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        fail("root", "expected an object");
    if (!root.contains("kind") || !root["kind"].is_string())
        fail("kind", "missing or not a string");
    auto ks = root["kind"].get<std::string>();
    GameKind kind;
    if (ks == "discounted")
        kind = GameKind::Discounted;
    else if (ks == "energy")
        kind = GameKind::Energy;
    else if (ks == "mpd")
        kind = GameKind::MeanPayoffDecision;
    else
        fail("kind", "unknown kind \"" + ks + "\"");

    // The first edge's weight encoding picks the domain.
    bool lex = false;
    if (root.contains("edges") && root["edges"].is_array() && !root["edges"].empty()) {
        const auto& w0 = root["edges"][0];
        lex = w0.is_object() && w0.contains("weight") && w0["weight"].is_object();
    }
    if (lex)
        return build_game<LexWeight>(root, kind, &parse_lex_weight);
    return build_game<Rational>(root, kind, &parse_rat_weight);
}

std::string serialize_game(const RationalGame& g) { return serialize_impl(g); }
std::string serialize_game(const LexGame& g) { return serialize_impl(g); }

std::string rational_json(const Rational& q) {
    return "[" + q.get_num().get_str() + "," + q.get_den().get_str() + "]";
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

} // namespace polyval
