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

#include <string>
#include <string_view>
#include <variant>

#include "polyval/game.hpp"

namespace polyval {

/**
 * A parsed game: the weight domain (exact rational or lexicographic pair)
 * is chosen by the weight encoding found in the input.
 */
using ParsedGame = std::variant<RationalGame, LexGame>;

/**
 * Parses the JSON game format:
 *
 *   {"kind":"discounted"|"energy"|"mpd",
 *    "lambda":[num,den]?, "threshold":[num,den]?,
 *    "nodes":[{"id":str,"owner":"max"|"min"}],
 *    "edges":[{"from":str,"to":str,"weight":[num,den]}]}
 *
 * A LexWeight weight is the object {"base":[num,den],"rho":[num,den]}; a
 * single game must not mix the two encodings. Every error names the field
 * it occurred at. Integer components must fit in 64 bits.
 */
ParsedGame parse_game(std::string_view text);

/**
 * Canonical byte-exact serialization: keys in schema order, nodes and
 * edges in input order, no whitespace. parse_game(serialize_game(g))
 * reproduces g structurally.
 */
std::string serialize_game(const RationalGame& g);
std::string serialize_game(const LexGame& g);

/// "[num,den]" with arbitrary-precision components (valid JSON integers).
std::string rational_json(const Rational& q);

/// Minimal JSON string escaping for node ids.
std::string json_escape(std::string_view s);

} // namespace polyval
