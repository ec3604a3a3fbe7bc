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

#include <stdexcept>
#include <string>
#include <utility>

namespace polyval {

/** Malformed or schema-violating input. Maps to exit code 2 in the CLI. */
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** A configured enumeration/strategy cap was exceeded. Input-scale problem, exit 2. */
class cap_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A solver invariant failed at runtime. This is always a bug, never bad
 * input: the CLI reports it as exit code 3 and dumps a trace. An optional
 * trace payload (JSON) travels with the exception for the dump.
 */
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg, std::string trace = {})
        : std::runtime_error(msg), trace_(std::move(trace)) {}

    const std::string& trace() const { return trace_; }

private:
    std::string trace_;
};

#define POLYVAL_CHECK(cond, msg)                                  \
    do {                                                          \
        if (!(cond))                                              \
            throw ::polyval::internal_error(std::string(msg));    \
    } while (0)

} // namespace polyval
