/*
 * Copyright 2026 The treewit Authors
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

#include "treewit/mcp.hpp"
#include "treewit/model.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treewit {

// Text formats. '#' starts a comment; blank lines are ignored everywhere.
//
// Model:        dtmc|mdp, "states N", transition lines "src dst prob" (DTMC)
//               or "src act dst prob" (MDP; "src act" declares an empty
//               action), then "init:" lines "state prob", "goal:" lines of
//               states and an optional "names:" section of "state name".
// Partition:    one block per line, "id: s1 s2 ...".
// Graph:        "graph", "vertices N", edge lines "a b".
// MCP instance: "mcp", "dimension d", "length n", "threshold t", "iota ...",
//               "final ...", then for every layer i and side 0/1 a line
//               "matrix i side" followed by d rows.

ProbabilisticModel parse_model(std::string_view text);
std::string serialize_model(const ProbabilisticModel& m);

std::vector<StateSet> parse_partition(std::string_view text);
std::string serialize_partition(const std::vector<StateSet>& blocks);

UnderlyingGraph parse_graph(std::string_view text);
std::string serialize_graph(const UnderlyingGraph& g);

McpInstance parse_mcp(std::string_view text);
std::string serialize_mcp(const McpInstance& inst);

/// First meaningful token of a file: "dtmc", "mdp", "graph", "mcp" or "".
std::string detect_format(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

std::string format_states(const StateSet& states);

/// Ordered "key: value" document. Entries keep insertion order; the
/// optional timing section is rendered last and only on request.
class ResultDocument {
public:
    void set(const std::string& key, std::string value);
    void set(const std::string& key, const Rational& value) { set(key, to_string(value)); }
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set_timing(const std::string& key, double seconds);

    /// Empty when absent.
    std::string get(const std::string& key) const;
    bool has(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string render(bool with_timing) const;
    /// Inverse of render for the non-timing part.
    static ResultDocument parse(std::string_view text);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::vector<std::pair<std::string, std::string>> timing_;
};

} // namespace treewit
