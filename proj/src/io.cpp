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


#include "treewit/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace treewit {
namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        std::istringstream in{std::string(raw)};
        Line line{number, {}};
        for (std::string tok; in >> tok;) {
            line.tokens.push_back(tok);
        }
        if (!line.tokens.empty()) {
            out.push_back(std::move(line));
        }
        pos = end + 1;
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line.number) + ": " + msg);
}

std::size_t parse_count(const Line& line, const std::string& tok) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size()) {
        fail(line, "expected a nonnegative integer, got '" + tok + "'");
    }
    return v;
}

StateId parse_state(const Line& line, const std::string& tok, std::size_t n) {
    const std::size_t v = parse_count(line, tok);
    if (v >= n) {
        fail(line, "state " + tok + " out of range (states " + std::to_string(n) + ")");
    }
    return static_cast<StateId>(v);
}

Rational parse_prob(const Line& line, const std::string& tok) {
    try {
        return parse_rational(tok);
    } catch (const ParseError& e) {
        fail(line, e.what());
    }
}

void expect_arity(const Line& line, std::size_t n) {
    if (line.tokens.size() != n) {
        fail(line, "expected " + std::to_string(n) + " fields, got " + std::to_string(line.tokens.size()));
    }
}

std::size_t header_value(const std::vector<Line>& lines, std::size_t idx, const std::string& key) {
    if (idx >= lines.size() || lines[idx].tokens.size() != 2 || lines[idx].tokens[0] != key) {
        throw ParseError("expected '" + key + " <count>'" +
                         (idx < lines.size() ? " at line " + std::to_string(lines[idx].number) : ""));
    }
    return parse_count(lines[idx], lines[idx].tokens[1]);
}

bool plain_label(const std::string& s) {
    return !s.empty() && s != "-" && s.back() != ':' &&
           std::none_of(s.begin(), s.end(), [](char c) { return c == '#' || std::isspace(static_cast<unsigned char>(c)); });
}

std::vector<Rational> parse_vector(const Line& line, std::size_t from, std::size_t d) {
    if (line.tokens.size() != from + d) {
        fail(line, "expected " + std::to_string(d) + " entries");
    }
    std::vector<Rational> v;
    for (std::size_t i = from; i < line.tokens.size(); ++i) {
        v.push_back(parse_prob(line, line.tokens[i]));
    }
    return v;
}

void append_vector(std::ostringstream& out, const std::vector<Rational>& v) {
    for (const auto& x : v) {
        out << ' ' << to_string(x);
    }
}

} // namespace

ProbabilisticModel parse_model(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) {
        throw ParseError("empty model file");
    }
    const std::string& kind_tok = lines[0].tokens[0];
    if (lines[0].tokens.size() != 1 || (kind_tok != "dtmc" && kind_tok != "mdp")) {
        fail(lines[0], "expected 'dtmc' or 'mdp'");
    }
    const ModelKind kind = kind_tok == "dtmc" ? ModelKind::dtmc : ModelKind::mdp;
    const std::size_t n = header_value(lines, 1, "states");
    ModelBuilder b(kind, n);
    enum class Section { transitions, init, goal, names } section = Section::transitions;
    std::vector<char> seen_init(n, 0);
    std::vector<std::vector<std::pair<std::string, StateId>>> seen_edge(n);
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const auto& t = line.tokens;
        if (t.size() == 1 && t[0].back() == ':') {
            if (t[0] == "transitions:") {
                section = Section::transitions;
            } else if (t[0] == "init:") {
                section = Section::init;
            } else if (t[0] == "goal:") {
                section = Section::goal;
            } else if (t[0] == "names:") {
                section = Section::names;
            } else {
                fail(line, "unknown section '" + t[0] + "'");
            }
            continue;
        }
        switch (section) {
        case Section::transitions: {
            if (kind == ModelKind::dtmc) {
                expect_arity(line, 3);
                const StateId s = parse_state(line, t[0], n);
                const StateId d = parse_state(line, t[1], n);
                auto& edges = seen_edge[s];
                if (std::find(edges.begin(), edges.end(), std::pair<std::string, StateId>{"", d}) != edges.end()) {
                    fail(line, "duplicate transition " + t[0] + " -> " + t[1]);
                }
                edges.emplace_back("", d);
                b.transition(s, d, parse_prob(line, t[2]));
            } else {
                if (t.size() != 2 && t.size() != 4) {
                    fail(line, "expected 'src act dst prob' or 'src act'");
                }
                const StateId s = parse_state(line, t[0], n);
                if (!plain_label(t[1])) {
                    fail(line, "bad action label '" + t[1] + "'");
                }
                if (t.size() == 2) {
                    b.action(s, t[1]);
                    break;
                }
                const StateId d = parse_state(line, t[2], n);
                auto& edges = seen_edge[s];
                if (std::find(edges.begin(), edges.end(), std::pair<std::string, StateId>{t[1], d}) != edges.end()) {
                    fail(line, "duplicate transition " + t[0] + " " + t[1] + " -> " + t[2]);
                }
                edges.emplace_back(t[1], d);
                b.transition(s, t[1], d, parse_prob(line, t[3]));
            }
            break;
        }
        case Section::init: {
            expect_arity(line, 2);
            const StateId s = parse_state(line, t[0], n);
            if (seen_init[s]) {
                fail(line, "duplicate initial entry for state " + t[0]);
            }
            seen_init[s] = 1;
            b.initial(s, parse_prob(line, t[1]));
            break;
        }
        case Section::goal:
            for (const auto& tok : t) {
                b.goal(parse_state(line, tok, n));
            }
            break;
        case Section::names:
            expect_arity(line, 2);
            b.name(parse_state(line, t[0], n), t[1]);
            break;
        }
    }
    return b.build();
}

std::string serialize_model(const ProbabilisticModel& m) {
    std::ostringstream out;
    const std::size_t n = m.num_states();
    out << (m.is_dtmc() ? "dtmc" : "mdp") << "\nstates " << n << '\n';
    for (StateId s = 0; s < n; ++s) {
        for (const auto& a : m.actions(s)) {
            if (!m.is_dtmc()) {
                if (!plain_label(a.label)) {
                    throw ValidationError("action label '" + a.label + "' at state " + std::to_string(s) +
                                          " cannot be written");
                }
                if (a.transitions.empty()) {
                    out << s << ' ' << a.label << '\n';
                }
            }
            for (const auto& tr : a.transitions) {
                out << s << ' ';
                if (!m.is_dtmc()) {
                    out << a.label << ' ';
                }
                out << tr.target << ' ' << to_string(tr.prob) << '\n';
            }
        }
    }
    out << "init:\n";
    for (StateId s = 0; s < n; ++s) {
        if (m.initial(s) != 0) {
            out << s << ' ' << to_string(m.initial(s)) << '\n';
        }
    }
    out << "goal:\n";
    for (StateId s : m.goal_states()) {
        out << s << '\n';
    }
    bool named = false;
    for (StateId s = 0; s < m.names().size(); ++s) {
        if (m.names()[s].empty()) {
            continue;
        }
        if (!plain_label(m.names()[s])) {
            throw ValidationError("state name '" + m.names()[s] + "' cannot be written");
        }
        if (!named) {
            out << "names:\n";
            named = true;
        }
        out << s << ' ' << m.names()[s] << '\n';
    }
    return out.str();
}

std::vector<StateSet> parse_partition(std::string_view text) {
    std::vector<StateSet> blocks;
    std::vector<std::string> ids;
    for (const Line& line : tokenize(text)) {
        const auto& t = line.tokens;
        std::string id = t[0];
        std::size_t first = 1;
        if (id.back() == ':') {
            id.pop_back();
        } else if (t.size() > 1 && t[1] == ":") {
            first = 2;
        } else {
            fail(line, "expected 'id: states...'");
        }
        if (id.empty()) {
            fail(line, "empty block id");
        }
        if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
            fail(line, "duplicate block id '" + id + "'");
        }
        ids.push_back(id);
        StateSet blk;
        for (std::size_t i = first; i < t.size(); ++i) {
            blk.push_back(static_cast<StateId>(parse_count(line, t[i])));
        }
        // Duplicates inside a block are a disjointness defect for the validator to report.
        std::sort(blk.begin(), blk.end());
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

std::string serialize_partition(const std::vector<StateSet>& blocks) {
    std::ostringstream out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        out << 'B' << b << ':';
        for (StateId s : blocks[b]) {
            out << ' ' << s;
        }
        out << '\n';
    }
    return out.str();
}

UnderlyingGraph parse_graph(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0] != "graph") {
        throw ParseError("expected 'graph' header");
    }
    const std::size_t n = header_value(lines, 1, "vertices");
    std::vector<std::pair<StateId, StateId>> edges;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        expect_arity(lines[i], 2);
        edges.emplace_back(parse_state(lines[i], lines[i].tokens[0], n), parse_state(lines[i], lines[i].tokens[1], n));
    }
    return make_graph(n, edges);
}

std::string serialize_graph(const UnderlyingGraph& g) {
    std::ostringstream out;
    out << "graph\nvertices " << g.num_vertices << '\n';
    for (StateId v = 0; v < g.num_vertices; ++v) {
        for (StateId w : g.succ[v]) {
            out << v << ' ' << w << '\n';
        }
    }
    return out.str();
}

McpInstance parse_mcp(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0] != "mcp") {
        throw ParseError("expected 'mcp' header");
    }
    McpInstance inst;
    inst.dimension = header_value(lines, 1, "dimension");
    const std::size_t n = header_value(lines, 2, "length");
    const std::size_t d = inst.dimension;
    if (d == 0) {
        fail(lines[1], "dimension must be positive");
    }
    inst.pairs.resize(n);
    std::vector<std::array<char, 2>> have(n, {0, 0});
    bool have_iota = false, have_final = false, have_thr = false;
    for (std::size_t i = 3; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const auto& t = line.tokens;
        if (t[0] == "threshold") {
            expect_arity(line, 2);
            inst.threshold = parse_prob(line, t[1]);
            have_thr = true;
        } else if (t[0] == "iota") {
            inst.iota = parse_vector(line, 1, d);
            have_iota = true;
        } else if (t[0] == "final") {
            inst.final = parse_vector(line, 1, d);
            have_final = true;
        } else if (t[0] == "matrix") {
            expect_arity(line, 3);
            const std::size_t layer = parse_count(line, t[1]);
            const std::size_t side = parse_count(line, t[2]);
            if (layer < 1 || layer > n || side > 1) {
                fail(line, "matrix index out of range");
            }
            if (have[layer - 1][side]) {
                fail(line, "duplicate matrix");
            }
            have[layer - 1][side] = 1;
            Matrix m;
            for (std::size_t r = 0; r < d; ++r) {
                if (++i >= lines.size()) {
                    fail(line, "truncated matrix");
                }
                m.push_back(parse_vector(lines[i], 0, d));
            }
            inst.pairs[layer - 1][side] = std::move(m);
        } else {
            fail(line, "unknown field '" + t[0] + "'");
        }
    }
    if (!have_iota || !have_final || !have_thr) {
        throw ParseError("mcp file needs iota, final and threshold");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!have[i][0] || !have[i][1]) {
            throw ParseError("missing matrix for layer " + std::to_string(i + 1));
        }
    }
    return inst;
}

std::string serialize_mcp(const McpInstance& inst) {
    inst.check_shape();
    std::ostringstream out;
    out << "mcp\ndimension " << inst.dimension << "\nlength " << inst.length() << "\nthreshold "
        << to_string(inst.threshold) << "\niota";
    append_vector(out, inst.iota);
    out << "\nfinal";
    append_vector(out, inst.final);
    out << '\n';
    for (std::size_t i = 0; i < inst.length(); ++i) {
        for (std::size_t side = 0; side < 2; ++side) {
            out << "matrix " << i + 1 << ' ' << side << '\n';
            for (const auto& row : inst.pairs[i][side]) {
                bool first = true;
                for (const auto& x : row) {
                    out << (first ? "" : " ") << to_string(x);
                    first = false;
                }
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string detect_format(std::string_view text) {
    const auto lines = tokenize(text);
    if (lines.empty()) {
        return "";
    }
    const std::string& t = lines[0].tokens[0];
    if (t == "dtmc" || t == "mdp" || t == "graph" || t == "mcp") {
        return t;
    }
    return "";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << contents;
}

std::string format_states(const StateSet& states) {
    std::string out;
    for (StateId s : states) {
        if (!out.empty()) {
            out += ' ';
        }
        out += std::to_string(s);
    }
    return out;
}

void ResultDocument::set(const std::string& key, std::string value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(key, std::move(value));
}

void ResultDocument::set_timing(const std::string& key, double seconds) {
    std::ostringstream ss;
    ss.precision(6);
    ss << std::fixed << seconds;
    timing_.emplace_back(key, ss.str());
}

std::string ResultDocument::get(const std::string& key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return "";
}

bool ResultDocument::has(const std::string& key) const {
    return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
}

std::string ResultDocument::render(bool with_timing) const {
    std::string out;
    for (const auto& [k, v] : entries_) {
        out += k + ":" + (v.empty() ? "" : " " + v) + "\n";
    }
    if (with_timing && !timing_.empty()) {
        out += "timing:\n";
        for (const auto& [k, v] : timing_) {
            out += "  " + k + ": " + v + "\n";
        }
    }
    return out;
}

ResultDocument ResultDocument::parse(std::string_view text) {
    ResultDocument doc;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) {
            continue;
        }
        if (line == "timing:") {
            break;
        }
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("result line without ':': " + std::string(line));
        }
        std::string_view value = line.substr(colon + 1);
        if (!value.empty() && value.front() == ' ') {
            value.remove_prefix(1);
        }
        doc.entries_.emplace_back(std::string(line.substr(0, colon)), std::string(value));
    }
    return doc;
}

} // namespace treewit
