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


#include "cli.hpp"

#include "treewit/chain_gen.hpp"
#include "treewit/generate.hpp"
#include "treewit/io.hpp"
#include "treewit/partition.hpp"
#include "treewit/witness.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

namespace treewit::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Io {
    std::ostream& out;
    std::ostream& err;
    std::istream& in;

    std::string read(const std::string& path) const {
        if (path == "-") {
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }
        return read_file(path);
    }

    void emit(const std::string& path, const std::string& text) const {
        if (path.empty() || path == "-") {
            out << text;
        } else {
            write_file(path, text);
        }
    }
};

ProbabilisticModel load_model(const Io& io, const std::string& path) {
    auto m = parse_model(io.read(path));
    auto violations = validate_model(m);
    if (!violations.empty()) {
        std::string msg = "invalid model: " + violations.front().message;
        if (violations.size() > 1) {
            msg += " (and " + std::to_string(violations.size() - 1) + " more)";
        }
        throw ValidationError(msg);
    }
    return m;
}

std::string scalar_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string scalar_text(const Rational& v) {
    return to_string(v);
}

std::string selection_text(const Selection& s) {
    std::string out;
    for (auto bit : s) {
        out += bit ? '1' : '0';
    }
    return out.empty() ? "-" : out;
}

std::string blocks_text(const std::vector<StateSet>& blocks) {
    std::string out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        out += (b ? " | " : "") + format_states(blocks[b]);
    }
    return out;
}

WitnessMode mode_from(const std::string& text) {
    auto mode = parse_witness_mode(text);
    if (!mode) {
        throw CLI::ValidationError("--mode", "unknown mode '" + text + "'");
    }
    return *mode;
}

// Makes the partition usable by the solver: initial states moved into the
// root, goal states split off into their own blocks.
std::pair<DirectedTreePartition, bool> prepare_partition(const ProbabilisticModel& m,
                                                         const std::vector<StateSet>& blocks) {
    const auto g = underlying_graph(m);
    const auto init = m.initial_support();
    auto p = validate_partition(g, blocks, init);
    const auto original = p.num_blocks();
    p = merge_root_candidates(g, p, init).first;
    bool adjusted = p.num_blocks() != original;
    const auto merged = p.num_blocks();
    p = split_goal_blocks(g, p, m.goal_mask(), init);
    adjusted = adjusted || p.num_blocks() != merged;
    return {std::move(p), adjusted};
}

template <typename T>
void put_result(ResultDocument& doc, const WitnessResult<T>& r) {
    doc.set("feasible", r.feasible);
    doc.set("size", r.feasible ? std::to_string(r.size()) : std::string("-"));
    doc.set("states", r.feasible ? format_states(r.states) : std::string("-"));
    doc.set("value", r.feasible ? scalar_text(r.value) : std::string("-"));
}

void put_stats(ResultDocument& doc, const WitnessStats& s) {
    doc.set("stats.upper_bound", s.upper_bound ? std::to_string(*s.upper_bound) : std::string("-"));
    doc.set("stats.subsets_enumerated", s.subsets_enumerated);
    doc.set("stats.candidates", s.candidates);
    doc.set("stats.pruned_value", s.pruned_value);
    doc.set("stats.pruned_distance", s.pruned_distance);
    doc.set("stats.pruned_dominated", s.pruned_dominated);
    doc.set("stats.domination_calls", s.domination_calls);
    doc.set("stats.local_solves", s.local_solves);
    std::size_t max_surv = 0;
    std::string surv;
    for (const auto& b : s.blocks) {
        max_surv = std::max(max_surv, b.survivors);
        surv += (surv.empty() ? "" : " ") + std::to_string(b.survivors);
    }
    doc.set("stats.max_survivors", max_surv);
    doc.set("stats.survivors", surv.empty() ? std::string("-") : surv);
}

struct WitnessArgs {
    std::string model, partition, mode = "dtmc", threshold = "0", prune = "all";
    bool exact = false, oracle = false, stats = false;
    std::optional<double> tol;
    std::optional<std::size_t> upper_bound;
    std::size_t interface_cap = kDefaultInterfaceCap;
};

template <typename T>
int witness_with(const Io& io, const WitnessArgs& a, const ProbabilisticModel& m, WitnessMode mode,
                 const Rational& lambda, Clock::time_point t0) {
    ResultDocument doc;
    doc.set("command", "witness");
    doc.set("mode", to_string(mode));
    doc.set("arithmetic", is_exact_v<T> ? "exact" : "float");
    doc.set("threshold", lambda);
    doc.set("states_total", m.num_states());

    std::vector<StateSet> blocks;
    if (a.partition.empty()) {
        blocks = heuristic_layer_partition(underlying_graph(m), m.initial_support()).blocks();
        doc.set("partition", "heuristic");
    } else {
        blocks = parse_partition(io.read(a.partition));
        doc.set("partition", "given");
    }
    const auto t_parse = seconds_since(t0);
    auto [p, adjusted] = prepare_partition(m, blocks);
    doc.set("partition_adjusted", adjusted);
    doc.set("partition_width", p.width());
    doc.set("partition_blocks", p.num_blocks());

    WitnessQuery q;
    q.model = &m;
    q.partition = &p;
    q.mode = mode;
    q.threshold = lambda;
    q.options.prune_value = a.prune == "value" || a.prune == "all";
    q.options.prune_distance = a.prune == "distance" || a.prune == "all";
    q.options.upper_bound = a.upper_bound;
    q.options.interface_cap = a.interface_cap;
    if (a.tol) {
        q.options.solver.tol.eps = *a.tol;
    }
    const auto t1 = Clock::now();
    const auto r = solve<T>(q);
    const auto t_solve = seconds_since(t1);
    put_result(doc, r);

    int code = r.feasible ? kExitOk : kExitInfeasible;
    if (a.oracle) {
        const auto relevant = relevant_states(m).size();
        BruteForceWitnessOptions bo;
        if (relevant > bo.cap) {
            doc.set("oracle", "skipped: " + std::to_string(relevant) + " relevant states exceed cap " +
                                  std::to_string(bo.cap));
        } else {
            const auto t2 = Clock::now();
            const auto o = brute_force_witness<Rational>(m, mode, lambda, bo);
            doc.set_timing("oracle_seconds", seconds_since(t2));
            const bool agree = o.feasible == r.feasible && (!o.feasible || o.size() == r.size());
            doc.set("oracle", agree ? "agree" : "mismatch");
            doc.set("oracle_size", o.feasible ? std::to_string(o.size()) : std::string("-"));
            if (!agree) {
                io.err << "oracle mismatch: solver size " << (r.feasible ? std::to_string(r.size()) : "-")
                       << ", brute force size " << (o.feasible ? std::to_string(o.size()) : "-") << '\n';
                code = kExitInvalid;
            }
        }
    }
    put_stats(doc, r.stats);
    doc.set_timing("parse_seconds", t_parse);
    doc.set_timing("solve_seconds", t_solve);
    doc.set_timing("total_seconds", seconds_since(t0));
    io.out << doc.render(a.stats);
    return code;
}

int cmd_witness(const Io& io, const WitnessArgs& a) {
    const auto t0 = Clock::now();
    const auto m = load_model(io, a.model);
    const WitnessMode mode = mode_from(a.mode);
    check_mode(m, mode);
    const Rational lambda = parse_rational(a.threshold);
    if (a.exact && a.tol) {
        throw CLI::ValidationError("--exact and --tol are mutually exclusive");
    }
    if (a.tol) {
        return witness_with<double>(io, a, m, mode, lambda, t0);
    }
    return witness_with<Rational>(io, a, m, mode, lambda, t0);
}

struct BaselineArgs {
    std::string model, mode = "dtmc", threshold = "0";
    std::size_t cap = 22;
    bool stats = false;
};

int cmd_baseline(const Io& io, const BaselineArgs& a) {
    const auto t0 = Clock::now();
    const auto m = load_model(io, a.model);
    const WitnessMode mode = mode_from(a.mode);
    check_mode(m, mode);
    const Rational lambda = parse_rational(a.threshold);
    ResultDocument doc;
    doc.set("command", "baseline");
    doc.set("mode", to_string(mode));
    doc.set("arithmetic", "exact");
    doc.set("threshold", lambda);
    doc.set("states_total", m.num_states());
    doc.set("relevant_states", relevant_states(m).size());
    BruteForceWitnessOptions bo;
    bo.cap = a.cap;
    const auto t1 = Clock::now();
    const auto r = brute_force_witness<Rational>(m, mode, lambda, bo);
    put_result(doc, r);
    doc.set("stats.subsets_enumerated", r.stats.subsets_enumerated);
    doc.set("stats.local_solves", r.stats.local_solves);
    doc.set_timing("solve_seconds", seconds_since(t1));
    doc.set_timing("total_seconds", seconds_since(t0));
    io.out << doc.render(a.stats);
    return r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_check_partition(const Io& io, const std::string& model_path, const std::string& part_path) {
    const auto m = load_model(io, model_path);
    const auto blocks = parse_partition(io.read(part_path));
    try {
        const auto p = validate_partition(m, blocks);
        io.out << "valid, shape=" << (p.is_path() ? "path" : "tree") << ", width=" << p.width() << '\n';
        return kExitOk;
    } catch (const PartitionError& e) {
        io.out << "invalid: " << e.what() << '\n';
        return kExitInvalid;
    }
}

struct WidthArgs {
    std::string input, shape = "tree", out;
    std::size_t exact_cap = 12;
    bool heuristic = false;
};

int cmd_width(const Io& io, const WidthArgs& a) {
    const std::string text = io.read(a.input);
    const std::string fmt = detect_format(text);
    UnderlyingGraph g;
    StateSet init;
    if (fmt == "graph") {
        g = parse_graph(text);
    } else if (fmt == "dtmc" || fmt == "mdp") {
        auto m = parse_model(text);
        g = underlying_graph(m);
        init = m.initial_support();
    } else {
        throw ParseError("expected a model or graph file");
    }
    const PartitionShape shape = a.shape == "path" ? PartitionShape::path : PartitionShape::tree;
    ResultDocument doc;
    doc.set("command", "width");
    doc.set("shape", a.shape);
    doc.set("vertices", g.num_vertices);
    DirectedTreePartition p;
    std::size_t w = 0;
    if (g.num_vertices <= a.exact_cap) {
        ExactWidthOptions eo;
        eo.cap = a.exact_cap;
        std::tie(w, p) = exact_width(g, shape, eo);
        doc.set("method", "exact");
    } else if (a.heuristic) {
        p = heuristic_layer_partition(g, init);
        w = p.width();
        doc.set("method", "heuristic");
    } else {
        throw CapExceeded(std::to_string(g.num_vertices) + " vertices exceed the exact cap " +
                          std::to_string(a.exact_cap) + "; pass --heuristic for an upper bound");
    }
    doc.set("width", w);
    doc.set("blocks", p.num_blocks());
    doc.set("partition", blocks_text(p.blocks()));
    if (!a.out.empty()) {
        write_file(a.out, serialize_partition(p.blocks()));
    }
    io.out << doc.render(false);
    return kExitOk;
}

int cmd_mcp_brute(const Io& io, const std::string& input, std::size_t cap) {
    const auto inst = parse_mcp(io.read(input));
    BruteForceOptions bo;
    bo.cap = cap;
    const auto v = brute_force(inst, bo);
    ResultDocument doc;
    doc.set("command", "mcp brute");
    doc.set("dimension", inst.dimension);
    doc.set("length", inst.length());
    doc.set("threshold", inst.threshold);
    doc.set("verdict", v.accepted ? "accept" : "reject");
    doc.set("best_selection", selection_text(v.best_sigma));
    doc.set("best_value", v.best_value);
    io.out << doc.render(false);
    return v.accepted ? kExitOk : kExitInfeasible;
}

LayeredChain build_chain(const McpInstance& inst, const std::string& variant) {
    return variant == "m1" ? build_m1(inst) : build_m2(inst);
}

int cmd_mcp_to_chain(const Io& io, const std::string& input, const std::string& variant, const std::string& prefix) {
    const auto inst = parse_mcp(io.read(input));
    const auto chain = build_chain(inst, variant);
    const auto blocks = chain.layer_blocks();
    const auto p = validate_partition(chain.model, blocks);
    ResultDocument doc;
    doc.set("command", "mcp to-chain");
    doc.set("variant", variant);
    doc.set("layers", chain.n);
    doc.set("states", chain.model.num_states());
    doc.set("partition_width", p.width());
    doc.set("good_size", 3 * chain.n + 4);
    doc.set("threshold", inst.threshold);
    if (variant == "m2") {
        doc.set("gamma", chain.gamma);
    }
    if (prefix.empty()) {
        io.out << serialize_model(chain.model);
        return kExitOk;
    }
    write_file(prefix + ".model", serialize_model(chain.model));
    write_file(prefix + ".part", serialize_partition(blocks));
    doc.set("model_file", prefix + ".model");
    doc.set("partition_file", prefix + ".part");
    io.out << doc.render(false);
    return kExitOk;
}

int cmd_mcp_verify_chain(const Io& io, const std::string& input, const std::string& variant, std::size_t cap) {
    const auto inst = parse_mcp(io.read(input));
    if (inst.length() > cap) {
        throw CapExceeded("length " + std::to_string(inst.length()) + " exceeds the cap " + std::to_string(cap));
    }
    std::vector<std::string> variants;
    if (variant == "both") {
        variants = {"m1", "m2"};
    } else {
        variants = {variant};
    }
    ResultDocument doc;
    doc.set("command", "mcp verify-chain");
    doc.set("layers", inst.length());
    bool all = true;
    for (const auto& v : variants) {
        const auto chain = build_chain(inst, v);
        std::size_t ok = 0, total = 0;
        const std::size_t n = inst.length();
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
            Selection sigma(n);
            for (std::size_t i = 0; i < n; ++i) {
                sigma[i] = (bits >> (n - 1 - i)) & 1;
            }
            const auto gv = verify_good_value(chain, sigma);
            ++total;
            if (gv.chain_probability == gv.mcp_value) {
                ++ok;
            } else {
                io.err << v << " sigma " << selection_text(sigma) << ": chain " << to_string(gv.chain_probability)
                       << " != product " << to_string(gv.mcp_value) << '\n';
            }
        }
        doc.set(v + ".checked", total);
        doc.set(v + ".equal", ok);
        all = all && ok == total;
    }
    doc.set("verdict", all ? "all equal" : "mismatch");
    io.out << doc.render(false);
    return all ? kExitOk : kExitInvalid;
}

struct GenArgs {
    std::string kind = "dtmc", out;
    std::size_t layers = 20, width = 6, interface = 2, blocks = 6, block_size = 4, states = 20;
    std::uint64_t seed = 1;
    double extra_edges = 1.0;
};

int write_instance(const Io& io, const GeneratedInstance& gi, const std::string& prefix, const std::string& what) {
    if (prefix.empty()) {
        io.out << serialize_model(gi.model);
        return kExitOk;
    }
    write_file(prefix + ".model", serialize_model(gi.model));
    write_file(prefix + ".part", serialize_partition(gi.blocks));
    ResultDocument doc;
    doc.set("command", "gen " + what);
    doc.set("states", gi.model.num_states());
    doc.set("blocks", gi.blocks.size());
    doc.set("model_file", prefix + ".model");
    doc.set("partition_file", prefix + ".part");
    io.out << doc.render(false);
    return kExitOk;
}

ModelKind kind_from(const std::string& s) {
    return s == "mdp" ? ModelKind::mdp : ModelKind::dtmc;
}

int cmd_gen_layered(const Io& io, const GenArgs& a) {
    LayeredOptions o;
    o.layers = a.layers;
    o.width = a.width;
    o.interface = a.interface;
    o.extra_edges = a.extra_edges;
    o.kind = kind_from(a.kind);
    return write_instance(io, generate_layered(o, a.seed), a.out, "layered");
}

int cmd_gen_tree(const Io& io, const GenArgs& a) {
    TreeModelOptions o;
    o.max_blocks = a.blocks;
    o.max_block_size = a.block_size;
    o.max_states = a.states;
    o.kind = kind_from(a.kind);
    return write_instance(io, generate_tree_model(o, a.seed), a.out, "tree");
}

void add_mode_options(CLI::App* sub, std::string& mode, std::string& threshold) {
    sub->add_option("--mode", mode, "dtmc, mdp-max or mdp-min")
        ->check(CLI::IsMember({"dtmc", "mdp-max", "mdp-min"}))
        ->capture_default_str();
    sub->add_option("--threshold", threshold, "probability bound, decimal or p/q")->required();
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    const Io io{out, err, in};
    CLI::App app{"Minimal witnesses for reachability in Markov models over directed tree partitions", "treewit"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string model_path, part_path;
    auto* check = app.add_subcommand("check-partition", "validate a block partition of a model");
    check->add_option("model", model_path)->required();
    check->add_option("partition", part_path)->required();
    check->callback([&] { action = [&] { return cmd_check_partition(io, model_path, part_path); }; });

    WitnessArgs wa;
    auto* wit = app.add_subcommand("witness", "minimum witness subsystem over a tree partition");
    wit->add_option("model", wa.model)->required();
    wit->add_option("partition", wa.partition, "partition file; a heuristic layering when omitted");
    add_mode_options(wit, wa.mode, wa.threshold);
    wit->add_flag("--exact", wa.exact, "exact rational arithmetic (default)");
    wit->add_option("--tol", wa.tol, "floating point with this tolerance");
    wit->add_option("--prune", wa.prune)->check(CLI::IsMember({"none", "value", "distance", "all"}))->capture_default_str();
    wit->add_option("--upper-bound", wa.upper_bound, "known witness size for distance pruning");
    wit->add_option("--interface-cap", wa.interface_cap)->capture_default_str();
    wit->add_flag("--oracle-check", wa.oracle, "cross-check the size by exhaustive search");
    wit->add_flag("--stats", wa.stats, "append timings");
    wit->callback([&] { action = [&] { return cmd_witness(io, wa); }; });

    BaselineArgs ba;
    auto* base = app.add_subcommand("baseline", "exhaustive subset search");
    base->add_option("model", ba.model)->required();
    add_mode_options(base, ba.mode, ba.threshold);
    base->add_option("--cap", ba.cap, "largest relevant-state count")->capture_default_str();
    base->add_flag("--stats", ba.stats, "append timings");
    base->callback([&] { action = [&] { return cmd_baseline(io, ba); }; });

    WidthArgs wd;
    auto* wid = app.add_subcommand("width", "directed tree or path partition width");
    wid->add_option("input", wd.input, "model or graph file")->required();
    wid->add_option("--shape", wd.shape)->check(CLI::IsMember({"tree", "path"}))->capture_default_str();
    wid->add_option("--exact-cap", wd.exact_cap)->capture_default_str();
    wid->add_flag("--heuristic", wd.heuristic, "fall back to layering above the cap");
    wid->add_option("-o,--out", wd.out, "write the partition here");
    wid->callback([&] { action = [&] { return cmd_width(io, wd); }; });

    auto* mcp = app.add_subcommand("mcp", "matrix-pair chain instances");
    mcp->require_subcommand(1);
    std::string mcp_in = "-", mcp_out, variant = "m2";
    std::size_t mcp_cap = 24;
    std::vector<long> multiset;
    auto* brute = mcp->add_subcommand("brute", "decide by enumerating all selections");
    brute->add_option("input", mcp_in)->capture_default_str();
    brute->add_option("--cap", mcp_cap)->capture_default_str();
    brute->callback([&] { action = [&] { return cmd_mcp_brute(io, mcp_in, mcp_cap); }; });
    auto* fromp = mcp->add_subcommand("from-partition", "2-dimensional instance from an integer multiset");
    fromp->add_option("values", multiset)->required();
    fromp->add_option("-o,--out", mcp_out);
    fromp->callback([&] {
        action = [&] {
            io.emit(mcp_out, serialize_mcp(reduce_from_partition(multiset)));
            return kExitOk;
        };
    });
    auto* lift = mcp->add_subcommand("lift3", "nonnegative 3-dimensional lift");
    lift->add_option("input", mcp_in)->capture_default_str();
    lift->add_option("-o,--out", mcp_out);
    lift->callback([&] {
        action = [&] {
            io.emit(mcp_out, serialize_mcp(lift_to_nonnegative_3d(parse_mcp(io.read(mcp_in)))));
            return kExitOk;
        };
    });
    auto* norm = mcp->add_subcommand("normalize", "rescale entries into [1/12 - eps, 1/12]");
    norm->add_option("input", mcp_in)->capture_default_str();
    norm->add_option("-o,--out", mcp_out);
    norm->callback([&] {
        action = [&] {
            io.emit(mcp_out, serialize_mcp(normalize_equal_valued(parse_mcp(io.read(mcp_in)))));
            return kExitOk;
        };
    });
    auto* tochain = mcp->add_subcommand("to-chain", "layered DTMC and its layer partition");
    tochain->add_option("input", mcp_in)->capture_default_str();
    tochain->add_option("--variant", variant)->check(CLI::IsMember({"m1", "m2"}))->capture_default_str();
    tochain->add_option("-o,--out", mcp_out, "file prefix for .model and .part");
    tochain->callback([&] { action = [&] { return cmd_mcp_to_chain(io, mcp_in, variant, mcp_out); }; });
    auto* verify = mcp->add_subcommand("verify-chain", "compare chain probabilities with matrix products");
    verify->add_option("input", mcp_in)->capture_default_str();
    std::string verify_variant = "both";
    std::size_t verify_cap = 10;
    verify->add_option("--variant", verify_variant)->check(CLI::IsMember({"m1", "m2", "both"}))->capture_default_str();
    verify->add_option("--cap", verify_cap)->capture_default_str();
    verify->callback([&] { action = [&] { return cmd_mcp_verify_chain(io, mcp_in, verify_variant, verify_cap); }; });

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "random instances");
    gen->require_subcommand(1);
    auto* layered = gen->add_subcommand("layered", "layered model with its width-w layer partition");
    auto* tree = gen->add_subcommand("tree", "random model over a random block tree");
    for (auto* sub : {layered, tree}) {
        sub->add_option("--seed", ga.seed)->capture_default_str();
        sub->add_option("--kind", ga.kind)->check(CLI::IsMember({"dtmc", "mdp"}))->capture_default_str();
        sub->add_option("-o,--out", ga.out, "file prefix for .model and .part");
    }
    layered->add_option("--layers", ga.layers)->capture_default_str();
    layered->add_option("--width", ga.width)->capture_default_str();
    layered->add_option("--interface", ga.interface)->capture_default_str();
    layered->add_option("--extra-edges", ga.extra_edges)->capture_default_str();
    layered->callback([&] { action = [&] { return cmd_gen_layered(io, ga); }; });
    tree->add_option("--blocks", ga.blocks)->capture_default_str();
    tree->add_option("--block-size", ga.block_size)->capture_default_str();
    tree->add_option("--states", ga.states)->capture_default_str();
    tree->callback([&] { action = [&] { return cmd_gen_tree(io, ga); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const CLI::Error& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ModeMismatch& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return kExitCap;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace treewit::cli
