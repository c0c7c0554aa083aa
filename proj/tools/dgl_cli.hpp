// Command-line front end. run_cli is kept separate from main so the tests can
// drive it in-process.

#pragma once

#include "dotgraph/dotgraph.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace dgl {

enum ExitCode : int { Ok = 0, Usage = 1, Invariant = 2, AssertionFailed = 3, Budget = 4 };

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

struct Source {
    std::string inline_text;
    std::string file;

    void attach(CLI::App* cmd, const std::string& what) {
        auto* text = cmd->add_option("input", inline_text, what + " (inline text)");
        auto* path = cmd->add_option("--file", file, what + " read from a file");
        text->excludes(path);
    }

    std::string get() const {
        if (!file.empty()) return read_file(file);
        if (inline_text.empty()) throw UsageError("no input: pass inline text or --file");
        return inline_text;
    }
};

/// Bracket input must already be maximal; `seq=` input must already be in
/// sawtooth form. `normalize` is the lenient entry point.
inline dotgraph::SawtoothGraph read_graph(const std::string& text) {
    if (text.find("seq=") != std::string::npos) return dotgraph::segment(dotgraph::parse_sequence(text));
    return dotgraph::parse_segments(text);
}

inline std::vector<std::int64_t> parse_counts(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw UsageError("bad integer '" + item + "'");
        } catch (const std::logic_error&) {
            throw UsageError("bad integer '" + item + "'");
        }
    }
    return out;
}

inline dotgraph::SearchOptions search_options() {
    dotgraph::SearchOptions opts;
    if (const char* env = std::getenv("DGL_BUDGET")) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(env, &used);
            if (used != std::string(env).size() || v < 1) throw UsageError("");
            opts.node_budget = static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("DGL_BUDGET must be a positive integer, got '") + env + "'");
        }
    }
    return opts;
}

inline std::string format_rational(const std::optional<dotgraph::Rational>& r) {
    return r ? r->to_string() : std::string("none");
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace dotgraph;

    CLI::App app{"dot-graph calculus for curve complex geodesics", "dgl"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    detail::Source src;

    auto* normalize = app.add_subcommand("normalize", "normalize a dot sequence to sawtooth form");
    src.attach(normalize, "dot sequence");
    bool show_trace = false;
    normalize->add_flag("--trace", show_trace, "print every commutation");

    auto* patterns = app.add_subcommand("patterns", "list detected surgery patterns");
    src.attach(patterns, "sawtooth graph");

    auto* decide_cmd = app.add_subcommand("decide", "decide dot-reducibility with a certificate");
    src.attach(decide_cmd, "sawtooth graph");
    bool assert_reducible = false, assert_irreducible = false;
    auto* ar = decide_cmd->add_flag("--assert-reducible", assert_reducible);
    decide_cmd->add_flag("--assert-irreducible", assert_irreducible)->excludes(ar);

    auto* reduce = app.add_subcommand("reduce", "apply one certified surgery, or iterate to a fixpoint");
    src.attach(reduce, "sawtooth graph");
    bool fixpoint = false;
    reduce->add_flag("--fixpoint", fixpoint);

    auto* classify = app.add_subcommand("classify", "spindle, subgraph, slope and comb classification");
    src.attach(classify, "sawtooth graph");
    int genus = 0;
    bool assert_spindle = false;
    classify->add_option("--genus", genus, "surface genus for the comb test")->check(CLI::Range(2, 1 << 20));
    classify->add_flag("--assert-spindle", assert_spindle);

    auto* spindle = app.add_subcommand("spindle", "construct the spindle at k");
    int sp_n = 0, sp_k = 0;
    spindle->add_option("--n", sp_n)->required();
    spindle->add_option("--k", sp_k)->required();

    auto* census = app.add_subcommand("census", "enumerate graphs and check the maximal-spindle theorem");
    int cs_n = 0, cs_max = 0;
    bool all_values = false;
    std::string shard, census_out;
    unsigned jobs = 1;
    census->add_option("--n", cs_n)->required();
    census->add_option("--max-dots", cs_max)->required();
    census->add_flag("--all-values", all_values, "only graphs using every value 1..n-1");
    census->add_option("--shard", shard, "comma-separated flattened prefix");
    census->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
    census->add_option("--out", census_out, "also write the report here");

    auto* bounds = app.add_subcommand("bounds", "closed-form complexity bounds");
    int bd_n = 0, bd_genus = 0;
    std::int64_t intersections = 0;
    std::string from_start, to_end;
    bounds->add_option("--n", bd_n)->required();
    bounds->add_option("--genus", bd_genus)->check(CLI::Range(2, 1 << 20));
    bounds->add_option("--intersections", intersections, "i(alpha, beta) for the distance bound");
    auto* fs = bounds->add_option("--from-start", from_start, "i(v_0, v_k) for k = 1..n-1");
    auto* te = bounds->add_option("--to-end", to_end, "i(v_k, v_n) for k = 1..n-1");
    fs->needs(te);
    te->needs(fs);

    auto* reftree = app.add_subcommand("reftree", "check a reference tree");
    src.attach(reftree, "tree description");
    bool tree_assert_irreducible = false;
    reftree->add_flag("--assert-irreducible", tree_assert_irreducible);

    auto* render_cmd = app.add_subcommand("render", "draw a graph as ascii, or svg to a file");
    src.attach(render_cmd, "sawtooth graph");
    std::string svg_out;
    render_cmd->add_option("--svg", svg_out, "write svg here instead of printing ascii");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        const SearchOptions opts = detail::search_options();

        if (normalize->parsed()) {
            std::vector<Swap> trace;
            const SawtoothGraph g = to_sawtooth(parse_any(src.get()), show_trace ? &trace : nullptr);
            for (const Swap& s : trace)
                out << "swap: " << s.index << " " << s.left << "<->" << s.right << "\n";
            out << serialize(g) << "\n";
            return Ok;
        }

        if (patterns->parsed()) {
            const SawtoothGraph g = detail::read_graph(src.get());
            const auto matches = find_all_patterns(g);
            for (const PatternMatch& m : matches) out << format_match(m) << "\n";
            out << "patterns=" << matches.size() << "\n";
            return Ok;
        }

        if (decide_cmd->parsed()) {
            const SawtoothGraph g = detail::read_graph(src.get());
            const Decision d = decide(g, opts);
            if (d.verdict == Verdict::BudgetExhausted) {
                err << "search budget of " << opts.node_budget << " nodes exhausted\n";
                return Budget;
            }
            if (d.pigeonhole) out << "pigeonhole: some value occurs more than n(n-1) times\n";
            if (d.plan)
                out << format_plan(*d.plan);
            else if (d.verdict == Verdict::Irreducible)
                out << "irreducible\n";
            if (assert_reducible && d.verdict != Verdict::Reducible) return AssertionFailed;
            if (assert_irreducible && d.verdict != Verdict::Irreducible) return AssertionFailed;
            return Ok;
        }

        if (reduce->parsed()) {
            SawtoothGraph g = detail::read_graph(src.get());
            const std::size_t cap = g.dot_count();
            for (std::size_t step = 0;; ++step) {
                const std::optional<SurgeryPlan> plan = find_surgery(g, opts);
                if (!plan) {
                    if (step == 0 && pigeonhole_applies(g))
                        throw InvariantError("reducible by pigeonhole but no explicit surgery was found");
                    break;
                }
                g = apply_plan(g, *plan);
                out << serialize(g) << "\n";
                if (!fixpoint) return Ok;
                if (step > cap) throw InvariantError("fixpoint iteration did not shrink the graph");
            }
            out << "irreducible\n";
            return Ok;
        }

        if (classify->parsed()) {
            const SawtoothGraph g = detail::read_graph(src.get());
            const ShapeReport r = classify_shape(g);
            out << "spindle=" << (r.spindle ? std::to_string(*r.spindle) : "none") << "\n";
            out << "lower_triangle=" << (r.lower_triangle ? "yes" : "no") << "\n";
            out << "upper_triangle=" << (r.upper_triangle ? "yes" : "no") << "\n";
            out << "subgraph_of_spindle="
                << (r.subgraph_of_spindle ? "k=" + std::to_string(r.subgraph_of_spindle->k) : std::string("none"))
                << "\n";
            out << "slope_upper=" << detail::format_rational(r.upper_slope) << "\n";
            out << "slope_lower=" << detail::format_rational(r.lower_slope) << "\n";
            if (genus) {
                const auto comb = classify_comb(g, genus);
                out << "comb=" << (comb ? std::to_string(comb->lower) + ".." + std::to_string(comb->upper) : "none")
                    << "\n";
            }
            if (assert_spindle && !r.spindle) return AssertionFailed;
            return Ok;
        }

        if (spindle->parsed()) {
            out << serialize(make_spindle({sp_n, sp_k})) << "\n";
            return Ok;
        }

        if (census->parsed()) {
            CensusConfig cfg;
            cfg.n = cs_n;
            cfg.max_dots = cs_max;
            cfg.require_all_values = all_values;
            cfg.search = opts;
            if (!shard.empty()) {
                const auto prefix = detail::parse_counts(shard);
                cfg.shard_prefix = std::vector<int>(prefix.begin(), prefix.end());
            }
            const CensusReport r = run_census_parallel(cfg, jobs);
            const std::string text = format_report(r);
            if (!census_out.empty()) detail::write_file(census_out, text);
            out << text;
            const bool exhausted = std::any_of(r.counterexamples.begin(), r.counterexamples.end(), [](const auto& c) {
                return c.kind == CounterexampleKind::BudgetExhausted;
            });
            return exhausted ? Budget : Ok;
        }

        if (bounds->parsed()) {
            check_path_length(bd_n);
            std::ostringstream real;
            real << std::setprecision(17) << min_complexity_lower_bound(bd_n);
            out << "min_complexity_lower_bound=" << real.str() << "\n";
            out << "max_total_intersections=" << max_total_intersections(bd_n) << "\n";
            if (bd_genus) {
                const GenusParams gp{bd_genus};
                out << "genus_base=" << gp.base() << "\n";
                out << "comb_bound=" << comb_bound(bd_n, gp) << "\n";
            }
            if (intersections) {
                const Rational h = hempel_bound(intersections);
                out << "hempel_bound=" << h.to_string();
                if (!h.is_integer()) out << " (~" << std::setprecision(10) << h.to_double() << ")";
                out << "\n";
            }
            if (!from_start.empty()) {
                const PathIntersections p{bd_n, detail::parse_counts(from_start), detail::parse_counts(to_end)};
                out << "path_complexity=" << path_complexity(p) << "\n";
            }
            return Ok;
        }

        if (reftree->parsed()) {
            const ReferenceTree t = parse_tree(src.get());
            const TreeValidation v = validate_tree(t);
            if (!v.ok) throw InvariantError("invalid reference tree: " + v.problem);
            for (const ReferenceArc& arc : combined_arcs(t)) out << "arc " << arc.label << ": " << serialize(arc.graph) << "\n";
            const TreeVerdict verdict = is_dot_irreducible_tree(t, opts);
            if (verdict.plan) out << format_plan(*verdict.plan);
            out << format_verdict(verdict) << "\n";
            if (tree_assert_irreducible && !verdict.irreducible) return AssertionFailed;
            return Ok;
        }

        if (render_cmd->parsed()) {
            const SawtoothGraph g = detail::read_graph(src.get());
            if (!svg_out.empty()) {
                detail::write_file(svg_out, render(g, RenderFormat::Svg));
                out << "wrote " << svg_out << "\n";
            } else {
                out << render(g, RenderFormat::Ascii);
            }
            return Ok;
        }
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return Usage;
    } catch (const InvariantError& e) {
        err << "invalid: " << e.what() << "\n";
        return Invariant;
    } catch (const SearchBudgetExhausted& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return Budget;
    }
    return Usage;
}

}  // namespace dgl
