// Exhaustive enumeration of small sawtooth graphs and the census of maximal
// dot-irreducible graphs.

#pragma once

#include "dotgraph/core.hpp"
#include "dotgraph/patterns.hpp"
#include "dotgraph/surgery.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace dotgraph {

struct CensusConfig {
    int n = 3;
    int max_dots = 0;
    bool require_all_values = false;
    std::optional<std::vector<int>> shard_prefix;
    SearchOptions search;
};

inline void validate(const CensusConfig& cfg) {
    check_path_length(cfg.n);
    if (cfg.max_dots < 0) throw RangeError("max_dots must be non-negative");
    if (cfg.shard_prefix)
        for (int v : *cfg.shard_prefix) check_value(cfg.n, v);
}

namespace detail {

template <class Visit>
void enumerate_from(const CensusConfig& cfg, std::vector<Segment>& segs, std::vector<int>& flat, Visit& visit) {
    static const std::vector<int> no_prefix;
    const std::vector<int>& prefix = cfg.shard_prefix ? *cfg.shard_prefix : no_prefix;
    if (flat.size() >= prefix.size()) {
        bool keep = true;
        if (cfg.require_all_values) {
            std::vector<char> seen(static_cast<std::size_t>(cfg.n), 0);
            for (int v : flat) seen[static_cast<std::size_t>(v)] = 1;
            keep = std::count(seen.begin() + 1, seen.end(), 1) == cfg.n - 1;
        }
        if (keep) visit(SawtoothGraph(cfg.n, segs));
    }

    const int top = segs.empty() ? cfg.n - 1 : segs.back().last;
    const int room = cfg.max_dots - static_cast<int>(flat.size());
    for (int p = 1; p <= top; ++p) {
        for (int q = p; q <= cfg.n - 1 && q - p + 1 <= room; ++q) {
            const std::size_t base = flat.size();
            bool consistent = true;
            for (int v = p; v <= q; ++v) {
                const std::size_t at = flat.size();
                if (at < prefix.size() && prefix[at] != v) consistent = false;
                flat.push_back(v);
            }
            if (consistent) {
                segs.push_back({p, q});
                enumerate_from(cfg, segs, flat, visit);
                segs.pop_back();
            }
            flat.resize(base);
        }
    }
}

}  // namespace detail

/// Visits every valid sawtooth graph with values in [1, n-1] and at most
/// max_dots dots exactly once, in lexicographic segment order (a graph
/// precedes its extensions).
template <class Visit>
void enumerate_sawtooth(const CensusConfig& cfg, Visit&& visit) {
    validate(cfg);
    std::vector<Segment> segs;
    std::vector<int> flat;
    detail::enumerate_from(cfg, segs, flat, visit);
}

inline std::vector<SawtoothGraph> enumerate_all(const CensusConfig& cfg) {
    std::vector<SawtoothGraph> out;
    enumerate_sawtooth(cfg, [&](const SawtoothGraph& g) { out.push_back(g); });
    return out;
}

/// Single-dot insertions at every position with every value, renormalized.
inline std::vector<SawtoothGraph> single_dot_extensions(const SawtoothGraph& g) {
    std::vector<SawtoothGraph> out;
    const auto& values = g.values();
    for (std::size_t pos = 0; pos <= values.size(); ++pos) {
        for (int v = 1; v <= g.n() - 1; ++v) {
            std::vector<int> seq(values.begin(), values.end());
            seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), v);
            out.push_back(to_sawtooth(DotSequence(g.n(), std::move(seq))));
        }
    }
    return out;
}

/// Irreducible, and every single added dot makes it reducible.
inline bool is_maximal_irreducible(const SawtoothGraph& g, SearchOptions opts = {}) {
    if (is_dot_reducible(g, opts)) return false;
    for (const SawtoothGraph& ext : single_dot_extensions(g))
        if (!is_dot_reducible(ext, opts)) return false;
    return true;
}

enum class CounterexampleKind { MaximalNotSpindle, IrreducibleNotSubgraph, BudgetExhausted };

inline std::string_view to_string(CounterexampleKind k) {
    switch (k) {
        case CounterexampleKind::MaximalNotSpindle: return "maximal-not-spindle";
        case CounterexampleKind::IrreducibleNotSubgraph: return "irreducible-not-subgraph";
        case CounterexampleKind::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

struct Counterexample {
    CounterexampleKind kind;
    SawtoothGraph graph;
    std::string detail;
};

struct CensusReport {
    int n = 3;
    std::uint64_t total_enumerated = 0;
    std::uint64_t irreducible_count = 0;
    std::uint64_t maximal_count = 0;
    int max_irreducible_dots = 0;
    std::vector<SawtoothGraph> maximal_graphs;
    std::vector<SawtoothGraph> irreducible_graphs;
    std::vector<Counterexample> counterexamples;
    bool theorem_holds = true;
};

inline bool segment_order(const SawtoothGraph& a, const SawtoothGraph& b) {
    return std::lexicographical_compare(a.segments().begin(), a.segments().end(), b.segments().begin(),
                                        b.segments().end());
}

namespace detail {

inline void census_visit(CensusReport& r, const SawtoothGraph& g, SearchOptions opts) {
    ++r.total_enumerated;
    try {
        if (is_dot_reducible(g, opts)) return;
        ++r.irreducible_count;
        r.irreducible_graphs.push_back(g);
        r.max_irreducible_dots = std::max(r.max_irreducible_dots, static_cast<int>(g.dot_count()));
        if (!is_subgraph_of_spindle(g))
            r.counterexamples.push_back(
                {CounterexampleKind::IrreducibleNotSubgraph, g, "no order-preserving containment in any spindle"});

        std::uint64_t extensions = 0;
        for (const SawtoothGraph& ext : single_dot_extensions(g)) {
            if (!is_dot_reducible(ext, opts)) return;
            ++extensions;
        }
        ++r.maximal_count;
        r.maximal_graphs.push_back(g);
        if (!is_spindle(g))
            r.counterexamples.push_back({CounterexampleKind::MaximalNotSpindle, g,
                                         "all " + std::to_string(extensions) + " single-dot extensions reducible"});
    } catch (const SearchBudgetExhausted& e) {
        r.counterexamples.push_back({CounterexampleKind::BudgetExhausted, g, e.what()});
    }
}

}  // namespace detail

/// Decides every enumerated graph and checks that maximal irreducible
/// graphs are spindles and irreducible graphs embed in spindles.
inline CensusReport run_census(const CensusConfig& cfg) {
    CensusReport r;
    r.n = cfg.n;
    enumerate_sawtooth(cfg, [&](const SawtoothGraph& g) { detail::census_visit(r, g, cfg.search); });
    r.theorem_holds = r.counterexamples.empty();
    return r;
}

/// Union of shard reports, in canonical segment order.
inline CensusReport merge_reports(std::span<const CensusReport> parts, int n) {
    CensusReport r;
    r.n = n;
    for (const CensusReport& p : parts) {
        r.total_enumerated += p.total_enumerated;
        r.irreducible_count += p.irreducible_count;
        r.maximal_count += p.maximal_count;
        r.max_irreducible_dots = std::max(r.max_irreducible_dots, p.max_irreducible_dots);
        r.maximal_graphs.insert(r.maximal_graphs.end(), p.maximal_graphs.begin(), p.maximal_graphs.end());
        r.irreducible_graphs.insert(r.irreducible_graphs.end(), p.irreducible_graphs.begin(),
                                    p.irreducible_graphs.end());
        r.counterexamples.insert(r.counterexamples.end(), p.counterexamples.begin(), p.counterexamples.end());
    }
    std::stable_sort(r.maximal_graphs.begin(), r.maximal_graphs.end(), segment_order);
    std::stable_sort(r.irreducible_graphs.begin(), r.irreducible_graphs.end(), segment_order);
    std::stable_sort(r.counterexamples.begin(), r.counterexamples.end(),
                     [](const Counterexample& a, const Counterexample& b) { return segment_order(a.graph, b.graph); });
    r.theorem_holds = r.counterexamples.empty();
    return r;
}

/// Shards by the first flattened value; the empty graph, which no prefix
/// matches, is evaluated separately. Shards run on up to `jobs` threads.
inline CensusReport run_census_parallel(const CensusConfig& cfg, unsigned jobs) {
    validate(cfg);
    if (cfg.shard_prefix) return run_census(cfg);
    jobs = std::max(1u, jobs);

    std::vector<CensusConfig> shards;
    for (int v = 1; v <= cfg.n - 1; ++v) {
        CensusConfig c = cfg;
        c.shard_prefix = std::vector<int>{v};
        shards.push_back(c);
    }

    std::vector<CensusReport> parts(shards.size() + 1);
    {
        CensusConfig empty_only = cfg;
        empty_only.max_dots = 0;
        parts.back() = run_census(empty_only);
    }

    std::vector<std::thread> workers;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < shards.size(); i = next++) parts[i] = run_census(shards[i]);
        });
    }
    for (auto& t : workers) t.join();
    return merge_reports(parts, cfg.n);
}

/// Line-oriented report: `maximal: ... spindle=k` lines, counterexamples,
/// counts, and a final `theorem=holds|fails`.
inline std::string format_report(const CensusReport& r) {
    std::string out;
    for (const SawtoothGraph& g : r.maximal_graphs) {
        const auto k = is_spindle(g);
        out += "maximal: " + serialize(g) + " spindle=" + (k ? std::to_string(*k) : std::string("none")) + "\n";
    }
    for (const Counterexample& c : r.counterexamples)
        out += "counterexample: " + std::string(to_string(c.kind)) + " " + serialize(c.graph) + " (" + c.detail + ")\n";
    out += "total=" + std::to_string(r.total_enumerated) + "\n";
    out += "irreducible=" + std::to_string(r.irreducible_count) + "\n";
    out += "maximal=" + std::to_string(r.maximal_count) + "\n";
    out += "max_irreducible_dots=" + std::to_string(r.max_irreducible_dots) + "\n";
    out += std::string("theorem=") + (r.theorem_holds ? "holds" : "fails") + "\n";
    return out;
}

}  // namespace dotgraph
