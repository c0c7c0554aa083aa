// Reference trees: arcs meeting at points, whose single edges and two-edge
// paths each act as a reference arc.

#pragma once

#include "dotgraph/core.hpp"
#include "dotgraph/surgery.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace dotgraph {

struct TreeEdge {
    std::string from;
    std::string to;
    DotSequence sequence;  // read from `from` towards `to`
};

struct ReferenceTree {
    int n = 3;
    std::vector<TreeEdge> edges;

    std::set<std::string> nodes() const {
        std::set<std::string> out;
        for (const TreeEdge& e : edges) {
            out.insert(e.from);
            out.insert(e.to);
        }
        return out;
    }
};

/// `n=INT` line, then `edge A B : [seg,...]` (or `: seq=...`) lines. Blank
/// lines and `#` comments are ignored.
inline ReferenceTree parse_tree(std::string_view text) {
    ReferenceTree t;
    bool have_n = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        auto fail = [&](const std::string& what) {
            throw ParseError("line " + std::to_string(lineno) + ": " + what);
        };
        if (!have_n) {
            if (word.rfind("n=", 0) != 0) fail("expected 'n=INT'");
            std::string rest = word.substr(2);
            std::string extra;
            if (ls >> extra) fail("trailing input after n=");
            try {
                std::size_t used = 0;
                t.n = std::stoi(rest, &used);
                if (used != rest.size()) fail("expected integer after n=");
            } catch (const std::logic_error&) {
                fail("expected integer after n=");
            }
            check_path_length(t.n);
            have_n = true;
            continue;
        }
        if (word != "edge") fail("expected 'edge'");
        std::string a, b, colon;
        if (!(ls >> a >> b >> colon) || colon != ":") fail("expected 'edge ID ID : body'");
        std::string body;
        std::getline(ls, body);
        DotSequence seq = parse_any("n=" + std::to_string(t.n) + ";" + body);
        t.edges.push_back({a, b, std::move(seq)});
    }
    if (!have_n) throw ParseError("missing 'n=INT' header");
    return t;
}

struct TreeValidation {
    bool ok = false;
    std::string problem;
};

/// Connected with one edge fewer than nodes. Acyclicity of reference graphs
/// is a geometric fact; here it is an input requirement.
inline TreeValidation validate_tree(const ReferenceTree& t) {
    if (t.edges.empty()) return {false, "tree has no edges"};
    std::map<std::string, std::string> parent;
    for (const std::string& v : t.nodes()) parent[v] = v;
    auto find = [&](std::string x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const TreeEdge& e : t.edges) {
        const std::string ra = find(e.from), rb = find(e.to);
        if (ra == rb) return {false, "cycle through edge " + e.from + "-" + e.to};
        parent[ra] = rb;
    }
    std::set<std::string> roots;
    for (const std::string& v : t.nodes()) roots.insert(find(v));
    if (roots.size() > 1) return {false, "disconnected: " + std::to_string(roots.size()) + " components"};
    return {true, {}};
}

/// A reference arc of the tree: a single edge or a path a-b-c.
struct ReferenceArc {
    std::string label;  // "a-b" or "a-b-c"
    SawtoothGraph graph;
};

namespace detail {

/// Sequence read from `from` along the edge; reversed if the edge is stored
/// the other way round.
inline std::vector<int> oriented(const TreeEdge& e, const std::string& from) {
    std::vector<int> v = e.sequence.entries();
    if (e.from != from) std::reverse(v.begin(), v.end());
    return v;
}

inline const std::string& other_end(const TreeEdge& e, const std::string& v) { return e.from == v ? e.to : e.from; }

}  // namespace detail

/// Every edge in input order, then every two-edge path a-b-c with a < c,
/// sorted by (a, c), read from a to c and normalized.
inline std::vector<ReferenceArc> combined_arcs(const ReferenceTree& t) {
    std::vector<ReferenceArc> out;
    for (const TreeEdge& e : t.edges) out.push_back({e.from + "-" + e.to, to_sawtooth(e.sequence)});

    std::vector<std::tuple<std::string, std::string, std::string, std::vector<int>>> paths;
    for (const std::string& mid : t.nodes()) {
        std::vector<const TreeEdge*> incident;
        for (const TreeEdge& e : t.edges)
            if (e.from == mid || e.to == mid) incident.push_back(&e);
        for (std::size_t i = 0; i < incident.size(); ++i) {
            for (std::size_t j = i + 1; j < incident.size(); ++j) {
                const TreeEdge* first = incident[i];
                const TreeEdge* second = incident[j];
                if (detail::other_end(*second, mid) < detail::other_end(*first, mid)) std::swap(first, second);
                const std::string& a = detail::other_end(*first, mid);
                const std::string& c = detail::other_end(*second, mid);
                std::vector<int> seq = detail::oriented(*first, a);
                const std::vector<int> tail = detail::oriented(*second, mid);
                seq.insert(seq.end(), tail.begin(), tail.end());
                paths.emplace_back(a, c, mid, std::move(seq));
            }
        }
    }
    std::sort(paths.begin(), paths.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) <
               std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
    });
    for (auto& [a, c, mid, seq] : paths)
        out.push_back({a + "-" + mid + "-" + c, to_sawtooth(DotSequence(t.n, std::move(seq)))});
    return out;
}

struct TreeVerdict {
    bool irreducible = true;
    std::optional<std::string> reducible_arc;
    std::optional<SurgeryPlan> plan;
};

/// Irreducible when every combined arc, single edges included, is. Budget
/// exhaustion is rethrown with the arc's label.
inline TreeVerdict is_dot_irreducible_tree(const ReferenceTree& t, SearchOptions opts = {}) {
    if (auto v = validate_tree(t); !v.ok) throw InvariantError("invalid reference tree: " + v.problem);
    for (const ReferenceArc& arc : combined_arcs(t)) {
        std::optional<SurgeryPlan> plan;
        try {
            if (pigeonhole_applies(arc.graph)) return {false, arc.label, std::nullopt};
            plan = find_surgery(arc.graph, opts);
        } catch (const SearchBudgetExhausted& e) {
            throw SearchBudgetExhausted("arc " + arc.label + ": " + e.what());
        }
        if (plan) return {false, arc.label, std::move(plan)};
    }
    return {};
}

inline std::string format_verdict(const TreeVerdict& v) {
    if (v.irreducible) return "tree=irreducible";
    return "tree=reducible(arc=" + v.reducible_arc.value_or("?") + ")";
}

}  // namespace dotgraph
