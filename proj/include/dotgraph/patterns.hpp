// Surgery patterns on consecutive segment windows, and shape classification
// (spindles, complete triangles, exponent shapes, combs, slopes).

#pragma once

#include "dotgraph/core.hpp"
#include "dotgraph/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dotgraph {

enum class PatternKind {
    Box,
    HexagonT1,
    HexagonT2,
    DoubleBox,
    LeftHalfBox,
    RightHalfBox,
    DoubleHexagon,
    HorizontalLine,
};

inline std::string_view to_string(PatternKind k) {
    switch (k) {
        case PatternKind::Box: return "Box";
        case PatternKind::HexagonT1: return "HexagonT1";
        case PatternKind::HexagonT2: return "HexagonT2";
        case PatternKind::DoubleBox: return "DoubleBox";
        case PatternKind::LeftHalfBox: return "LeftHalfBox";
        case PatternKind::RightHalfBox: return "RightHalfBox";
        case PatternKind::DoubleHexagon: return "DoubleHexagon";
        case PatternKind::HorizontalLine: return "HorizontalLine";
    }
    return "?";
}

/// Half boxes are the only kinds that do not admit a surgery on their own.
inline bool certifies_reduction(PatternKind k) {
    return k != PatternKind::LeftHalfBox && k != PatternKind::RightHalfBox;
}

struct PatternMatch {
    PatternKind kind = PatternKind::Box;
    std::vector<int> segment_indices;

    friend bool operator==(const PatternMatch&, const PatternMatch&) = default;
};

/// `KIND @ segs=i,j[,k]`
inline std::string format_match(const PatternMatch& m) {
    std::string out = std::string(to_string(m.kind)) + " @ segs=";
    for (std::size_t i = 0; i < m.segment_indices.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(m.segment_indices[i]);
    }
    return out;
}

// Conditions on segment tuples. [p1/q1, p2/q2(, p3/q3)].

inline bool box_condition(Segment a, Segment b) { return a.first <= b.first && a.last <= b.last; }
inline bool left_half_condition(Segment a, Segment b) { return a.first <= b.first; }
inline bool right_half_condition(Segment a, Segment b) { return a.last <= b.last; }
inline bool horizontal_condition(Segment a, Segment b) { return a.last == b.first; }

inline bool hexagon_t1_condition(Segment a, Segment b, Segment c) {
    return a.first <= b.first && a.last <= c.last && c.first <= b.last;
}

inline bool hexagon_t2_condition(Segment a, Segment b, Segment c) {
    return a.first <= c.first && b.last <= c.last && b.first <= a.last;
}

inline bool double_box_condition(Segment a, Segment b, Segment c) {
    return a.last <= b.last && b.first <= c.first && a.first <= c.last + 1;
}

/// Window i..j: (i,i+1) a left half box, (j-1,j) a right half box, every
/// segment strictly inside the window starts above min(p_i, p_j) and ends
/// below max(q_i, q_j).
inline bool double_hexagon_condition(std::span<const Segment> segs, std::size_t i, std::size_t j) {
    if (j < i + 2 || j >= segs.size()) return false;
    if (!left_half_condition(segs[i], segs[i + 1]) || !right_half_condition(segs[j - 1], segs[j])) return false;
    const int low = std::min(segs[i].first, segs[j].first);
    const int high = std::max(segs[i].last, segs[j].last);
    for (std::size_t m = i + 1; m < j; ++m)
        if (segs[m].first <= low || segs[m].last >= high) return false;
    return true;
}

namespace detail {

template <class Pred>
std::vector<PatternMatch> scan_pairs(const SawtoothGraph& g, PatternKind kind, Pred pred) {
    std::vector<PatternMatch> out;
    const auto& s = g.segments();
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (pred(s[i], s[i + 1])) out.push_back({kind, {static_cast<int>(i), static_cast<int>(i + 1)}});
    return out;
}

template <class Pred>
std::vector<PatternMatch> scan_triples(const SawtoothGraph& g, PatternKind kind, Pred pred) {
    std::vector<PatternMatch> out;
    const auto& s = g.segments();
    for (std::size_t i = 0; i + 2 < s.size(); ++i)
        if (pred(s[i], s[i + 1], s[i + 2]))
            out.push_back({kind, {static_cast<int>(i), static_cast<int>(i + 1), static_cast<int>(i + 2)}});
    return out;
}

}  // namespace detail

inline std::vector<PatternMatch> find_boxes(const SawtoothGraph& g) {
    return detail::scan_pairs(g, PatternKind::Box, box_condition);
}

inline std::vector<PatternMatch> find_hexagons_t1(const SawtoothGraph& g) {
    return detail::scan_triples(g, PatternKind::HexagonT1, hexagon_t1_condition);
}

inline std::vector<PatternMatch> find_hexagons_t2(const SawtoothGraph& g) {
    return detail::scan_triples(g, PatternKind::HexagonT2, hexagon_t2_condition);
}

inline std::vector<PatternMatch> find_double_boxes(const SawtoothGraph& g) {
    return detail::scan_triples(g, PatternKind::DoubleBox, double_box_condition);
}

/// Pairs that are full boxes are left to find_boxes.
inline std::vector<PatternMatch> find_half_boxes(const SawtoothGraph& g) {
    std::vector<PatternMatch> out;
    const auto& s = g.segments();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (box_condition(s[i], s[i + 1])) continue;
        const std::vector<int> idx{static_cast<int>(i), static_cast<int>(i + 1)};
        if (left_half_condition(s[i], s[i + 1])) out.push_back({PatternKind::LeftHalfBox, idx});
        if (right_half_condition(s[i], s[i + 1])) out.push_back({PatternKind::RightHalfBox, idx});
    }
    return out;
}

/// Reports the full index window i..j of each double hexagon.
inline std::vector<PatternMatch> find_double_hexagons(const SawtoothGraph& g) {
    std::vector<PatternMatch> out;
    const auto& s = g.segments();
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 2; j < s.size(); ++j) {
            if (!double_hexagon_condition(s, i, j)) continue;
            PatternMatch m{PatternKind::DoubleHexagon, {}};
            for (std::size_t k = i; k <= j; ++k) m.segment_indices.push_back(static_cast<int>(k));
            out.push_back(std::move(m));
        }
    }
    return out;
}

inline std::vector<PatternMatch> find_horizontal_lines(const SawtoothGraph& g) {
    return detail::scan_pairs(g, PatternKind::HorizontalLine, horizontal_condition);
}

/// Every detector, in a fixed kind order.
inline std::vector<PatternMatch> find_all_patterns(const SawtoothGraph& g) {
    std::vector<PatternMatch> out;
    auto append = [&out](std::vector<PatternMatch> v) { out.insert(out.end(), v.begin(), v.end()); };
    append(find_boxes(g));
    append(find_hexagons_t1(g));
    append(find_hexagons_t2(g));
    append(find_double_boxes(g));
    append(find_half_boxes(g));
    append(find_double_hexagons(g));
    append(find_horizontal_lines(g));
    return out;
}

inline bool has_certifying_pattern(const SawtoothGraph& g) {
    for (const PatternMatch& m : find_all_patterns(g))
        if (certifies_reduction(m.kind)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Spindles

struct SpindleSpec {
    int n = 3;
    int k = 0;
};

namespace detail {

/// [n-1/n-1, ..., k+2/n-1, 1/n-1, 1/k, ..., 1/1]; valid for n >= 2.
inline std::vector<Segment> spindle_segments(int n, int k) {
    std::vector<Segment> out;
    for (int p = n - 1; p >= k + 2; --p) out.push_back({p, n - 1});
    out.push_back({1, n - 1});
    for (int q = k; q >= 1; --q) out.push_back({1, q});
    return out;
}

/// Greedy leftmost order-preserving embedding by segment containment.
/// Returns target indices, or nothing if some segment has no image.
inline std::optional<std::vector<int>> embed_segments(std::span<const Segment> segs, std::span<const Segment> host) {
    std::vector<int> image;
    std::size_t j = 0;
    for (const Segment& s : segs) {
        while (j < host.size() && !(host[j].first <= s.first && s.last <= host[j].last)) ++j;
        if (j == host.size()) return std::nullopt;
        image.push_back(static_cast<int>(j++));
    }
    return image;
}

struct SpindleEmbedding {
    int k = 0;
    std::vector<std::pair<int, int>> mapping;
};

inline std::optional<SpindleEmbedding> embed_in_spindle(std::span<const Segment> segs, int n) {
    for (int k = 0; k <= n - 2; ++k) {
        const auto host = spindle_segments(n, k);
        if (auto image = embed_segments(segs, host)) {
            SpindleEmbedding e{k, {}};
            for (std::size_t i = 0; i < image->size(); ++i) e.mapping.emplace_back(static_cast<int>(i), (*image)[i]);
            return e;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline SawtoothGraph make_spindle(SpindleSpec spec) {
    check_path_length(spec.n);
    if (spec.k < 0 || spec.k > spec.n - 2)
        throw RangeError("spindle index k=" + std::to_string(spec.k) + " outside [0, " + std::to_string(spec.n - 2) +
                         "]");
    return SawtoothGraph(spec.n, detail::spindle_segments(spec.n, spec.k));
}

inline SawtoothGraph lower_complete_triangle(int n) { return make_spindle({n, n - 2}); }
inline SawtoothGraph upper_complete_triangle(int n) { return make_spindle({n, 0}); }

inline std::optional<int> is_spindle(const SawtoothGraph& g) {
    if (g.empty()) return std::nullopt;
    for (int k = 0; k <= g.n() - 2; ++k)
        if (g.segments() == detail::spindle_segments(g.n(), k)) return k;
    return std::nullopt;
}

using SpindleEmbedding = detail::SpindleEmbedding;

/// Smallest k such that g's segments embed, in order and by containment,
/// into the spindle at k. The empty graph embeds at k=0.
inline std::optional<SpindleEmbedding> is_subgraph_of_spindle(const SawtoothGraph& g) {
    return detail::embed_in_spindle(g.segments(), g.n());
}

// ---------------------------------------------------------------------------
// Exponent shapes and combs

enum class Side { Lower, Upper };

/// Lower shape: at most `base` ones, and for each i at most `base` copies of
/// i+1 in every gap delimited by copies of i (including before the first and
/// after the last). Upper shape mirrors this with n-1 as the extreme value
/// and i-1 as the neighbour. Values outside the examined range are ignored.
inline bool is_exponent_shape(std::span<const int> values, int n, int base, Side side) {
    if (base < 1) throw RangeError("exponent base must be positive");
    const int extreme = side == Side::Lower ? 1 : n - 1;
    const int step = side == Side::Lower ? 1 : -1;
    if (std::count(values.begin(), values.end(), extreme) > base) return false;
    for (int i = extreme; i + step >= 1 && i + step <= n - 1; i += step) {
        const int next = i + step;
        int gap = 0;
        for (int v : values) {
            if (v == i) {
                gap = 0;
            } else if (v == next && ++gap > base) {
                return false;
            }
        }
    }
    return true;
}

inline bool is_exponent_shape(const SawtoothGraph& g, int base, Side side) {
    return is_exponent_shape(g.values(), g.n(), base, side);
}

/// Value-threshold split of a comb: spindle-like middle over [lower, upper].
struct CombSplit {
    int lower = 1;
    int upper = 1;
};

inline int genus_base(int genus) {
    if (genus < 2) throw RangeError("genus must be at least 2");
    return genus == 2 ? 44 : 15 * (6 * genus - 8);
}

/// Searches thresholds a <= b (smallest a, then largest b) such that dots in
/// [a, b], renumbered from 1, embed in a spindle, dots above b form an upper
/// exponent shape and dots below a a lower one, both with the genus base.
inline std::optional<CombSplit> classify_comb(const SawtoothGraph& g, int genus) {
    const int base = genus_base(genus);
    const int n = g.n();
    const auto& values = g.values();
    for (int a = 1; a <= n - 1; ++a) {
        std::vector<int> below;
        for (int v : values)
            if (v < a) below.push_back(v);
        if (!is_exponent_shape(below, n, base, Side::Lower)) continue;
        for (int b = n - 1; b >= a; --b) {
            std::vector<int> above, middle;
            for (int v : values) {
                if (v > b)
                    above.push_back(v);
                else if (v >= a)
                    middle.push_back(v - a + 1);
            }
            if (!is_exponent_shape(above, n, base, Side::Upper)) continue;
            const auto mid_segments = detail::cut_runs(sawtooth_values(middle));
            if (detail::embed_in_spindle(mid_segments, b - a + 2)) return CombSplit{a, b};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Slopes and multiplicities

struct Slopes {
    std::optional<Rational> upper;
    std::optional<Rational> lower;
};

/// Splits around the unique longest segment; the upper slope runs over the
/// start values before it, the lower slope over the end values after it.
inline Slopes slopes(const SawtoothGraph& g) {
    const auto& s = g.segments();
    if (s.empty()) return {};
    int longest = 0;
    for (const Segment& seg : s) longest = std::max(longest, seg.length());
    if (std::count_if(s.begin(), s.end(), [&](const Segment& seg) { return seg.length() == longest; }) != 1)
        return {};
    const auto mid = static_cast<std::size_t>(
        std::find_if(s.begin(), s.end(), [&](const Segment& seg) { return seg.length() == longest; }) - s.begin());

    Slopes out;
    if (mid >= 2) {
        const auto count = static_cast<std::int64_t>(mid);
        out.upper = Rational(s[mid - 1].first - s[0].first, count - 1);
    }
    if (s.size() - mid - 1 >= 2) {
        const auto count = static_cast<std::int64_t>(s.size() - mid - 1);
        out.lower = Rational(s.back().last - s[mid + 1].last, count - 1);
    }
    return out;
}

inline int value_multiplicity(const SawtoothGraph& g, int v) {
    check_value(g.n(), v);
    return static_cast<int>(std::count(g.values().begin(), g.values().end(), v));
}

// ---------------------------------------------------------------------------
// Aggregate report

struct ShapeReport {
    std::optional<int> spindle;
    bool lower_triangle = false;
    bool upper_triangle = false;
    std::optional<SpindleEmbedding> subgraph_of_spindle;
    std::optional<Rational> upper_slope;
    std::optional<Rational> lower_slope;
};

inline ShapeReport classify_shape(const SawtoothGraph& g) {
    ShapeReport r;
    r.spindle = is_spindle(g);
    r.lower_triangle = r.spindle == g.n() - 2;
    r.upper_triangle = r.spindle == 0;
    r.subgraph_of_spindle = is_subgraph_of_spindle(g);
    const Slopes sl = slopes(g);
    r.upper_slope = sl.upper;
    r.lower_slope = sl.lower;
    return r;
}

}  // namespace dotgraph
