// Dot sequences, sawtooth graphs, the bracket text format and sawtooth
// normalization by commutations.
//
// A dot sequence records, along a reference arc, which intermediate curve
// (index 1..n-1 of a path v_0..v_n) is met at each intersection. Its sawtooth
// form only ascends by +1 and is written as a list of ascending runs [p/q].

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dotgraph {

/// Malformed text input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural invariant.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value outside 1..n-1, or a path length below 3.
class RangeError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

inline void check_path_length(int n) {
    if (n < 3) throw RangeError("path length n=" + std::to_string(n) + " must be at least 3");
}

inline void check_value(int n, int value) {
    if (value < 1 || value > n - 1)
        throw RangeError("value " + std::to_string(value) + " outside [1, " + std::to_string(n - 1) + "]");
}

/// Raw intersection sequence along a reference arc.
class DotSequence {
public:
    DotSequence(int n, std::vector<int> entries) : n_(n), entries_(std::move(entries)) {
        check_path_length(n_);
        for (int e : entries_) check_value(n_, e);
    }

    int n() const { return n_; }
    const std::vector<int>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const DotSequence&, const DotSequence&) = default;

private:
    int n_;
    std::vector<int> entries_;
};

/// Ascending run first, first+1, ..., last.
struct Segment {
    int first = 1;
    int last = 1;

    int length() const { return last - first + 1; }
    bool contains(int value) const { return first <= value && value <= last; }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

/// Position of a dot in the flattened sequence (0-based) and its value.
struct DotRef {
    int position = 0;
    int value = 0;

    friend bool operator==(const DotRef&, const DotRef&) = default;
    friend auto operator<=>(const DotRef&, const DotRef&) = default;
};

namespace detail {

inline std::vector<int> expand(std::span<const Segment> segments) {
    std::vector<int> out;
    for (const Segment& s : segments)
        for (int v = s.first; v <= s.last; ++v) out.push_back(v);
    return out;
}

/// Cuts a sequence into maximal ascending (+1) runs.
inline std::vector<Segment> cut_runs(std::span<const int> values) {
    std::vector<Segment> out;
    for (int v : values) {
        if (!out.empty() && v == out.back().last + 1)
            out.back().last = v;
        else
            out.push_back({v, v});
    }
    return out;
}

inline bool is_sawtooth(std::span<const int> values) {
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] < values[i + 1] && values[i + 1] != values[i] + 1) return false;
    return true;
}

}  // namespace detail

/// Sawtooth dot graph as a list of maximal ascending segments.
class SawtoothGraph {
public:
    SawtoothGraph(int n, std::vector<Segment> segments) : n_(n), segments_(std::move(segments)) {
        check_path_length(n_);
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const Segment& s = segments_[i];
            if (s.first > s.last)
                throw InvariantError("segment " + std::to_string(i) + " [" + std::to_string(s.first) + "/" +
                                     std::to_string(s.last) + "] has start above end");
            check_value(n_, s.first);
            check_value(n_, s.last);
            if (i > 0 && s.first > segments_[i - 1].last) {
                const Segment& prev = segments_[i - 1];
                throw InvariantError("segments " + std::to_string(i - 1) + "," + std::to_string(i) + " [" +
                                     std::to_string(prev.first) + "/" + std::to_string(prev.last) + "," +
                                     std::to_string(s.first) + "/" + std::to_string(s.last) +
                                     "] are not maximal sawtooth runs");
            }
        }
        values_ = detail::expand(segments_);
    }

    explicit SawtoothGraph(int n) : SawtoothGraph(n, {}) {}

    int n() const { return n_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const Segment& segment(std::size_t i) const { return segments_.at(i); }
    std::size_t segment_count() const { return segments_.size(); }

    /// Flattened dot values in order.
    const std::vector<int>& values() const { return values_; }
    std::size_t dot_count() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    /// Position of the first dot of each segment.
    std::vector<int> segment_offsets() const {
        std::vector<int> out;
        int pos = 0;
        for (const Segment& s : segments_) {
            out.push_back(pos);
            pos += s.length();
        }
        return out;
    }

    friend bool operator==(const SawtoothGraph& a, const SawtoothGraph& b) {
        return a.n_ == b.n_ && a.segments_ == b.segments_;
    }

private:
    int n_;
    std::vector<Segment> segments_;
    std::vector<int> values_;
};

inline DotSequence flatten(const SawtoothGraph& g) { return DotSequence(g.n(), g.values()); }

/// Groups a sequence that is already in sawtooth form into its segments.
inline SawtoothGraph segment(const DotSequence& s) {
    if (!detail::is_sawtooth(s.entries())) throw InvariantError("sequence is not in sawtooth form");
    return SawtoothGraph(s.n(), detail::cut_runs(s.entries()));
}

/// One commutation performed by normalization: entries at `index` and
/// `index + 1` were exchanged.
struct Swap {
    std::size_t index = 0;
    int left = 0;   // value at index before the swap
    int right = 0;  // value at index+1 before the swap
};

/// Brings a sequence into sawtooth form by commuting adjacent entries whose
/// values differ by at least 2. Always swaps the leftmost ascent that is not
/// a +1 step; each swap lowers sum(k * j_k), so this terminates.
inline std::vector<int> sawtooth_values(std::vector<int> values, std::vector<Swap>* trace = nullptr) {
    std::size_t i = 0;
    while (i + 1 < values.size()) {
        if (values[i] < values[i + 1] && values[i + 1] != values[i] + 1) {
            if (trace) trace->push_back({i, values[i], values[i + 1]});
            std::swap(values[i], values[i + 1]);
            // Entries left of i-1 are untouched, so the leftmost violation is at i-1 or later.
            i = i == 0 ? 0 : i - 1;
        } else {
            ++i;
        }
    }
    return values;
}

inline SawtoothGraph to_sawtooth(const DotSequence& s, std::vector<Swap>* trace = nullptr) {
    const std::vector<int> values = sawtooth_values(s.entries(), trace);
    return SawtoothGraph(s.n(), detail::cut_runs(values));
}

// ---------------------------------------------------------------------------
// Text format
//
//   file    := header ";" body
//   header  := "n=" INT
//   body    := "seq=" [INT ("," INT)*] | "[" [seg ("," seg)*] "]"
//   seg     := INT "/" INT
//
// Whitespace around tokens is ignored.

namespace detail {

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    void expect_word(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
        pos_ += word.size();
    }

    bool accept_word(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    int integer() {
        skip_ws();
        int value = 0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        if (begin < end && *begin == '+') fail("unexpected '+'");
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{}) fail("expected integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return value;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline int parse_header(Scanner& sc) {
    sc.expect_word("n=");
    int n = sc.integer();
    sc.expect(';');
    return n;
}

inline std::vector<int> parse_int_list(Scanner& sc) {
    std::vector<int> out;
    if (sc.at_end()) return out;
    out.push_back(sc.integer());
    while (sc.accept(',')) out.push_back(sc.integer());
    return out;
}

inline std::vector<Segment> parse_segment_list(Scanner& sc) {
    std::vector<Segment> out;
    sc.expect('[');
    if (sc.accept(']')) return out;
    do {
        Segment s;
        s.first = sc.integer();
        sc.expect('/');
        s.last = sc.integer();
        out.push_back(s);
    } while (sc.accept(','));
    sc.expect(']');
    return out;
}

}  // namespace detail

inline DotSequence parse_sequence(std::string_view text) {
    detail::Scanner sc(text);
    int n = detail::parse_header(sc);
    sc.expect_word("seq=");
    std::vector<int> entries = detail::parse_int_list(sc);
    if (!sc.at_end()) sc.fail("trailing input");
    return DotSequence(n, std::move(entries));
}

inline SawtoothGraph parse_segments(std::string_view text) {
    detail::Scanner sc(text);
    int n = detail::parse_header(sc);
    std::vector<Segment> segs = detail::parse_segment_list(sc);
    if (!sc.at_end()) sc.fail("trailing input");
    return SawtoothGraph(n, std::move(segs));
}

/// Either body form, as a raw sequence. Bracket bodies are expanded without
/// the maximality check so that non-sawtooth input can still be normalized.
inline DotSequence parse_any(std::string_view text) {
    detail::Scanner sc(text);
    int n = detail::parse_header(sc);
    std::vector<int> entries;
    if (sc.accept_word("seq=")) {
        entries = detail::parse_int_list(sc);
    } else {
        std::vector<Segment> segs = detail::parse_segment_list(sc);
        for (std::size_t i = 0; i < segs.size(); ++i)
            if (segs[i].first > segs[i].last)
                throw InvariantError("segment " + std::to_string(i) + " has start above end");
        entries = detail::expand(segs);
    }
    if (!sc.at_end()) sc.fail("trailing input");
    return DotSequence(n, std::move(entries));
}

inline std::string format_segments(std::span<const Segment> segments) {
    std::string out = "[";
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(segments[i].first) + "/" + std::to_string(segments[i].last);
    }
    return out + "]";
}

inline std::string serialize(const SawtoothGraph& g) {
    return "n=" + std::to_string(g.n()) + "; " + format_segments(g.segments());
}

inline std::string serialize(const DotSequence& s) {
    std::string out = "n=" + std::to_string(s.n()) + "; seq=";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.entries()[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

enum class RenderFormat { Ascii, Svg };

/// Rows are values n-1 down to 1, columns are dot positions.
inline std::string render_ascii(const SawtoothGraph& g) {
    const auto& values = g.values();
    const int width = static_cast<int>(std::to_string(g.n() - 1).size());
    std::string out;
    for (int v = g.n() - 1; v >= 1; --v) {
        std::string label = std::to_string(v);
        out += std::string(static_cast<std::size_t>(width) - label.size(), ' ') + label + "|";
        for (int x : values) out += (x == v) ? '*' : '.';
        out += '\n';
    }
    return out;
}

inline std::string render_svg(const SawtoothGraph& g) {
    auto cx = [](int k) { return 40 * k + 20; };
    auto cy = [&](int value) { return 40 * (g.n() - value) + 20; };
    const int width = 40 * static_cast<int>(g.dot_count()) + 40;
    const int height = 40 * g.n() + 40;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    int pos = 0;
    for (const Segment& s : g.segments()) {
        const int end = pos + s.length() - 1;
        os << "  <line x1=\"" << cx(pos) << "\" y1=\"" << cy(s.first) << "\" x2=\"" << cx(end) << "\" y2=\""
           << cy(s.last) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        pos = end + 1;
    }
    const auto& values = g.values();
    for (std::size_t k = 0; k < values.size(); ++k)
        os << "  <circle cx=\"" << cx(static_cast<int>(k)) << "\" cy=\"" << cy(values[k])
           << "\" r=\"6\" fill=\"black\"/>\n";
    os << "</svg>\n";
    return os.str();
}

inline std::string render(const SawtoothGraph& g, RenderFormat format) {
    return format == RenderFormat::Ascii ? render_ascii(g) : render_svg(g);
}

}  // namespace dotgraph
