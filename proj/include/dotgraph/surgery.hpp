// Dot-reducibility: the blocking-resolution search that produces surgery
// certificates, certificate verification, and applying a certificate.

#pragma once

#include "dotgraph/core.hpp"
#include "dotgraph/patterns.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dotgraph {

class SearchBudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ActionKind { ConnectPair, Remove };

/// ConnectPair joins two adjacent occurrences `a` < `b` of one value;
/// Remove drops `a` (and ignores `b`).
struct Action {
    ActionKind kind = ActionKind::ConnectPair;
    DotRef a;
    DotRef b;

    std::vector<DotRef> dots() const {
        if (kind == ActionKind::Remove) return {a};
        return {a, b};
    }

    static Action connect(DotRef x, DotRef y) {
        if (y.position < x.position) std::swap(x, y);
        return {ActionKind::ConnectPair, x, y};
    }
    static Action remove(DotRef d) { return {ActionKind::Remove, d, d}; }

    friend bool operator==(const Action&, const Action&) = default;
};

struct SurgeryGroup {
    std::vector<Action> actions;

    friend bool operator==(const SurgeryGroup&, const SurgeryGroup&) = default;
};

/// Certificate of dot-reducibility. Plans found by the blocking search have
/// no `pattern`; double box and double hexagon surgeries carry the match
/// they were built from.
struct SurgeryPlan {
    std::vector<SurgeryGroup> groups;
    std::vector<DotRef> eliminated;  // sorted by position
    std::optional<PatternMatch> pattern;

    friend bool operator==(const SurgeryPlan&, const SurgeryPlan&) = default;
};

struct SearchOptions {
    std::uint64_t node_budget = 1'000'000;
};

// ---------------------------------------------------------------------------
// Pairs and blockers

inline std::vector<std::pair<DotRef, DotRef>> adjacent_pairs(const SawtoothGraph& g, int p) {
    check_value(g.n(), p);
    std::vector<std::pair<DotRef, DotRef>> out;
    const auto& v = g.values();
    int prev = -1;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        if (v[static_cast<std::size_t>(i)] != p) continue;
        if (prev >= 0) out.push_back({{prev, p}, {i, p}});
        prev = i;
    }
    return out;
}

/// Dots of value p+1 or p-1 strictly between the two dots of the pair.
inline std::vector<DotRef> blockers(const SawtoothGraph& g, std::pair<DotRef, DotRef> pair) {
    const auto& v = g.values();
    const int p = pair.first.value;
    const int lo = std::min(pair.first.position, pair.second.position);
    const int hi = std::max(pair.first.position, pair.second.position);
    std::vector<DotRef> out;
    for (int i = lo + 1; i < hi; ++i) {
        const int x = v[static_cast<std::size_t>(i)];
        if (x == p + 1 || x == p - 1) out.push_back({i, x});
    }
    return out;
}

inline bool pigeonhole_applies(const SawtoothGraph& g) {
    const int cap = g.n() * (g.n() - 1);
    std::vector<int> count(static_cast<std::size_t>(g.n()), 0);
    for (int v : g.values())
        if (++count[static_cast<std::size_t>(v)] > cap) return true;
    return false;
}

namespace detail {

/// Groups actions into components of the blocking relation: a ConnectPair on
/// p is linked to every action touching a p+1 or p-1 dot between its ends.
inline std::vector<SurgeryGroup> group_actions(const std::vector<Action>& actions) {
    std::vector<std::size_t> parent(actions.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const Action& c = actions[i];
        if (c.kind != ActionKind::ConnectPair) continue;
        for (std::size_t j = 0; j < actions.size(); ++j) {
            if (i == j) continue;
            for (const DotRef& d : actions[j].dots()) {
                if (d.position > c.a.position && d.position < c.b.position &&
                    (d.value == c.a.value + 1 || d.value == c.a.value - 1)) {
                    parent[find(i)] = find(j);
                }
            }
        }
    }
    std::vector<SurgeryGroup> groups;
    std::vector<std::size_t> root_of_group;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of_group.begin(), root_of_group.end(), r);
        if (it == root_of_group.end()) {
            root_of_group.push_back(r);
            groups.push_back({});
            it = root_of_group.end() - 1;
        }
        groups[static_cast<std::size_t>(it - root_of_group.begin())].actions.push_back(actions[i]);
    }
    return groups;
}

/// A group with Remove actions eliminates the removed dots; a group of
/// ConnectPairs only eliminates every connected dot.
inline std::vector<DotRef> eliminated_dots(const std::vector<SurgeryGroup>& groups) {
    std::vector<DotRef> out;
    for (const SurgeryGroup& grp : groups) {
        const bool has_remove = std::any_of(grp.actions.begin(), grp.actions.end(),
                                            [](const Action& a) { return a.kind == ActionKind::Remove; });
        for (const Action& a : grp.actions) {
            if (has_remove && a.kind != ActionKind::Remove) continue;
            for (const DotRef& d : a.dots()) out.push_back(d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline SurgeryPlan make_plan(std::vector<SurgeryGroup> groups, std::optional<PatternMatch> pattern) {
    SurgeryPlan plan;
    plan.eliminated = eliminated_dots(groups);
    plan.groups = std::move(groups);
    plan.pattern = std::move(pattern);
    return plan;
}

/// Depth-first search over connect/remove resolutions of blocking dots.
///
/// Rules for the dots of value v = p+1 (then p-1) strictly between a
/// connected pair of p's, counting only dots not yet scheduled:
///   0     discharged
///   1     connect it to an adjacent occurrence of v, or remove it; removing
///         a v needs a connected v-pair elsewhere in the plan (an existing
///         one, or a new adjacent pair that is then resolved in turn)
///   2     connect one of them (not to the other) and remove the other
///   >= 3  dead end
/// A value that occurs once in the whole graph cannot be resolved, and only
/// one pair per value is ever connected.
class BlockingSearch {
public:
    BlockingSearch(const SawtoothGraph& g, SearchOptions opts)
        : values_(g.values()), n_(g.n()), budget_(opts.node_budget), count_(static_cast<std::size_t>(g.n()), 0) {
        for (int v : values_) ++count_[static_cast<std::size_t>(v)];
    }

    std::optional<std::vector<Action>> run() {
        for (int p = 1; p <= n_ - 1; ++p) {
            int prev = -1;
            for (int i = 0; i < size(); ++i) {
                if (value(i) != p) continue;
                if (prev >= 0) {
                    State st = initial_state();
                    connect(st, prev, i, 0);
                    if (auto r = solve(std::move(st))) return r;
                }
                prev = i;
            }
        }
        return std::nullopt;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    enum Mark : char { Free = 0, Connected = 1, Removed = 2 };

    struct Task {
        std::size_t action = 0;
        int side = 0;  // 0: value p+1, 1: value p-1
    };

    struct State {
        std::vector<char> mark;
        std::vector<int> pair_of_value;  // action index or -1
        std::vector<Action> actions;
        std::deque<Task> agenda;
    };

    int size() const { return static_cast<int>(values_.size()); }
    int value(int i) const { return values_[static_cast<std::size_t>(i)]; }
    DotRef ref(int i) const { return {i, value(i)}; }

    State initial_state() const {
        State st;
        st.mark.assign(values_.size(), Free);
        st.pair_of_value.assign(static_cast<std::size_t>(n_), -1);
        return st;
    }

    static bool free(const State& st, int i) { return st.mark[static_cast<std::size_t>(i)] == Free; }

    void connect(State& st, int x, int y, std::size_t insert_at) const {
        const Action act = Action::connect(ref(x), ref(y));
        st.mark[static_cast<std::size_t>(x)] = Connected;
        st.mark[static_cast<std::size_t>(y)] = Connected;
        st.pair_of_value[static_cast<std::size_t>(value(x))] = static_cast<int>(st.actions.size());
        const std::size_t idx = st.actions.size();
        st.actions.push_back(act);
        st.agenda.insert(st.agenda.begin() + static_cast<std::ptrdiff_t>(insert_at), {Task{idx, 0}, Task{idx, 1}});
    }

    void remove(State& st, int d) const {
        st.mark[static_cast<std::size_t>(d)] = Removed;
        st.actions.push_back(Action::remove(ref(d)));
    }

    int neighbour(int d, int dir) const {
        for (int i = d + dir; i >= 0 && i < size(); i += dir)
            if (value(i) == value(d)) return i;
        return -1;
    }

    std::optional<std::vector<Action>> solve(State st) {
        if (++nodes_ > budget_)
            throw SearchBudgetExhausted("surgery search exceeded " + std::to_string(budget_) + " nodes");
        if (st.agenda.empty()) return std::move(st.actions);

        const Task task = st.agenda.front();
        st.agenda.pop_front();
        // New pairs queue behind the other side of the current pair.
        const std::size_t insert_at = task.side == 0 ? 1 : 0;

        const Action& pair = st.actions[task.action];
        const int v = pair.a.value + (task.side == 0 ? 1 : -1);
        if (v < 1 || v > n_ - 1) return solve(std::move(st));

        std::vector<int> blocking;
        for (int i = pair.a.position + 1; i < pair.b.position; ++i)
            if (value(i) == v && free(st, i)) blocking.push_back(i);

        if (blocking.empty()) return solve(std::move(st));
        if (blocking.size() >= 3) return std::nullopt;
        if (count_[static_cast<std::size_t>(v)] == 1) return std::nullopt;

        const bool value_paired = st.pair_of_value[static_cast<std::size_t>(v)] >= 0;

        if (blocking.size() == 1) {
            const int d = blocking.front();
            if (!value_paired) {
                for (int dir : {-1, +1}) {
                    const int t = neighbour(d, dir);
                    if (t < 0 || !free(st, t)) continue;
                    State next = st;
                    connect(next, d, t, insert_at);
                    if (auto r = solve(std::move(next))) return r;
                }
            }
            if (value_paired) {
                State next = std::move(st);
                remove(next, d);
                return solve(std::move(next));
            }
            int prev = -1;
            for (int i = 0; i < size(); ++i) {
                if (value(i) != v) continue;
                if (prev >= 0 && prev != d && i != d && free(st, prev) && free(st, i)) {
                    State next = st;
                    remove(next, d);
                    connect(next, prev, i, insert_at);
                    if (auto r = solve(std::move(next))) return r;
                }
                prev = i;
            }
            return std::nullopt;
        }

        if (value_paired) return std::nullopt;
        const int d1 = blocking[0];
        const int d2 = blocking[1];
        for (auto [keep, drop] : {std::pair{d1, d2}, std::pair{d2, d1}}) {
            for (int dir : {-1, +1}) {
                const int t = neighbour(keep, dir);
                if (t < 0 || t == drop || !free(st, t)) continue;
                State next = st;
                connect(next, keep, t, insert_at);
                remove(next, drop);
                if (auto r = solve(std::move(next))) return r;
            }
        }
        return std::nullopt;
    }

    const std::vector<int>& values_;
    int n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> count_;
};

/// Double box [A,B,C]: low values connect B to C, the values above connect
/// A to B. Blocking dots are crossed rather than resolved.
inline std::vector<Action> double_box_actions(const SawtoothGraph& g, const PatternMatch& m) {
    const auto offsets = g.segment_offsets();
    const auto i = static_cast<std::size_t>(m.segment_indices.at(0));
    const Segment a = g.segment(i), b = g.segment(i + 1), c = g.segment(i + 2);
    const int oa = offsets[i], ob = offsets[i + 1], oc = offsets[i + 2];
    const int split = std::min(b.last, c.last);
    std::vector<Action> out;
    for (int v = c.first; v <= split; ++v)
        out.push_back(Action::connect({ob + v - b.first, v}, {oc + v - c.first, v}));
    for (int v = std::max(a.first, split + 1); v <= a.last; ++v)
        out.push_back(Action::connect({oa + v - a.first, v}, {ob + v - b.first, v}));
    return out;
}

/// Double hexagon over window i..j: two independent groups, one dropping the
/// lowest dot of segment j, the other the highest dot of segment i.
inline std::vector<SurgeryGroup> double_hexagon_groups(const SawtoothGraph& g, const PatternMatch& m) {
    const auto offsets = g.segment_offsets();
    const auto i = static_cast<std::size_t>(m.segment_indices.front());
    const auto j = static_cast<std::size_t>(m.segment_indices.back());
    const Segment left = g.segment(i), right = g.segment(j);
    const DotRef top_of_left{offsets[i] + left.length() - 1, left.last};
    const DotRef bottom_of_right{offsets[j], right.first};
    return {SurgeryGroup{{Action::remove(bottom_of_right)}}, SurgeryGroup{{Action::remove(top_of_left)}}};
}

inline std::optional<SurgeryPlan> pattern_plan(const SawtoothGraph& g) {
    if (auto boxes = find_double_boxes(g); !boxes.empty())
        return make_plan({SurgeryGroup{double_box_actions(g, boxes.front())}}, boxes.front());
    if (auto hexes = find_double_hexagons(g); !hexes.empty())
        return make_plan(double_hexagon_groups(g, hexes.front()), hexes.front());
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Deciding

enum class Verdict { Reducible, Irreducible, BudgetExhausted };

inline std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Reducible: return "reducible";
        case Verdict::Irreducible: return "irreducible";
        case Verdict::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

/// Blocking search first (lowest value, leftmost pair, connect before
/// remove, left target before right); if it finds nothing, the first double
/// box and then the first double hexagon are certified from their pattern.
/// Throws SearchBudgetExhausted when the node cap is hit.
inline std::optional<SurgeryPlan> find_surgery(const SawtoothGraph& g, SearchOptions opts = {}) {
    detail::BlockingSearch search(g, opts);
    if (auto actions = search.run()) return detail::make_plan(detail::group_actions(*actions), std::nullopt);
    return detail::pattern_plan(g);
}

struct Decision {
    Verdict verdict = Verdict::Irreducible;
    std::optional<SurgeryPlan> plan;
    bool pigeonhole = false;  // decided by the occurrence-count shortcut
};

/// Total decision: budget exhaustion becomes a verdict instead of an
/// exception, unless the pigeonhole shortcut already settles the graph.
inline Decision decide(const SawtoothGraph& g, SearchOptions opts = {}) {
    Decision d;
    d.pigeonhole = pigeonhole_applies(g);
    try {
        d.plan = find_surgery(g, opts);
        d.verdict = d.plan ? Verdict::Reducible : Verdict::Irreducible;
    } catch (const SearchBudgetExhausted&) {
        d.verdict = Verdict::BudgetExhausted;
    }
    if (d.pigeonhole) d.verdict = Verdict::Reducible;
    return d;
}

inline bool is_dot_reducible(const SawtoothGraph& g, SearchOptions opts = {}) {
    if (pigeonhole_applies(g)) return true;
    return find_surgery(g, opts).has_value();
}

// ---------------------------------------------------------------------------
// Verification and application

/// Independent certificate check. Returns a description of the first
/// violated condition, or nothing when the plan is valid for g.
inline std::optional<std::string> verify_plan(const SawtoothGraph& g, const SurgeryPlan& plan) {
    const auto& values = g.values();
    const int size = static_cast<int>(values.size());
    std::vector<Action> actions;
    for (const SurgeryGroup& grp : plan.groups) {
        if (grp.actions.empty()) return "empty group";
        actions.insert(actions.end(), grp.actions.begin(), grp.actions.end());
    }
    if (actions.empty()) return "plan has no actions";

    std::set<int> touched;
    for (const Action& a : actions) {
        for (const DotRef& d : a.dots()) {
            if (d.position < 0 || d.position >= size) return "dot position out of range";
            if (values[static_cast<std::size_t>(d.position)] != d.value) return "dot value does not match graph";
            if (!touched.insert(d.position).second) return "dot acted on twice";
        }
        if (a.kind == ActionKind::ConnectPair) {
            if (a.a.value != a.b.value || a.a.position >= a.b.position) return "malformed connect";
            for (int i = a.a.position + 1; i < a.b.position; ++i)
                if (values[static_cast<std::size_t>(i)] == a.a.value) return "connected dots are not adjacent";
        }
    }

    if (plan.eliminated.empty()) return "plan eliminates no dots";
    if (plan.eliminated != detail::eliminated_dots(plan.groups)) return "eliminated set does not follow the groups";

    if (plan.pattern) {
        const PatternMatch& m = *plan.pattern;
        const auto& segs = g.segments();
        const auto& idx = m.segment_indices;
        for (int i : idx)
            if (i < 0 || i >= static_cast<int>(segs.size())) return "pattern index out of range";
        if (m.kind == PatternKind::DoubleBox) {
            if (idx.size() != 3 || idx[1] != idx[0] + 1 || idx[2] != idx[0] + 2) return "malformed double box";
            const auto s = static_cast<std::size_t>(idx[0]);
            if (!double_box_condition(segs[s], segs[s + 1], segs[s + 2])) return "double box condition fails";
            if (plan.groups.size() != 1 || plan.groups[0].actions != detail::double_box_actions(g, m))
                return "double box actions do not match the pattern";
        } else if (m.kind == PatternKind::DoubleHexagon) {
            if (idx.size() < 3) return "malformed double hexagon";
            for (std::size_t k = 1; k < idx.size(); ++k)
                if (idx[k] != idx[k - 1] + 1) return "malformed double hexagon";
            if (!double_hexagon_condition(segs, static_cast<std::size_t>(idx.front()),
                                          static_cast<std::size_t>(idx.back())))
                return "double hexagon condition fails";
            if (plan.groups != detail::double_hexagon_groups(g, m))
                return "double hexagon actions do not match the pattern";
        } else {
            return "pattern kind is not certified directly";
        }
        return std::nullopt;
    }

    std::vector<int> pairs_per_value(static_cast<std::size_t>(g.n()), 0);
    for (const Action& a : actions)
        if (a.kind == ActionKind::ConnectPair && ++pairs_per_value[static_cast<std::size_t>(a.a.value)] > 1)
            return "more than one pair connected for value " + std::to_string(a.a.value);
    for (const Action& a : actions) {
        if (a.kind == ActionKind::ConnectPair) {
            for (int i = a.a.position + 1; i < a.b.position; ++i) {
                const int x = values[static_cast<std::size_t>(i)];
                if ((x == a.a.value + 1 || x == a.a.value - 1) && !touched.count(i))
                    return "unresolved blocker " + std::to_string(x) + "@" + std::to_string(i);
            }
        } else if (pairs_per_value[static_cast<std::size_t>(a.a.value)] == 0) {
            return "removal of " + std::to_string(a.a.value) + "@" + std::to_string(a.a.position) +
                   " without a connected pair of that value";
        }
    }
    if (plan.groups != detail::group_actions(actions)) return "groups are not the blocking components";
    return std::nullopt;
}

/// Deletes the eliminated dots and renormalizes.
inline SawtoothGraph apply_plan(const SawtoothGraph& g, const SurgeryPlan& plan) {
    if (plan.eliminated.empty()) throw InvariantError("plan eliminates no dots");
    if (auto err = verify_plan(g, plan)) throw InvariantError("plan does not match graph: " + *err);
    std::vector<int> kept;
    std::size_t e = 0;
    const auto& values = g.values();
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        if (e < plan.eliminated.size() && plan.eliminated[e].position == i) {
            ++e;
            continue;
        }
        kept.push_back(values[static_cast<std::size_t>(i)]);
    }
    return to_sawtooth(DotSequence(g.n(), std::move(kept)));
}

// ---------------------------------------------------------------------------
// Text

inline std::string format_dot(const DotRef& d) { return std::to_string(d.value) + "@" + std::to_string(d.position); }

/// `group: connect p@i-p@j; remove q@k` per group, optional pattern line,
/// then the eliminated dots.
inline std::string format_plan(const SurgeryPlan& plan) {
    std::string out;
    if (plan.pattern) out += "pattern: " + format_match(*plan.pattern) + "\n";
    for (const SurgeryGroup& grp : plan.groups) {
        out += "group:";
        for (std::size_t i = 0; i < grp.actions.size(); ++i) {
            const Action& a = grp.actions[i];
            out += i ? "; " : " ";
            if (a.kind == ActionKind::ConnectPair)
                out += "connect " + format_dot(a.a) + "-" + format_dot(a.b);
            else
                out += "remove " + format_dot(a.a);
        }
        out += "\n";
    }
    out += "eliminated:";
    for (std::size_t i = 0; i < plan.eliminated.size(); ++i) out += (i ? "," : " ") + format_dot(plan.eliminated[i]);
    return out + "\n";
}

}  // namespace dotgraph
