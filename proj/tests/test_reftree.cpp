#include "dotgraph/reftree.hpp"

#include <gtest/gtest.h>

using namespace dotgraph;

namespace {

// Three arcs meeting at o; each sequence is read towards o.
const char* kStar = R"(n=7
# three arcs meeting at one point
edge a o : [3/5]
edge b o : [3/6]
edge c o : [3/4]
)";

std::vector<std::string> labels(const std::vector<ReferenceArc>& arcs) {
    std::vector<std::string> out;
    for (const auto& a : arcs) out.push_back(a.label);
    return out;
}

}  // namespace

TEST(TreeParse, Grammar) {
    const ReferenceTree t = parse_tree(kStar);
    EXPECT_EQ(t.n, 7);
    ASSERT_EQ(t.edges.size(), 3u);
    EXPECT_EQ(t.edges[1].from, "b");
    EXPECT_EQ(t.edges[1].sequence.entries(), (std::vector<int>{3, 4, 5, 6}));
    EXPECT_EQ(parse_tree("n=4\nedge x y : seq=1,3\n").edges[0].sequence.entries(), (std::vector<int>{1, 3}));
}

TEST(TreeParse, Errors) {
    EXPECT_THROW(parse_tree(""), ParseError);
    EXPECT_THROW(parse_tree("edge a b : []"), ParseError);
    EXPECT_THROW(parse_tree("n=4\nvertex a"), ParseError);
    EXPECT_THROW(parse_tree("n=4\nedge a b [1/1]"), ParseError);
    EXPECT_THROW(parse_tree("n=4\nedge a b : [4/4]"), RangeError);
}

TEST(TreeValidate, Shapes) {
    EXPECT_TRUE(validate_tree(parse_tree(kStar)).ok);
    const auto cycle = validate_tree(parse_tree("n=4\nedge a b : []\nedge b c : []\nedge c a : []\n"));
    EXPECT_FALSE(cycle.ok);
    EXPECT_NE(cycle.problem.find("cycle"), std::string::npos);
    const auto split = validate_tree(parse_tree("n=4\nedge a b : []\nedge c d : []\n"));
    EXPECT_FALSE(split.ok);
    EXPECT_NE(split.problem.find("disconnected"), std::string::npos);
    EXPECT_FALSE(validate_tree(parse_tree("n=4\n")).ok);
}

TEST(CombinedArcs, Star) {
    const auto arcs = combined_arcs(parse_tree(kStar));
    EXPECT_EQ(labels(arcs), (std::vector<std::string>{"a-o", "b-o", "c-o", "a-o-b", "a-o-c", "b-o-c"}));
    EXPECT_EQ(arcs[3].graph, parse_segments("n=7; [3/6,5/5,4/4,3/3]"));
    EXPECT_EQ(arcs[4].graph, parse_segments("n=7; [3/5,4/4,3/3]"));
    EXPECT_EQ(arcs[5].graph, parse_segments("n=7; [3/6,4/4,3/3]"));
}

TEST(CombinedArcs, PathConcatenation) {
    const auto arcs = combined_arcs(parse_tree("n=5\nedge a b : seq=3\nedge b c : seq=4,3\n"));
    ASSERT_EQ(arcs.size(), 3u);
    EXPECT_EQ(arcs[2].label, "a-b-c");
    EXPECT_EQ(arcs[2].graph, parse_segments("n=5; [3/4,3/3]"));
}

TEST(CombinedArcs, ReversedStorageIsReversedSequence) {
    const auto forward = combined_arcs(parse_tree("n=5\nedge a b : seq=1,3\nedge b c : seq=2\n"));
    const auto backward = combined_arcs(parse_tree("n=5\nedge b a : seq=3,1\nedge c b : seq=2\n"));
    EXPECT_EQ(forward.back().graph, backward.back().graph);
}

TEST(CombinedArcs, SingleEdge) {
    const auto arcs = combined_arcs(parse_tree("n=5\nedge a b : seq=2,4\n"));
    ASSERT_EQ(arcs.size(), 1u);
    EXPECT_EQ(arcs[0].graph, parse_segments("n=5; [4/4,2/2]"));
}

TEST(TreeVerdict, Examples) {
    EXPECT_EQ(format_verdict(is_dot_irreducible_tree(parse_tree(kStar))), "tree=irreducible");
    const TreeVerdict ones = is_dot_irreducible_tree(parse_tree("n=3\nedge a b : seq=1,1\n"));
    EXPECT_FALSE(ones.irreducible);
    EXPECT_EQ(format_verdict(ones), "tree=reducible(arc=a-b)");
    ASSERT_TRUE(ones.plan);
    EXPECT_TRUE(is_dot_irreducible_tree(parse_tree("n=3\nedge a b : seq=\n")).irreducible);
    EXPECT_THROW(is_dot_irreducible_tree(parse_tree("n=4\nedge a b : []\nedge b a : []\n")), InvariantError);
}

TEST(TreeVerdict, ReducibleOnlyWhenCombined) {
    // Each edge alone is a single dot; the path a-b-c reads 1,1.
    const TreeVerdict v = is_dot_irreducible_tree(parse_tree("n=3\nedge a b : seq=1\nedge b c : seq=1\n"));
    EXPECT_FALSE(v.irreducible);
    EXPECT_EQ(v.reducible_arc, "a-b-c");
}

TEST(TreeVerdict, BudgetNamesTheArc) {
    SearchOptions tiny;
    tiny.node_budget = 1;
    try {
        is_dot_irreducible_tree(parse_tree("n=7\nedge a b : [6/6,5/6,4/6,1/6,1/3,1/2,1/1]\n"), tiny);
        FAIL() << "expected budget exhaustion";
    } catch (const SearchBudgetExhausted& e) {
        EXPECT_NE(std::string(e.what()).find("arc a-b"), std::string::npos);
    }
}
