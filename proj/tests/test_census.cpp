#include "dotgraph/census.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace dotgraph;

namespace {

std::set<std::vector<int>> enumerated_values(const CensusConfig& cfg) {
    std::set<std::vector<int>> out;
    enumerate_sawtooth(cfg, [&](const SawtoothGraph& g) {
        EXPECT_TRUE(out.insert(g.values()).second) << "duplicate " << serialize(g);
    });
    return out;
}

std::vector<SawtoothGraph> graphs(std::initializer_list<const char*> texts) {
    std::vector<SawtoothGraph> out;
    for (const char* t : texts) out.push_back(parse_segments(t));
    return out;
}

}  // namespace

TEST(Enumerate, SmallCounts) {
    // [], [1/1], [2/2], [1/2], [1/1,1/1], [2/2,2/2], [2/2,1/1]
    EXPECT_EQ(enumerate_all({3, 2, false, std::nullopt, {}}).size(), 7u);
    const auto zero = enumerate_all({3, 0, false, std::nullopt, {}});
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_TRUE(zero[0].empty());
    EXPECT_TRUE(enumerate_all({4, 2, true, std::nullopt, {}}).empty());
}

TEST(Enumerate, MatchesProductSpaceOracle) {
    for (int n = 3; n <= 5; ++n) {
        for (int max_dots = 0; max_dots <= (n == 5 ? 6 : 8); ++max_dots) {
            for (bool all : {false, true}) {
                const CensusConfig cfg{n, max_dots, all, std::nullopt, {}};
                EXPECT_EQ(enumerated_values(cfg), oracle::all_sawtooth(n, max_dots, all))
                    << n << " " << max_dots << " " << all;
            }
        }
    }
}

TEST(Enumerate, LexicographicAndPrefixClosed) {
    const auto all = enumerate_all({4, 6, false, std::nullopt, {}});
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_TRUE(segment_order(all[i - 1], all[i]));
}

TEST(Enumerate, ShardsPartitionTheSpace) {
    const CensusConfig whole{4, 6, false, std::nullopt, {}};
    std::set<std::vector<int>> joined{std::vector<int>{}};
    for (int v = 1; v <= 3; ++v) {
        CensusConfig shard = whole;
        shard.shard_prefix = std::vector<int>{v};
        for (const auto& s : enumerated_values(shard)) {
            EXPECT_EQ(s.front(), v);
            EXPECT_TRUE(joined.insert(s).second);
        }
    }
    EXPECT_EQ(joined, enumerated_values(whole));

    CensusConfig deep = whole;
    deep.shard_prefix = std::vector<int>{3, 1, 2};
    for (const auto& s : enumerated_values(deep)) EXPECT_EQ(std::vector<int>(s.begin(), s.begin() + 3), *deep.shard_prefix);
}

TEST(Enumerate, RejectsBadConfig) {
    EXPECT_THROW(enumerate_all({2, 3, false, std::nullopt, {}}), RangeError);
    EXPECT_THROW(enumerate_all({4, -1, false, std::nullopt, {}}), RangeError);
    EXPECT_THROW(enumerate_all({4, 3, false, std::vector<int>{4}, {}}), RangeError);
}

TEST(Maximal, Examples) {
    EXPECT_TRUE(is_maximal_irreducible(parse_segments("n=4; [1/3,1/2,1/1]")));
    EXPECT_FALSE(is_maximal_irreducible(parse_segments("n=4; [1/2,1/1]")));
    EXPECT_FALSE(is_maximal_irreducible(parse_segments("n=4; [1/1,1/1]")));
    EXPECT_EQ(single_dot_extensions(parse_segments("n=4; [1/3,1/2,1/1]")).size(), 7u * 3u);
}

TEST(Census, ThreeValuesBaseCase) {
    const CensusReport r = run_census({3, 3, false, std::nullopt, {}});
    EXPECT_EQ(r.maximal_graphs, graphs({"n=3; [1/2,1/1]", "n=3; [2/2,1/2]"}));
    EXPECT_TRUE(r.theorem_holds);
}

TEST(Census, FourValuesAllSpindles) {
    const CensusReport r = run_census({4, 6, true, std::nullopt, {}});
    EXPECT_EQ(r.maximal_graphs, graphs({"n=4; [1/3,1/2,1/1]", "n=4; [3/3,1/3,1/1]", "n=4; [3/3,2/3,1/3]"}));
    EXPECT_TRUE(r.theorem_holds);
    EXPECT_EQ(r.max_irreducible_dots, 6);
    for (const SawtoothGraph& s : r.irreducible_graphs) EXPECT_TRUE(is_subgraph_of_spindle(s));
}

TEST(Census, EmptyRun) {
    const CensusReport r = run_census({3, 0, false, std::nullopt, {}});
    EXPECT_EQ(r.total_enumerated, 1u);
    EXPECT_TRUE(r.maximal_graphs.empty());
    EXPECT_TRUE(r.theorem_holds);
}

TEST(Census, ParallelMatchesSerial) {
    const CensusConfig cfg{4, 7, false, std::nullopt, {}};
    const std::string serial = format_report(run_census(cfg));
    for (unsigned jobs : {1u, 2u, 4u, 8u}) EXPECT_EQ(format_report(run_census_parallel(cfg, jobs)), serial) << jobs;
}

TEST(Census, BudgetExhaustionIsReported) {
    CensusConfig cfg{5, 10, true, std::nullopt, {}};
    cfg.search.node_budget = 1;
    cfg.shard_prefix = std::vector<int>{4, 4, 3, 4, 1, 2, 3, 4, 1, 1};
    const CensusReport r = run_census(cfg);
    ASSERT_FALSE(r.counterexamples.empty());
    EXPECT_EQ(r.counterexamples[0].kind, CounterexampleKind::BudgetExhausted);
    EXPECT_FALSE(r.theorem_holds);
    EXPECT_NE(format_report(r).find("theorem=fails"), std::string::npos);
}

TEST(Census, ReportFormat) {
    const std::string text = format_report(run_census({4, 6, true, std::nullopt, {}}));
    EXPECT_NE(text.find("maximal: n=4; [1/3,1/2,1/1] spindle=2\n"), std::string::npos);
    EXPECT_NE(text.find("maximal=3\n"), std::string::npos);
    EXPECT_EQ(text.substr(text.size() - 14), "theorem=holds\n");
}
