#include "dotgraph/census.hpp"
#include "dotgraph/surgery.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dotgraph;

namespace {

SawtoothGraph g(const char* text) { return parse_segments(text); }

SawtoothGraph reversed(const SawtoothGraph& gr) {
    std::vector<int> v = gr.values();
    std::reverse(v.begin(), v.end());
    return to_sawtooth(DotSequence(gr.n(), v));
}

bool has_action(const SurgeryPlan& plan, const Action& a) {
    for (const auto& grp : plan.groups)
        for (const auto& x : grp.actions)
            if (x == a) return true;
    return false;
}

}  // namespace

TEST(Pairs, Examples) {
    const auto pb = adjacent_pairs(g("n=7; [3/4,2/5,3/4]"), 3);
    ASSERT_EQ(pb.size(), 2u);
    EXPECT_EQ(pb[0].first.position, 0);
    EXPECT_EQ(pb[0].second.position, 3);
    EXPECT_EQ(pb[1].first.position, 3);
    EXPECT_EQ(pb[1].second.position, 6);

    const auto tri = adjacent_pairs(g("n=3; [1/2,1/1]"), 1);
    ASSERT_EQ(tri.size(), 1u);
    EXPECT_EQ(tri[0].second.position, 2);

    EXPECT_TRUE(adjacent_pairs(g("n=5; [1/2,1/1]"), 4).empty());
    EXPECT_THROW(adjacent_pairs(g("n=5; [1/2,1/1]"), 5), RangeError);
}

TEST(Blockers, PiercedBox) {
    const SawtoothGraph pb = g("n=7; [3/4,2/5,3/4]");
    const auto pairs = adjacent_pairs(pb, 3);
    EXPECT_EQ(blockers(pb, pairs[0]), (std::vector<DotRef>{{1, 4}, {2, 2}}));
    EXPECT_EQ(blockers(pb, pairs[1]), (std::vector<DotRef>{{4, 4}}));
    const SawtoothGraph ones = g("n=3; [1/1,1/1]");
    EXPECT_TRUE(blockers(ones, adjacent_pairs(ones, 1)[0]).empty());
}

TEST(Decide, PiercedBox) {
    const SawtoothGraph pb = g("n=7; [3/4,2/5,3/4]");
    const auto plan = find_surgery(pb);
    ASSERT_TRUE(plan);
    EXPECT_FALSE(plan->pattern);
    ASSERT_FALSE(plan->groups.empty());
    EXPECT_EQ(plan->groups[0].actions.front(), Action::connect({3, 3}, {6, 3}));
    EXPECT_TRUE(has_action(*plan, Action::connect({1, 4}, {4, 4})));
    EXPECT_EQ(verify_plan(pb, *plan), std::nullopt);
    EXPECT_EQ(apply_plan(pb, *plan), g("n=7; [5/5,3/4,2/2]"));
}

TEST(Decide, KnownVerdicts) {
    EXPECT_TRUE(is_dot_reducible(g("n=3; [1/1,1/1]")));
    EXPECT_FALSE(is_dot_reducible(g("n=3; [1/2,1/1]")));
    EXPECT_FALSE(is_dot_reducible(g("n=4; [1/2,1/1]")));
    for (const char* arc : {"n=7; [3/5,4/4,3/3]", "n=7; [3/6,4/4,3/3]", "n=7; [3/6,5/5,4/4,3/3]"})
        EXPECT_EQ(decide(g(arc)).verdict, Verdict::Irreducible) << arc;
    EXPECT_TRUE(is_dot_reducible(g("n=7; [2/3,3/5,4/5,4/5,3/6]")));
    EXPECT_FALSE(is_dot_reducible(make_spindle({5, 1})));
    EXPECT_FALSE(is_dot_reducible(SawtoothGraph(4)));
}

TEST(Decide, TrivialPairPlan) {
    const SawtoothGraph ones = g("n=3; [1/1,1/1]");
    const auto plan = find_surgery(ones);
    ASSERT_TRUE(plan);
    ASSERT_EQ(plan->groups.size(), 1u);
    EXPECT_EQ(plan->groups[0].actions, (std::vector<Action>{Action::connect({0, 1}, {1, 1})}));
    EXPECT_TRUE(apply_plan(ones, *plan).empty());
    EXPECT_EQ(format_plan(*plan), "group: connect 1@0-1@1\neliminated: 1@0,1@1\n");
}

TEST(Decide, HorizontalLineApply) {
    const SawtoothGraph h = g("n=5; [2/3,3/4]");
    const SurgeryPlan plan = detail::make_plan({SurgeryGroup{{Action::connect({1, 3}, {2, 3})}}}, std::nullopt);
    EXPECT_EQ(verify_plan(h, plan), std::nullopt);
    EXPECT_EQ(apply_plan(h, plan), g("n=5; [4/4,2/2]"));
}

TEST(Decide, MismatchedPlanRejected) {
    const SawtoothGraph h = g("n=5; [2/3,3/4]");
    const SurgeryPlan wrong_value = detail::make_plan({SurgeryGroup{{Action::connect({0, 3}, {2, 3})}}}, std::nullopt);
    EXPECT_TRUE(verify_plan(h, wrong_value));
    EXPECT_THROW(apply_plan(h, wrong_value), InvariantError);
    const SurgeryPlan out_of_range = detail::make_plan({SurgeryGroup{{Action::remove({9, 3})}}}, std::nullopt);
    EXPECT_THROW(apply_plan(h, out_of_range), InvariantError);
    EXPECT_THROW(apply_plan(h, SurgeryPlan{}), InvariantError);
    // An unjustified removal is not a surgery.
    const SurgeryPlan lone_remove = detail::make_plan({SurgeryGroup{{Action::remove({0, 2})}}}, std::nullopt);
    EXPECT_TRUE(verify_plan(h, lone_remove));
}

TEST(Decide, DoubleBoxIsLoadBearing) {
    const SawtoothGraph db = g("n=3; [2/2,1/2,1/1]");
    std::vector<PatternKind> certifying;
    for (const auto& m : find_all_patterns(db))
        if (certifies_reduction(m.kind)) certifying.push_back(m.kind);
    EXPECT_EQ(certifying, std::vector<PatternKind>{PatternKind::DoubleBox});
    const auto plan = find_surgery(db);
    ASSERT_TRUE(plan);
    EXPECT_EQ(verify_plan(db, *plan), std::nullopt);
}

// Graphs whose surgeries need the newer double box and double hexagon
// moves get pattern certificates, and those certificates verify.
TEST(Decide, PatternCertificates) {
    for (const char* text : {"n=4; [2/2,1/3,2/2]", "n=4; [2/3,2/2,1/2]", "n=5; [1/3,2/2,1/2]"}) {
        const SawtoothGraph gr = parse_segments(text);
        const auto plan = find_surgery(gr);
        ASSERT_TRUE(plan) << text;
        EXPECT_EQ(verify_plan(gr, *plan), std::nullopt) << text;
        EXPECT_LT(apply_plan(gr, *plan).dot_count(), gr.dot_count());
    }
}

TEST(Decide, SpindlesAreIrreducible) {
    for (int n = 3; n <= 8; ++n)
        for (int k = 0; k <= n - 2; ++k) EXPECT_EQ(decide(make_spindle({n, k})).verdict, Verdict::Irreducible);
}

TEST(Decide, EveryCertificateVerifies) {
    for (int n = 3; n <= 4; ++n) {
        CensusConfig cfg{n, 8, false, std::nullopt, {}};
        enumerate_sawtooth(cfg, [](const SawtoothGraph& gr) {
            const auto plan = find_surgery(gr);
            if (!plan) return;
            ASSERT_EQ(verify_plan(gr, *plan), std::nullopt) << serialize(gr) << "\n" << format_plan(*plan);
            EXPECT_LT(apply_plan(gr, *plan).dot_count(), gr.dot_count());
        });
    }
}

TEST(Decide, ReversalInvariance) {
    for (int n = 3; n <= 4; ++n) {
        CensusConfig cfg{n, 8, false, std::nullopt, {}};
        enumerate_sawtooth(cfg, [](const SawtoothGraph& gr) {
            EXPECT_EQ(is_dot_reducible(gr), is_dot_reducible(reversed(gr))) << serialize(gr);
        });
    }
}

TEST(Decide, PatternSoundness) {
    for (int n = 3; n <= 4; ++n) {
        CensusConfig cfg{n, 8, false, std::nullopt, {}};
        enumerate_sawtooth(cfg, [](const SawtoothGraph& gr) {
            if (has_certifying_pattern(gr)) {
                EXPECT_TRUE(is_dot_reducible(gr)) << serialize(gr);
            }
        });
    }
}

TEST(Pigeonhole, Threshold) {
    std::vector<int> v(12, 2);
    EXPECT_FALSE(pigeonhole_applies(to_sawtooth(DotSequence(4, v))));
    v.push_back(2);
    EXPECT_TRUE(pigeonhole_applies(to_sawtooth(DotSequence(4, v))));
}

TEST(Pigeonhole, RandomGraphsAreReducible) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> val(1, 3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> v = oracle::random_sequence(rng, 4, 10);
        const int forced = val(rng);
        for (int i = 0; i < 13; ++i) {
            std::uniform_int_distribution<std::size_t> at(0, v.size());
            v.insert(v.begin() + static_cast<std::ptrdiff_t>(at(rng)), forced);
        }
        const SawtoothGraph gr = to_sawtooth(DotSequence(4, v));
        const Decision d = decide(gr);
        EXPECT_TRUE(d.pigeonhole);
        EXPECT_EQ(d.verdict, Verdict::Reducible);
        // The explicit search also finds a surgery here.
        ASSERT_TRUE(d.plan) << serialize(gr);
        EXPECT_EQ(verify_plan(gr, *d.plan), std::nullopt);
    }
}

TEST(Budget, Exhaustion) {
    const SawtoothGraph gr = make_spindle({7, 3});
    SearchOptions tiny;
    tiny.node_budget = 1;
    EXPECT_THROW(find_surgery(gr, tiny), SearchBudgetExhausted);
    EXPECT_EQ(decide(gr, tiny).verdict, Verdict::BudgetExhausted);
}

TEST(Reduce, FixpointTerminates) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 3 + trial % 4;
        SawtoothGraph gr = to_sawtooth(DotSequence(n, oracle::random_sequence(rng, n, 12)));
        const std::size_t start = gr.dot_count();
        std::size_t steps = 0;
        while (auto plan = find_surgery(gr)) {
            const std::size_t before = gr.dot_count();
            gr = apply_plan(gr, *plan);
            ASSERT_LT(gr.dot_count(), before);
            ASSERT_LE(++steps, start);
        }
        EXPECT_EQ(decide(gr).verdict, Verdict::Irreducible);
    }
}
