#include "gsmodel/score.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gsm;
using namespace gsm::test;

namespace {

const PeerId Q("Q");

TopicCounters counters(const char* mt, const char* fmd, const char* mmd, const char* imd, const char* mfp)
{
    return TopicCounters{rat(imd), rat(mmd), rat(mt), rat(fmd), rat(mfp)};
}

} // namespace

TEST(ScoreIndicators, AggDeficitRow)
{
    const Twp twp = eth_preset();
    const auto ind = compute_topic_indicators(counters("42", "0", "1", "0", "81"), twp.topic(Topic("AGG")), twp.global);
    EXPECT_EQ(ind.p1, 42);
    EXPECT_EQ(ind.p2, 0);
    EXPECT_EQ(ind.p3, 81);
    EXPECT_EQ(ind.p3b, 81);
    EXPECT_EQ(ind.p4, 0);
}

TEST(ScoreIndicators, DeficitOffAtThreshold)
{
    const Twp twp = eth_preset();
    const auto ind = compute_topic_indicators(counters("42", "0", "10", "0", "0"), twp.topic(Topic("AGG")), twp.global);
    EXPECT_EQ(ind.p3, 0);
}

TEST(ScoreIndicators, DeficitGatedByActivation)
{
    const Twp twp = eth_preset();
    const TopicParams& tp = twp.topic(Topic("AGG"));
    EXPECT_EQ(compute_topic_indicators(counters("0", "0", "0", "0", "0"), tp, twp.global).p3, 0);
    EXPECT_EQ(compute_topic_indicators(counters("4", "0", "0", "0", "0"), tp, twp.global).p3, 0);
    EXPECT_EQ(compute_topic_indicators(counters("5", "0", "0", "0", "0"), tp, twp.global).p3, 100);

    GlobalParams ungated = twp.global;
    ungated.activation_gates_deficit = false;
    EXPECT_EQ(compute_topic_indicators(counters("0", "0", "0", "0", "0"), tp, ungated).p3, 100);
}

TEST(ScoreIndicators, MeshTimeInQuanta)
{
    const Twp twp = eth_preset();
    const auto ind = compute_topic_indicators(counters("141", "188", "194", "0", "0"), twp.topic(Topic("SUB1")));
    EXPECT_EQ(ind.p1, rat("14.1"));
    EXPECT_EQ(ind.p2, 24);
}

TEST(ScoreIndicators, SquaredInvalidDeliveriesKnob)
{
    const Twp twp = eth_preset();
    GlobalParams gp = twp.global;
    const TopicCounters tc = counters("0", "0", "0", "3", "0");
    EXPECT_EQ(compute_topic_indicators(tc, twp.topic(Topic("AGG")), gp).p4, 3);
    gp.square_p4 = true;
    EXPECT_EQ(compute_topic_indicators(tc, twp.topic(Topic("AGG")), gp).p4, 9);
}

TEST(ScoreWeigh, EthRows)
{
    const Twp twp = eth_preset();
    const TopicParams& agg = twp.topic(Topic("AGG"));
    EXPECT_EQ(weigh_topic(compute_topic_indicators(counters("42", "0", "1", "0", "81"), agg, twp.global), agg),
              rat("-4.5036"));
    const TopicParams& blocks = twp.topic(Topic("BLOCKS"));
    EXPECT_EQ(weigh_topic(compute_topic_indicators(counters("147", "194", "200", "0", "0"), blocks, twp.global), blocks),
              rat("22.21024"));
    EXPECT_EQ(weigh_topic(TopicIndicators{}, agg), 0);
}

TEST(ScoreCap, Examples)
{
    EXPECT_EQ(topic_cap(rat("59.42"), rat("32.72")), rat("32.72"));
    EXPECT_EQ(topic_cap(rat("59.42"), 0), rat("59.42"));
    EXPECT_EQ(topic_cap(-5, 10), -5);
}

TEST(ScoreGlobal, ColocationAndBehaviour)
{
    GlobalParams gp;
    gp.ip_colocation_threshold = 1;
    gp.behaviour_penalty_threshold = 6;
    GlobalCounters gc;
    gc.ip_colocation_count = 5;
    gc.behaviour_penalty = 10;
    GlobalIndicators ind = compute_global_indicators(gc, gp);
    EXPECT_EQ(ind.p6, 16);
    EXPECT_EQ(ind.p7, 16);
    gc.ip_colocation_count = 1;
    gc.behaviour_penalty = 6;
    ind = compute_global_indicators(gc, gp);
    EXPECT_EQ(ind.p6, 0);
    EXPECT_EQ(ind.p7, 0);
}

TEST(ScoreTotal, Ctrex1FrozenAgainstOracle)
{
    const Twp twp = eth_preset();
    const CounterMaps cm = load_counters("ctrex1.json");

    const double rows[] = {
        oracle_topic_score(kEthBlocks, {147, 194, 200, 0, 0}), oracle_topic_score(kEthAgg, {42, 0, 1, 0, 81}),
        oracle_topic_score(kEthSub, {141, 188, 194, 0, 0}),    oracle_topic_score(kEthSub, {42, 0, 1, 0, 1}),
        oracle_topic_score(kEthSub, {135, 182, 188, 0, 0}),
    };
    const char* topics[] = {"BLOCKS", "AGG", "SUB1", "SUB2", "SUB3"};
    double sum = 0;
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(to_double(topic_score(Q, Topic(topics[i]), cm, twp)), rows[i], 1e-9) << topics[i];
        sum += rows[i];
    }

    // Values below were produced by the oracle above and frozen as exact decimals.
    EXPECT_EQ(topic_score(Q, Topic("BLOCKS"), cm, twp), rat("22.21024"));
    EXPECT_EQ(topic_score(Q, Topic("AGG"), cm, twp), rat("-4.5036"));
    EXPECT_EQ(topic_score(Q, Topic("SUB1"), cm, twp), rat("7.6747572"));
    EXPECT_EQ(topic_score(Q, Topic("SUB2"), cm, twp), rat("-24.7380936"));
    EXPECT_EQ(topic_score(Q, Topic("SUB3"), cm, twp), rat("7.668342"));
    EXPECT_EQ(calc_score(Q, cm, twp), rat("8.3116456"));
    EXPECT_NEAR(to_double(calc_score(Q, cm, twp)), sum, 1e-9);
    EXPECT_NEAR(to_double(calc_score(Q, cm, twp)), 8.29, 0.05);
}

TEST(ScoreTotal, Ctrex3BothCapped)
{
    const Twp twp = eth_preset();
    EXPECT_EQ(calc_score(Q, load_counters("ctrex3.json"), twp), rat("32.72"));
    EXPECT_EQ(calc_score(Q, load_counters("ctrex3_primed.json"), twp), rat("32.72"));
    EXPECT_EQ(topic_score(Q, Topic("BLOCKS"), load_counters("ctrex3_primed.json"), twp), rat("6.21024"));
    EXPECT_NEAR(oracle_topic_score(kEthBlocks, {147, 3, 10, 0, 0}), 6.21024, 1e-9);
}

TEST(ScoreTotal, ZeroCountersScoreZero)
{
    for (const std::string& name : preset_names()) {
        EXPECT_EQ(calc_score(Q, CounterMaps{}, preset_by_name(name)), 0) << name;
    }
}

TEST(ScoreTotal, ExplainMatchesCalc)
{
    const Twp twp = eth_preset();
    const CounterMaps cm = load_counters("ctrex3.json");
    const ScoreBreakdown b = explain_score(Q, cm, twp);
    EXPECT_EQ(b.total, calc_score(Q, cm, twp));
    EXPECT_EQ(b.capped_sum, rat("32.72"));
    EXPECT_GT(b.topic_sum, b.capped_sum);
    EXPECT_EQ(b.topics.size(), twp.topics.size());
}

TEST(ScoreDecay, Examples)
{
    TopicParams tp;
    GlobalParams gp;
    gp.decay_to_zero = rat("0.01");
    tp.first_message_deliveries_decay = rat("0.9");
    tp.mesh_message_deliveries_decay = rat("0.5");

    TopicCounters tc;
    tc.first_message_deliveries = 100;
    EXPECT_EQ(decay_topic_counters(tc, tp, gp).first_message_deliveries, 90);

    tc = {};
    tc.mesh_message_deliveries = rat("0.0001");
    EXPECT_EQ(decay_topic_counters(tc, tp, gp).mesh_message_deliveries, 0);

    tc.mesh_message_deliveries = rat("0.02");
    EXPECT_EQ(decay_topic_counters(tc, tp, gp).mesh_message_deliveries, rat("0.01"));
}

TEST(ScoreDecay, MeshTimeUntouched)
{
    TopicParams tp;
    GlobalParams gp;
    TopicCounters tc;
    tc.mesh_time = 42;
    EXPECT_EQ(decay_topic_counters(tc, tp, gp).mesh_time, 42);

    GlobalCounters gc;
    gc.app_specific_score = 5;
    gc.ip_colocation_count = 3;
    gc.behaviour_penalty = 10;
    const GlobalCounters d = decay_global_counters(gc, gp);
    EXPECT_EQ(d.app_specific_score, 5);
    EXPECT_EQ(d.ip_colocation_count, 3u);
    EXPECT_EQ(d.behaviour_penalty, 9);
}

TEST(ScorePrune, Penalty)
{
    const Twp twp = eth_preset();
    const TopicParams& agg = twp.topic(Topic("AGG"));
    EXPECT_EQ(apply_prune_penalty(counters("42", "0", "1", "0", "0"), agg).mesh_failure_penalty, 81);
    EXPECT_EQ(apply_prune_penalty(counters("42", "0", "10", "0", "0"), agg).mesh_failure_penalty, 0);
    EXPECT_EQ(apply_prune_penalty(counters("2", "0", "1", "0", "0"), agg).mesh_failure_penalty, 0);
}

TEST(CounterMaps, AbsentKeysReadZero)
{
    CounterMaps cm;
    EXPECT_EQ(cm.topic(Q, Topic("X")), TopicCounters{});
    EXPECT_EQ(cm.global(Q), GlobalCounters{});
    EXPECT_FALSE(cm.has_peer(Q));
    cm.topic_mut(Q, Topic("X")).mesh_time = 1;
    EXPECT_TRUE(cm.has_topic(Q, Topic("X")));
    cm.erase_peer(Q);
    EXPECT_FALSE(cm.has_peer(Q));
}
