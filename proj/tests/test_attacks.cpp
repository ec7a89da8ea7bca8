#include "gsmodel/attacks.hpp"
#include "gsmodel/scenarios.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace gsm;

namespace {

std::vector<PeerId> ids(std::initializer_list<const char*> xs)
{
    std::vector<PeerId> out;
    for (const char* x : xs) {
        out.emplace_back(x);
    }
    return out;
}

/// Direct scan of the inequality in exact arithmetic.
std::optional<unsigned> brute_extra_topics(unsigned i, unsigned T)
{
    for (unsigned t = 0; t + i <= T; ++t) {
        if (rat("7.2") + rat("3.2") * Rational(t, T) > rat("24.7") * Rational(i, T)) {
            return t;
        }
    }
    return std::nullopt;
}

std::size_t count_verb(const std::vector<Event>& evs, std::size_t index)
{
    return static_cast<std::size_t>(
        std::count_if(evs.begin(), evs.end(), [&](const Event& e) { return e.action.index() == index; }));
}

Topology random_graph(std::size_t n, std::uint64_t seed)
{
    Oracle o(seed);
    Topology g;
    const auto nodes = numbered_nodes(n);
    for (const PeerId& p : nodes) {
        g.add_node(p);
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (o.below(100) < 30) {
                g.add_edge(nodes[a], nodes[b]);
            }
        }
    }
    return g;
}

} // namespace

TEST(ExtraTopics, Examples)
{
    EXPECT_EQ(min_extra_topics(1, 3), 1u);
    EXPECT_FALSE(min_extra_topics(1, 1).has_value());
    EXPECT_EQ(min_extra_topics(0, 10), 0u);
}

TEST(ExtraTopics, MatchesScanUpTo64)
{
    for (unsigned T = 1; T <= 64; ++T) {
        for (unsigned i = 0; i <= T; ++i) {
            EXPECT_EQ(min_extra_topics(i, T), brute_extra_topics(i, T)) << i << "/" << T;
        }
    }
}

TEST(Sizing, PlannedSubnetCounts)
{
    EXPECT_EQ(eth_subnets_for_attack(1, 10, 0, 60), 10u);
    EXPECT_EQ(eth_subnets_for_attack(2, 10, 0, 60), 18u);
    EXPECT_EQ(eth_subnets_for_attack(3, 10, 0, 60), 27u);
}

TEST(Sizing, TopicContributions)
{
    const Twp twp = eth_preset();
    const TopicParams& sub = twp.topic(Topic("SUB1"));
    EXPECT_EQ(max_topic_contribution(sub), rat("0.33") * (rat("0.0324") * 300 + rat("0.95") * 24));
    EXPECT_EQ(attacked_topic_penalty(sub), rat("0.33") * rat("37.55") * 4);
}

TEST(Script, EventCounts)
{
    const std::vector<Topic> topics{Topic("SUB1"), Topic("BLOCKS"), Topic("AGG")};
    const AttackGadget g{PeerId("A"), PeerId("V"), {Topic("SUB1")}};
    const AttackScript s0 = gen_attack_events(AttackKind::block, {g}, topics, 1, 10, 0);
    const auto e0 = s0.events();
    EXPECT_EQ(count_verb(e0, 0), 20u);
    EXPECT_EQ(count_verb(e0, 5), 1u);
    EXPECT_EQ(e0.size(), 21u);
    EXPECT_TRUE(is_heartbeat(e0.back()));

    const AttackScript s1 = gen_attack_events(AttackKind::throttle, {g}, topics, 1, 10, 1);
    EXPECT_EQ(count_verb(s1.events(), 0), 21u);
    EXPECT_EQ(count_verb(s1.events(), 5), 1u);

    EXPECT_TRUE(gen_attack_events(AttackKind::block, {g}, topics, 0, 10, 0).events().empty());
}

TEST(Script, RejectsBadArguments)
{
    const std::vector<Topic> topics{Topic("SUB1"), Topic("BLOCKS")};
    const AttackGadget g{PeerId("A"), PeerId("V"), {Topic("SUB1")}};
    EXPECT_THROW(gen_attack_events(AttackKind::block, {g}, topics, 1, 10, 2), AttackError);
    EXPECT_THROW(gen_attack_events(AttackKind::block, {g}, topics, 1, 0, 0), AttackError);
    EXPECT_THROW(gen_attack_events(AttackKind::block, {{PeerId("A"), PeerId("A"), {}}}, topics, 1, 10, 0), AttackError);
    EXPECT_THROW(gen_attack_events(AttackKind::block, {{PeerId("A"), PeerId("V"), {Topic("X")}}}, topics, 1, 10, 0),
                 AttackError);
}

TEST(Script, JsonRoundTrip)
{
    const AttackSetup s = build_scenario("partition");
    const nlohmann::json j = script_to_json(s.script);
    const AttackScript back = script_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(script_to_json(back).dump(), j.dump());
    EXPECT_EQ(back.events(), s.script.events());
    EXPECT_EQ(back.origins, s.script.origins);

    const nlohmann::json sj = setup_to_json(s);
    EXPECT_EQ(setup_to_json(setup_from_json(nlohmann::json::parse(sj.dump()))).dump(), sj.dump());
}

TEST(Cut, Path)
{
    const Topology g = path_topology(ids({"a", "b", "c"}));
    EXPECT_EQ(min_vertex_cut(g, {PeerId("a")}), std::set<PeerId>{PeerId("b")});
}

TEST(Cut, Star)
{
    Topology g;
    for (const char* leaf : {"l1", "l2", "l3", "l4"}) {
        g.add_edge(PeerId("c"), PeerId(leaf));
    }
    EXPECT_EQ(min_vertex_cut(g, {PeerId("l1")}), std::set<PeerId>{PeerId("c")});
}

TEST(Cut, NoComplementThrows)
{
    const Topology g = path_topology(ids({"a", "b", "c"}));
    EXPECT_THROW(min_vertex_cut(g, {PeerId("a"), PeerId("b"), PeerId("c")}), AttackError);
}

TEST(Cut, SeparatorBetweenSets)
{
    const Topology g = path_topology(ids({"a", "b", "c", "d", "e"}));
    EXPECT_EQ(min_separator(g, {PeerId("a")}, {PeerId("e")}).size(), 1u);
}

TEST(Cut, AgreesWithBruteForce)
{
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const Topology g = random_graph(12, seed);
        for (std::size_t size : {1u, 2u, 3u, 4u}) {
            std::set<PeerId> S;
            try {
                S = choose_victim_set(g, size);
                const auto flow = min_vertex_cut(g, S);
                const auto brute = min_vertex_cut_brute(g, S);
                EXPECT_EQ(flow.size(), brute.size()) << seed << " " << size;
                EXPECT_TRUE(separates(g, S, flow));
                ++checked;
            } catch (const AttackError&) {
            }
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(Cut, VictimSetIsConnected)
{
    const Topology g = synth_topology(40, 4.0, 2);
    const auto S = choose_victim_set(g, 5);
    EXPECT_EQ(S.size(), 5u);
    Topology sub;
    for (const PeerId& p : S) {
        sub.add_node(p);
        for (const PeerId& q : g.neighbors(p)) {
            if (S.contains(q)) {
                sub.add_edge(p, q);
            }
        }
    }
    EXPECT_EQ(sub.components().size(), 1u);
}

TEST(Partition, PathGadgets)
{
    const Topology g = path_topology(ids({"a", "b", "c"}));
    const std::set<Topic> S1{Topic("SUB1")};
    const auto gadgets = synth_partition_attack(g, {PeerId("a")}, S1);
    const std::vector<AttackGadget> expected{{PeerId("b"), PeerId("a"), S1}, {PeerId("b"), PeerId("c"), S1}};
    EXPECT_EQ(gadgets, expected);
}

TEST(Partition, Errors)
{
    const Topology g = path_topology(ids({"a", "b", "c"}));
    const std::set<Topic> S1{Topic("SUB1")};
    EXPECT_THROW(synth_partition_attack(g, {PeerId("a"), PeerId("b"), PeerId("c")}, S1), AttackError);
    EXPECT_THROW(synth_partition_attack(g, {PeerId("a")}, S1, 1u), AttackError);
    EXPECT_NO_THROW(synth_partition_attack(g, {PeerId("a")}, S1, 3u));
}

TEST(AttackRun, BlockAg1ViolatesAtActivation)
{
    const AttackRun run = run_attack(build_scenario("eth-block-ag1"), 1);
    ASSERT_EQ(run.report.gadgets.size(), 1u);
    const GadgetReport& g = run.report.gadgets[0];
    EXPECT_TRUE(run.report.success);
    EXPECT_TRUE(g.violation);
    ASSERT_TRUE(g.first_violation && g.activation_boundary);
    EXPECT_EQ(*g.first_violation, *g.activation_boundary);
    EXPECT_TRUE(g.positive_throughout);
    EXPECT_TRUE(g.stable);
    EXPECT_FALSE(run.budget_exhausted);
}

TEST(AttackRun, PredictorMatchesSimulation)
{
    const AttackSetup setup = build_scenario("eth-block-ag1");
    Bootstrap boot = group_from_topology(setup.topology, setup.subs, setup.twp, setup.bootstrap_rounds);
    Simulator sim(std::move(boot.group), setup.twp, 1, SimOptions{50'000'000, std::nullopt, std::nullopt});
    sim.run_phases(boot.phases);
    const PeerId A("A"), V("V");
    const auto& start = sim.group().at(V).counters.topics_of(A);

    const AttackRun run = run_attack(setup, 1);
    const auto predicted = predict_gadget_scores(setup.twp, setup.script.attacked_topics(), setup.script.f,
                                                 setup.script.b, setup.script.rounds,
                                                 std::map<Topic, TopicCounters>(start.begin(), start.end()));
    EXPECT_EQ(run.report.gadgets[0].scores, predicted);
}

TEST(AttackRun, HonestHasNoViolation)
{
    ScenarioOptions opts;
    opts.honest = true;
    const AttackRun run = run_attack(build_scenario("eth-block-ag1", opts), 1);
    for (const GadgetReport& g : run.report.gadgets) {
        EXPECT_FALSE(g.violation);
    }
    EXPECT_TRUE(run.report.success);
}

TEST(AttackRun, ThrottleAg1Succeeds)
{
    const AttackRun run = run_attack(build_scenario("eth-throttle-ag1"), 1);
    EXPECT_TRUE(run.report.success);
    EXPECT_EQ(run.report.victims[0].attacked_breaches, 0u);
}

TEST(AttackRun, UnknownScenarioThrows)
{
    EXPECT_THROW(build_scenario("nope"), AttackError);
}

TEST(AttackRun, EclipseIsolatesVictim)
{
    const AttackRun run = run_attack(build_scenario("eclipse"), 1);
    ASSERT_EQ(run.report.victims.size(), 1u);
    const VictimReport& v = run.report.victims[0];
    EXPECT_EQ(v.attacked_received, 0u);
    EXPECT_EQ(v.attacked_cached, 0u);
    EXPECT_GE(v.non_attacked_received, 1u);
    EXPECT_GE(run.report.gadgets.size(), 2u);
    EXPECT_FALSE(run.budget_exhausted);
}

TEST(AttackRun, PartitionHasNoBreach)
{
    const AttackRun run = run_attack(build_scenario("partition"), 1);
    EXPECT_TRUE(run.report.success);
    for (const VictimReport& v : run.report.victims) {
        EXPECT_EQ(v.attacked_breaches, 0u) << v.victim;
    }
}

TEST(AttackRun, SameSeedSameReport)
{
    const AttackSetup s = build_scenario("eth-block-ag2");
    EXPECT_EQ(run_to_json(run_attack(s, 4)).dump(), run_to_json(run_attack(s, 4)).dump());
}
