#include "gsmodel/network.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace gsm;

namespace {

const Topic T("BLOCKS");

std::vector<PeerId> ids(std::initializer_list<const char*> xs)
{
    std::vector<PeerId> out;
    for (const char* x : xs) {
        out.emplace_back(x);
    }
    return out;
}

Simulator bootstrapped(const Topology& topo, const Twp& twp, std::uint64_t seed = 1)
{
    Bootstrap b = group_from_topology(topo, subscribe_all(topo, {T}), twp);
    Simulator sim(std::move(b.group), twp, seed);
    sim.run_phases(b.phases);
    return sim;
}

bool received(const Trace& tr, const PeerId& at, MessageId mid)
{
    for (const TraceEntry& e : tr) {
        if (e.event.actor != at) {
            continue;
        }
        if (const auto* r = std::get_if<act::Receive>(&e.event.action)) {
            if (const auto* m = std::get_if<msg::Full>(&r->payload); m && m->mid == mid) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

TEST(Network, TriangleMeshFormsFully)
{
    const Twp twp = eth_preset();
    Simulator sim = bootstrapped(complete_topology(ids({"a", "b", "c"})), twp);
    EXPECT_FALSE(sim.budget_exhausted());
    for (const auto& [p, ps] : sim.group()) {
        EXPECT_EQ(ps.mesh(T).size(), 2u) << p;
        EXPECT_FALSE(ps.mesh(T).contains(p));
    }
}

TEST(Network, PublishReachesBothNeighbors)
{
    const Twp twp = eth_preset();
    Simulator sim = bootstrapped(complete_topology(ids({"a", "b", "c"})), twp);
    sim.take_trace();
    sim.run({app(PeerId("a"), T, 1)});
    const Trace& tr = sim.trace();
    EXPECT_TRUE(received(tr, PeerId("b"), 1));
    EXPECT_TRUE(received(tr, PeerId("c"), 1));
    for (const auto& [p, ps] : sim.group()) {
        EXPECT_TRUE(ps.mst.seen.contains(1)) << p;
    }
}

TEST(Network, EmptyWorklistIsIdentity)
{
    const Twp twp = eth_preset();
    Group g;
    g.emplace(PeerId("a"), PeerState(PeerId("a")));
    auto [g2, tr] = gs_trx(g, {}, twp, 1);
    EXPECT_EQ(g2, g);
    EXPECT_TRUE(tr.empty());
}

TEST(Network, ZeroBudgetIsIdentity)
{
    const Twp twp = eth_preset();
    Group g;
    g.emplace(PeerId("a"), PeerState(PeerId("a")));
    auto [g2, tr] = gs_trx(g, {hbm(PeerId("a"))}, twp, 1, 0);
    EXPECT_EQ(g2, g);
    EXPECT_TRUE(tr.empty());
}

TEST(Network, BudgetStopsRun)
{
    const Twp twp = eth_preset();
    Group g;
    g.emplace(PeerId("a"), PeerState(PeerId("a")));
    Simulator sim(g, twp, 1, SimOptions{3, std::nullopt, std::nullopt});
    EXPECT_EQ(sim.run(schedule_heartbeats(g, 5)), 3u);
    EXPECT_TRUE(sim.budget_exhausted());
    sim.reset_budget(10);
    EXPECT_FALSE(sim.budget_exhausted());
}

TEST(Network, SingleNodeBootstrap)
{
    Topology topo;
    topo.add_node(PeerId("a"));
    const Bootstrap b = group_from_topology(topo, subscribe_all(topo, {T}), eth_preset());
    EXPECT_TRUE(b.phases[0].empty());
    Simulator sim(b.group, eth_preset(), 1);
    sim.run_phases(b.phases);
    EXPECT_TRUE(sim.group().at(PeerId("a")).mesh(T).empty());
}

TEST(Network, LineNeverMeshesEnds)
{
    const Twp twp = eth_preset();
    Simulator sim = bootstrapped(path_topology(ids({"a", "b", "c"})), twp);
    EXPECT_FALSE(sim.group().at(PeerId("a")).mesh(T).contains(PeerId("c")));
    EXPECT_FALSE(sim.group().at(PeerId("c")).mesh(T).contains(PeerId("a")));
    EXPECT_TRUE(sim.group().at(PeerId("a")).mesh(T).contains(PeerId("b")));
}

TEST(Network, SilentMeshPrunedAfterActivation)
{
    // Without traffic, BLOCKS peers fall short of the delivery threshold once activated.
    const Twp twp = eth_preset();
    Simulator sim = bootstrapped(path_topology(ids({"a", "b", "c"})), twp);
    sim.run(schedule_heartbeats(sim.group(), 5));
    EXPECT_TRUE(sim.group().at(PeerId("a")).mesh(T).empty());
    EXPECT_LT(sim.group().at(PeerId("a")).score_of(PeerId("b")), 0);
}

TEST(Network, SubscriptionForUnknownPeerThrows)
{
    const Topology topo = path_topology(ids({"a", "b"}));
    Subscriptions subs{{PeerId("z"), {T}}};
    EXPECT_THROW(group_from_topology(topo, subs, eth_preset()), TopologyError);
}

TEST(Network, HeartbeatSchedules)
{
    EXPECT_EQ(schedule_heartbeats(ids({"a", "b", "c"}), 2).size(), 6u);
    EXPECT_TRUE(schedule_heartbeats(ids({"a", "b", "c"}), 0).empty());
    const auto one = schedule_heartbeats(ids({"a"}), 5);
    EXPECT_EQ(one.size(), 5u);
    for (const Event& e : one) {
        EXPECT_TRUE(is_heartbeat(e));
        EXPECT_EQ(e.actor, PeerId("a"));
    }
    const auto order = schedule_heartbeats(ids({"c", "a", "b"}), 1);
    EXPECT_EQ(order[0].actor, PeerId("a"));
    EXPECT_EQ(order[2].actor, PeerId("c"));
}

TEST(Network, HeartbeatsCarrySnapshots)
{
    const Twp twp = eth_preset();
    Simulator sim = bootstrapped(complete_topology(ids({"a", "b", "c"})), twp);
    sim.take_trace();
    sim.run({hbm(PeerId("a"))});
    ASSERT_EQ(sim.trace().size(), 1u);
    ASSERT_TRUE(sim.trace()[0].scores.has_value());
    EXPECT_EQ(sim.trace()[0].scores->total.size(), 2u);
}

TEST(Network, SameSeedSameTrace)
{
    const Twp twp = eth_preset();
    const Topology topo = parse_edge_list(test::read_file(test::data_path("sample12.edges")));
    const Subscriptions subs = parse_subscriptions(test::read_file(test::data_path("sample12.subs.json")));
    const std::vector<Event> events = parse_events(test::read_file(test::data_path("sample12.events.json")));
    auto run = [&](std::uint64_t seed) {
        Bootstrap b = group_from_topology(topo, subs, twp);
        Simulator sim(std::move(b.group), twp, seed);
        sim.run_phases(b.phases);
        sim.run(events);
        return std::make_pair(trace_to_ndjson(sim.trace()), sim.group());
    };
    const auto a = run(5);
    const auto b = run(5);
    EXPECT_EQ(a.first, b.first);
    EXPECT_EQ(a.second, b.second);
    EXPECT_FALSE(a.first.empty());
}

TEST(Events, JsonRoundTrip)
{
    const std::vector<Event> events{
        snd(PeerId("a"), PeerId("b"), msg::Full{T, 7, false}),
        rcv(PeerId("b"), PeerId("a"), msg::IHave{T, {1, 2}}),
        rcv(PeerId("b"), PeerId("a"), msg::IWant{{3}}),
        snd(PeerId("a"), PeerId("b"), msg::Prune{T, 60}),
        snd(PeerId("a"), PeerId("b"), msg::Graft{T}),
        snd(PeerId("a"), PeerId("b"), msg::Subscribe{T}),
        snd(PeerId("a"), PeerId("b"), msg::Unsubscribe{T}),
        join(PeerId("a"), T),
        leave(PeerId("a"), T),
        connect(PeerId("a"), PeerId("b"), "10.0.0.1", false),
        hbm(PeerId("a")),
        app(PeerId("a"), T, 9),
    };
    EXPECT_EQ(parse_events(serialize_events(events)), events);
}

TEST(Events, BadEventReportsIndex)
{
    try {
        parse_events(R"([{"actor": "a", "verb": "HBM"}, {"actor": "a", "verb": "NOPE"}])");
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("1"), std::string::npos) << e.what();
    }
}
