#include "gsmodel/scenarios.hpp"

#include <algorithm>

namespace gsm {

using json = nlohmann::json;

namespace {

constexpr unsigned kF = 10;
constexpr unsigned kBlockRounds = 60;
constexpr unsigned kGraphRounds = 50;
constexpr unsigned kBackgroundEvery = 10;
constexpr std::uint64_t kBootstrapSteps = 50'000'000;

std::set<Topic> subnets_up_to(unsigned i)
{
    std::set<Topic> out;
    for (unsigned k = 1; k <= i; ++k) {
        out.insert(Topic("SUB" + std::to_string(k)));
    }
    return out;
}

unsigned subnets_for(unsigned i, unsigned b, unsigned rounds)
{
    auto T = eth_subnets_for_attack(i, kF, b, rounds);
    if (!T) {
        throw AttackError("no subnet count keeps an ag" + std::to_string(i) + " attacker capped");
    }
    return *T;
}

std::set<PeerId> component_of(const Topology& topo, const std::set<PeerId>& removed, const PeerId& p)
{
    for (const auto& comp : topo.components_without(removed)) {
        if (std::binary_search(comp.begin(), comp.end(), p)) {
            return {comp.begin(), comp.end()};
        }
    }
    return {p};
}

AttackSetup eclipse_setup(unsigned rounds, bool honest, std::uint64_t seed)
{
    AttackSetup s;
    s.name = "eclipse";
    const unsigned T = subnets_for(1, 0, rounds);
    s.twp = eth_preset_with_subnets(T);
    s.topology = synth_topology(200, 6.0, seed);
    const Topology& g = s.topology;

    // The victim: a peer of degree 4 if one exists, otherwise the closest degree above 1.
    std::optional<PeerId> victim;
    std::size_t best = 0;
    for (const PeerId& p : g.nodes()) {
        const std::size_t d = g.degree(p);
        if (d < 2) {
            continue;
        }
        const std::size_t dist = d > 4 ? d - 4 : 4 - d;
        if (!victim || dist < best) {
            victim = p;
            best = dist;
        }
    }
    if (!victim) {
        throw AttackError("eclipse: no peer with at least two neighbors");
    }
    const std::set<Topic> attacked = honest ? std::set<Topic>{} : subnets_up_to(1);
    std::vector<AttackGadget> gadgets;
    for (const PeerId& a : g.neighbors(*victim)) {
        gadgets.push_back({a, *victim, attacked});
    }

    // Two far publishers keep an attacked and an unattacked topic busy.
    std::vector<PeerId> far;
    for (const PeerId& p : g.nodes()) {
        if (p != *victim && !g.has_edge(p, *victim)) {
            far.push_back(p);
        }
    }
    if (far.size() < 2) {
        throw AttackError("eclipse: graph too small for background publishers");
    }
    std::vector<BackgroundPublish> bg{{far[0], Topic("SUB1"), kBackgroundEvery},
                                      {far[1], Topic("BLOCKS"), kBackgroundEvery}};

    s.subs = subscribe_all(g, s.twp.topic_names());
    s.script = gen_attack_events(honest ? AttackKind::honest : AttackKind::eclipse, gadgets, s.twp.topic_names(),
                                 rounds, kF, 0, 1, bg);
    s.script.regions[*victim] = {*victim};
    s.max_steps = 400'000;
    return s;
}

AttackSetup partition_setup(unsigned rounds, bool honest, std::uint64_t seed)
{
    AttackSetup s;
    s.name = "partition";
    const unsigned T = subnets_for(1, 0, rounds);
    s.twp = eth_preset_with_subnets(T);
    s.topology = synth_topology(12, 3.0, seed);
    const Topology& g = s.topology;

    const std::set<PeerId> S = choose_victim_set(g, 4);
    const std::set<PeerId> X = min_vertex_cut(g, S);
    const std::set<Topic> attacked = honest ? std::set<Topic>{} : subnets_up_to(1);
    std::vector<AttackGadget> gadgets = synth_partition_attack(g, S, attacked, T);

    std::vector<BackgroundPublish> bg;
    std::set<PeerId> others;
    for (const PeerId& p : g.nodes()) {
        if (!S.contains(p) && !X.contains(p)) {
            others.insert(p);
        }
    }
    for (const PeerId& p : {*S.begin(), *others.begin()}) {
        bg.push_back({p, Topic("SUB1"), kBackgroundEvery});
        bg.push_back({p, Topic("BLOCKS"), kBackgroundEvery});
    }

    s.subs = subscribe_all(g, s.twp.topic_names());
    s.script = gen_attack_events(honest ? AttackKind::honest : AttackKind::partition, gadgets, s.twp.topic_names(),
                                 rounds, kF, 0, 1, bg);
    for (const PeerId& v : s.script.victims()) {
        s.script.regions[v] = component_of(g, X, v);
    }
    s.max_steps = 2'000'000;
    return s;
}

} // namespace

AttackSetup eth_gadget_setup(unsigned i, unsigned b, unsigned rounds, bool honest)
{
    AttackSetup s;
    const unsigned T = subnets_for(i, b, rounds);
    s.twp = eth_preset_with_subnets(T);
    const PeerId A("A"), V("V"), H("H");
    s.topology = complete_topology({A, V, H});
    s.subs = subscribe_all(s.topology, s.twp.topic_names());
    const std::set<Topic> attacked = honest ? std::set<Topic>{} : subnets_up_to(i);
    AttackKind kind = honest ? AttackKind::honest : (b == 1 ? AttackKind::throttle : AttackKind::block);
    s.script = gen_attack_events(kind, {{A, V, attacked}}, s.twp.topic_names(), rounds, kF, b);
    s.script.regions[V] = {V, H};
    return s;
}

std::vector<std::string> scenario_names()
{
    return {"eth-throttle-ag1", "eth-block-ag1", "eth-block-ag2", "eth-block-ag3", "eclipse", "partition"};
}

AttackSetup build_scenario(const std::string& name, const ScenarioOptions& opts)
{
    AttackSetup s;
    if (name == "eth-throttle-ag1") {
        s = eth_gadget_setup(1, 1, opts.rounds.value_or(kBlockRounds), opts.honest);
    } else if (name.starts_with("eth-block-ag") && name.size() == 13 && name[12] >= '1' && name[12] <= '3') {
        s = eth_gadget_setup(static_cast<unsigned>(name[12] - '0'), 0, opts.rounds.value_or(kBlockRounds),
                             opts.honest);
    } else if (name == "eclipse") {
        s = eclipse_setup(opts.rounds.value_or(kGraphRounds), opts.honest, opts.seed);
    } else if (name == "partition") {
        s = partition_setup(opts.rounds.value_or(kGraphRounds), opts.honest, opts.seed);
    } else {
        throw AttackError("unknown scenario: " + name);
    }
    s.name = name;
    if (opts.max_steps) {
        s.max_steps = *opts.max_steps;
    }
    return s;
}

AttackRun run_attack(const AttackSetup& setup, std::uint64_t seed)
{
    AttackRun run;
    run.setup = setup;
    run.seed = seed;

    Bootstrap boot = group_from_topology(setup.topology, setup.subs, setup.twp, setup.bootstrap_rounds);
    const std::vector<PeerId> victims = setup.script.victims();
    SimOptions opts;
    opts.max_steps = kBootstrapSteps;
    opts.snapshot_peers = std::set<PeerId>(victims.begin(), victims.end());
    opts.trace_actors = opts.snapshot_peers;
    Simulator sim(std::move(boot.group), setup.twp, seed, opts);
    run.bootstrap_steps = sim.run_phases(boot.phases);
    if (sim.budget_exhausted()) {
        throw AttackError("bootstrap did not settle within " + std::to_string(kBootstrapSteps) + " steps");
    }
    sim.take_trace();

    arm_attackers(sim.group(), setup.script);
    sim.reset_budget(setup.max_steps);
    for (const auto& round : setup.script.round_events) {
        run.attack_steps += sim.run(round);
        if (sim.budget_exhausted()) {
            break;
        }
    }
    run.budget_exhausted = sim.budget_exhausted();
    run.trace = sim.take_trace();
    run.final_group = sim.group();
    run.report = validate_attack(run.trace, setup.script, setup.twp, run.final_group);
    return run;
}

json run_to_json(const AttackRun& run)
{
    json j;
    j["scenario"] = run.setup.name;
    j["config"] = run.setup.twp.name;
    j["configFingerprint"] = config_fingerprint(run.setup.twp);
    j["topics"] = run.setup.twp.topics.size();
    j["seed"] = run.seed;
    j["nodes"] = run.setup.topology.node_count();
    j["edges"] = run.setup.topology.edge_count();
    j["bootstrapSteps"] = run.bootstrap_steps;
    j["attackSteps"] = run.attack_steps;
    j["maxSteps"] = run.setup.max_steps;
    j["budgetExhausted"] = run.budget_exhausted;
    j["report"] = report_to_json(run.report);
    return j;
}

json setup_to_json(const AttackSetup& s)
{
    json j;
    j["name"] = s.name;
    j["config"] = json::parse(serialize_config(s.twp));
    j["configFingerprint"] = config_fingerprint(s.twp);
    j["topology"] = to_edge_list(s.topology);
    json subs = json::object();
    for (const auto& [p, topics] : s.subs) {
        json a = json::array();
        for (const Topic& t : topics) {
            a.push_back(t.str());
        }
        subs[p.str()] = std::move(a);
    }
    j["subs"] = std::move(subs);
    j["bootstrapRounds"] = s.bootstrap_rounds;
    j["maxSteps"] = s.max_steps;
    j["script"] = script_to_json(s.script);
    return j;
}

AttackSetup setup_from_json(const json& j)
{
    try {
        AttackSetup s;
        s.name = j.value("name", std::string("custom"));
        s.twp = parse_config(j.at("config").dump());
        s.topology = parse_edge_list(j.at("topology").get<std::string>());
        s.subs = parse_subscriptions(j.at("subs").dump());
        s.bootstrap_rounds = j.value("bootstrapRounds", 2u);
        s.max_steps = j.value("maxSteps", kDefaultMaxSteps);
        s.script = script_from_json(j.at("script"));
        return s;
    } catch (const json::exception& e) {
        throw AttackError(std::string("attack setup: ") + e.what());
    }
}

} // namespace gsm
