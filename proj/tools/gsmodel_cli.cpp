// gsmodel: score evaluation, property search, simulation and attack runs.
//
// Exit status: 0 when the command ran and found nothing to report, 1 when a
// check, property trace or attack validation found a violation, 2 on usage or
// input errors.

#include "gsmodel/attacks.hpp"
#include "gsmodel/config.hpp"
#include "gsmodel/network.hpp"
#include "gsmodel/properties.hpp"
#include "gsmodel/scenarios.hpp"
#include "gsmodel/score.hpp"
#include "gsmodel/topology.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace gsm;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

json read_json(const std::string& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

struct ConfigFlags {
    std::string preset;
    std::string config;
    bool strict = false;

    void add(CLI::App* app)
    {
        app->add_option("--preset", preset, "Built-in parameter set")
            ->check(CLI::IsMember(preset_names()));
        app->add_option("--config", config, "JSON config file");
        app->add_flag("--strict", strict, "Reject decays outside (0,1] while parsing --config");
    }

    Twp load(const std::string& fallback = "eth") const
    {
        if (!preset.empty() && !config.empty()) {
            throw UsageError("--preset and --config are mutually exclusive");
        }
        if (!config.empty()) {
            return parse_config(read_file(config), strict);
        }
        return preset_by_name(preset.empty() ? fallback : preset);
    }
};

void print_json(const json& j)
{
    std::cout << j.dump(2) << '\n';
}

// score-eval

struct ScoreEval {
    ConfigFlags cfg;
    std::string counters;
    std::string peer;
    bool as_json = false;
    int digits = 4;
};

int run_score_eval(const ScoreEval& o)
{
    const Twp twp = o.cfg.load();
    const CounterMaps cm = counters_from_json(read_json(o.counters));
    std::vector<PeerId> peers;
    if (!o.peer.empty()) {
        peers.emplace_back(o.peer);
    } else {
        peers = cm.peers();
    }
    json out;
    out["config"] = twp.name;
    out["configFingerprint"] = config_fingerprint(twp);
    json rows = json::object();
    for (const PeerId& p : peers) {
        const ScoreBreakdown b = explain_score(p, cm, twp);
        if (o.as_json) {
            json topics = json::object();
            for (const auto& tb : b.topics) {
                const auto& ind = tb.indicators;
                topics[tb.topic.str()] = json{{"p1", to_string(ind.p1)}, {"p2", to_string(ind.p2)},
                                              {"p3", to_string(ind.p3)}, {"p3b", to_string(ind.p3b)},
                                              {"p4", to_string(ind.p4)}, {"score", to_string(tb.score)}};
            }
            rows[p.str()] = json{{"topics", topics},
                                 {"topicSum", to_string(b.topic_sum)},
                                 {"cappedSum", to_string(b.capped_sum)},
                                 {"p5", to_string(b.globals.p5)},
                                 {"p6", to_string(b.globals.p6)},
                                 {"p7", to_string(b.globals.p7)},
                                 {"globalScore", to_string(b.global_score)},
                                 {"total", to_string(b.total)}};
            continue;
        }
        std::cout << "peer " << p << "  (" << twp.name << ", " << config_fingerprint(twp) << ")\n";
        std::cout << std::left << std::setw(10) << "topic";
        for (const char* h : {"P1", "P2", "P3", "P3b", "P4", "score"}) {
            std::cout << std::right << std::setw(14) << h;
        }
        std::cout << '\n';
        for (const auto& tb : b.topics) {
            const auto& ind = tb.indicators;
            std::cout << std::left << std::setw(10) << tb.topic.str();
            for (const Rational* v : {&ind.p1, &ind.p2, &ind.p3, &ind.p3b, &ind.p4, &tb.score}) {
                std::cout << std::right << std::setw(14) << to_fixed(*v, o.digits);
            }
            std::cout << '\n';
        }
        std::cout << "topic sum " << to_fixed(b.topic_sum, o.digits) << ", capped " << to_fixed(b.capped_sum, o.digits)
                  << ", global " << to_fixed(b.global_score, o.digits) << '\n';
        std::cout << "total " << to_fixed(b.total, o.digits) << "  (exact " << to_string(b.total) << ")\n\n";
    }
    if (o.as_json) {
        out["peers"] = rows;
        print_json(out);
    }
    return kOk;
}

// check

struct Check {
    ConfigFlags cfg;
    int property = 1;
    GeneratorConfig gen;
    std::string replay_path;
    std::string out_path;
    bool as_json = false;
    std::string zero_bad = "0.9";
};

int run_check(Check& o)
{
    const Twp twp = o.cfg.load();
    if (!o.replay_path.empty()) {
        const Counterexample c = counterexample_from_json(read_json(o.replay_path));
        const bool holds = replay(c, twp);
        json out{{"replay", o.replay_path},
                 {"property", static_cast<int>(c.property)},
                 {"configFingerprint", config_fingerprint(twp)},
                 {"witnessConfirmed", holds}};
        if (o.as_json) {
            print_json(out);
        } else {
            std::cout << (holds ? "witness confirmed" : "witness does not reproduce") << " under " << twp.name
                      << '\n';
        }
        return holds ? kViolation : kOk;
    }
    o.gen.zero_bad_probability = rat(o.zero_bad);
    const SearchResult r = search_counterexample(property_from_int(o.property), twp, o.gen);
    json out;
    out["property"] = o.property;
    out["config"] = twp.name;
    out["configFingerprint"] = config_fingerprint(twp);
    out["seed"] = o.gen.seed;
    out["budget"] = o.gen.budget;
    out["trials"] = r.trials;
    out["skipped"] = r.skipped;
    out["witness"] = r.witness ? counterexample_to_json(*r.witness) : json(nullptr);
    if (r.witness && !o.out_path.empty()) {
        write_file(o.out_path, counterexample_to_json(*r.witness).dump(2) + "\n");
    }
    if (o.as_json) {
        print_json(out);
    } else if (r.witness) {
        std::cout << "property " << o.property << ": counterexample after " << r.trials << " trials (" << twp.name
                  << ", seed " << o.gen.seed << ")\n";
        std::cout << counterexample_to_json(*r.witness).dump(2) << '\n';
    } else {
        std::cout << "property " << o.property << ": no counterexample in " << r.trials << " trials (" << twp.name
                  << ", seed " << o.gen.seed << ", " << r.skipped << " draws outside the hypotheses)\n";
    }
    return r.witness ? kViolation : kOk;
}

// simulate

struct Simulate {
    ConfigFlags cfg;
    std::string topology;
    std::string subs;
    std::string events;
    std::string scenario;
    std::string trace_path;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = kDefaultMaxSteps;
    unsigned heartbeats = 0;
    unsigned bootstrap_rounds = 2;
    bool as_json = false;
};

json scores_json(const Group& g)
{
    json out = json::object();
    for (const auto& [p, ps] : g) {
        json row = json::object();
        for (const auto& [q, s] : ps.nbr_scores) {
            row[q.str()] = to_string(s);
        }
        out[p.str()] = std::move(row);
    }
    return out;
}

int run_simulate(const Simulate& o)
{
    if (!o.scenario.empty()) {
        ScenarioOptions so;
        so.seed = o.seed;
        AttackSetup setup = build_scenario(o.scenario, so);
        setup.max_steps = o.max_steps;
        AttackRun run = run_attack(setup, o.seed);
        if (!o.trace_path.empty()) {
            write_file(o.trace_path, trace_to_ndjson(run.trace));
        }
        json out = run_to_json(run);
        if (o.as_json) {
            print_json(out);
        } else {
            std::cout << o.scenario << ": " << run.bootstrap_steps << " bootstrap steps, " << run.attack_steps
                      << " attack steps" << (run.budget_exhausted ? " (budget exhausted)" : "") << '\n';
        }
        return kOk;
    }
    if (o.topology.empty()) {
        throw UsageError("simulate needs --topology or --scenario");
    }
    const Twp twp = o.cfg.load();
    const Topology topo = load_topology(o.topology);
    const Subscriptions subs = o.subs.empty() ? subscribe_all(topo, twp.topic_names())
                                              : parse_subscriptions(read_file(o.subs));
    Bootstrap boot = group_from_topology(topo, subs, twp, o.bootstrap_rounds);
    std::vector<std::vector<Event>> phases = boot.phases;
    if (!o.events.empty()) {
        phases.push_back(parse_events(read_file(o.events)));
    }
    for (unsigned r = 0; r < o.heartbeats; ++r) {
        phases.push_back(schedule_heartbeats(boot.group, 1));
    }
    Simulator sim(std::move(boot.group), twp, o.seed, SimOptions{o.max_steps, std::nullopt, std::nullopt});
    const std::uint64_t steps = sim.run_phases(phases);
    if (!o.trace_path.empty()) {
        write_file(o.trace_path, trace_to_ndjson(sim.trace()));
    }
    json out;
    out["config"] = twp.name;
    out["configFingerprint"] = config_fingerprint(twp);
    out["seed"] = o.seed;
    out["steps"] = steps;
    out["maxSteps"] = o.max_steps;
    out["budgetExhausted"] = sim.budget_exhausted();
    out["pending"] = sim.pending();
    out["scores"] = scores_json(sim.group());
    if (o.as_json) {
        print_json(out);
    } else {
        std::cout << steps << " steps" << (sim.budget_exhausted() ? " (budget exhausted, " : " (")
                  << sim.pending() << " pending)\n";
        for (const auto& [p, ps] : sim.group()) {
            std::cout << p;
            for (const auto& [q, s] : ps.nbr_scores) {
                std::cout << "  " << q << "=" << to_fixed(s, 3);
            }
            std::cout << '\n';
        }
    }
    return kOk;
}

// attack-synth

struct Synth {
    std::string kind = "block";
    std::string topology;
    std::string victim;
    std::size_t set_size = 6;
    unsigned attacked = 1;
    std::optional<unsigned> subnets;
    unsigned rounds = 60;
    unsigned f = 10;
    std::optional<unsigned> b;
    std::optional<std::uint64_t> max_steps;
    std::string out_path;
};

// Graph-wide attacks relay background traffic through the whole group.
constexpr std::uint64_t kGraphAttackSteps = 2'000'000;

std::set<Topic> first_subnets(unsigned i)
{
    std::set<Topic> out;
    for (unsigned k = 1; k <= i; ++k) {
        out.insert(Topic("SUB" + std::to_string(k)));
    }
    return out;
}

int run_synth(const Synth& o)
{
    const AttackKind kind = attack_kind_from_string(o.kind);
    const unsigned b = o.b.value_or(kind == AttackKind::throttle ? 1 : 0);
    unsigned T = 0;
    if (o.subnets) {
        T = *o.subnets;
    } else {
        auto planned = eth_subnets_for_attack(o.attacked, o.f, b, o.rounds);
        if (!planned) {
            throw UsageError("no subnet count keeps the attacker capped; pass --subnets");
        }
        T = *planned;
    }
    if (!min_extra_topics(o.attacked, T)) {
        throw AttackError("no extra-topic count offsets i=" + std::to_string(o.attacked) + ", T=" + std::to_string(T));
    }

    AttackSetup s;
    s.name = "synth-" + o.kind;
    s.twp = eth_preset_with_subnets(T);
    const bool graph_wide = !o.topology.empty() && (kind == AttackKind::eclipse || kind == AttackKind::partition);
    s.max_steps = o.max_steps.value_or(graph_wide ? kGraphAttackSteps : kDefaultMaxSteps);
    const std::set<Topic> attacked = kind == AttackKind::honest ? std::set<Topic>{} : first_subnets(o.attacked);
    std::vector<AttackGadget> gadgets;

    if (o.topology.empty()) {
        if (kind == AttackKind::eclipse || kind == AttackKind::partition) {
            throw UsageError(o.kind + " needs --topology");
        }
        s.topology = complete_topology({PeerId("A"), PeerId("V"), PeerId("H")});
        gadgets.push_back({PeerId("A"), PeerId("V"), attacked});
        s.subs = subscribe_all(s.topology, s.twp.topic_names());
        s.script = gen_attack_events(kind, gadgets, s.twp.topic_names(), o.rounds, o.f, b);
        s.script.regions[PeerId("V")] = {PeerId("V"), PeerId("H")};
    } else {
        s.topology = load_topology(o.topology);
        s.subs = subscribe_all(s.topology, s.twp.topic_names());
        if (kind == AttackKind::partition) {
            const std::set<PeerId> S = choose_victim_set(s.topology, o.set_size);
            const std::set<PeerId> X = min_vertex_cut(s.topology, S);
            gadgets = synth_partition_attack(s.topology, S, attacked, T);
            s.script = gen_attack_events(kind, gadgets, s.twp.topic_names(), o.rounds, o.f, b);
            for (const PeerId& v : s.script.victims()) {
                for (const auto& comp : s.topology.components_without(X)) {
                    if (std::binary_search(comp.begin(), comp.end(), v)) {
                        s.script.regions[v] = {comp.begin(), comp.end()};
                    }
                }
            }
        } else {
            if (o.victim.empty()) {
                throw UsageError(o.kind + " on a topology needs --victim");
            }
            const PeerId v(o.victim);
            if (!s.topology.has_node(v)) {
                throw UsageError("victim not in topology: " + o.victim);
            }
            for (const PeerId& a : s.topology.neighbors(v)) {
                gadgets.push_back({a, v, attacked});
                if (kind != AttackKind::eclipse) {
                    break;
                }
            }
            s.script = gen_attack_events(kind, gadgets, s.twp.topic_names(), o.rounds, o.f, b);
            s.script.regions[v] = {v};
        }
    }
    const std::string text = setup_to_json(s).dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        write_file(o.out_path, text);
        std::cout << s.script.gadgets.size() << " gadgets, " << s.script.events().size() << " events, T=" << T
                  << " -> " << o.out_path << '\n';
    }
    return kOk;
}

// attack-run

struct Run {
    std::string scenario;
    std::string script;
    std::string topology;
    std::string trace_path;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> max_steps;
    std::optional<unsigned> rounds;
    bool honest = false;
    bool as_json = false;
};

int run_attack_cmd(const Run& o)
{
    AttackSetup setup;
    if (!o.scenario.empty() == !o.script.empty()) {
        throw UsageError("attack-run needs exactly one of --scenario and --script");
    }
    if (!o.scenario.empty()) {
        ScenarioOptions so;
        so.seed = o.seed;
        so.rounds = o.rounds;
        so.max_steps = o.max_steps;
        so.honest = o.honest;
        setup = build_scenario(o.scenario, so);
    } else {
        setup = setup_from_json(read_json(o.script));
        if (!o.topology.empty()) {
            setup.topology = load_topology(o.topology);
        }
        if (o.max_steps) {
            setup.max_steps = *o.max_steps;
        }
    }
    AttackRun run = run_attack(setup, o.seed);
    if (!o.trace_path.empty()) {
        write_file(o.trace_path, trace_to_ndjson(run.trace));
    }
    const bool violation = std::any_of(run.report.gadgets.begin(), run.report.gadgets.end(),
                                       [](const GadgetReport& g) { return g.violation; });
    if (o.as_json) {
        print_json(run_to_json(run));
    } else {
        std::cout << setup.name << " (" << to_string(run.report.kind) << ", " << setup.twp.topics.size()
                  << " topics, seed " << run.seed << ", config " << config_fingerprint(setup.twp) << ")\n";
        std::cout << "steps: bootstrap " << run.bootstrap_steps << ", attack " << run.attack_steps
                  << (run.budget_exhausted ? " (budget exhausted)" : "") << '\n';
        for (const auto& g : run.report.gadgets) {
            std::cout << "  " << g.gadget.attacker << " -> " << g.gadget.victim << ": "
                      << (g.violation ? "violation" : "no violation");
            if (g.first_violation) {
                std::cout << " from heartbeat " << *g.first_violation;
            }
            if (g.activation_boundary) {
                std::cout << ", activation at " << *g.activation_boundary;
            }
            if (!g.scores.empty()) {
                std::cout << ", final score " << to_fixed(g.scores.back(), 4)
                          << (g.stable ? " (stable from " + std::to_string(*g.stable_from) + ")" : " (not stable)");
            }
            std::cout << '\n';
        }
        for (const auto& v : run.report.victims) {
            std::cout << "  victim " << v.victim << ": attacked-topic breaches " << v.attacked_breaches
                      << ", cached from outside " << v.attacked_cached << ", other-topic messages "
                      << v.non_attacked_received << '\n';
        }
        std::cout << (run.report.success ? "attack validated" : "attack not validated") << '\n';
    }
    return violation ? kViolation : kOk;
}

// topology

struct TopoGen {
    std::size_t nodes = 100;
    double avg_degree = 8.0;
    std::uint64_t seed = 1;
    std::string out_path;
};

struct TopoFile {
    std::string path;
    bool as_json = false;
};

json stats_json(const TopologyStats& s)
{
    return json{{"nodes", s.nodes},
                {"edges", s.edges},
                {"minDegree", s.min_degree},
                {"maxDegree", s.max_degree},
                {"avgDegree", to_fixed(s.avg_degree, 2)},
                {"diameter", s.diameter},
                {"components", s.components}};
}

void print_stats(const TopologyStats& s, bool as_json)
{
    if (as_json) {
        print_json(stats_json(s));
        return;
    }
    std::cout << "nodes " << s.nodes << ", edges " << s.edges << ", degree min " << s.min_degree << " max "
              << s.max_degree << " avg " << to_fixed(s.avg_degree, 2) << ", diameter " << s.diameter
              << ", components " << s.components << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Executable model of GossipSub v1.1 peer scoring"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    ScoreEval se;
    auto* c_score = app.add_subcommand("score-eval", "Score every peer in a counters file");
    se.cfg.add(c_score);
    c_score->add_option("--counters", se.counters, "Counters JSON")->required();
    c_score->add_option("--peer", se.peer, "Only this peer");
    c_score->add_option("--digits", se.digits, "Decimal places in the table");
    c_score->add_flag("--json", se.as_json);

    Check ck;
    auto* c_check = app.add_subcommand("check", "Search for a counterexample to a property");
    ck.cfg.add(c_check);
    c_check->add_option("--property", ck.property, "1..4")->check(CLI::Range(1, 4));
    c_check->add_option("--seed", ck.gen.seed);
    c_check->add_option("--budget", ck.gen.budget, "Trials");
    c_check->add_option("--counter-max", ck.gen.counter_max, "Largest counter drawn");
    c_check->add_option("--delta-max", ck.gen.delta_max, "Largest perturbation drawn");
    c_check->add_option("--zero-bad", ck.zero_bad, "Probability that a bad counter is zero");
    c_check->add_option("--replay", ck.replay_path, "Re-check a stored witness instead of searching");
    c_check->add_option("--out", ck.out_path, "Write the witness here");
    c_check->add_flag("--json", ck.as_json);

    Simulate sm;
    auto* c_sim = app.add_subcommand("simulate", "Bootstrap a topology and run events");
    sm.cfg.add(c_sim);
    c_sim->add_option("--topology", sm.topology, "Edge list");
    c_sim->add_option("--subs", sm.subs, "Subscriptions JSON (default: every peer on every topic)");
    c_sim->add_option("--events", sm.events, "Event list JSON, run after bootstrap");
    c_sim->add_option("--scenario", sm.scenario, "Built-in scenario")->check(CLI::IsMember(scenario_names()));
    c_sim->add_option("--heartbeats", sm.heartbeats, "Extra heartbeat rounds for every peer");
    c_sim->add_option("--bootstrap-rounds", sm.bootstrap_rounds);
    c_sim->add_option("--seed", sm.seed);
    c_sim->add_option("--max-steps", sm.max_steps);
    c_sim->add_option("--trace", sm.trace_path, "Write the trace as NDJSON");
    c_sim->add_flag("--json", sm.as_json);

    Synth sy;
    auto* c_synth = app.add_subcommand("attack-synth", "Write an attack setup for the Eth preset");
    c_synth->add_option("--kind", sy.kind)->check(CLI::IsMember({"throttle", "block", "eclipse", "partition",
                                                                 "honest"}));
    c_synth->add_option("--topology", sy.topology, "Edge list (default: three peers A, V, H)");
    c_synth->add_option("--victim", sy.victim);
    c_synth->add_option("--set-size", sy.set_size, "Victim set size for a partition");
    c_synth->add_option("--attacked", sy.attacked, "Number of attacked subnet topics");
    c_synth->add_option("--subnets", sy.subnets, "Subnet topic count (default: planned)");
    c_synth->add_option("--rounds", sy.rounds);
    c_synth->add_option("--f", sy.f, "Messages per honest topic per round");
    c_synth->add_option("--b", sy.b, "Messages per attacked topic per round (0 or 1)");
    c_synth->add_option("--max-steps", sy.max_steps);
    c_synth->add_option("--out", sy.out_path);

    Run rn;
    auto* c_run = app.add_subcommand("attack-run", "Run and validate an attack");
    c_run->add_option("--scenario", rn.scenario)->check(CLI::IsMember(scenario_names()));
    c_run->add_option("--script", rn.script, "Setup written by attack-synth");
    c_run->add_option("--topology", rn.topology, "Replace the setup's topology");
    c_run->add_option("--seed", rn.seed);
    c_run->add_option("--max-steps", rn.max_steps);
    c_run->add_option("--rounds", rn.rounds, "Scenario rounds");
    c_run->add_flag("--honest", rn.honest, "Run the scenario without withholding");
    c_run->add_option("--trace", rn.trace_path, "Write the victims' trace as NDJSON");
    c_run->add_flag("--json", rn.as_json);

    auto* c_topo = app.add_subcommand("topology", "Generate or inspect topologies");
    c_topo->require_subcommand(1);
    TopoGen tg;
    auto* c_gen = c_topo->add_subcommand("gen", "Synthesize a connected random graph");
    c_gen->add_option("--nodes", tg.nodes)->check(CLI::PositiveNumber);
    c_gen->add_option("--avg-degree", tg.avg_degree)->check(CLI::NonNegativeNumber);
    c_gen->add_option("--seed", tg.seed);
    c_gen->add_option("--out", tg.out_path);
    TopoFile ts;
    auto* c_stats = c_topo->add_subcommand("stats", "Degree and diameter statistics");
    c_stats->add_option("--topology", ts.path)->required();
    c_stats->add_flag("--json", ts.as_json);
    TopoFile tl;
    auto* c_load = c_topo->add_subcommand("load", "Parse an edge list and print it normalized");
    c_load->add_option("--topology", tl.path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (c_score->parsed()) {
            return run_score_eval(se);
        }
        if (c_check->parsed()) {
            return run_check(ck);
        }
        if (c_sim->parsed()) {
            return run_simulate(sm);
        }
        if (c_synth->parsed()) {
            return run_synth(sy);
        }
        if (c_run->parsed()) {
            return run_attack_cmd(rn);
        }
        if (c_gen->parsed()) {
            const Topology t = synth_topology(tg.nodes, tg.avg_degree, tg.seed);
            if (tg.out_path.empty()) {
                std::cout << to_edge_list(t);
            } else {
                write_file(tg.out_path, to_edge_list(t));
                print_stats(t.stats(), false);
            }
            return kOk;
        }
        if (c_stats->parsed()) {
            print_stats(load_topology(ts.path).stats(), ts.as_json);
            return kOk;
        }
        if (c_load->parsed()) {
            std::cout << to_edge_list(load_topology(tl.path));
            return kOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "gsmodel: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
