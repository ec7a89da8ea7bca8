// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include "gsmodel/attacks.hpp"
#include "gsmodel/properties.hpp"
#include "gsmodel/scenarios.hpp"
#include "gsmodel/score.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

using namespace gsm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CounterMaps load_counters(const std::string& name)
{
    std::ifstream in(std::string(GSM_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return counters_from_json(nlohmann::json::parse(ss.str()));
}

const PeerId Q("Q");

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome score_table()
{
    // Displayed per-topic scores and total; tolerances 0.30 and 0.05.
    const std::pair<const char*, double> shown[] = {
        {"BLOCKS", 22.21}, {"AGG", -4.5}, {"SUB1", 7.80}, {"SUB2", -25}, {"SUB3", 7.78}};
    const auto t0 = Clock::now();
    const Twp twp = eth_preset();
    const CounterMaps cm = load_counters("ctrex1.json");
    bool ok = true;
    std::string detail;
    double worst = 0;
    for (const auto& [topic, value] : shown) {
        const double got = to_double(topic_score(Q, Topic(topic), cm, twp));
        worst = std::max(worst, std::abs(got - value));
        ok = ok && std::abs(got - value) <= 0.30;
    }
    const double total = to_double(calc_score(Q, cm, twp));
    const double elapsed = seconds_since(t0);
    ok = ok && std::abs(total - 8.29) <= 0.05 && elapsed < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "total %.7f (|d|=%.4f), worst topic |d|=%.4f, %.3f s", total, std::abs(total - 8.29),
                  worst, elapsed);
    return {ok, buf};
}

Outcome prop2_cap()
{
    const Twp twp = eth_preset();
    const CounterMaps before = load_counters("ctrex3.json");
    const CounterMaps after = load_counters("ctrex3_primed.json");
    const Rational a = calc_score(Q, before, twp);
    const Rational b = calc_score(Q, after, twp);
    const bool witness = check_prop2_perturbed(before, after, Q, twp).has_value();
    const bool ok = a == rat("32.72") && b == rat("32.72") && witness;
    return {ok, "totals " + to_string(a) + " / " + to_string(b) + ", prop2 witness " + (witness ? "yes" : "no")};
}

Outcome search_eth_filecoin()
{
    constexpr int kSeeds = 10;
    bool ok = true;
    std::string detail;
    for (PropertyId p : {PropertyId::p1, PropertyId::p2}) {
        std::uint64_t trials = 0;
        double slowest = 0;
        int found = 0;
        for (int s = 0; s < kSeeds; ++s) {
            GeneratorConfig gen;
            gen.seed = static_cast<std::uint64_t>(s);
            gen.budget = 100000;
            const auto t0 = Clock::now();
            const SearchResult r = search_counterexample(p, eth_preset(), gen);
            slowest = std::max(slowest, seconds_since(t0));
            if (r.witness && replay(*r.witness, eth_preset())) {
                ++found;
            }
            trials += r.trials;
        }
        int clean = 0;
        for (int s = 0; s < kSeeds; ++s) {
            GeneratorConfig gen;
            gen.seed = static_cast<std::uint64_t>(s);
            gen.budget = 100000;
            const SearchResult r = search_counterexample(p, filecoin_preset(), gen);
            if (!r.witness && r.trials == gen.budget) {
                ++clean;
            }
        }
        ok = ok && found == kSeeds && slowest < 60.0 && clean == kSeeds;
        char buf[200];
        std::snprintf(buf, sizeof buf, "p%d eth %d/%d found, mean %.1f trials, slowest %.2f s; filecoin %d/%d clean. ",
                      static_cast<int>(p), found, kSeeds, static_cast<double>(trials) / kSeeds, slowest, clean, kSeeds);
        detail += buf;
    }
    return {ok, detail};
}

Outcome universal()
{
    constexpr std::uint64_t kCases = 100000;
    bool ok = true;
    std::string detail;
    for (PropertyId p : {PropertyId::p3, PropertyId::p4}) {
        for (const char* preset : {"eth", "filecoin"}) {
            GeneratorConfig gen;
            gen.seed = 1;
            gen.budget = kCases;
            const SearchResult r = search_counterexample(p, preset_by_name(preset), gen);
            const std::uint64_t evaluated = r.trials - r.skipped;
            ok = ok && !r.witness && evaluated >= kCases;
            detail += "p" + std::to_string(static_cast<int>(p)) + "/" + preset + " " + std::to_string(evaluated) +
                      (r.witness ? " cases, VIOLATION; " : " cases, 0 violations; ");
        }
    }
    return {ok, detail};
}

Outcome extra_topics()
{
    std::size_t pairs = 0, mismatches = 0;
    for (unsigned T = 1; T <= 256; ++T) {
        for (unsigned i = 0; i <= T; ++i) {
            std::optional<unsigned> scan;
            for (unsigned t = 0; t + i <= T; ++t) {
                if (rat("7.2") + rat("3.2") * Rational(t, T) > rat("24.7") * Rational(i, T)) {
                    scan = t;
                    break;
                }
            }
            ++pairs;
            if (scan != min_extra_topics(i, T)) {
                ++mismatches;
            }
        }
    }
    return {mismatches == 0, std::to_string(pairs) + " (i,T) pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome blocking(std::string& json_out)
{
    const AttackRun run = run_attack(build_scenario("eth-block-ag1"), 1);
    json_out = run_to_json(run).dump();
    if (run.report.gadgets.size() != 1) {
        return {false, "expected one gadget"};
    }
    const GadgetReport& g = run.report.gadgets[0];
    const bool at_boundary = g.first_violation && g.activation_boundary && *g.first_violation == *g.activation_boundary;
    const bool stable = g.stable && g.positive_throughout && g.stable_from && *g.stable_from <= 50;
    const bool ok = g.violation && at_boundary && stable;
    std::string detail = std::to_string(run.setup.twp.topics.size()) + " topics, first violation ";
    detail += g.first_violation ? std::to_string(*g.first_violation) : "none";
    detail += ", activation ";
    detail += g.activation_boundary ? std::to_string(*g.activation_boundary) : "none";
    detail += ", stable from ";
    detail += g.stable_from ? std::to_string(*g.stable_from) : "never";
    detail += " at " + (g.scores.empty() ? std::string("?") : to_string(g.scores.back()));
    return {ok, detail};
}

Outcome eclipse_partition(std::string& eclipse_json, std::string& partition_json)
{
    bool ok = true;
    std::string detail;

    const auto t0 = Clock::now();
    const AttackRun ec = run_attack(build_scenario("eclipse"), 1);
    const double ec_time = seconds_since(t0);
    eclipse_json = run_to_json(ec).dump();
    const std::uint64_t events = ec.bootstrap_steps + ec.attack_steps;
    if (ec.report.victims.size() != 1) {
        return {false, "eclipse: expected one victim"};
    }
    const VictimReport& v = ec.report.victims[0];
    ok = ok && ec.setup.topology.node_count() <= 600 && v.attacked_cached == 0 && v.attacked_received == 0 &&
         v.non_attacked_cached >= 1 && !ec.budget_exhausted;
    detail += "eclipse on " + std::to_string(ec.setup.topology.node_count()) + " nodes: attacked cached " +
              std::to_string(v.attacked_cached) + ", non-attacked cached " + std::to_string(v.non_attacked_cached);

    const AttackRun pt = run_attack(build_scenario("partition"), 1);
    partition_json = run_to_json(pt).dump();
    const Topology& g = pt.setup.topology;
    const std::set<PeerId> S = choose_victim_set(g, 4);
    const auto flow = min_vertex_cut(g, S);
    const auto brute = min_vertex_cut_brute(g, S);
    std::uint64_t breaches = 0;
    for (const VictimReport& r : pt.report.victims) {
        breaches += r.attacked_breaches;
    }
    ok = ok && g.node_count() == 12 && flow.size() == brute.size() && separates(g, S, flow) && breaches == 0 &&
         pt.report.success;
    detail += "; partition |X|=" + std::to_string(flow.size()) + " (brute " + std::to_string(brute.size()) +
              "), breaches " + std::to_string(breaches);

    ok = ok && events >= 100000 && ec_time < 300.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "; %llu-event run in %.2f s", static_cast<unsigned long long>(events), ec_time);
    detail += buf;
    return {ok, detail};
}

std::string search_json(PropertyId p, std::uint64_t seed)
{
    GeneratorConfig gen;
    gen.seed = seed;
    const SearchResult r = search_counterexample(p, eth_preset(), gen);
    return r.witness ? counterexample_to_json(*r.witness).dump() : "null";
}

Outcome determinism(const std::string& block_json, const std::string& eclipse_json, const std::string& partition_json)
{
    bool ok = true;
    std::string detail;
    for (std::uint64_t seed : {0u, 5u}) {
        for (PropertyId p : {PropertyId::p1, PropertyId::p2}) {
            ok = ok && search_json(p, seed) == search_json(p, seed);
        }
    }
    const bool b = run_to_json(run_attack(build_scenario("eth-block-ag1"), 1)).dump() == block_json;
    const bool e = run_to_json(run_attack(build_scenario("eclipse"), 1)).dump() == eclipse_json;
    const bool p = run_to_json(run_attack(build_scenario("partition"), 1)).dump() == partition_json;
    ok = ok && b && e && p;
    detail = std::string("searches ") + (ok ? "identical" : "differ") + ", block " + (b ? "identical" : "differs") +
             ", eclipse " + (e ? "identical" : "differs") + ", partition " + (p ? "identical" : "differs");
    return {ok, detail};
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&](int n, const char* name, const std::function<Outcome()>& check) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) {
            o.detail.pop_back();
        }
        std::printf("criterion %d %-22s %s  %s\n", n, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };

    std::string block_json, eclipse_json, partition_json;
    report(1, "score-table", score_table);
    report(2, "prop2-cap", prop2_cap);
    report(3, "search", search_eth_filecoin);
    report(4, "universal-props", universal);
    report(5, "extra-topics-oracle", extra_topics);
    report(6, "blocking-attack", [&] { return blocking(block_json); });
    report(7, "eclipse-partition", [&] { return eclipse_partition(eclipse_json, partition_json); });
    report(8, "determinism", [&] { return determinism(block_json, eclipse_json, partition_json); });
    return failures == 0 ? 0 : 1;
}
