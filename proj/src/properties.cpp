#include "gsmodel/properties.hpp"

#include <bit>
#include <stdexcept>

namespace gsm {

using json = nlohmann::json;

namespace {

Rational rational_field(const json& j, const char* key)
{
    if (!j.contains(key)) {
        return Rational(0);
    }
    const json& v = j.at(key);
    if (v.is_string()) {
        return parse_rational(v.get<std::string>());
    }
    if (v.is_number_integer() || v.is_number_float()) {
        return parse_rational(v.dump());
    }
    throw std::runtime_error(std::string("field '") + key + "' must be a number or a rational string");
}

Rational nat(std::uint64_t x) { return Rational(mpz_class(std::to_string(x))); }

Counterexample base(PropertyId id, const Twp& twp, const CounterMaps& cm, const PeerId& p, const Topic& t)
{
    Counterexample c;
    c.property = id;
    c.config_name = twp.name;
    c.config_fingerprint = config_fingerprint(twp);
    c.counters = cm;
    c.peer = p;
    c.topic = t;
    return c;
}

json deltas_to_json(const Prop2Deltas& d)
{
    return json{{"deficit", to_string(d.deficit)}, {"invalid", to_string(d.invalid)}, {"behaviour", to_string(d.behaviour)}};
}

json increment_to_json(const Prop3Increment& i)
{
    return json{{"meshTime", to_string(i.mesh_time)},
                {"firstMessageDeliveries", to_string(i.first_deliveries)},
                {"meshMessageDeliveries", to_string(i.mesh_deliveries)}};
}

Rational draw_bad(Oracle& o, const GeneratorConfig& gen)
{
    if (o.bernoulli(gen.zero_bad_probability)) {
        return Rational(0);
    }
    return nat(1 + log_uniform(o, gen.counter_max - 1));
}

GlobalCounters draw_globals(Oracle& o, const GeneratorConfig& gen)
{
    GlobalCounters g;
    g.ip_colocation_count = o.bernoulli(gen.zero_bad_probability) ? 1 : 1 + log_uniform(o, gen.counter_max - 1);
    g.behaviour_penalty = draw_bad(o, gen);
    return g;
}

Rational pick(Oracle& o, std::uint64_t lo, std::uint64_t hi, std::uint64_t den)
{
    Rational r(nat(o.between(lo, hi)) / nat(den));
    r.canonicalize();
    return r;
}

} // namespace

PropertyId property_from_int(int n)
{
    if (n < 1 || n > 4) {
        throw std::invalid_argument("property must be 1, 2, 3 or 4");
    }
    return static_cast<PropertyId>(n);
}

std::optional<Counterexample> check_prop1_snapshot(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                                   const Twp& twp)
{
    const Rational total = calc_score(p, cm, twp);
    const Rational topical = topic_score(p, t, cm, twp);
    if (total > 0 && topical <= 0) {
        Counterexample c = base(PropertyId::p1, twp, cm, p, t);
        c.scores = {{"total", total}, {"topic", topical}};
        return c;
    }
    return std::nullopt;
}

bool prop1_hypothesis(const CounterMaps& cm, const PeerId& p, const Twp& twp)
{
    for (const auto& [t, tp] : twp.topics) {
        if (!(mesh_quanta(cm.topic(p, t), tp) > Rational(nat(tp.activation_window)))) {
            return false;
        }
    }
    return true;
}

Prop1TraceResult check_prop1_trace(const Trace& tr, const PeerId& victim, const PeerId& attacker, const Topic& t,
                                   const Twp& twp)
{
    Prop1TraceResult r;
    const TopicParams& tp = twp.topic(t);
    for (const TraceEntry& e : tr) {
        if (e.event.actor != victim || !is_heartbeat(e.event) || !e.scores) {
            continue;
        }
        const ScoreSnapshot& s = *e.scores;
        auto total = s.total.find(attacker);
        if (total == s.total.end()) {
            continue;
        }
        Rational topical(0);
        if (auto row = s.topic.find(attacker); row != s.topic.end()) {
            if (auto it = row->second.find(t); it != row->second.end()) {
                topical = it->second;
            }
        }
        Rational mt(0);
        if (auto row = s.mesh_time.find(attacker); row != s.mesh_time.end()) {
            if (auto it = row->second.find(t); it != row->second.end()) {
                mt = it->second;
            }
        }
        if (!r.activation_boundary && mt / nat(tp.time_in_mesh_quantum) > nat(tp.activation_window)) {
            r.activation_boundary = r.overall.size();
        }
        r.overall.push_back(total->second);
        r.topic.push_back(topical);
    }
    r.snapshots = r.overall.size();
    if (r.snapshots < 2) {
        return r;
    }
    r.stable = r.overall[r.snapshots - 1] == r.overall[r.snapshots - 2];
    std::size_t k = r.snapshots;
    while (k > 0 && r.topic[k - 1] <= 0) {
        --k;
    }
    r.verdict = TraceVerdict::no_violation;
    if (k == r.snapshots) {
        return r;
    }
    r.first_violation = k;
    bool positive = true;
    for (std::size_t j = k; j < r.snapshots; ++j) {
        positive = positive && r.overall[j] > 0;
    }
    if (positive && r.stable) {
        r.verdict = TraceVerdict::violation;
    }
    return r;
}

std::optional<CounterMaps> apply_prop2_deltas(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                              const Prop2Deltas& d, const Twp& twp)
{
    CounterMaps out = cm;
    TopicCounters& tc = out.topic_mut(p, t);
    if (d.deficit > 0) {
        const TopicParams& tp = twp.topic(t);
        const Rational deficit = delivery_deficit(tc, tp) + d.deficit;
        const Rational mmd = tp.mesh_message_deliveries_threshold - deficit;
        if (mmd < 0) {
            return std::nullopt;
        }
        tc.mesh_message_deliveries = mmd;
    }
    tc.invalid_message_deliveries += d.invalid;
    out.global_mut(p).behaviour_penalty += d.behaviour;
    return out;
}

std::optional<Counterexample> check_prop2(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                          const Prop2Deltas& d, const Twp& twp)
{
    if (!d.any()) {
        throw std::invalid_argument("property 2 needs at least one positive delta");
    }
    auto after = apply_prop2_deltas(cm, p, t, d, twp);
    if (!after) {
        throw std::invalid_argument("deficit increment needs negative mesh message deliveries");
    }
    auto witness = check_prop2_perturbed(cm, *after, p, twp);
    if (witness) {
        witness->topic = t;
        witness->deltas = d;
        witness->perturbed.reset();
    }
    return witness;
}

std::optional<Counterexample> check_prop2_perturbed(const CounterMaps& before, const CounterMaps& after,
                                                    const PeerId& p, const Twp& twp)
{
    const Rational s0 = calc_score(p, before, twp);
    const Rational s1 = calc_score(p, after, twp);
    if (s1 >= s0) {
        Counterexample c = base(PropertyId::p2, twp, before, p, Topic());
        c.perturbed = after;
        c.scores = {{"before", s0}, {"after", s1}};
        return c;
    }
    return std::nullopt;
}

bool prop3_hypothesis(const TopicCounters& tc, const TopicParams& tp)
{
    return tp.mesh_message_deliveries_cap >= tp.mesh_message_deliveries_threshold &&
           mesh_quanta(tc, tp) > nat(tp.activation_window);
}

std::optional<Counterexample> check_prop3(const TopicCounters& tc, const Prop3Increment& inc, const TopicParams& tp,
                                          const GlobalParams& gp)
{
    TopicCounters after = tc;
    after.mesh_time += inc.mesh_time;
    after.first_message_deliveries += inc.first_deliveries;
    after.mesh_message_deliveries += inc.mesh_deliveries;
    const Rational s0 = weigh_topic(compute_topic_indicators(tc, tp, gp), tp);
    const Rational s1 = weigh_topic(compute_topic_indicators(after, tp, gp), tp);
    if (s1 < s0) {
        Counterexample c;
        c.property = PropertyId::p3;
        c.peer = PeerId("q");
        c.topic = Topic("t");
        c.counters.set_topic(c.peer, c.topic, tc);
        c.increment = inc;
        c.scores = {{"before", s0}, {"after", s1}};
        return c;
    }
    return std::nullopt;
}

std::optional<Counterexample> check_prop4(const CounterMaps& cm, const PeerId& q, const PeerId& q2, const Twp& twp)
{
    const Rational a = calc_score(q, cm, twp);
    const Rational b = calc_score(q2, cm, twp);
    const Rational a_again = calc_score(q, cm, twp);
    if (a != b || a != a_again) {
        Counterexample c = base(PropertyId::p4, twp, cm, q, Topic());
        c.other_peer = q2;
        c.scores = {{"first", a}, {"second", b}};
        return c;
    }
    return std::nullopt;
}

std::uint64_t log_uniform(Oracle& o, std::uint64_t max)
{
    if (max == 0) {
        return 0;
    }
    const unsigned bits = static_cast<unsigned>(std::bit_width(max));
    const unsigned b = static_cast<unsigned>(o.between(0, bits));
    if (b == 0) {
        return 0;
    }
    const std::uint64_t lo = std::uint64_t{1} << (b - 1);
    const std::uint64_t hi = std::min(max, (b == 64) ? UINT64_MAX : (std::uint64_t{1} << b) - 1);
    return o.between(lo, hi);
}

TopicCounters generate_activated_counters(Oracle& o, const TopicParams& tp, const GeneratorConfig& gen)
{
    TopicCounters tc;
    const std::uint64_t q = tp.time_in_mesh_quantum;
    tc.mesh_time = nat(tp.activation_window * q + 1 + log_uniform(o, gen.counter_max * q));
    tc.first_message_deliveries = nat(log_uniform(o, gen.counter_max));
    tc.mesh_message_deliveries = nat(log_uniform(o, gen.counter_max));
    tc.invalid_message_deliveries = draw_bad(o, gen);
    tc.mesh_failure_penalty = draw_bad(o, gen);
    return tc;
}

Topic generate_prop1_counters(Oracle& o, const Twp& twp, const GeneratorConfig& gen, const PeerId& p, CounterMaps& cm)
{
    const auto names = twp.topic_names();
    const Topic starved = names[o.below(names.size())];
    for (const Topic& t : names) {
        TopicCounters tc = generate_activated_counters(o, twp.topic(t), gen);
        if (t == starved) {
            tc.first_message_deliveries = 0;
            tc.mesh_message_deliveries = nat(o.below(2));
        }
        cm.set_topic(p, t, tc);
    }
    cm.set_global(p, draw_globals(o, gen));
    return starved;
}

TopicParams generate_valid_topic_params(Oracle& o)
{
    TopicParams tp;
    tp.topic_weight = pick(o, 1, 400, 100);
    tp.w1 = pick(o, 1, 1000, 10000);
    tp.w2 = pick(o, 1, 1000, 100);
    tp.w3 = -pick(o, 0, 10000, 100);
    tp.w3b = -pick(o, 0, 10000, 100);
    tp.w4 = -pick(o, 0, 100000, 100);
    tp.time_in_mesh_quantum = o.between(1, 20);
    tp.time_in_mesh_cap = pick(o, 1, 4000, 1);
    tp.mesh_message_deliveries_threshold = pick(o, 0, 400, 10);
    tp.first_message_deliveries_cap = tp.mesh_message_deliveries_threshold + pick(o, 1, 2000, 10);
    tp.mesh_message_deliveries_cap = tp.mesh_message_deliveries_threshold + pick(o, 0, 2000, 10);
    tp.first_message_deliveries_decay = pick(o, 1, 1000, 1000);
    tp.mesh_message_deliveries_decay = pick(o, 1, 1000, 1000);
    tp.mesh_failure_penalty_decay = pick(o, 1, 1000, 1000);
    tp.invalid_message_deliveries_decay = pick(o, 1, 1000, 1000);
    tp.activation_window = o.between(0, 10);
    tp.mesh_message_deliveries_window = o.between(0, 5);
    tp.d_low = static_cast<unsigned>(o.between(0, 8));
    tp.d = tp.d_low + static_cast<unsigned>(o.between(0, 4));
    tp.d_high = tp.d + static_cast<unsigned>(o.between(0, 6));
    tp.d_lazy = static_cast<unsigned>(o.between(0, 8));
    return tp;
}

SearchResult search_counterexample(PropertyId prop, const Twp& twp, const GeneratorConfig& gen)
{
    if (gen.budget == 0) {
        throw std::invalid_argument("search budget must be positive");
    }
    if (twp.topics.empty()) {
        throw std::invalid_argument("search needs at least one topic");
    }
    Oracle o(gen.seed);
    const PeerId p("q");
    const auto names = twp.topic_names();
    SearchResult res;
    for (std::uint64_t trial = 0; trial < gen.budget; ++trial) {
        res.trials = trial + 1;
        std::optional<Counterexample> w;
        switch (prop) {
        case PropertyId::p1: {
            CounterMaps cm;
            const Topic t = generate_prop1_counters(o, twp, gen, p, cm);
            w = check_prop1_snapshot(cm, p, t, twp);
            break;
        }
        case PropertyId::p2: {
            CounterMaps cm;
            generate_prop1_counters(o, twp, gen, p, cm);
            const Topic t = names[o.below(names.size())];
            Prop2Deltas d;
            if (o.below(2)) {
                d.deficit = nat(1 + o.below(gen.delta_max));
            }
            if (o.below(2)) {
                d.invalid = nat(1 + o.below(gen.delta_max));
            }
            if (o.below(2)) {
                d.behaviour = nat(1 + o.below(gen.delta_max));
            }
            if (!d.any()) {
                d.invalid = nat(1 + o.below(gen.delta_max));
            }
            if (d.deficit > 0 && !apply_prop2_deltas(cm, p, t, d, twp)) {
                d.deficit = 0; // inadmissible component dropped
            }
            if (!d.any()) {
                ++res.skipped;
                continue;
            }
            w = check_prop2(cm, p, t, d, twp);
            break;
        }
        case PropertyId::p3: {
            const Topic t = names[o.below(names.size())];
            const TopicParams& tp = twp.topic(t);
            const TopicCounters tc = generate_activated_counters(o, tp, gen);
            Prop3Increment inc;
            inc.mesh_time = nat(o.below(2) ? o.below(gen.delta_max * tp.time_in_mesh_quantum + 1) : 0);
            inc.first_deliveries = nat(o.below(2) ? o.below(gen.delta_max + 1) : 0);
            inc.mesh_deliveries = nat(o.below(2) ? o.below(gen.delta_max + 1) : 0);
            if (!prop3_hypothesis(tc, tp)) {
                ++res.skipped;
                continue;
            }
            w = check_prop3(tc, inc, tp, twp.global);
            if (w) {
                w->topic = t;
                w->config_name = twp.name;
                w->config_fingerprint = config_fingerprint(twp);
                w->counters = CounterMaps();
                w->counters.set_topic(w->peer, t, tc);
            }
            break;
        }
        case PropertyId::p4: {
            CounterMaps cm;
            generate_prop1_counters(o, twp, gen, p, cm);
            const PeerId q2("q'");
            for (const auto& [t, tc] : cm.topics_of(p)) {
                cm.set_topic(q2, t, tc);
            }
            cm.set_global(q2, cm.global(p));
            w = check_prop4(cm, p, q2, twp);
            break;
        }
        }
        if (w) {
            w->seed = gen.seed;
            w->trial = trial;
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

json counters_to_json(const CounterMaps& cm)
{
    json peers = json::object();
    for (const PeerId& p : cm.peers()) {
        json row = json::object();
        json topics = json::object();
        for (const auto& [t, tc] : cm.topics_of(p)) {
            topics[t.str()] = json{{"invalidMessageDeliveries", to_string(tc.invalid_message_deliveries)},
                                   {"meshMessageDeliveries", to_string(tc.mesh_message_deliveries)},
                                   {"meshTime", to_string(tc.mesh_time)},
                                   {"firstMessageDeliveries", to_string(tc.first_message_deliveries)},
                                   {"meshFailurePenalty", to_string(tc.mesh_failure_penalty)}};
        }
        row["topics"] = std::move(topics);
        const GlobalCounters& g = cm.global(p);
        row["global"] = json{{"appSpecificScore", to_string(g.app_specific_score)},
                             {"ipColocationCount", g.ip_colocation_count},
                             {"behaviourPenalty", to_string(g.behaviour_penalty)}};
        peers[p.str()] = std::move(row);
    }
    return json{{"peers", std::move(peers)}};
}

CounterMaps counters_from_json(const json& j)
{
    static const std::set<std::string> topic_keys{"invalidMessageDeliveries", "meshMessageDeliveries", "meshTime",
                                                  "firstMessageDeliveries", "meshFailurePenalty"};
    static const std::set<std::string> global_keys{"appSpecificScore", "ipColocationCount", "behaviourPenalty"};
    if (!j.is_object() || !j.contains("peers") || !j.at("peers").is_object()) {
        throw std::runtime_error("counters: expected an object with a 'peers' object");
    }
    CounterMaps cm;
    for (const auto& [peer, row] : j.at("peers").items()) {
        const PeerId p(peer);
        if (row.contains("topics")) {
            for (const auto& [topic, fields] : row.at("topics").items()) {
                for (const auto& [k, _] : fields.items()) {
                    if (!topic_keys.contains(k)) {
                        throw std::runtime_error("counters: unknown field '" + k + "' for " + peer + "/" + topic);
                    }
                }
                TopicCounters tc;
                tc.invalid_message_deliveries = rational_field(fields, "invalidMessageDeliveries");
                tc.mesh_message_deliveries = rational_field(fields, "meshMessageDeliveries");
                tc.mesh_time = rational_field(fields, "meshTime");
                tc.first_message_deliveries = rational_field(fields, "firstMessageDeliveries");
                tc.mesh_failure_penalty = rational_field(fields, "meshFailurePenalty");
                cm.set_topic(p, Topic(topic), tc);
            }
        }
        if (row.contains("global")) {
            const json& g = row.at("global");
            for (const auto& [k, _] : g.items()) {
                if (!global_keys.contains(k)) {
                    throw std::runtime_error("counters: unknown global field '" + k + "' for " + peer);
                }
            }
            GlobalCounters gc;
            gc.app_specific_score = rational_field(g, "appSpecificScore");
            gc.ip_colocation_count = g.value("ipColocationCount", std::uint64_t{0});
            gc.behaviour_penalty = rational_field(g, "behaviourPenalty");
            cm.set_global(p, gc);
        }
    }
    return cm;
}

json counterexample_to_json(const Counterexample& c)
{
    json j = json::object();
    j["property"] = static_cast<int>(c.property);
    j["config"] = c.config_name;
    j["fingerprint"] = c.config_fingerprint;
    j["peer"] = c.peer.str();
    j["topic"] = c.topic.str();
    if (c.other_peer) {
        j["otherPeer"] = c.other_peer->str();
    }
    if (c.deltas) {
        j["deltas"] = deltas_to_json(*c.deltas);
    }
    if (c.increment) {
        j["increment"] = increment_to_json(*c.increment);
    }
    j["counters"] = counters_to_json(c.counters);
    if (c.perturbed) {
        j["perturbed"] = counters_to_json(*c.perturbed);
    }
    json scores = json::object();
    for (const auto& [name, v] : c.scores) {
        scores[name] = to_string(v);
    }
    j["scores"] = std::move(scores);
    j["seed"] = c.seed;
    j["trial"] = c.trial;
    return j;
}

Counterexample counterexample_from_json(const json& j)
{
    Counterexample c;
    c.property = property_from_int(j.at("property").get<int>());
    c.config_name = j.value("config", std::string{});
    c.config_fingerprint = j.value("fingerprint", std::string{});
    c.peer = PeerId(j.at("peer").get<std::string>());
    c.topic = Topic(j.value("topic", std::string{}));
    if (j.contains("otherPeer")) {
        c.other_peer = PeerId(j.at("otherPeer").get<std::string>());
    }
    if (j.contains("deltas")) {
        const json& d = j.at("deltas");
        c.deltas = Prop2Deltas{rational_field(d, "deficit"), rational_field(d, "invalid"), rational_field(d, "behaviour")};
    }
    if (j.contains("increment")) {
        const json& d = j.at("increment");
        c.increment = Prop3Increment{rational_field(d, "meshTime"), rational_field(d, "firstMessageDeliveries"),
                                     rational_field(d, "meshMessageDeliveries")};
    }
    c.counters = counters_from_json(j.at("counters"));
    if (j.contains("perturbed")) {
        c.perturbed = counters_from_json(j.at("perturbed"));
    }
    if (j.contains("scores")) {
        for (const auto& [name, v] : j.at("scores").items()) {
            c.scores.emplace_back(name, parse_rational(v.get<std::string>()));
        }
    }
    c.seed = j.value("seed", std::uint64_t{0});
    c.trial = j.value("trial", std::uint64_t{0});
    return c;
}

bool replay(const Counterexample& c, const Twp& twp)
{
    switch (c.property) {
    case PropertyId::p1:
        return check_prop1_snapshot(c.counters, c.peer, c.topic, twp).has_value();
    case PropertyId::p2:
        if (c.deltas) {
            return check_prop2(c.counters, c.peer, c.topic, *c.deltas, twp).has_value();
        }
        if (c.perturbed) {
            return check_prop2_perturbed(c.counters, *c.perturbed, c.peer, twp).has_value();
        }
        return false;
    case PropertyId::p3:
        return c.increment &&
               check_prop3(c.counters.topic(c.peer, c.topic), *c.increment, twp.topic(c.topic), twp.global).has_value();
    case PropertyId::p4:
        return c.other_peer && check_prop4(c.counters, c.peer, *c.other_peer, twp).has_value();
    }
    return false;
}

} // namespace gsm
