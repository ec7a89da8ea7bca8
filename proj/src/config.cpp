#include "gsmodel/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <set>

namespace gsm {

using nlohmann::json;

namespace {

// Field tables shared by the parser, the serializer and the validator.
// Each visitor call receives the camelCase JSON key and a reference to the member.

template <class Params, class Visitor>
void visit_topic_fields(Params& p, Visitor&& v)
{
    v("topicWeight", p.topic_weight);
    v("w1", p.w1);
    v("w2", p.w2);
    v("w3", p.w3);
    v("w3b", p.w3b);
    v("w4", p.w4);
    v("timeInMeshQuantum", p.time_in_mesh_quantum);
    v("timeInMeshCap", p.time_in_mesh_cap);
    v("firstMessageDeliveriesCap", p.first_message_deliveries_cap);
    v("firstMessageDeliveriesDecay", p.first_message_deliveries_decay);
    v("meshMessageDeliveriesDecay", p.mesh_message_deliveries_decay);
    v("meshFailurePenaltyDecay", p.mesh_failure_penalty_decay);
    v("invalidMessageDeliveriesDecay", p.invalid_message_deliveries_decay);
    v("meshMessageDeliveriesThreshold", p.mesh_message_deliveries_threshold);
    v("meshMessageDeliveriesCap", p.mesh_message_deliveries_cap);
    v("activationWindow", p.activation_window);
    v("meshMessageDeliveriesWindow", p.mesh_message_deliveries_window);
    v("D", p.d);
    v("Dlow", p.d_low);
    v("Dhi", p.d_high);
    v("Dlazy", p.d_lazy);
}

template <class Params, class Visitor>
void visit_global_fields(Params& g, Visitor&& v)
{
    v("w5", g.w5);
    v("w6", g.w6);
    v("w7", g.w7);
    v("topicCap", g.topic_cap);
    v("ipColocationThreshold", g.ip_colocation_threshold);
    v("behaviourPenaltyThreshold", g.behaviour_penalty_threshold);
    v("behaviourPenaltyDecay", g.behaviour_penalty_decay);
    v("decayToZero", g.decay_to_zero);
    v("decayIntervalTicks", g.decay_interval_ticks);
    v("pruneBackoffTicks", g.prune_backoff_ticks);
    v("unsubscribeBackoffTicks", g.unsubscribe_backoff_ticks);
    v("floodPublish", g.flood_publish);
    v("gossipFactor", g.gossip_factor);
    v("heartbeatIntervalTicks", g.heartbeat_interval_ticks);
    v("fanoutTTLTicks", g.fanout_ttl_ticks);
    v("seenTTLTicks", g.seen_ttl_ticks);
    v("retainScoreTicks", g.retain_score_ticks);
    v("mcacheLen", g.mcache_len);
    v("mcacheGossip", g.mcache_gossip);
    v("dscore", g.dscore);
    v("dout", g.dout);
    v("gossipThreshold", g.gossip_threshold);
    v("publishThreshold", g.publish_threshold);
    v("graylistThreshold", g.graylist_threshold);
    v("opportunisticGraftThreshold", g.opportunistic_graft_threshold);
    v("opportunisticGraftPeers", g.opportunistic_graft_peers);
    v("iwantTimeoutTicks", g.iwant_timeout_ticks);
    v("iwantFailureProbability", g.iwant_failure_probability);
    v("squareP4", g.square_p4);
    v("activationGatesDeficit", g.activation_gates_deficit);
}

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

Rational rational_from_json(const json& j, const std::string& field)
{
    try {
        if (j.is_string()) {
            return parse_rational(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.dump());
        }
        if (j.is_number_float()) {
            // dump() yields the shortest round-trip literal, i.e. what the author wrote
            return parse_rational(j.dump());
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(field + ": " + e.what());
    }
    throw ConfigError(field + ": expected a rational (number or string), got " + std::string(j.type_name()));
}

std::uint64_t natural_from_json(const json& j, const std::string& field)
{
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    throw ConfigError(field + ": expected a non-negative integer, got " + j.dump());
}

struct FieldReader {
    const json& object;
    std::string prefix;
    std::set<std::string>* seen;

    template <class T>
    void operator()(const char* key, T& member) const
    {
        auto it = object.find(key);
        if (it == object.end()) {
            return;
        }
        seen->insert(key);
        const std::string field = prefix + key;
        if constexpr (std::is_same_v<T, Rational>) {
            member = rational_from_json(*it, field);
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) {
                throw ConfigError(field + ": expected a boolean");
            }
            member = it->template get<bool>();
        } else {
            member = static_cast<T>(natural_from_json(*it, field));
        }
    }
};

struct FieldWriter {
    json* out;

    template <class T>
    void operator()(const char* key, const T& member) const
    {
        if constexpr (std::is_same_v<T, Rational>) {
            (*out)[key] = to_string(member);
        } else {
            (*out)[key] = member;
        }
    }
};

void reject_unknown(const json& object, const std::set<std::string>& known, const std::string& prefix)
{
    for (auto it = object.begin(); it != object.end(); ++it) {
        if (!known.contains(it.key())) {
            throw ConfigError(prefix + it.key() + ": unknown field");
        }
    }
}

bool in_unit_interval(const Rational& x) { return x > 0 && x <= 1; }

} // namespace

const TopicParams& Twp::topic(const Topic& t) const
{
    auto it = topics.find(t);
    if (it == topics.end()) {
        throw ConfigError("topic not configured: " + t.str());
    }
    return it->second;
}

std::vector<Topic> Twp::topic_names() const
{
    std::vector<Topic> out;
    out.reserve(topics.size());
    for (const auto& [t, _] : topics) {
        out.push_back(t);
    }
    return out;
}

Twp parse_config(std::string_view text, bool strict)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("parse error at line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " +
                          e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config document must be a JSON object");
    }
    reject_unknown(doc, {"name", "global", "topics"}, "");

    Twp twp;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) {
            throw ConfigError("name: expected a string");
        }
        twp.name = it->get<std::string>();
    }
    if (auto it = doc.find("global"); it != doc.end()) {
        if (!it->is_object()) {
            throw ConfigError("global: expected an object");
        }
        std::set<std::string> seen;
        visit_global_fields(twp.global, FieldReader{*it, "global.", &seen});
        reject_unknown(*it, seen, "global.");
    }
    auto topics = doc.find("topics");
    if (topics == doc.end() || !topics->is_object() || topics->empty()) {
        throw ConfigError("no topics defined");
    }
    for (auto it = topics->begin(); it != topics->end(); ++it) {
        if (!it->is_object()) {
            throw ConfigError("topics." + it.key() + ": expected an object");
        }
        TopicParams params;
        std::set<std::string> seen;
        const std::string prefix = "topics." + it.key() + ".";
        visit_topic_fields(params, FieldReader{*it, prefix, &seen});
        reject_unknown(*it, seen, prefix);
        twp.topics.emplace(Topic(it.key()), std::move(params));
    }

    if (strict) {
        auto report = validate_config(twp, true);
        for (const auto& f : report.findings) {
            if (f.severity == Severity::error) {
                throw ConfigError(f.field + ": " + f.message);
            }
        }
    }
    return twp;
}

std::string serialize_config(const Twp& twp)
{
    json doc;
    doc["name"] = twp.name;
    json global = json::object();
    visit_global_fields(twp.global, FieldWriter{&global});
    doc["global"] = std::move(global);
    json topics = json::object();
    for (const auto& [t, p] : twp.topics) {
        json obj = json::object();
        visit_topic_fields(p, FieldWriter{&obj});
        topics[t.str()] = std::move(obj);
    }
    doc["topics"] = std::move(topics);
    return doc.dump(2);
}

std::string config_fingerprint(const Twp& twp)
{
    Twp unnamed = twp;
    unnamed.name.clear();
    const std::string canonical = serialize_config(unnamed);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool ValidationReport::has_errors() const { return error_count() > 0; }

std::size_t ValidationReport::error_count() const
{
    return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(),
                                                  [](const Finding& f) { return f.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const { return findings.size() - error_count(); }

ValidationReport validate_config(const Twp& twp, bool strict)
{
    ValidationReport report;
    const Severity guidance = strict ? Severity::error : Severity::warning;
    auto hard = [&](std::string field, std::string message) {
        report.findings.push_back({Severity::error, std::move(field), std::move(message)});
    };
    auto soft = [&](std::string field, std::string message) {
        report.findings.push_back({guidance, std::move(field), std::move(message)});
    };
    auto positive = [&](const std::string& field, const Rational& w) {
        if (w == 0) {
            soft(field, "zero-valued weight (should be positive)");
        } else if (w < 0) {
            soft(field, "negative weight (should be positive)");
        }
    };
    auto negative = [&](const std::string& field, const Rational& w) {
        if (w == 0) {
            soft(field, "zero-valued weight (should be negative)");
        } else if (w > 0) {
            soft(field, "positive weight (should be negative)");
        }
    };
    auto decay = [&](const std::string& field, const Rational& d) {
        if (!in_unit_interval(d)) {
            hard(field, "decay not in (0,1]");
        }
    };

    if (twp.topics.empty()) {
        hard("topics", "no topics defined");
    }
    for (const auto& [t, p] : twp.topics) {
        const std::string pre = "topics." + t.str() + ".";
        positive(pre + "w1", p.w1);
        positive(pre + "w2", p.w2);
        negative(pre + "w3", p.w3);
        negative(pre + "w3b", p.w3b);
        negative(pre + "w4", p.w4);
        decay(pre + "firstMessageDeliveriesDecay", p.first_message_deliveries_decay);
        decay(pre + "meshMessageDeliveriesDecay", p.mesh_message_deliveries_decay);
        decay(pre + "meshFailurePenaltyDecay", p.mesh_failure_penalty_decay);
        decay(pre + "invalidMessageDeliveriesDecay", p.invalid_message_deliveries_decay);
        if (p.time_in_mesh_quantum == 0) {
            hard(pre + "timeInMeshQuantum", "quantum must be positive");
        }
        if (p.topic_weight < 0) {
            hard(pre + "topicWeight", "topic weight must not be negative");
        }
        if (p.time_in_mesh_cap <= 0) {
            soft(pre + "timeInMeshCap", "time in mesh cap should be a small positive value");
        }
        if (p.first_message_deliveries_cap <= 0) {
            hard(pre + "firstMessageDeliveriesCap", "cap must be positive");
        }
        if (p.mesh_message_deliveries_threshold < 0 || p.mesh_message_deliveries_cap < 0) {
            hard(pre + "meshMessageDeliveriesThreshold", "threshold and cap must be non-negative");
        } else if (p.mesh_message_deliveries_threshold == 0) {
            soft(pre + "meshMessageDeliveriesThreshold", "zero-valued threshold (should be positive)");
        }
        if (p.first_message_deliveries_cap < p.mesh_message_deliveries_threshold) {
            soft(pre + "firstMessageDeliveriesCap", "first message deliveries cap below mesh message deliveries threshold");
        }
        if (p.mesh_message_deliveries_cap < p.mesh_message_deliveries_threshold) {
            soft(pre + "meshMessageDeliveriesCap", "mesh message deliveries cap below threshold");
        }
        if (!(p.d_low <= p.d && p.d <= p.d_high)) {
            hard(pre + "D", "degree bounds must satisfy Dlow <= D <= Dhi");
        }
    }

    const auto& g = twp.global;
    positive("global.w5", g.w5);
    negative("global.w6", g.w6);
    negative("global.w7", g.w7);
    if (g.topic_cap < 0) {
        hard("global.topicCap", "topic cap must be non-negative");
    }
    if (g.ip_colocation_threshold < 1) {
        hard("global.ipColocationThreshold", "IP colocation threshold must be at least 1");
    }
    if (g.behaviour_penalty_threshold < 0) {
        hard("global.behaviourPenaltyThreshold", "threshold must be non-negative");
    }
    decay("global.behaviourPenaltyDecay", g.behaviour_penalty_decay);
    if (g.decay_to_zero <= 0 || g.decay_to_zero >= 1) {
        soft("global.decayToZero", "decayToZero should be close to 0");
    }
    if (g.decay_interval_ticks == 0) {
        hard("global.decayIntervalTicks", "decay interval must be positive");
    }
    if (g.heartbeat_interval_ticks != 1) {
        hard("global.heartbeatIntervalTicks", "heartbeat interval is fixed at one tick");
    }
    if (g.gossip_factor < 0 || g.gossip_factor > 1) {
        hard("global.gossipFactor", "gossip factor must be in [0,1]");
    }
    if (g.mcache_len == 0) {
        hard("global.mcacheLen", "mcacheLen must be positive");
    }
    if (g.mcache_gossip == 0 || g.mcache_gossip > g.mcache_len) {
        hard("global.mcacheGossip", "mcacheGossip must be in [1, mcacheLen]");
    }
    if (!(g.gossip_threshold < 0)) {
        soft("global.gossipThreshold", "gossip threshold must be < 0");
    }
    if (!(g.publish_threshold <= g.gossip_threshold)) {
        soft("global.publishThreshold", "publish threshold must be <= gossip threshold");
    }
    if (!(g.graylist_threshold < g.publish_threshold)) {
        soft("global.graylistThreshold", "graylist threshold must be < publish threshold");
    }
    if (g.opportunistic_graft_threshold < 0) {
        soft("global.opportunisticGraftThreshold", "opportunistic graft threshold must be >= 0");
    }
    if (g.iwant_failure_probability < 0 || g.iwant_failure_probability > 1) {
        hard("global.iwantFailureProbability", "probability must be in [0,1]");
    }
    for (const auto& [t, p] : twp.topics) {
        if (2 * g.dout > p.d) {
            soft("global.dout", "dout must be at most D/2 (topic " + t.str() + ")");
        }
    }
    return report;
}

} // namespace gsm
