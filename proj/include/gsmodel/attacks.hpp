#pragma once

#include "gsmodel/config.hpp"
#include "gsmodel/events.hpp"
#include "gsmodel/network.hpp"
#include "gsmodel/properties.hpp"
#include "gsmodel/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsm {

class AttackError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sizing.

/// Least t with 7.2 + 3.2 t/T > 24.7 i/T and t + i <= T (Eth2.0 constants).
std::optional<unsigned> min_extra_topics(unsigned i, unsigned T);

/// tw (w1 timeInMeshCap + w2 firstMessageDeliveriesCap): the most an honest topic can add.
Rational max_topic_contribution(const TopicParams& tp);
/// tw |w3| threshold^2: what a fully starved topic costs once activated.
Rational attacked_topic_penalty(const TopicParams& tp);

/// Generic planner: least number of honest topics (taken from `candidates`, best
/// first) whose maximal contributions outweigh the penalties of `attacked`.
std::optional<std::size_t> plan_extra_topics(const Twp& twp, const std::vector<Topic>& attacked,
                                             const std::vector<Topic>& candidates);

/// Scores a victim assigns to a gadget's attacker, round by round, when the attacker sends
/// `b` messages per attacked topic and `f` per other topic and the victim heartbeats after
/// each round. Mirrors the victim's counter accounting; `start` holds the initial counters.
std::vector<Rational> predict_gadget_scores(const Twp& twp, const std::set<Topic>& attacked, unsigned f, unsigned b,
                                            unsigned rounds, const std::map<Topic, TopicCounters>& start = {});

/// Smallest subnet count T (searched up to `max_subnets`) for which the Eth preset with T
/// subnets keeps an ag(i) attacker's predicted score at or above the topic cap from the
/// first round onward, and the extra-topic inequality has a solution.
std::optional<unsigned> eth_subnets_for_attack(unsigned i, unsigned f, unsigned b, unsigned rounds,
                                               unsigned max_subnets = 128);

// Gadgets and scripts.

enum class AttackKind { throttle, block, eclipse, partition, honest };

std::string to_string(AttackKind k);
AttackKind attack_kind_from_string(const std::string& s);

struct AttackGadget {
    PeerId attacker;
    PeerId victim;
    std::set<Topic> attacked;
    bool operator==(const AttackGadget&) const = default;
};

/// A message published by an honest peer at the start of a round.
struct BackgroundPublish {
    PeerId publisher;
    Topic topic;
    /// Publish in rounds r with r % every == 0.
    unsigned every = 1;
};

struct AttackScript {
    AttackKind kind = AttackKind::block;
    std::vector<AttackGadget> gadgets;
    /// Ordered topic list, attacked topics first.
    std::vector<Topic> topics;
    unsigned rounds = 0;
    unsigned f = 10;
    unsigned b = 0;
    /// Per round: background APPs, the gadgets' transmissions, then one HBM per victim.
    std::vector<std::vector<Event>> round_events;
    /// Peers whose attacked-topic messages a victim may legitimately receive.
    std::map<PeerId, std::set<PeerId>> regions;
    /// Origin of every message id the script creates.
    std::map<MessageId, PeerId> origins;

    std::vector<Event> events() const;
    std::vector<PeerId> victims() const;
    std::vector<PeerId> attackers() const;
    std::set<Topic> attacked_topics() const;
};

/// Builds the (Msgs H)^rounds script. Rejects b > 1 and f == 0.
AttackScript gen_attack_events(AttackKind kind, const std::vector<AttackGadget>& gadgets,
                               const std::vector<Topic>& topics, unsigned rounds, unsigned f, unsigned b,
                               MessageId first_mid = 1, const std::vector<BackgroundPublish>& background = {});

/// Installs the scripted misbehaviour: each attacker withholds its attacked topics
/// from its victims, and all attackers know every scripted message in advance.
void arm_attackers(Group& g, const AttackScript& script);

// Partitions.

/// Minimum vertex separator between `sources` and `sinks` (disjoint, non-adjacent),
/// by node-splitting max-flow. Nodes of either set are never chosen.
std::set<PeerId> min_separator(const Topology& topo, const std::set<PeerId>& sources, const std::set<PeerId>& sinks);

/// Smallest X outside S whose removal leaves S with no path to the rest.
std::set<PeerId> min_vertex_cut(const Topology& topo, const std::set<PeerId>& S);

/// Exhaustive check for small graphs (at most 20 candidate nodes).
std::set<PeerId> min_vertex_cut_brute(const Topology& topo, const std::set<PeerId>& S);

bool separates(const Topology& topo, const std::set<PeerId>& S, const std::set<PeerId>& X);

/// Connected victim set of the given size with the smallest boundary (greedy growth from every start).
std::set<PeerId> choose_victim_set(const Topology& topo, std::size_t size);

/// One gadget per (cut peer, non-cut neighbor). With `subnets` set, rejects an
/// attacked-topic count for which the extra-topic inequality has no solution.
std::vector<AttackGadget> synth_partition_attack(const Topology& topo, const std::set<PeerId>& S,
                                                 const std::set<Topic>& attacked,
                                                 std::optional<unsigned> subnets = std::nullopt);

// Validation.

struct GadgetReport {
    AttackGadget gadget;
    std::map<Topic, Prop1TraceResult> topics;
    std::vector<Rational> scores;
    bool violation = false;
    bool positive_throughout = false;
    bool stable = false;
    /// Snapshot index from which the score no longer changes.
    std::optional<std::size_t> stable_from;
    std::optional<std::size_t> first_violation;
    std::optional<std::size_t> activation_boundary;
};

struct VictimReport {
    PeerId victim;
    std::uint64_t attacked_received = 0;
    std::uint64_t attacked_breaches = 0;
    std::uint64_t non_attacked_received = 0;
    std::uint64_t non_attacked_from_outside = 0;
    /// Attacked-topic messages in the victim's caches at the end of the run.
    std::uint64_t attacked_cached = 0;
    std::uint64_t non_attacked_cached = 0;
};

struct AttackReport {
    AttackKind kind = AttackKind::block;
    std::vector<GadgetReport> gadgets;
    std::vector<VictimReport> victims;
    bool success = false;
};

/// Checks a trace produced by running `script` (attack phase only) and the final group.
AttackReport validate_attack(const Trace& tr, const AttackScript& script, const Twp& twp, const Group& final_group);

nlohmann::json script_to_json(const AttackScript& s);
/// Inverse of script_to_json; message origins are recovered from the events.
AttackScript script_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const AttackReport& r);

} // namespace gsm
