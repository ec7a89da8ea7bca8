#pragma once

#include "gsmodel/config.hpp"
#include "gsmodel/events.hpp"
#include "gsmodel/ids.hpp"
#include "gsmodel/oracle.hpp"
#include "gsmodel/score.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace gsm {

/// What a peer knows about its neighbors' topics, plus its own mesh and fanout views.
struct NbrTopicState {
    std::map<PeerId, std::set<Topic>> nbr_subs;
    std::map<Topic, std::set<PeerId>> mesh;
    std::map<Topic, std::set<PeerId>> fanout;
    std::map<Topic, Tick> last_pub;
    std::map<std::pair<PeerId, Topic>, Tick> backoff_until;

    bool operator==(const NbrTopicState&) const = default;
};

struct SeenEntry {
    Topic topic;
    Tick first_tick = 0;
    Tick age = 0;
    bool operator==(const SeenEntry&) const = default;
};

struct PendingIwant {
    Topic topic;
    Tick waited = 0;
    bool operator==(const PendingIwant&) const = default;
};

struct RequestStats {
    std::uint64_t iwant_sent = 0;
    std::uint64_t iwant_received = 0;
    std::uint64_t served = 0;
    std::uint64_t unavailable = 0;
    std::uint64_t completed = 0;
    std::uint64_t timed_out = 0;
    bool operator==(const RequestStats&) const = default;
};

struct MsgsState {
    /// History windows, newest first.
    std::deque<std::vector<msg::Full>> mcache{std::vector<msg::Full>{}};
    std::map<MessageId, SeenEntry> seen;
    std::map<std::pair<PeerId, MessageId>, PendingIwant> pending_iwants;
    /// Every valid message ever accepted, by topic. Not bounded by the seen TTL.
    std::map<Topic, std::set<MessageId>> accepted;
    RequestStats stats;

    bool in_mcache(MessageId mid) const;
    const msg::Full* find_in_mcache(MessageId mid) const;

    bool operator==(const MsgsState&) const = default;
};

/// Scripted misbehaviour: the peer never forwards, advertises or serves
/// messages of the listed topics to the given victim.
struct AttackBehavior {
    std::map<PeerId, std::set<Topic>> withheld;

    bool withholds(const PeerId& victim, const Topic& t) const;
    bool operator==(const AttackBehavior&) const = default;
};

struct PeerState {
    PeerId self;
    std::string address;
    Tick tick = 0;

    std::set<Topic> subs;         // S
    std::set<Topic> known_topics; // T; U = T \ S
    std::set<PeerId> neighbors;
    std::set<PeerId> outbound;
    std::map<PeerId, std::string> address_of;

    NbrTopicState nts;
    MsgsState mst;
    CounterMaps counters;
    std::map<PeerId, Rational> nbr_scores;
    std::map<PeerId, std::map<Topic, Rational>> nbr_topic_scores;

    AttackBehavior attack;

    PeerState() = default;
    explicit PeerState(PeerId id, std::string addr = {}) : self(std::move(id)), address(std::move(addr)) {}

    /// Cached score of q (0 before the first heartbeat that scored it).
    Rational score_of(const PeerId& q) const;
    bool subscribed(const Topic& t) const { return subs.contains(t); }
    bool nbr_subscribed(const PeerId& q, const Topic& t) const;
    const std::set<PeerId>& mesh(const Topic& t) const;
    const std::set<PeerId>& fanout(const Topic& t) const;
    bool backed_off(const PeerId& q, const Topic& t) const;

    bool operator==(const PeerState&) const = default;
};

struct StepOutput {
    std::vector<Event> emitted;
    std::vector<std::string> notes;
};

/// Applies one event to the acting peer in place. All randomness comes from `oracle`;
/// neighbors are always visited in PeerId order.
StepOutput step(PeerState& ps, const Event& ev, const Twp& twp, Oracle& oracle);

/// Pure form of `step`.
std::pair<PeerState, StepOutput> ps_trx(PeerState ps, const Event& ev, const Twp& twp, Oracle& oracle);

/// Violated structural invariants (empty when the state is well formed).
std::vector<std::string> check_invariants(const PeerState& ps, const Twp& twp);

} // namespace gsm
