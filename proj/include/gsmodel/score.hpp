#pragma once

#include "gsmodel/config.hpp"
#include "gsmodel/ids.hpp"
#include "gsmodel/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace gsm {

/// Raw behavioural counters a peer keeps for one (neighbor, topic) pair.
struct TopicCounters {
    Rational invalid_message_deliveries;
    Rational mesh_message_deliveries;
    Rational mesh_time;
    Rational first_message_deliveries;
    Rational mesh_failure_penalty;

    bool operator==(const TopicCounters&) const = default;
};

/// Per-neighbor counters feeding the global indicators P5..P7.
struct GlobalCounters {
    Rational app_specific_score;
    std::uint64_t ip_colocation_count = 0;
    Rational behaviour_penalty;

    bool operator==(const GlobalCounters&) const = default;
};

struct TopicIndicators {
    Rational p1, p2, p3, p3b, p4;
    bool operator==(const TopicIndicators&) const = default;
};

struct GlobalIndicators {
    Rational p5, p6, p7;
    bool operator==(const GlobalIndicators&) const = default;
};

/// Total maps from (peer, topic) and peer to counters; absent keys read as zero.
class CounterMaps {
public:
    using TopicTable = std::map<Topic, TopicCounters>;

    const TopicCounters& topic(const PeerId& peer, const Topic& t) const;
    const GlobalCounters& global(const PeerId& peer) const;

    TopicCounters& topic_mut(const PeerId& peer, const Topic& t) { return topic_[peer][t]; }
    GlobalCounters& global_mut(const PeerId& peer) { return global_[peer]; }

    void set_topic(const PeerId& peer, const Topic& t, TopicCounters c) { topic_[peer][t] = std::move(c); }
    void set_global(const PeerId& peer, GlobalCounters c) { global_[peer] = std::move(c); }

    bool has_topic(const PeerId& peer, const Topic& t) const;
    bool has_peer(const PeerId& peer) const { return topic_.contains(peer) || global_.contains(peer); }

    /// Topics keyed for `peer` (possibly empty).
    const TopicTable& topics_of(const PeerId& peer) const;
    std::vector<PeerId> peers() const;

    void erase_peer(const PeerId& peer);

    std::map<PeerId, TopicTable>& topic_tables() { return topic_; }
    const std::map<PeerId, TopicTable>& topic_tables() const { return topic_; }
    std::map<PeerId, GlobalCounters>& global_table() { return global_; }
    const std::map<PeerId, GlobalCounters>& global_table() const { return global_; }

    bool operator==(const CounterMaps&) const = default;

private:
    std::map<PeerId, TopicTable> topic_;
    std::map<PeerId, GlobalCounters> global_;
};

/// Mesh time measured in quanta (not capped).
Rational mesh_quanta(const TopicCounters& tc, const TopicParams& tp);

/// Current deficit max(0, threshold - MMD) regardless of activation.
Rational delivery_deficit(const TopicCounters& tc, const TopicParams& tp);

/// P1..P4 for one topic. `gp` contributes the squareP4 / activation switches only.
TopicIndicators compute_topic_indicators(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp);
TopicIndicators compute_topic_indicators(const TopicCounters& tc, const TopicParams& tp);

/// tw(t) * (w1 P1 + w2 P2 + w3 P3 + w3b P3b + w4 P4).
Rational weigh_topic(const TopicIndicators& ind, const TopicParams& tp);

/// min(x, cap) when cap != 0, otherwise x.
Rational topic_cap(const Rational& x, const Rational& cap);

GlobalIndicators compute_global_indicators(const GlobalCounters& gc, const GlobalParams& gp);

/// w5 P5 + w6 P6 + w7 P7.
Rational weigh_global(const GlobalIndicators& ind, const GlobalParams& gp);

/// Topic score of `peer` for topic `t` (absent counters read as zero).
Rational topic_score(const PeerId& peer, const Topic& t, const CounterMaps& cm, const Twp& twp);

/// TC(sum over twp topics of the topic scores) + w5 P5 + w6 P6 + w7 P7.
Rational calc_score(const PeerId& peer, const CounterMaps& cm, const Twp& twp);

struct TopicBreakdown {
    Topic topic;
    TopicIndicators indicators;
    Rational score;
};

struct ScoreBreakdown {
    std::vector<TopicBreakdown> topics;
    Rational topic_sum;
    Rational capped_sum;
    GlobalIndicators globals;
    Rational global_score;
    Rational total;
};

/// Same value as calc_score, with every intermediate exposed.
ScoreBreakdown explain_score(const PeerId& peer, const CounterMaps& cm, const Twp& twp);

/// Multiply the decaying counters by their decays; results strictly below
/// decayToZero become 0. Mesh time, P5 and IP colocation are untouched.
TopicCounters decay_topic_counters(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp);
GlobalCounters decay_global_counters(const GlobalCounters& gc, const GlobalParams& gp);
std::pair<TopicCounters, GlobalCounters> decay_counters(const TopicCounters& tc, const GlobalCounters& gc,
                                                        const TopicParams& tp, const GlobalParams& gp);

/// Adds the current P3 to the mesh failure penalty.
TopicCounters apply_prune_penalty(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp);
TopicCounters apply_prune_penalty(const TopicCounters& tc, const TopicParams& tp);

} // namespace gsm
