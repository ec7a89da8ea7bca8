#include "gsmodel/score.hpp"

#include <algorithm>

namespace gsm {

namespace {

const TopicCounters kZeroTopic{};
const GlobalCounters kZeroGlobal{};
const CounterMaps::TopicTable kEmptyTable{};
const GlobalParams kDefaultGlobals{};

Rational decayed(const Rational& value, const Rational& decay, const Rational& decay_to_zero)
{
    if (value == 0) {
        return value;
    }
    Rational next = value * decay;
    if (next < decay_to_zero) {
        return Rational(0);
    }
    return next;
}

} // namespace

const TopicCounters& CounterMaps::topic(const PeerId& peer, const Topic& t) const
{
    auto p = topic_.find(peer);
    if (p == topic_.end()) {
        return kZeroTopic;
    }
    auto it = p->second.find(t);
    return it == p->second.end() ? kZeroTopic : it->second;
}

const GlobalCounters& CounterMaps::global(const PeerId& peer) const
{
    auto it = global_.find(peer);
    return it == global_.end() ? kZeroGlobal : it->second;
}

bool CounterMaps::has_topic(const PeerId& peer, const Topic& t) const
{
    auto p = topic_.find(peer);
    return p != topic_.end() && p->second.contains(t);
}

const CounterMaps::TopicTable& CounterMaps::topics_of(const PeerId& peer) const
{
    auto p = topic_.find(peer);
    return p == topic_.end() ? kEmptyTable : p->second;
}

std::vector<PeerId> CounterMaps::peers() const
{
    std::vector<PeerId> out;
    for (const auto& [p, _] : topic_) {
        out.push_back(p);
    }
    for (const auto& [p, _] : global_) {
        if (!topic_.contains(p)) {
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void CounterMaps::erase_peer(const PeerId& peer)
{
    topic_.erase(peer);
    global_.erase(peer);
}

Rational mesh_quanta(const TopicCounters& tc, const TopicParams& tp)
{
    return tc.mesh_time / Rational(tp.time_in_mesh_quantum);
}

Rational delivery_deficit(const TopicCounters& tc, const TopicParams& tp)
{
    if (tc.mesh_message_deliveries < tp.mesh_message_deliveries_threshold) {
        return tp.mesh_message_deliveries_threshold - tc.mesh_message_deliveries;
    }
    return Rational(0);
}

TopicIndicators compute_topic_indicators(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp)
{
    TopicIndicators ind;
    const Rational quanta = mesh_quanta(tc, tp);
    ind.p1 = min_of(quanta, tp.time_in_mesh_cap);
    ind.p2 = min_of(tc.first_message_deliveries, tp.first_message_deliveries_cap);
    const bool active = !gp.activation_gates_deficit || quanta > Rational(tp.activation_window);
    if (active && tc.mesh_message_deliveries < tp.mesh_message_deliveries_threshold) {
        ind.p3 = square(tp.mesh_message_deliveries_threshold - tc.mesh_message_deliveries);
    }
    ind.p3b = tc.mesh_failure_penalty;
    ind.p4 = gp.square_p4 ? square(tc.invalid_message_deliveries) : tc.invalid_message_deliveries;
    return ind;
}

TopicIndicators compute_topic_indicators(const TopicCounters& tc, const TopicParams& tp)
{
    return compute_topic_indicators(tc, tp, kDefaultGlobals);
}

Rational weigh_topic(const TopicIndicators& ind, const TopicParams& tp)
{
    Rational inner = tp.w1 * ind.p1 + tp.w2 * ind.p2 + tp.w3 * ind.p3 + tp.w3b * ind.p3b + tp.w4 * ind.p4;
    return tp.topic_weight * inner;
}

Rational topic_cap(const Rational& x, const Rational& cap)
{
    if (cap != 0) {
        return min_of(x, cap);
    }
    return x;
}

GlobalIndicators compute_global_indicators(const GlobalCounters& gc, const GlobalParams& gp)
{
    GlobalIndicators ind;
    ind.p5 = gc.app_specific_score;
    if (gc.ip_colocation_count > gp.ip_colocation_threshold) {
        ind.p6 = square(Rational(gc.ip_colocation_count - gp.ip_colocation_threshold));
    }
    if (gc.behaviour_penalty > gp.behaviour_penalty_threshold) {
        ind.p7 = square(gc.behaviour_penalty - gp.behaviour_penalty_threshold);
    }
    return ind;
}

Rational weigh_global(const GlobalIndicators& ind, const GlobalParams& gp)
{
    return gp.w5 * ind.p5 + gp.w6 * ind.p6 + gp.w7 * ind.p7;
}

Rational topic_score(const PeerId& peer, const Topic& t, const CounterMaps& cm, const Twp& twp)
{
    const TopicParams& tp = twp.topic(t);
    return weigh_topic(compute_topic_indicators(cm.topic(peer, t), tp, twp.global), tp);
}

Rational calc_score(const PeerId& peer, const CounterMaps& cm, const Twp& twp)
{
    Rational sum;
    const auto& table = cm.topics_of(peer);
    for (const auto& [t, tc] : table) {
        auto params = twp.topics.find(t);
        if (params == twp.topics.end()) {
            continue;
        }
        sum += weigh_topic(compute_topic_indicators(tc, params->second, twp.global), params->second);
    }
    // Topics without counters contribute tw * 0 = 0.
    Rational total = topic_cap(sum, twp.global.topic_cap);
    total += weigh_global(compute_global_indicators(cm.global(peer), twp.global), twp.global);
    return total;
}

ScoreBreakdown explain_score(const PeerId& peer, const CounterMaps& cm, const Twp& twp)
{
    ScoreBreakdown out;
    for (const auto& [t, tp] : twp.topics) {
        TopicBreakdown row{t, compute_topic_indicators(cm.topic(peer, t), tp, twp.global), {}};
        row.score = weigh_topic(row.indicators, tp);
        out.topic_sum += row.score;
        out.topics.push_back(std::move(row));
    }
    out.capped_sum = topic_cap(out.topic_sum, twp.global.topic_cap);
    out.globals = compute_global_indicators(cm.global(peer), twp.global);
    out.global_score = weigh_global(out.globals, twp.global);
    out.total = out.capped_sum + out.global_score;
    return out;
}

TopicCounters decay_topic_counters(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp)
{
    TopicCounters out = tc;
    out.first_message_deliveries =
        decayed(tc.first_message_deliveries, tp.first_message_deliveries_decay, gp.decay_to_zero);
    out.mesh_message_deliveries =
        decayed(tc.mesh_message_deliveries, tp.mesh_message_deliveries_decay, gp.decay_to_zero);
    out.mesh_failure_penalty = decayed(tc.mesh_failure_penalty, tp.mesh_failure_penalty_decay, gp.decay_to_zero);
    out.invalid_message_deliveries =
        decayed(tc.invalid_message_deliveries, tp.invalid_message_deliveries_decay, gp.decay_to_zero);
    return out;
}

GlobalCounters decay_global_counters(const GlobalCounters& gc, const GlobalParams& gp)
{
    GlobalCounters out = gc;
    out.behaviour_penalty = decayed(gc.behaviour_penalty, gp.behaviour_penalty_decay, gp.decay_to_zero);
    return out;
}

std::pair<TopicCounters, GlobalCounters> decay_counters(const TopicCounters& tc, const GlobalCounters& gc,
                                                        const TopicParams& tp, const GlobalParams& gp)
{
    return {decay_topic_counters(tc, tp, gp), decay_global_counters(gc, gp)};
}

TopicCounters apply_prune_penalty(const TopicCounters& tc, const TopicParams& tp, const GlobalParams& gp)
{
    TopicCounters out = tc;
    out.mesh_failure_penalty += compute_topic_indicators(tc, tp, gp).p3;
    return out;
}

TopicCounters apply_prune_penalty(const TopicCounters& tc, const TopicParams& tp)
{
    return apply_prune_penalty(tc, tp, kDefaultGlobals);
}

} // namespace gsm
