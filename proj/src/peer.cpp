#include "gsmodel/peer.hpp"

#include <algorithm>

namespace gsm {

namespace {

const std::set<PeerId> kNoPeers;

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

struct Ctx {
    PeerState& ps;
    const Twp& twp;
    const GlobalParams& gp;
    Oracle& oracle;
    StepOutput& out;

    void send(const PeerId& to, Payload p) { out.emitted.push_back(snd(ps.self, to, std::move(p))); }
    void note(std::string s) { out.notes.push_back(std::move(s)); }
};

void bump(Rational& counter, const Rational& cap)
{
    counter += 1;
    if (counter > cap) {
        counter = cap;
    }
}

// Removes q from mesh(t), charging the delivery deficit as a mesh failure penalty.
void remove_from_mesh(Ctx& c, const PeerId& q, const Topic& t, Tick backoff, bool emit_prune)
{
    auto& members = c.ps.nts.mesh[t];
    if (!members.erase(q)) {
        return;
    }
    if (c.twp.has_topic(t)) {
        TopicCounters& tc = c.ps.counters.topic_mut(q, t);
        tc = apply_prune_penalty(tc, c.twp.topic(t), c.gp);
        tc.mesh_time = 0;
    }
    Tick& until = c.ps.nts.backoff_until[{q, t}];
    until = std::max(until, c.ps.tick + backoff);
    if (emit_prune) {
        c.send(q, msg::Prune{t, backoff});
    }
}

void add_to_mesh(Ctx& c, const PeerId& q, const Topic& t, bool emit_graft)
{
    if (!c.ps.nts.mesh[t].insert(q).second) {
        return;
    }
    c.ps.counters.topic_mut(q, t).mesh_time = 0;
    if (emit_graft) {
        c.send(q, msg::Graft{t});
    }
}

std::vector<PeerId> graft_candidates(const PeerState& ps, const Topic& t)
{
    std::vector<PeerId> out;
    const auto& mesh = ps.mesh(t);
    for (const PeerId& q : ps.neighbors) {
        if (mesh.contains(q) || !ps.nbr_subscribed(q, t) || ps.backed_off(q, t) || ps.score_of(q) < 0) {
            continue;
        }
        out.push_back(q);
    }
    return out;
}

bool accept_control(Ctx& c, const PeerId& from)
{
    if (c.ps.score_of(from) < c.gp.graylist_threshold) {
        c.note("graylisted control from " + from.str());
        return false;
    }
    return true;
}

void record_message(PeerState& ps, const msg::Full& m)
{
    ps.mst.seen[m.mid] = SeenEntry{m.topic, ps.tick, 0};
    ps.mst.mcache.front().push_back(m);
    ps.mst.accepted[m.topic].insert(m.mid);
}

void forward(Ctx& c, const msg::Full& m, const PeerId& except)
{
    const std::set<PeerId>* targets = nullptr;
    if (c.ps.subscribed(m.topic)) {
        targets = &c.ps.mesh(m.topic);
    } else {
        targets = &c.ps.fanout(m.topic);
    }
    for (const PeerId& q : *targets) {
        if (q == except || c.ps.attack.withholds(q, m.topic)) {
            continue;
        }
        c.send(q, m);
    }
}

void on_full(Ctx& c, const PeerId& from, const msg::Full& m)
{
    if (!c.twp.has_topic(m.topic)) {
        c.note("FULL on unconfigured topic " + m.topic.str() + " ignored");
        return;
    }
    const TopicParams& tp = c.twp.topic(m.topic);
    if (!m.valid) {
        c.ps.counters.topic_mut(from, m.topic).invalid_message_deliveries += 1;
        return;
    }
    const bool from_mesh = c.ps.mesh(m.topic).contains(from);
    auto seen = c.ps.mst.seen.find(m.mid);
    if (seen != c.ps.mst.seen.end()) {
        if (from_mesh && c.ps.tick - seen->second.first_tick <= tp.mesh_message_deliveries_window) {
            bump(c.ps.counters.topic_mut(from, m.topic).mesh_message_deliveries, tp.mesh_message_deliveries_cap);
        }
        return;
    }
    record_message(c.ps, m);
    TopicCounters& tc = c.ps.counters.topic_mut(from, m.topic);
    bump(tc.first_message_deliveries, tp.first_message_deliveries_cap);
    if (from_mesh) {
        bump(tc.mesh_message_deliveries, tp.mesh_message_deliveries_cap);
    }
    auto& pending = c.ps.mst.pending_iwants;
    for (auto it = pending.begin(); it != pending.end();) {
        if (it->first.second == m.mid) {
            if (it->first.first == from) {
                ++c.ps.mst.stats.completed;
            }
            it = pending.erase(it);
        } else {
            ++it;
        }
    }
    forward(c, m, from);
}

void on_ihave(Ctx& c, const PeerId& from, const msg::IHave& m)
{
    if (c.ps.score_of(from) < c.gp.gossip_threshold) {
        c.note("IHAVE from " + from.str() + " below gossip threshold");
        return;
    }
    if (!c.ps.subscribed(m.topic)) {
        return;
    }
    std::vector<MessageId> wanted;
    for (MessageId mid : m.mids) {
        if (c.ps.mst.seen.contains(mid)) {
            continue;
        }
        bool requested = false;
        for (const auto& [key, _] : c.ps.mst.pending_iwants) {
            if (key.second == mid) {
                requested = true;
                break;
            }
        }
        if (requested || std::find(wanted.begin(), wanted.end(), mid) != wanted.end()) {
            continue;
        }
        wanted.push_back(mid);
    }
    if (wanted.empty()) {
        return;
    }
    for (MessageId mid : wanted) {
        c.ps.mst.pending_iwants[{from, mid}] = PendingIwant{m.topic, 0};
    }
    ++c.ps.mst.stats.iwant_sent;
    c.send(from, msg::IWant{std::move(wanted)});
}

void on_iwant(Ctx& c, const PeerId& from, const msg::IWant& m)
{
    if (c.ps.score_of(from) < c.gp.gossip_threshold) {
        c.note("IWANT from " + from.str() + " below gossip threshold");
        return;
    }
    ++c.ps.mst.stats.iwant_received;
    for (MessageId mid : m.mids) {
        const msg::Full* cached = c.ps.mst.find_in_mcache(mid);
        if (!cached) {
            ++c.ps.mst.stats.unavailable;
            continue;
        }
        if (c.ps.attack.withholds(from, cached->topic)) {
            continue;
        }
        ++c.ps.mst.stats.served;
        c.send(from, *cached);
    }
}

void on_graft(Ctx& c, const PeerId& from, const msg::Graft& m)
{
    const Topic& t = m.topic;
    if (!c.ps.subscribed(t) || !c.twp.has_topic(t)) {
        c.send(from, msg::Prune{t, c.gp.prune_backoff_ticks});
        return;
    }
    if (c.ps.mesh(t).contains(from)) {
        return;
    }
    if (c.ps.backed_off(from, t)) {
        c.ps.counters.global_mut(from).behaviour_penalty += 1;
        c.send(from, msg::Prune{t, c.gp.prune_backoff_ticks});
        return;
    }
    if (c.ps.score_of(from) < 0) {
        Tick& until = c.ps.nts.backoff_until[{from, t}];
        until = std::max(until, c.ps.tick + c.gp.prune_backoff_ticks);
        c.send(from, msg::Prune{t, c.gp.prune_backoff_ticks});
        return;
    }
    add_to_mesh(c, from, t, false);
}

void on_prune(Ctx& c, const PeerId& from, const msg::Prune& m)
{
    const Tick backoff = m.backoff ? m.backoff : c.gp.prune_backoff_ticks;
    if (c.ps.mesh(m.topic).contains(from)) {
        remove_from_mesh(c, from, m.topic, backoff, false);
    } else {
        Tick& until = c.ps.nts.backoff_until[{from, m.topic}];
        until = std::max(until, c.ps.tick + backoff);
    }
}

void on_receive(Ctx& c, const act::Receive& r)
{
    if (!c.ps.neighbors.contains(r.from)) {
        c.note("message from unknown peer " + r.from.str() + " ignored");
        return;
    }
    if (is_control(r.payload) && !accept_control(c, r.from)) {
        return;
    }
    std::visit(overloaded{
                   [&](const msg::Full& m) { on_full(c, r.from, m); },
                   [&](const msg::IHave& m) { on_ihave(c, r.from, m); },
                   [&](const msg::IWant& m) { on_iwant(c, r.from, m); },
                   [&](const msg::Graft& m) { on_graft(c, r.from, m); },
                   [&](const msg::Prune& m) { on_prune(c, r.from, m); },
                   [&](const msg::Subscribe& m) {
                       c.ps.nts.nbr_subs[r.from].insert(m.topic);
                       c.ps.known_topics.insert(m.topic);
                   },
                   [&](const msg::Unsubscribe& m) {
                       c.ps.nts.nbr_subs[r.from].erase(m.topic);
                       remove_from_mesh(c, r.from, m.topic, c.gp.unsubscribe_backoff_ticks, false);
                       auto f = c.ps.nts.fanout.find(m.topic);
                       if (f != c.ps.nts.fanout.end()) {
                           f->second.erase(r.from);
                       }
                   },
               },
               r.payload);
}

void on_send(Ctx& c, const act::Send& s)
{
    if (!c.ps.neighbors.contains(s.to)) {
        c.note("send to unknown peer " + s.to.str());
    }
    if (const auto* m = std::get_if<msg::Full>(&s.payload); m && m->valid && !c.ps.mst.seen.contains(m->mid)) {
        record_message(c.ps, *m);
    }
}

void on_join(Ctx& c, const Topic& t)
{
    if (!c.twp.has_topic(t)) {
        c.note("JOIN of unconfigured topic " + t.str() + " ignored");
        return;
    }
    if (c.ps.subscribed(t)) {
        return;
    }
    c.ps.subs.insert(t);
    c.ps.known_topics.insert(t);
    for (const PeerId& q : c.ps.neighbors) {
        c.send(q, msg::Subscribe{t});
    }
    const TopicParams& tp = c.twp.topic(t);
    std::set<PeerId> former_fanout;
    if (auto f = c.ps.nts.fanout.find(t); f != c.ps.nts.fanout.end()) {
        former_fanout = std::move(f->second);
        c.ps.nts.fanout.erase(f);
    }
    c.ps.nts.last_pub.erase(t);
    c.ps.nts.mesh[t];
    for (const PeerId& q : former_fanout) {
        if (c.ps.nts.mesh[t].size() >= tp.d) {
            break;
        }
        if (c.ps.nbr_subscribed(q, t) && !c.ps.backed_off(q, t) && c.ps.score_of(q) >= 0) {
            add_to_mesh(c, q, t, true);
        }
    }
    const std::size_t have = c.ps.nts.mesh[t].size();
    if (have < tp.d) {
        for (const PeerId& q : c.oracle.choose_k(graft_candidates(c.ps, t), tp.d - have)) {
            add_to_mesh(c, q, t, true);
        }
    }
}

void on_leave(Ctx& c, const Topic& t)
{
    if (!c.ps.subscribed(t)) {
        return;
    }
    const std::set<PeerId> members = c.ps.mesh(t);
    for (const PeerId& q : members) {
        remove_from_mesh(c, q, t, c.gp.unsubscribe_backoff_ticks, true);
    }
    c.ps.nts.mesh.erase(t);
    c.ps.subs.erase(t);
    for (const PeerId& q : c.ps.neighbors) {
        c.send(q, msg::Unsubscribe{t});
    }
}

void on_connect(Ctx& c, const act::Connect& k)
{
    if (k.other == c.ps.self) {
        c.note("self connection ignored");
        return;
    }
    if (c.ps.neighbors.contains(k.other)) {
        return;
    }
    c.ps.neighbors.insert(k.other);
    if (k.outbound) {
        c.ps.outbound.insert(k.other);
    }
    c.ps.address_of[k.other] = k.address.empty() ? k.other.str() : k.address;
    for (const Topic& t : c.ps.subs) {
        c.send(k.other, msg::Subscribe{t});
    }
}

void on_publish(Ctx& c, const act::Publish& a)
{
    if (!c.twp.has_topic(a.topic)) {
        c.note("APP on unconfigured topic " + a.topic.str() + " ignored");
        return;
    }
    const msg::Full m{a.topic, a.mid, a.valid};
    if (a.valid && !c.ps.mst.seen.contains(a.mid)) {
        record_message(c.ps, m);
    }
    c.ps.known_topics.insert(a.topic);
    std::vector<PeerId> targets;
    if (c.gp.flood_publish) {
        for (const PeerId& q : c.ps.neighbors) {
            if (c.ps.nbr_subscribed(q, a.topic) && c.ps.score_of(q) >= c.gp.publish_threshold) {
                targets.push_back(q);
            }
        }
    } else if (c.ps.subscribed(a.topic)) {
        const auto& mesh = c.ps.mesh(a.topic);
        targets.assign(mesh.begin(), mesh.end());
    } else {
        auto& fan = c.ps.nts.fanout[a.topic];
        if (fan.empty()) {
            std::vector<PeerId> pool;
            for (const PeerId& q : c.ps.neighbors) {
                if (c.ps.nbr_subscribed(q, a.topic) && c.ps.score_of(q) >= c.gp.publish_threshold) {
                    pool.push_back(q);
                }
            }
            for (const PeerId& q : c.oracle.choose_k(pool, c.twp.topic(a.topic).d)) {
                fan.insert(q);
            }
        }
        targets.assign(fan.begin(), fan.end());
        c.ps.nts.last_pub[a.topic] = c.ps.tick;
    }
    for (const PeerId& q : targets) {
        c.send(q, m);
    }
}

// Heartbeat phases, in order.

void hb_advance(Ctx& c)
{
    PeerState& ps = c.ps;
    ++ps.tick;
    for (const auto& [t, members] : ps.nts.mesh) {
        for (const PeerId& q : members) {
            ps.counters.topic_mut(q, t).mesh_time += 1;
        }
    }
    for (auto it = ps.mst.seen.begin(); it != ps.mst.seen.end();) {
        if (++it->second.age > c.gp.seen_ttl_ticks) {
            it = ps.mst.seen.erase(it);
        } else {
            ++it;
        }
    }
    for (auto it = ps.mst.pending_iwants.begin(); it != ps.mst.pending_iwants.end();) {
        if (++it->second.waited >= c.gp.iwant_timeout_ticks) {
            const PeerId& q = it->first.first;
            ++ps.mst.stats.timed_out;
            if (c.oracle.bernoulli(c.gp.iwant_failure_probability)) {
                ps.counters.topic_mut(q, it->second.topic).mesh_failure_penalty += 1;
                ps.counters.global_mut(q).behaviour_penalty += 1;
            }
            it = ps.mst.pending_iwants.erase(it);
        } else {
            ++it;
        }
    }
}

void hb_decay(Ctx& c)
{
    PeerState& ps = c.ps;
    if (c.gp.decay_interval_ticks != 0 && ps.tick % c.gp.decay_interval_ticks == 0) {
        for (auto& [q, table] : ps.counters.topic_tables()) {
            for (auto& [t, tc] : table) {
                if (c.twp.has_topic(t)) {
                    tc = decay_topic_counters(tc, c.twp.topic(t), c.gp);
                }
            }
        }
        for (auto& [q, gc] : ps.counters.global_table()) {
            gc = decay_global_counters(gc, c.gp);
        }
    }
    std::map<std::string, std::uint64_t> per_address;
    for (const PeerId& q : ps.neighbors) {
        ++per_address[ps.address_of[q]];
    }
    for (const PeerId& q : ps.neighbors) {
        ps.counters.global_mut(q).ip_colocation_count = per_address[ps.address_of[q]];
    }
}

void hb_rescore(Ctx& c)
{
    PeerState& ps = c.ps;
    ps.nbr_scores.clear();
    ps.nbr_topic_scores.clear();
    for (const PeerId& q : ps.neighbors) {
        ps.nbr_scores[q] = calc_score(q, ps.counters, c.twp);
        auto& topical = ps.nbr_topic_scores[q];
        for (const auto& [t, _] : ps.counters.topics_of(q)) {
            if (c.twp.has_topic(t)) {
                topical[t] = topic_score(q, t, ps.counters, c.twp);
            }
        }
    }
}

void hb_mesh(Ctx& c, const Topic& t)
{
    PeerState& ps = c.ps;
    const TopicParams& tp = c.twp.topic(t);
    auto& mesh = ps.nts.mesh[t];

    const std::vector<PeerId> current(mesh.begin(), mesh.end());
    for (const PeerId& q : current) {
        if (ps.score_of(q) < 0) {
            remove_from_mesh(c, q, t, c.gp.prune_backoff_ticks, true);
        }
    }

    if (mesh.size() < tp.d_low) {
        const std::size_t want = tp.d > mesh.size() ? tp.d - mesh.size() : 0;
        for (const PeerId& q : c.oracle.choose_k(graft_candidates(ps, t), want)) {
            add_to_mesh(c, q, t, true);
        }
    }

    if (mesh.size() > tp.d_high) {
        std::vector<PeerId> ranked(mesh.begin(), mesh.end());
        std::stable_sort(ranked.begin(), ranked.end(),
                         [&](const PeerId& a, const PeerId& b) { return ps.score_of(a) > ps.score_of(b); });
        std::set<PeerId> keep;
        for (std::size_t i = 0; i < ranked.size() && keep.size() < std::min<std::size_t>(c.gp.dscore, tp.d_high); ++i) {
            keep.insert(ranked[i]);
        }
        auto outbound_kept = [&] {
            return static_cast<std::size_t>(std::count_if(keep.begin(), keep.end(),
                                                          [&](const PeerId& q) { return ps.outbound.contains(q); }));
        };
        for (const PeerId& q : ranked) {
            if (outbound_kept() >= c.gp.dout || keep.size() >= tp.d_high) {
                break;
            }
            if (ps.outbound.contains(q)) {
                keep.insert(q);
            }
        }
        std::vector<PeerId> rest;
        for (const PeerId& q : mesh) {
            if (!keep.contains(q)) {
                rest.push_back(q);
            }
        }
        for (const PeerId& q : c.oracle.choose_k(rest, tp.d_high - keep.size())) {
            keep.insert(q);
        }
        for (const PeerId& q : rest) {
            if (!keep.contains(q)) {
                remove_from_mesh(c, q, t, c.gp.prune_backoff_ticks, true);
            }
        }
    }

    // Opportunistic grafting.
    if (!mesh.empty()) {
        std::vector<Rational> scores;
        for (const PeerId& q : mesh) {
            scores.push_back(ps.score_of(q));
        }
        std::sort(scores.begin(), scores.end());
        const Rational median = scores[scores.size() / 2];
        if (median < c.gp.opportunistic_graft_threshold) {
            std::vector<PeerId> better;
            for (const PeerId& q : graft_candidates(ps, t)) {
                if (ps.score_of(q) > median) {
                    better.push_back(q);
                }
            }
            for (const PeerId& q : c.oracle.choose_k(better, c.gp.opportunistic_graft_peers)) {
                add_to_mesh(c, q, t, true);
            }
        }
    }
}

void hb_fanout(Ctx& c)
{
    PeerState& ps = c.ps;
    for (auto it = ps.nts.fanout.begin(); it != ps.nts.fanout.end();) {
        const Topic& t = it->first;
        const Tick last = ps.nts.last_pub.contains(t) ? ps.nts.last_pub[t] : 0;
        if (last + c.gp.fanout_ttl_ticks < ps.tick) {
            ps.nts.last_pub.erase(t);
            it = ps.nts.fanout.erase(it);
            continue;
        }
        auto& fan = it->second;
        for (auto q = fan.begin(); q != fan.end();) {
            if (!ps.nbr_subscribed(*q, t) || ps.score_of(*q) < c.gp.publish_threshold) {
                q = fan.erase(q);
            } else {
                ++q;
            }
        }
        const unsigned d = c.twp.has_topic(t) ? c.twp.topic(t).d : 0;
        if (fan.size() < d) {
            std::vector<PeerId> pool;
            for (const PeerId& q : ps.neighbors) {
                if (!fan.contains(q) && ps.nbr_subscribed(q, t) && ps.score_of(q) >= c.gp.publish_threshold) {
                    pool.push_back(q);
                }
            }
            for (const PeerId& q : c.oracle.choose_k(pool, d - fan.size())) {
                fan.insert(q);
            }
        }
        ++it;
    }
}

void hb_gossip(Ctx& c)
{
    PeerState& ps = c.ps;
    std::set<Topic> topics = ps.subs;
    for (const auto& [t, _] : ps.nts.fanout) {
        topics.insert(t);
    }
    for (const Topic& t : topics) {
        if (!c.twp.has_topic(t)) {
            continue;
        }
        std::vector<MessageId> mids;
        const std::size_t windows = std::min<std::size_t>(c.gp.mcache_gossip, ps.mst.mcache.size());
        for (std::size_t w = 0; w < windows; ++w) {
            for (const msg::Full& m : ps.mst.mcache[w]) {
                if (m.topic == t) {
                    mids.push_back(m.mid);
                }
            }
        }
        if (mids.empty()) {
            continue;
        }
        std::sort(mids.begin(), mids.end());
        std::vector<PeerId> eligible;
        const auto& mesh = ps.mesh(t);
        const auto& fan = ps.fanout(t);
        for (const PeerId& q : ps.neighbors) {
            if (mesh.contains(q) || fan.contains(q) || !ps.nbr_subscribed(q, t) ||
                ps.score_of(q) < c.gp.gossip_threshold || ps.attack.withholds(q, t)) {
                continue;
            }
            eligible.push_back(q);
        }
        if (eligible.empty()) {
            continue;
        }
        const Rational scaled = c.gp.gossip_factor * static_cast<unsigned long>(eligible.size());
        const mpz_class floor_scaled = scaled.get_num() / scaled.get_den();
        const std::size_t target = std::max<std::size_t>(c.twp.topic(t).d_lazy, floor_scaled.get_ui());
        for (const PeerId& q : c.oracle.choose_k(eligible, target)) {
            c.send(q, msg::IHave{t, mids});
        }
    }
}

void hb_shift(Ctx& c)
{
    auto& cache = c.ps.mst.mcache;
    cache.emplace_front();
    while (cache.size() > std::max<std::size_t>(c.gp.mcache_len, 1)) {
        cache.pop_back();
    }
}

void on_heartbeat(Ctx& c)
{
    hb_advance(c);
    hb_decay(c);
    hb_rescore(c);
    const std::set<Topic> subs = c.ps.subs;
    for (const Topic& t : subs) {
        if (c.twp.has_topic(t)) {
            hb_mesh(c, t);
        }
    }
    hb_fanout(c);
    hb_gossip(c);
    hb_shift(c);
}

} // namespace

bool MsgsState::in_mcache(MessageId mid) const { return find_in_mcache(mid) != nullptr; }

const msg::Full* MsgsState::find_in_mcache(MessageId mid) const
{
    for (const auto& window : mcache) {
        for (const msg::Full& m : window) {
            if (m.mid == mid) {
                return &m;
            }
        }
    }
    return nullptr;
}

bool AttackBehavior::withholds(const PeerId& victim, const Topic& t) const
{
    auto it = withheld.find(victim);
    return it != withheld.end() && it->second.contains(t);
}

Rational PeerState::score_of(const PeerId& q) const
{
    auto it = nbr_scores.find(q);
    return it == nbr_scores.end() ? Rational(0) : it->second;
}

bool PeerState::nbr_subscribed(const PeerId& q, const Topic& t) const
{
    auto it = nts.nbr_subs.find(q);
    return it != nts.nbr_subs.end() && it->second.contains(t);
}

const std::set<PeerId>& PeerState::mesh(const Topic& t) const
{
    auto it = nts.mesh.find(t);
    return it == nts.mesh.end() ? kNoPeers : it->second;
}

const std::set<PeerId>& PeerState::fanout(const Topic& t) const
{
    auto it = nts.fanout.find(t);
    return it == nts.fanout.end() ? kNoPeers : it->second;
}

bool PeerState::backed_off(const PeerId& q, const Topic& t) const
{
    auto it = nts.backoff_until.find({q, t});
    return it != nts.backoff_until.end() && tick < it->second;
}

StepOutput step(PeerState& ps, const Event& ev, const Twp& twp, Oracle& oracle)
{
    StepOutput out;
    Ctx c{ps, twp, twp.global, oracle, out};
    if (ev.actor != ps.self) {
        c.note("event for " + ev.actor.str() + " applied to " + ps.self.str() + " ignored");
        return out;
    }
    std::visit(overloaded{
                   [&](const act::Send& s) { on_send(c, s); },
                   [&](const act::Receive& r) { on_receive(c, r); },
                   [&](const act::Join& j) { on_join(c, j.topic); },
                   [&](const act::Leave& l) { on_leave(c, l.topic); },
                   [&](const act::Connect& k) { on_connect(c, k); },
                   [&](const act::Heartbeat&) { on_heartbeat(c); },
                   [&](const act::Publish& a) { on_publish(c, a); },
               },
               ev.action);
    return out;
}

std::pair<PeerState, StepOutput> ps_trx(PeerState ps, const Event& ev, const Twp& twp, Oracle& oracle)
{
    StepOutput out = step(ps, ev, twp, oracle);
    return {std::move(ps), std::move(out)};
}

std::vector<std::string> check_invariants(const PeerState& ps, const Twp& twp)
{
    std::vector<std::string> bad;
    for (const auto& [t, members] : ps.nts.mesh) {
        if (!ps.subs.contains(t) && !members.empty()) {
            bad.push_back("mesh for unsubscribed topic " + t.str());
        }
        for (const PeerId& q : members) {
            if (!ps.neighbors.contains(q)) {
                bad.push_back("mesh member " + q.str() + " is not a neighbor");
            }
            if (ps.fanout(t).contains(q)) {
                bad.push_back("mesh and fanout overlap on " + t.str());
            }
        }
    }
    for (const auto& [t, members] : ps.nts.fanout) {
        if (ps.subs.contains(t) && !members.empty()) {
            bad.push_back("fanout for subscribed topic " + t.str());
        }
    }
    if (ps.mst.mcache.size() > std::max<std::size_t>(twp.global.mcache_len, 1)) {
        bad.push_back("mcache longer than mcacheLen");
    }
    for (const auto& [mid, entry] : ps.mst.seen) {
        if (entry.age > twp.global.seen_ttl_ticks) {
            bad.push_back("seen entry " + std::to_string(mid) + " older than seenTTL");
        }
    }
    for (const auto& [q, table] : ps.counters.topic_tables()) {
        for (const auto& [t, tc] : table) {
            if (tc.invalid_message_deliveries < 0 || tc.mesh_message_deliveries < 0 || tc.mesh_time < 0 ||
                tc.first_message_deliveries < 0 || tc.mesh_failure_penalty < 0) {
                bad.push_back("negative counter for " + q.str() + "/" + t.str());
            }
        }
    }
    for (const auto& [q, gc] : ps.counters.global_table()) {
        if (gc.behaviour_penalty < 0) {
            bad.push_back("negative behaviour penalty for " + q.str());
        }
    }
    return bad;
}

} // namespace gsm
