#include "gsmodel/attacks.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <tuple>

namespace gsm {

using json = nlohmann::json;

std::optional<unsigned> min_extra_topics(unsigned i, unsigned T)
{
    // 7.2 + 3.2 t/T > 24.7 i/T  <=>  72 T + 32 t > 247 i, all in integers.
    if (i > T) {
        return std::nullopt;
    }
    const std::uint64_t lhs = 72ull * T;
    const std::uint64_t rhs = 247ull * i;
    unsigned t = 0;
    if (lhs <= rhs) {
        t = static_cast<unsigned>((rhs - lhs) / 32 + 1);
    }
    if (t + i > T) {
        return std::nullopt;
    }
    return t;
}

Rational max_topic_contribution(const TopicParams& tp)
{
    Rational r = tp.w1 * tp.time_in_mesh_cap + tp.w2 * tp.first_message_deliveries_cap;
    return tp.topic_weight * r;
}

Rational attacked_topic_penalty(const TopicParams& tp)
{
    Rational w3 = tp.w3;
    if (w3 < 0) {
        w3 = -w3;
    }
    return tp.topic_weight * w3 * square(tp.mesh_message_deliveries_threshold);
}

std::optional<std::size_t> plan_extra_topics(const Twp& twp, const std::vector<Topic>& attacked,
                                             const std::vector<Topic>& candidates)
{
    Rational deficit = 0;
    for (const Topic& t : attacked) {
        deficit += attacked_topic_penalty(twp.topic(t));
    }
    std::vector<Rational> gains;
    for (const Topic& t : candidates) {
        if (std::find(attacked.begin(), attacked.end(), t) == attacked.end()) {
            gains.push_back(max_topic_contribution(twp.topic(t)));
        }
    }
    std::sort(gains.begin(), gains.end(), [](const Rational& a, const Rational& b) { return b < a; });
    Rational sum = 0;
    for (std::size_t k = 0; k <= gains.size(); ++k) {
        if (sum > deficit) {
            return k;
        }
        if (k < gains.size()) {
            sum += gains[k];
        }
    }
    return std::nullopt;
}

namespace {

void bump(Rational& counter, const Rational& cap)
{
    counter += 1;
    if (counter > cap) {
        counter = cap;
    }
}

} // namespace

std::vector<Rational> predict_gadget_scores(const Twp& twp, const std::set<Topic>& attacked, unsigned f, unsigned b,
                                            unsigned rounds, const std::map<Topic, TopicCounters>& start)
{
    const PeerId q("attacker");
    CounterMaps cm;
    for (const Topic& t : twp.topic_names()) {
        auto it = start.find(t);
        cm.set_topic(q, t, it == start.end() ? TopicCounters{} : it->second);
    }
    cm.set_global(q, GlobalCounters{0, 1, 0});

    std::vector<Rational> out;
    out.reserve(rounds);
    for (unsigned r = 0; r < rounds; ++r) {
        for (const auto& [t, tp] : twp.topics) {
            TopicCounters& tc = cm.topic_mut(q, t);
            const unsigned n = attacked.contains(t) ? b : f;
            for (unsigned k = 0; k < n; ++k) {
                bump(tc.first_message_deliveries, tp.first_message_deliveries_cap);
                bump(tc.mesh_message_deliveries, tp.mesh_message_deliveries_cap);
            }
            tc.mesh_time += 1;
            tc = decay_topic_counters(tc, tp, twp.global);
        }
        GlobalCounters& gc = cm.global_mut(q);
        gc = decay_global_counters(gc, twp.global);
        out.push_back(calc_score(q, cm, twp));
    }
    return out;
}

std::optional<unsigned> eth_subnets_for_attack(unsigned i, unsigned f, unsigned b, unsigned rounds,
                                               unsigned max_subnets)
{
    for (unsigned T = std::max(i, 1u); T <= max_subnets; ++T) {
        if (!min_extra_topics(i, T)) {
            continue;
        }
        Twp twp = eth_preset_with_subnets(T);
        std::set<Topic> attacked;
        for (unsigned k = 1; k <= i; ++k) {
            attacked.insert(Topic("SUB" + std::to_string(k)));
        }
        auto scores = predict_gadget_scores(twp, attacked, f, b, rounds);
        const bool capped = std::all_of(scores.begin(), scores.end(),
                                        [&](const Rational& s) { return s >= twp.global.topic_cap; });
        if (capped) {
            return T;
        }
    }
    return std::nullopt;
}

std::string to_string(AttackKind k)
{
    switch (k) {
    case AttackKind::throttle: return "throttle";
    case AttackKind::block: return "block";
    case AttackKind::eclipse: return "eclipse";
    case AttackKind::partition: return "partition";
    case AttackKind::honest: return "honest";
    }
    return "?";
}

AttackKind attack_kind_from_string(const std::string& s)
{
    for (AttackKind k : {AttackKind::throttle, AttackKind::block, AttackKind::eclipse, AttackKind::partition,
                         AttackKind::honest}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw AttackError("unknown attack kind: " + s);
}

std::vector<Event> AttackScript::events() const
{
    std::vector<Event> out;
    for (const auto& r : round_events) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

std::vector<PeerId> AttackScript::victims() const
{
    std::set<PeerId> s;
    for (const auto& g : gadgets) {
        s.insert(g.victim);
    }
    return {s.begin(), s.end()};
}

std::vector<PeerId> AttackScript::attackers() const
{
    std::set<PeerId> s;
    for (const auto& g : gadgets) {
        s.insert(g.attacker);
    }
    return {s.begin(), s.end()};
}

std::set<Topic> AttackScript::attacked_topics() const
{
    std::set<Topic> s;
    for (const auto& g : gadgets) {
        s.insert(g.attacked.begin(), g.attacked.end());
    }
    return s;
}

AttackScript gen_attack_events(AttackKind kind, const std::vector<AttackGadget>& gadgets,
                               const std::vector<Topic>& topics, unsigned rounds, unsigned f, unsigned b,
                               MessageId first_mid, const std::vector<BackgroundPublish>& background)
{
    if (b > 1) {
        throw AttackError("b must be 0 or 1, got " + std::to_string(b));
    }
    if (f == 0) {
        throw AttackError("f must be positive");
    }
    for (const auto& g : gadgets) {
        if (g.attacker == g.victim) {
            throw AttackError("gadget attacker and victim coincide: " + g.victim.str());
        }
        for (const Topic& t : g.attacked) {
            if (std::find(topics.begin(), topics.end(), t) == topics.end()) {
                throw AttackError("attacked topic " + t.str() + " is not in the topic list");
            }
        }
    }
    for (const auto& bg : background) {
        if (bg.every == 0) {
            throw AttackError("background period must be positive");
        }
    }

    AttackScript s;
    s.kind = kind;
    s.gadgets = gadgets;
    s.rounds = rounds;
    s.f = f;
    s.b = b;
    std::set<Topic> attacked = s.attacked_topics();
    for (const Topic& t : topics) {
        if (attacked.contains(t)) {
            s.topics.push_back(t);
        }
    }
    for (const Topic& t : topics) {
        if (!attacked.contains(t)) {
            s.topics.push_back(t);
        }
    }

    const std::vector<PeerId> victims = s.victims();
    MessageId mid = first_mid;
    for (unsigned r = 0; r < rounds; ++r) {
        std::vector<Event> round;
        for (const auto& bg : background) {
            if (r % bg.every == 0) {
                s.origins[mid] = bg.publisher;
                round.push_back(app(bg.publisher, bg.topic, mid++));
            }
        }
        // An attacker sends the same messages to each of its victims.
        std::map<std::tuple<PeerId, Topic, unsigned>, MessageId> authored;
        for (const auto& g : gadgets) {
            for (const Topic& t : s.topics) {
                const unsigned n = g.attacked.contains(t) ? b : f;
                for (unsigned k = 0; k < n; ++k) {
                    auto [it, fresh] = authored.try_emplace({g.attacker, t, k}, mid);
                    if (fresh) {
                        s.origins[mid++] = g.attacker;
                    }
                    round.push_back(snd(g.attacker, g.victim, msg::Full{t, it->second, true}));
                }
            }
        }
        for (const PeerId& v : victims) {
            round.push_back(hbm(v));
        }
        s.round_events.push_back(std::move(round));
    }
    return s;
}

void arm_attackers(Group& g, const AttackScript& script)
{
    for (const auto& gadget : script.gadgets) {
        auto it = g.find(gadget.attacker);
        if (it == g.end()) {
            throw AttackError("attacker not in group: " + gadget.attacker.str());
        }
        if (!g.contains(gadget.victim)) {
            throw AttackError("victim not in group: " + gadget.victim.str());
        }
        auto& withheld = it->second.attack.withheld[gadget.victim];
        withheld.insert(gadget.attacked.begin(), gadget.attacked.end());
    }
    // Colluders author the scripted messages together, so none of them
    // relays another's copy back into the network.
    std::map<MessageId, Topic> scripted;
    for (const auto& round : script.round_events) {
        for (const Event& e : round) {
            if (const auto* s = std::get_if<act::Send>(&e.action)) {
                if (const auto* m = std::get_if<msg::Full>(&s->payload)) {
                    scripted.emplace(m->mid, m->topic);
                }
            }
        }
    }
    for (const PeerId& a : script.attackers()) {
        PeerState& ps = g.at(a);
        for (const auto& [mid, t] : scripted) {
            ps.mst.seen.emplace(mid, SeenEntry{t, ps.tick, 0});
        }
    }
}

// Partitions.

namespace {

struct FlowGraph {
    struct Arc {
        std::size_t to;
        std::size_t rev;
        std::uint64_t cap;
    };
    std::vector<std::vector<Arc>> adj;

    explicit FlowGraph(std::size_t n) : adj(n) {}

    void add(std::size_t u, std::size_t v, std::uint64_t cap)
    {
        adj[u].push_back({v, adj[v].size(), cap});
        adj[v].push_back({u, adj[u].size() - 1, 0});
    }

    // Edmonds-Karp. Stops once the flow exceeds `limit`.
    std::uint64_t max_flow(std::size_t s, std::size_t t, std::uint64_t limit)
    {
        std::uint64_t flow = 0;
        while (flow <= limit) {
            std::vector<std::pair<std::size_t, std::size_t>> parent(adj.size(), {SIZE_MAX, 0});
            std::deque<std::size_t> queue{s};
            parent[s] = {s, 0};
            while (!queue.empty() && parent[t].first == SIZE_MAX) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t k = 0; k < adj[u].size(); ++k) {
                    const Arc& a = adj[u][k];
                    if (a.cap > 0 && parent[a.to].first == SIZE_MAX) {
                        parent[a.to] = {u, k};
                        queue.push_back(a.to);
                    }
                }
            }
            if (parent[t].first == SIZE_MAX) {
                break;
            }
            std::uint64_t push = std::numeric_limits<std::uint64_t>::max();
            for (std::size_t v = t; v != s; v = parent[v].first) {
                push = std::min(push, adj[parent[v].first][parent[v].second].cap);
            }
            for (std::size_t v = t; v != s; v = parent[v].first) {
                Arc& a = adj[parent[v].first][parent[v].second];
                a.cap -= push;
                adj[v][a.rev].cap += push;
            }
            flow += push;
        }
        return flow;
    }

    std::vector<bool> reachable(std::size_t s) const
    {
        std::vector<bool> seen(adj.size(), false);
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const Arc& a : adj[u]) {
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
            }
        }
        return seen;
    }
};

std::set<PeerId> neighborhood(const Topology& topo, const std::set<PeerId>& S)
{
    std::set<PeerId> out;
    for (const PeerId& s : S) {
        for (const PeerId& q : topo.neighbors(s)) {
            if (!S.contains(q)) {
                out.insert(q);
            }
        }
    }
    return out;
}

void check_members(const Topology& topo, const std::set<PeerId>& S)
{
    if (S.empty()) {
        throw AttackError("victim set is empty");
    }
    for (const PeerId& p : S) {
        if (!topo.has_node(p)) {
            throw AttackError("victim set names a peer not in the topology: " + p.str());
        }
    }
}

} // namespace

std::set<PeerId> min_separator(const Topology& topo, const std::set<PeerId>& sources, const std::set<PeerId>& sinks)
{
    const std::vector<PeerId> nodes = topo.nodes();
    const std::size_t n = nodes.size();
    std::map<PeerId, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        index[nodes[i]] = i;
    }
    for (const PeerId& p : sources) {
        if (sinks.contains(p)) {
            throw AttackError("peer on both sides of the separator: " + p.str());
        }
        for (const PeerId& q : topo.neighbors(p)) {
            if (sinks.contains(q)) {
                throw AttackError("no vertex separator: " + p.str() + " is adjacent to " + q.str());
            }
        }
    }
    const std::uint64_t inf = n + 1;
    const std::size_t src = 2 * n;
    const std::size_t dst = 2 * n + 1;
    FlowGraph fg(2 * n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const bool fixed = sources.contains(nodes[i]) || sinks.contains(nodes[i]);
        fg.add(2 * i, 2 * i + 1, fixed ? inf : 1);
        for (const PeerId& q : topo.neighbors(nodes[i])) {
            fg.add(2 * i + 1, 2 * index.at(q), inf);
        }
    }
    for (const PeerId& p : sources) {
        fg.add(src, 2 * index.at(p), inf);
    }
    for (const PeerId& p : sinks) {
        fg.add(2 * index.at(p) + 1, dst, inf);
    }
    fg.max_flow(src, dst, n);
    const std::vector<bool> side = fg.reachable(src);
    std::set<PeerId> cut;
    for (std::size_t i = 0; i < n; ++i) {
        if (side[2 * i] && !side[2 * i + 1]) {
            cut.insert(nodes[i]);
        }
    }
    return cut;
}

std::set<PeerId> min_vertex_cut(const Topology& topo, const std::set<PeerId>& S)
{
    check_members(topo, S);
    const std::set<PeerId> boundary = neighborhood(topo, S);
    std::set<PeerId> rest;
    for (const PeerId& p : topo.nodes()) {
        if (!S.contains(p) && !boundary.contains(p)) {
            rest.insert(p);
        }
    }
    if (rest.empty()) {
        throw AttackError("no peer is left once the victim set and its neighbors are removed");
    }
    std::set<PeerId> cut = min_separator(topo, S, rest);
    if (!separates(topo, S, cut)) {
        throw AttackError("internal: separator does not isolate the victim set");
    }
    return cut;
}

bool separates(const Topology& topo, const std::set<PeerId>& S, const std::set<PeerId>& X)
{
    for (const PeerId& x : X) {
        if (S.contains(x)) {
            return false;
        }
    }
    if (S.size() + X.size() >= topo.node_count()) {
        return false;
    }
    std::set<PeerId> seen(S.begin(), S.end());
    std::deque<PeerId> queue(S.begin(), S.end());
    while (!queue.empty()) {
        PeerId u = queue.front();
        queue.pop_front();
        for (const PeerId& q : topo.neighbors(u)) {
            if (X.contains(q) || seen.contains(q)) {
                continue;
            }
            if (!S.contains(q)) {
                return false;
            }
            seen.insert(q);
            queue.push_back(q);
        }
    }
    return true;
}

std::set<PeerId> min_vertex_cut_brute(const Topology& topo, const std::set<PeerId>& S)
{
    check_members(topo, S);
    std::vector<PeerId> cand;
    for (const PeerId& p : topo.nodes()) {
        if (!S.contains(p)) {
            cand.push_back(p);
        }
    }
    if (cand.size() > 20) {
        throw AttackError("brute-force cut limited to 20 candidate peers");
    }
    const std::size_t m = cand.size();
    for (std::size_t k = 0; k <= m; ++k) {
        // Enumerate k-subsets in lexicographic order of positions.
        std::vector<std::size_t> pos(k);
        std::iota(pos.begin(), pos.end(), 0);
        while (true) {
            std::set<PeerId> X;
            for (std::size_t i : pos) {
                X.insert(cand[i]);
            }
            if (separates(topo, S, X)) {
                return X;
            }
            std::size_t i = k;
            while (i > 0 && pos[i - 1] == m - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pos[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                pos[j] = pos[j - 1] + 1;
            }
        }
    }
    throw AttackError("no vertex cut isolates the victim set");
}

std::set<PeerId> choose_victim_set(const Topology& topo, std::size_t size)
{
    if (size == 0 || size >= topo.node_count()) {
        throw AttackError("victim set size must be between 1 and the node count minus one");
    }
    std::optional<std::set<PeerId>> best;
    std::size_t best_boundary = 0;
    for (const PeerId& start : topo.nodes()) {
        std::set<PeerId> S{start};
        while (S.size() < size) {
            std::optional<PeerId> pick;
            std::size_t pick_boundary = 0;
            for (const PeerId& c : neighborhood(topo, S)) {
                std::set<PeerId> grown = S;
                grown.insert(c);
                const std::size_t nb = neighborhood(topo, grown).size();
                if (!pick || nb < pick_boundary) {
                    pick = c;
                    pick_boundary = nb;
                }
            }
            if (!pick) {
                break;
            }
            S.insert(*pick);
        }
        if (S.size() < size) {
            continue;
        }
        const std::size_t nb = neighborhood(topo, S).size();
        if (nb == 0 || S.size() + nb >= topo.node_count()) {
            continue;
        }
        if (!best || nb < best_boundary || (nb == best_boundary && S < *best)) {
            best = S;
            best_boundary = nb;
        }
    }
    if (!best) {
        throw AttackError("no connected victim set of size " + std::to_string(size) + " leaves a remainder");
    }
    return *best;
}

std::vector<AttackGadget> synth_partition_attack(const Topology& topo, const std::set<PeerId>& S,
                                                 const std::set<Topic>& attacked, std::optional<unsigned> subnets)
{
    if (subnets && !min_extra_topics(static_cast<unsigned>(attacked.size()), *subnets)) {
        throw AttackError("no extra-topic count offsets " + std::to_string(attacked.size()) + " attacked of " +
                          std::to_string(*subnets) + " subnet topics");
    }
    const std::set<PeerId> X = min_vertex_cut(topo, S);
    std::vector<AttackGadget> out;
    for (const PeerId& x : X) {
        for (const PeerId& v : topo.neighbors(x)) {
            if (!X.contains(v)) {
                out.push_back(AttackGadget{x, v, attacked});
            }
        }
    }
    return out;
}

// Validation.

AttackReport validate_attack(const Trace& tr, const AttackScript& script, const Twp& twp, const Group& final_group)
{
    AttackReport rep;
    rep.kind = script.kind;

    std::map<MessageId, PeerId> origins = script.origins;
    std::map<PeerId, std::size_t> snapshots;
    for (const TraceEntry& e : tr) {
        if (const auto* a = std::get_if<act::Publish>(&e.event.action)) {
            origins.emplace(a->mid, e.event.actor);
        }
        if (e.scores) {
            ++snapshots[e.event.actor];
        }
    }
    for (const PeerId& v : script.victims()) {
        if (!snapshots.contains(v)) {
            throw AttackError("trace holds no heartbeat snapshot of victim " + v.str());
        }
        if (!final_group.contains(v)) {
            throw AttackError("final group lacks victim " + v.str());
        }
    }

    for (const AttackGadget& g : script.gadgets) {
        GadgetReport gr;
        gr.gadget = g;
        std::vector<Topic> checked(g.attacked.begin(), g.attacked.end());
        if (checked.empty()) {
            checked = script.topics;
        }
        for (const Topic& t : checked) {
            Prop1TraceResult res = check_prop1_trace(tr, g.victim, g.attacker, t, twp);
            if (gr.scores.empty()) {
                gr.scores = res.overall;
            }
            if (res.verdict == TraceVerdict::violation) {
                gr.violation = true;
                if (!gr.first_violation || *res.first_violation < *gr.first_violation) {
                    gr.first_violation = res.first_violation;
                }
            }
            if (!gr.activation_boundary) {
                gr.activation_boundary = res.activation_boundary;
            }
            gr.topics.emplace(t, std::move(res));
        }
        if (!gr.scores.empty()) {
            gr.positive_throughout =
                std::all_of(gr.scores.begin(), gr.scores.end(), [](const Rational& s) { return s > 0; });
            std::size_t k = gr.scores.size() - 1;
            while (k > 0 && gr.scores[k - 1] == gr.scores.back()) {
                --k;
            }
            gr.stable_from = k;
            gr.stable = gr.scores.size() >= 2 && k + 1 < gr.scores.size();
        }
        rep.gadgets.push_back(std::move(gr));
    }

    std::map<PeerId, std::set<Topic>> attacked_at;
    for (const AttackGadget& g : script.gadgets) {
        attacked_at[g.victim].insert(g.attacked.begin(), g.attacked.end());
    }
    for (const PeerId& v : script.victims()) {
        VictimReport vr;
        vr.victim = v;
        const std::set<Topic>& attacked = attacked_at[v];
        // A throttling attacker's own trickle is part of the attack, not a breach.
        std::set<PeerId> region{v};
        if (auto it = script.regions.find(v); it != script.regions.end()) {
            region.insert(it->second.begin(), it->second.end());
        }
        for (const AttackGadget& g : script.gadgets) {
            if (g.victim == v) {
                region.insert(g.attacker);
            }
        }
        auto outside = [&](MessageId mid) {
            auto it = origins.find(mid);
            return it == origins.end() || !region.contains(it->second);
        };
        for (const TraceEntry& e : tr) {
            if (e.event.actor != v) {
                continue;
            }
            const auto* r = std::get_if<act::Receive>(&e.event.action);
            if (!r) {
                continue;
            }
            const auto* m = std::get_if<msg::Full>(&r->payload);
            if (!m) {
                continue;
            }
            if (attacked.contains(m->topic)) {
                ++vr.attacked_received;
                if (outside(m->mid)) {
                    ++vr.attacked_breaches;
                }
            } else {
                ++vr.non_attacked_received;
                auto it = origins.find(m->mid);
                if (outside(m->mid) && (it == origins.end() || it->second != r->from)) {
                    ++vr.non_attacked_from_outside;
                }
            }
        }
        const PeerState& ps = final_group.at(v);
        for (const auto& [t, mids] : ps.mst.accepted) {
            for (MessageId mid : mids) {
                if (attacked.contains(t)) {
                    if (outside(mid)) {
                        ++vr.attacked_cached;
                    }
                } else {
                    ++vr.non_attacked_cached;
                }
            }
        }
        rep.victims.push_back(vr);
    }

    if (script.kind == AttackKind::honest) {
        rep.success = std::none_of(rep.gadgets.begin(), rep.gadgets.end(),
                                   [](const GadgetReport& g) { return g.violation; });
    } else {
        const bool all_violate = !rep.gadgets.empty() && std::all_of(rep.gadgets.begin(), rep.gadgets.end(),
                                                                     [](const GadgetReport& g) { return g.violation; });
        const bool sealed = std::all_of(rep.victims.begin(), rep.victims.end(), [](const VictimReport& v) {
            return v.attacked_breaches == 0 && v.attacked_cached == 0 && v.non_attacked_received > 0;
        });
        rep.success = all_violate && sealed;
    }
    return rep;
}

namespace {

json peers_json(const std::set<PeerId>& s)
{
    json a = json::array();
    for (const PeerId& p : s) {
        a.push_back(p.str());
    }
    return a;
}

json opt_index(const std::optional<std::size_t>& v)
{
    return v ? json(*v) : json(nullptr);
}

json rationals_json(const std::vector<Rational>& v)
{
    json a = json::array();
    for (const Rational& r : v) {
        a.push_back(to_string(r));
    }
    return a;
}

json gadget_json(const AttackGadget& g)
{
    json a = json::array();
    for (const Topic& t : g.attacked) {
        a.push_back(t.str());
    }
    return json{{"attacker", g.attacker.str()}, {"victim", g.victim.str()}, {"attacked", a}};
}

const char* verdict_name(TraceVerdict v)
{
    switch (v) {
    case TraceVerdict::violation: return "violation";
    case TraceVerdict::no_violation: return "no_violation";
    case TraceVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

} // namespace

json script_to_json(const AttackScript& s)
{
    json j;
    j["kind"] = to_string(s.kind);
    j["rounds"] = s.rounds;
    j["f"] = s.f;
    j["b"] = s.b;
    json topics = json::array();
    for (const Topic& t : s.topics) {
        topics.push_back(t.str());
    }
    j["topics"] = topics;
    json gadgets = json::array();
    for (const auto& g : s.gadgets) {
        gadgets.push_back(gadget_json(g));
    }
    j["gadgets"] = gadgets;
    json regions = json::object();
    for (const auto& [v, r] : s.regions) {
        regions[v.str()] = peers_json(r);
    }
    j["regions"] = regions;
    json rounds = json::array();
    for (const auto& r : s.round_events) {
        json evs = json::array();
        for (const Event& e : r) {
            evs.push_back(e);
        }
        rounds.push_back(std::move(evs));
    }
    j["events"] = std::move(rounds);
    return j;
}

AttackScript script_from_json(const json& j)
{
    try {
        AttackScript s;
        s.kind = attack_kind_from_string(j.at("kind").get<std::string>());
        s.rounds = j.at("rounds").get<unsigned>();
        s.f = j.at("f").get<unsigned>();
        s.b = j.at("b").get<unsigned>();
        for (const auto& t : j.at("topics")) {
            s.topics.emplace_back(t.get<std::string>());
        }
        for (const auto& g : j.at("gadgets")) {
            AttackGadget x{PeerId(g.at("attacker").get<std::string>()), PeerId(g.at("victim").get<std::string>()), {}};
            for (const auto& t : g.at("attacked")) {
                x.attacked.emplace(t.get<std::string>());
            }
            s.gadgets.push_back(std::move(x));
        }
        if (j.contains("regions")) {
            for (const auto& [v, r] : j.at("regions").items()) {
                auto& set = s.regions[PeerId(v)];
                for (const auto& p : r) {
                    set.emplace(p.get<std::string>());
                }
            }
        }
        for (const auto& round : j.at("events")) {
            std::vector<Event> evs;
            for (const auto& e : round) {
                Event ev = e.get<Event>();
                if (const auto* a = std::get_if<act::Publish>(&ev.action)) {
                    s.origins.emplace(a->mid, ev.actor);
                } else if (const auto* x = std::get_if<act::Send>(&ev.action)) {
                    if (const auto* m = std::get_if<msg::Full>(&x->payload)) {
                        s.origins.emplace(m->mid, ev.actor);
                    }
                }
                evs.push_back(std::move(ev));
            }
            s.round_events.push_back(std::move(evs));
        }
        if (s.round_events.size() != s.rounds) {
            throw AttackError("script has " + std::to_string(s.round_events.size()) + " event rounds, expected " +
                              std::to_string(s.rounds));
        }
        return s;
    } catch (const json::exception& e) {
        throw AttackError(std::string("attack script: ") + e.what());
    }
}

json report_to_json(const AttackReport& r)
{
    json j;
    j["kind"] = to_string(r.kind);
    j["success"] = r.success;
    json gadgets = json::array();
    for (const auto& g : r.gadgets) {
        json x = gadget_json(g.gadget);
        x["violation"] = g.violation;
        x["firstViolation"] = opt_index(g.first_violation);
        x["activationBoundary"] = opt_index(g.activation_boundary);
        x["positiveThroughout"] = g.positive_throughout;
        x["stable"] = g.stable;
        x["stableFrom"] = opt_index(g.stable_from);
        x["scores"] = rationals_json(g.scores);
        json topics = json::object();
        for (const auto& [t, res] : g.topics) {
            topics[t.str()] = json{{"verdict", verdict_name(res.verdict)},
                                   {"firstViolation", opt_index(res.first_violation)},
                                   {"activationBoundary", opt_index(res.activation_boundary)},
                                   {"topicScores", rationals_json(res.topic)}};
        }
        x["topics"] = topics;
        gadgets.push_back(std::move(x));
    }
    j["gadgets"] = gadgets;
    json victims = json::array();
    for (const auto& v : r.victims) {
        victims.push_back(json{{"victim", v.victim.str()},
                               {"attackedReceived", v.attacked_received},
                               {"attackedBreaches", v.attacked_breaches},
                               {"attackedCached", v.attacked_cached},
                               {"nonAttackedReceived", v.non_attacked_received},
                               {"nonAttackedFromOutside", v.non_attacked_from_outside},
                               {"nonAttackedCached", v.non_attacked_cached}});
    }
    j["victims"] = victims;
    return j;
}

} // namespace gsm
