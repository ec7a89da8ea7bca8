#include "gsmodel/network.hpp"

#include <algorithm>

namespace gsm {

using json = nlohmann::json;

Simulator::Simulator(Group group, Twp twp, std::uint64_t seed, SimOptions options)
    : group_(std::move(group)), twp_(std::move(twp)), oracle_(seed), options_(std::move(options))
{
}

Trace Simulator::take_trace()
{
    Trace out = std::move(trace_);
    trace_.clear();
    return out;
}

std::uint64_t Simulator::run(const std::vector<Event>& events)
{
    worklist_.insert(worklist_.end(), events.begin(), events.end());
    const std::uint64_t before = steps_;
    while (!worklist_.empty()) {
        if (steps_ - budget_start_ >= options_.max_steps) {
            exhausted_ = true;
            break;
        }
        Event ev = std::move(worklist_.front());
        worklist_.pop_front();
        consume(ev);
    }
    return steps_ - before;
}

void Simulator::reset_budget(std::uint64_t max_steps)
{
    options_.max_steps = max_steps;
    budget_start_ = steps_;
    exhausted_ = false;
}

std::uint64_t Simulator::run_phases(const std::vector<std::vector<Event>>& phases)
{
    std::uint64_t used = 0;
    for (const auto& phase : phases) {
        used += run(phase);
        if (exhausted_) {
            break;
        }
    }
    return used;
}

void Simulator::consume(const Event& ev)
{
    TraceEntry entry;
    entry.step = steps_++;
    entry.event = ev;

    auto peer = group_.find(ev.actor);
    if (peer == group_.end()) {
        entry.notes.push_back("unknown actor " + ev.actor.str() + " skipped");
        trace_.push_back(std::move(entry));
        return;
    }
    StepOutput out = step(peer->second, ev, twp_, oracle_);
    entry.notes = std::move(out.notes);

    if (const auto* s = std::get_if<act::Send>(&ev.action)) {
        if (group_.contains(s->to)) {
            worklist_.push_front(rcv(s->to, ev.actor, s->payload));
        } else {
            entry.notes.push_back("send to peer outside the group: " + s->to.str());
        }
    }
    for (const Event& e : out.emitted) {
        if (const auto* s = std::get_if<act::Send>(&e.action)) {
            if (group_.contains(s->to)) {
                worklist_.push_back(rcv(s->to, e.actor, s->payload));
            } else {
                entry.notes.push_back("send to peer outside the group: " + s->to.str());
            }
        } else {
            worklist_.push_back(e);
        }
    }
    entry.emitted = std::move(out.emitted);

    if (is_heartbeat(ev) && (!options_.snapshot_peers || options_.snapshot_peers->contains(ev.actor))) {
        const PeerState& ps = peer->second;
        ScoreSnapshot snap;
        snap.total = ps.nbr_scores;
        snap.topic = ps.nbr_topic_scores;
        for (const PeerId& q : ps.neighbors) {
            auto& mt = snap.mesh_time[q];
            for (const auto& [t, tc] : ps.counters.topics_of(q)) {
                mt[t] = tc.mesh_time;
            }
        }
        entry.scores = std::move(snap);
    }
    if (!options_.trace_actors || options_.trace_actors->contains(ev.actor)) {
        trace_.push_back(std::move(entry));
    }
}

std::pair<Group, Trace> gs_trx(Group g, const std::vector<Event>& worklist, const Twp& twp, std::uint64_t seed,
                               std::uint64_t max_steps)
{
    Simulator sim(std::move(g), twp, seed, SimOptions{max_steps, std::nullopt, std::nullopt});
    sim.run(worklist);
    Trace tr = sim.take_trace();
    return {std::move(sim.group()), std::move(tr)};
}

std::vector<Event> Bootstrap::flattened() const
{
    std::vector<Event> out;
    for (const auto& phase : phases) {
        out.insert(out.end(), phase.begin(), phase.end());
    }
    return out;
}

Bootstrap group_from_topology(const Topology& topo, const Subscriptions& subs, const Twp& twp,
                              unsigned heartbeat_rounds, const std::map<PeerId, std::string>& addresses)
{
    for (const auto& [p, topics] : subs) {
        if (!topo.has_node(p)) {
            throw TopologyError("subscription for peer not in topology: " + p.str());
        }
        for (const Topic& t : topics) {
            if (!twp.has_topic(t)) {
                throw TopologyError("subscription to unconfigured topic " + t.str() + " by " + p.str());
            }
        }
    }
    auto address = [&](const PeerId& p) {
        auto it = addresses.find(p);
        return it == addresses.end() ? p.str() : it->second;
    };

    Bootstrap b;
    for (const PeerId& p : topo.nodes()) {
        b.group.emplace(p, PeerState(p, address(p)));
    }
    std::vector<Event> connects;
    for (const auto& [a, c] : topo.edges()) {
        // The lexically smaller endpoint dials.
        connects.push_back(connect(a, c, address(c), true));
        connects.push_back(connect(c, a, address(a), false));
    }
    std::vector<Event> joins;
    for (const auto& [p, topics] : subs) {
        for (const Topic& t : topics) {
            joins.push_back(join(p, t));
        }
    }
    b.phases.push_back(std::move(connects));
    b.phases.push_back(std::move(joins));
    for (unsigned r = 0; r < heartbeat_rounds; ++r) {
        b.phases.push_back(schedule_heartbeats(b.group, 1));
    }
    return b;
}

std::vector<Event> schedule_heartbeats(const std::vector<PeerId>& peers, unsigned rounds)
{
    std::vector<PeerId> ordered = peers;
    std::sort(ordered.begin(), ordered.end());
    std::vector<Event> out;
    out.reserve(ordered.size() * rounds);
    for (unsigned r = 0; r < rounds; ++r) {
        for (const PeerId& p : ordered) {
            out.push_back(hbm(p));
        }
    }
    return out;
}

std::vector<Event> schedule_heartbeats(const Group& g, unsigned rounds)
{
    std::vector<PeerId> peers;
    for (const auto& [p, _] : g) {
        peers.push_back(p);
    }
    return schedule_heartbeats(peers, rounds);
}

Subscriptions parse_subscriptions(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::runtime_error(std::string("subscription file: ") + err.what());
    }
    if (!doc.is_object()) {
        throw std::runtime_error("subscription file: expected an object mapping peers to topic lists");
    }
    Subscriptions out;
    for (const auto& [peer, topics] : doc.items()) {
        if (!topics.is_array()) {
            throw std::runtime_error("subscription file: topics of " + peer + " must be a list");
        }
        auto& set = out[PeerId(peer)];
        for (const auto& t : topics) {
            set.insert(Topic(t.get<std::string>()));
        }
    }
    return out;
}

Subscriptions subscribe_all(const Topology& topo, const std::vector<Topic>& topics)
{
    Subscriptions out;
    for (const PeerId& p : topo.nodes()) {
        out[p] = std::set<Topic>(topics.begin(), topics.end());
    }
    return out;
}

json snapshot_to_json(const ScoreSnapshot& s)
{
    json out = json::object();
    for (const auto& [q, total] : s.total) {
        json row = json::object();
        row["score"] = to_string(total);
        json topics = json::object();
        if (auto it = s.topic.find(q); it != s.topic.end()) {
            for (const auto& [t, v] : it->second) {
                topics[t.str()] = to_string(v);
            }
        }
        row["topics"] = std::move(topics);
        json mesh = json::object();
        if (auto it = s.mesh_time.find(q); it != s.mesh_time.end()) {
            for (const auto& [t, v] : it->second) {
                mesh[t.str()] = to_string(v);
            }
        }
        row["meshTime"] = std::move(mesh);
        out[q.str()] = std::move(row);
    }
    return out;
}

json trace_entry_to_json(const TraceEntry& e)
{
    json j = json::object();
    j["step"] = e.step;
    j["event"] = e.event;
    json emitted = json::array();
    for (const Event& x : e.emitted) {
        emitted.push_back(x);
    }
    j["emitted"] = std::move(emitted);
    if (e.scores) {
        j["scores"] = snapshot_to_json(*e.scores);
    }
    if (!e.notes.empty()) {
        j["notes"] = e.notes;
    }
    return j;
}

std::string trace_to_ndjson(const Trace& trace)
{
    std::string out;
    for (const TraceEntry& e : trace) {
        out += trace_entry_to_json(e).dump();
        out += '\n';
    }
    return out;
}

} // namespace gsm
