#pragma once

#include "gsmodel/config.hpp"
#include "gsmodel/events.hpp"
#include "gsmodel/oracle.hpp"
#include "gsmodel/peer.hpp"
#include "gsmodel/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gsm {

using Group = std::map<PeerId, PeerState>;

/// Scores the acting peer holds for its neighbors right after a heartbeat.
struct ScoreSnapshot {
    std::map<PeerId, Rational> total;
    std::map<PeerId, std::map<Topic, Rational>> topic;
    std::map<PeerId, std::map<Topic, Rational>> mesh_time;

    bool operator==(const ScoreSnapshot&) const = default;
};

struct TraceEntry {
    std::uint64_t step = 0;
    Event event;
    std::vector<Event> emitted;
    std::optional<ScoreSnapshot> scores;
    std::vector<std::string> notes;
};

using Trace = std::vector<TraceEntry>;

inline constexpr std::uint64_t kDefaultMaxSteps = 100000;

struct SimOptions {
    std::uint64_t max_steps = kDefaultMaxSteps;
    /// Peers whose heartbeats carry a score snapshot; all peers when unset.
    std::optional<std::set<PeerId>> snapshot_peers;
    /// Peers whose steps are recorded in the trace; all peers when unset.
    std::optional<std::set<PeerId>> trace_actors;
};

/// Work-list machine over a Group. Events handed to `run` are consumed in
/// order; every SND emitted by a peer puts the matching RCV at the back of the
/// list. A SND taken from the list itself (a scripted transmission) delivers
/// its RCV immediately after, so a scripted round stays ahead of the
/// heartbeat that closes it.
class Simulator {
public:
    Simulator(Group group, Twp twp, std::uint64_t seed, SimOptions options = {});

    /// Runs until the work list is empty or the step budget is spent.
    /// Returns the number of steps consumed by this call.
    std::uint64_t run(const std::vector<Event>& events);
    /// Runs each phase to quiescence before starting the next.
    std::uint64_t run_phases(const std::vector<std::vector<Event>>& phases);

    const Group& group() const { return group_; }
    Group& group() { return group_; }
    const Twp& twp() const { return twp_; }
    Oracle& oracle() { return oracle_; }
    const Trace& trace() const { return trace_; }
    Trace take_trace();
    std::uint64_t steps() const { return steps_; }
    bool budget_exhausted() const { return exhausted_; }
    /// Starts a fresh budget of `max_steps` counted from the current step.
    void reset_budget(std::uint64_t max_steps);
    std::size_t pending() const { return worklist_.size(); }

private:
    void consume(const Event& ev);

    Group group_;
    Twp twp_;
    Oracle oracle_;
    SimOptions options_;
    std::deque<Event> worklist_;
    Trace trace_;
    std::uint64_t steps_ = 0;
    std::uint64_t budget_start_ = 0;
    bool exhausted_ = false;
};

/// Functional form: runs `worklist` over `g` and returns the final group and trace.
std::pair<Group, Trace> gs_trx(Group g, const std::vector<Event>& worklist, const Twp& twp, std::uint64_t seed,
                               std::uint64_t max_steps = kDefaultMaxSteps);

using Subscriptions = std::map<PeerId, std::set<Topic>>;

struct Bootstrap {
    Group group;
    /// CONNECTs, then JOINs, then one phase per heartbeat round.
    std::vector<std::vector<Event>> phases;

    std::vector<Event> flattened() const;
};

/// Empty peers for every node plus the events that wire them up and let meshes form.
/// Throws TopologyError when `subs` names a peer that is not in the topology.
Bootstrap group_from_topology(const Topology& topo, const Subscriptions& subs, const Twp& twp,
                              unsigned heartbeat_rounds = 2,
                              const std::map<PeerId, std::string>& addresses = {});

/// One HBM per peer in PeerId order, repeated `rounds` times.
std::vector<Event> schedule_heartbeats(const Group& g, unsigned rounds);
std::vector<Event> schedule_heartbeats(const std::vector<PeerId>& peers, unsigned rounds);

Subscriptions parse_subscriptions(const std::string& text);
Subscriptions subscribe_all(const Topology& topo, const std::vector<Topic>& topics);

nlohmann::json snapshot_to_json(const ScoreSnapshot& s);
nlohmann::json trace_entry_to_json(const TraceEntry& e);
/// One JSON object per line: {step, event, emitted, scores?, notes?}.
std::string trace_to_ndjson(const Trace& trace);

} // namespace gsm
