#pragma once

#include "gsmodel/config.hpp"
#include "gsmodel/network.hpp"
#include "gsmodel/oracle.hpp"
#include "gsmodel/score.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsm {

enum class PropertyId { p1 = 1, p2 = 2, p3 = 3, p4 = 4 };

PropertyId property_from_int(int n);

/// Increments to the bad-behaviour metrics. `deficit` raises the delivery
/// deficit max(0, threshold - MMD) by lowering MMD.
struct Prop2Deltas {
    Rational deficit;
    Rational invalid;
    Rational behaviour;

    bool any() const { return deficit > 0 || invalid > 0 || behaviour > 0; }
    bool operator==(const Prop2Deltas&) const = default;
};

/// Increments to the good-behaviour counters of one topic.
struct Prop3Increment {
    Rational mesh_time;
    Rational first_deliveries;
    Rational mesh_deliveries;
    bool operator==(const Prop3Increment&) const = default;
};

struct Counterexample {
    PropertyId property = PropertyId::p1;
    std::string config_name;
    std::string config_fingerprint;
    CounterMaps counters;
    PeerId peer;
    Topic topic;
    std::optional<PeerId> other_peer;          // Property 4
    std::optional<Prop2Deltas> deltas;         // Property 2
    std::optional<CounterMaps> perturbed;      // Property 2, explicit perturbation
    std::optional<Prop3Increment> increment;   // Property 3
    std::vector<std::pair<std::string, Rational>> scores;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
};

// Property 1: a peer that misbehaves in some topic must not keep a positive overall score.

/// Witness iff calc_score(p) > 0 while p's score for t is <= 0.
std::optional<Counterexample> check_prop1_snapshot(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                                   const Twp& twp);

/// True when p is an activated member for every topic keyed for it
/// (the standing hypothesis of the property-1 search).
bool prop1_hypothesis(const CounterMaps& cm, const PeerId& p, const Twp& twp);

enum class TraceVerdict { violation, no_violation, indeterminate };

struct Prop1TraceResult {
    TraceVerdict verdict = TraceVerdict::indeterminate;
    std::size_t snapshots = 0;
    /// Index (among the victim's snapshots) from which the topic score stays <= 0.
    std::optional<std::size_t> first_violation;
    /// First snapshot at which the attacker's quantised mesh time exceeds the activation window.
    std::optional<std::size_t> activation_boundary;
    std::vector<Rational> overall;
    std::vector<Rational> topic;
    bool stable = false;
};

/// Finite-trace reading of property 1 over the victim's heartbeat snapshots.
Prop1TraceResult check_prop1_trace(const Trace& tr, const PeerId& victim, const PeerId& attacker, const Topic& t,
                                   const Twp& twp);

// Property 2: increasing bad-behaviour counters must decrease the overall score.

/// Applies the deltas to (p, t). Nullopt when the deficit increment would need a negative MMD.
std::optional<CounterMaps> apply_prop2_deltas(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                              const Prop2Deltas& d, const Twp& twp);

/// Witness iff the score after the perturbation is >= the score before.
/// Throws std::invalid_argument when every delta is zero.
std::optional<Counterexample> check_prop2(const CounterMaps& cm, const PeerId& p, const Topic& t,
                                          const Prop2Deltas& d, const Twp& twp);

/// Same non-decrease test for an arbitrary before/after pair of counter maps.
std::optional<Counterexample> check_prop2_perturbed(const CounterMaps& before, const CounterMaps& after,
                                                    const PeerId& p, const Twp& twp);

// Property 3: increasing good-behaviour counters must not decrease the topic score.

/// Standing hypotheses: MMD cap >= threshold and mesh time past activation.
bool prop3_hypothesis(const TopicCounters& tc, const TopicParams& tp);

std::optional<Counterexample> check_prop3(const TopicCounters& tc, const Prop3Increment& inc, const TopicParams& tp,
                                          const GlobalParams& gp = {});

// Property 4: equal counters give equal scores.

std::optional<Counterexample> check_prop4(const CounterMaps& cm, const PeerId& q, const PeerId& q2, const Twp& twp);

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::uint64_t budget = 100000;
    /// Upper bound of the log-uniform counter draws.
    std::uint64_t counter_max = 256;
    /// Probability that a bad counter (IMD, MFP, behaviour penalty, extra colocation) is zero.
    Rational zero_bad_probability{rat("0.9")};
    /// Largest single delta drawn for properties 2 and 3.
    std::uint64_t delta_max = 8;
};

struct SearchResult {
    std::optional<Counterexample> witness;
    std::uint64_t trials = 0;
    /// Trials whose draw did not meet the property's hypotheses.
    std::uint64_t skipped = 0;
};

/// Integer log-uniform on [0, max]: bit length uniform, then uniform within it.
std::uint64_t log_uniform(Oracle& o, std::uint64_t max);

/// Counters for one peer: every topic an activated mesh member, one topic starved
/// (FMD 0, MMD 0 or 1). Returns the starved topic.
Topic generate_prop1_counters(Oracle& o, const Twp& twp, const GeneratorConfig& gen, const PeerId& p, CounterMaps& cm);

/// Random topic parameters satisfying every sign and ordering constraint.
TopicParams generate_valid_topic_params(Oracle& o);

/// Counters for one topic with mesh time past the activation window.
TopicCounters generate_activated_counters(Oracle& o, const TopicParams& tp, const GeneratorConfig& gen);

SearchResult search_counterexample(PropertyId prop, const Twp& twp, const GeneratorConfig& gen);

nlohmann::json counterexample_to_json(const Counterexample& c);
Counterexample counterexample_from_json(const nlohmann::json& j);

nlohmann::json counters_to_json(const CounterMaps& cm);
CounterMaps counters_from_json(const nlohmann::json& j);

/// Re-evaluates the stored witness against its predicate.
bool replay(const Counterexample& c, const Twp& twp);

} // namespace gsm
