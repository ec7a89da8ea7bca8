#pragma once

#include "gsmodel/ids.hpp"
#include "gsmodel/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsm {

/// Per-topic weights, caps, decays and mesh degree parameters.
struct TopicParams {
    Rational topic_weight{1};
    Rational w1{1};  // time in mesh
    Rational w2{1};  // first message deliveries
    Rational w3{-1}; // mesh message delivery deficit
    Rational w3b{-1}; // mesh failure penalty
    Rational w4{-1}; // invalid messages

    std::uint64_t time_in_mesh_quantum = 1;
    Rational time_in_mesh_cap{3600};
    Rational first_message_deliveries_cap{100};
    Rational first_message_deliveries_decay{rat("0.9")};
    Rational mesh_message_deliveries_decay{rat("0.9")};
    Rational mesh_failure_penalty_decay{rat("0.9")};
    Rational invalid_message_deliveries_decay{rat("0.9")};
    Rational mesh_message_deliveries_threshold{1};
    Rational mesh_message_deliveries_cap{100};
    std::uint64_t activation_window = 0;
    std::uint64_t mesh_message_deliveries_window = 2;

    unsigned d = 6;
    unsigned d_low = 4;
    unsigned d_high = 12;
    unsigned d_lazy = 6;

    bool operator==(const TopicParams&) const = default;
};

/// Global weights, thresholds, and defense-mechanism parameters.
struct GlobalParams {
    Rational w5{1};
    Rational w6{-1};
    Rational w7{-1};
    Rational topic_cap{0};
    std::uint64_t ip_colocation_threshold = 1;
    Rational behaviour_penalty_threshold{0};
    Rational behaviour_penalty_decay{rat("0.9")};
    Rational decay_to_zero{rat("0.01")};
    std::uint64_t decay_interval_ticks = 1;

    std::uint64_t prune_backoff_ticks = 60;
    std::uint64_t unsubscribe_backoff_ticks = 10;
    bool flood_publish = true;
    Rational gossip_factor{rat("0.25")};
    std::uint64_t heartbeat_interval_ticks = 1;
    std::uint64_t fanout_ttl_ticks = 60;
    std::uint64_t seen_ttl_ticks = 120;
    std::uint64_t retain_score_ticks = 3600;
    unsigned mcache_len = 5;
    unsigned mcache_gossip = 3;
    unsigned dscore = 4;
    unsigned dout = 2;

    Rational gossip_threshold{-10};
    Rational publish_threshold{-50};
    Rational graylist_threshold{-80};
    Rational opportunistic_graft_threshold{1};
    unsigned opportunistic_graft_peers = 2;

    // Model knobs.
    std::uint64_t iwant_timeout_ticks = 1;
    Rational iwant_failure_probability{1};
    bool square_p4 = false;
    bool activation_gates_deficit = true;

    bool operator==(const GlobalParams&) const = default;
};

/// Topic weights and parameters ("twp") plus the global parameters.
struct Twp {
    std::string name;
    std::map<Topic, TopicParams> topics;
    GlobalParams global;

    const TopicParams& topic(const Topic& t) const;
    bool has_topic(const Topic& t) const { return topics.contains(t); }
    std::vector<Topic> topic_names() const;

    bool operator==(const Twp& other) const { return topics == other.topics && global == other.global; }
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a JSON config document. `strict` rejects decays outside (0,1] at parse time.
/// Missing optional fields take the documented defaults above.
Twp parse_config(std::string_view text, bool strict = false);

/// Canonical JSON; rationals as exact strings. parse_config(serialize_config(x)) == x.
std::string serialize_config(const Twp& twp);

/// Stable 64-bit FNV-1a of the canonical serialization, hex encoded.
std::string config_fingerprint(const Twp& twp);

enum class Severity { warning, error };

struct Finding {
    Severity severity = Severity::warning;
    std::string field; // e.g. "topics.MESSAGES.w3" or "global.gossipThreshold"
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool has_errors() const;
    std::size_t error_count() const;
    std::size_t warning_count() const;
};

/// One finding per violated guidance constraint. Strict mode reports findings as
/// errors, lenient mode as warnings. Hard type violations (a decay outside (0,1],
/// Dlow > D > Dhi) are errors in both modes.
ValidationReport validate_config(const Twp& twp, bool strict);

// Built-in presets.
Twp eth_preset();
/// Eth2.0 preset with `subnets` attestation subnet topics SUB1..SUBn (template: SUB1 row).
Twp eth_preset_with_subnets(unsigned subnets);
/// Eth2.0 preset with the alternative topic cap value of 37.72.
Twp eth_cap37_preset();
Twp filecoin_preset();
Twp pathological_preset();
Twp good_preset();

/// "eth", "eth-cap37", "filecoin", "pathological", "good". Throws ConfigError otherwise.
Twp preset_by_name(std::string_view name);
std::vector<std::string> preset_names();

} // namespace gsm
