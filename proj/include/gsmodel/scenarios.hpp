#pragma once

#include "gsmodel/attacks.hpp"
#include "gsmodel/network.hpp"
#include "gsmodel/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsm {

/// Everything needed to bootstrap a group and replay an attack on it.
struct AttackSetup {
    std::string name;
    Twp twp;
    Topology topology;
    Subscriptions subs;
    AttackScript script;
    unsigned bootstrap_rounds = 2;
    std::uint64_t max_steps = kDefaultMaxSteps;
};

struct AttackRun {
    AttackSetup setup;
    std::uint64_t seed = 0;
    std::uint64_t bootstrap_steps = 0;
    std::uint64_t attack_steps = 0;
    bool budget_exhausted = false;
    /// Attack phase only, restricted to the victims' steps.
    Trace trace;
    Group final_group;
    AttackReport report;
};

/// Bootstraps the group (unbudgeted), arms the attackers, then runs the script
/// round by round under `setup.max_steps`, and validates the result.
AttackRun run_attack(const AttackSetup& setup, std::uint64_t seed);

struct ScenarioOptions {
    std::uint64_t seed = 1;
    std::optional<unsigned> rounds;
    std::optional<std::uint64_t> max_steps;
    /// Replace the attacker's withholding by honest traffic on every topic.
    bool honest = false;
};

/// "eth-throttle-ag1", "eth-block-ag1", "eth-block-ag2", "eth-block-ag3", "eclipse", "partition".
std::vector<std::string> scenario_names();

/// Builds a built-in scenario without running it. Throws AttackError on an unknown name.
AttackSetup build_scenario(const std::string& name, const ScenarioOptions& opts = {});

/// Three peers A, V, H, fully connected, all subscribed everywhere; A attacks V on SUB1..SUBi.
AttackSetup eth_gadget_setup(unsigned i, unsigned b, unsigned rounds, bool honest);

nlohmann::json run_to_json(const AttackRun& run);

/// Self-contained setup file: config, edge list, subscriptions and script.
nlohmann::json setup_to_json(const AttackSetup& s);
AttackSetup setup_from_json(const nlohmann::json& j);

} // namespace gsm
