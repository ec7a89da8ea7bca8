#include "gsmodel/config.hpp"

namespace gsm {

namespace {

// Eth2.0 weights from prysm. Caps, decays and thresholds prysm leaves to
// runtime are pinned so the ctrex fixtures score as recorded.
TopicParams eth_topic(std::string_view tw, std::string_view w2, std::string_view w3, std::string_view w4)
{
    TopicParams p;
    p.topic_weight = rat(tw);
    p.w1 = rat("0.0324");
    p.w2 = rat(w2);
    p.w3 = rat(w3);
    p.w3b = rat(w3);
    p.w4 = rat(w4);
    p.time_in_mesh_cap = 300;
    p.first_message_deliveries_decay = rat("0.9");
    p.mesh_message_deliveries_decay = rat("0.9");
    p.mesh_failure_penalty_decay = rat("0.9");
    p.invalid_message_deliveries_decay = rat("0.9");
    p.activation_window = 4;
    p.mesh_message_deliveries_window = 2;
    p.d = 8;
    p.d_low = 6;
    p.d_high = 12;
    p.d_lazy = 6;
    return p;
}

TopicParams eth_subnet()
{
    TopicParams p = eth_topic("0.33", "0.95", "-37.55", "-4544");
    // One message per heartbeat settles at MMD 1, below the threshold of 2.
    p.mesh_message_deliveries_decay = rat("0.5");
    p.time_in_mesh_quantum = 10;
    p.first_message_deliveries_cap = 24;
    p.mesh_message_deliveries_threshold = 2;
    p.mesh_message_deliveries_cap = 24;
    return p;
}

GlobalParams eth_global()
{
    GlobalParams g;
    g.w5 = 1;
    g.w6 = rat("-35.11");
    g.w7 = rat("-15.92");
    g.topic_cap = rat("32.72");
    g.ip_colocation_threshold = 10;
    g.behaviour_penalty_threshold = 6;
    g.behaviour_penalty_decay = rat("0.9");
    g.decay_to_zero = rat("0.01");
    g.decay_interval_ticks = 1;
    g.prune_backoff_ticks = 60;
    g.unsubscribe_backoff_ticks = 10;
    g.flood_publish = true;
    g.gossip_factor = rat("0.25");
    g.fanout_ttl_ticks = 60;
    g.seen_ttl_ticks = 120;
    g.retain_score_ticks = 100;
    g.mcache_len = 5;
    g.mcache_gossip = 3;
    g.dscore = 4;
    g.dout = 2;
    g.gossip_threshold = -4000;
    g.publish_threshold = -8000;
    g.graylist_threshold = -16000;
    g.opportunistic_graft_threshold = 5;
    return g;
}

} // namespace

Twp eth_preset_with_subnets(unsigned subnets)
{
    Twp twp;
    twp.name = "eth";
    twp.global = eth_global();

    TopicParams blocks = eth_topic("0.8", "1", "-0.717", "-140.45");
    blocks.time_in_mesh_quantum = 1;
    blocks.first_message_deliveries_cap = 23;
    blocks.mesh_message_deliveries_threshold = 5;
    blocks.mesh_message_deliveries_cap = 40;
    twp.topics.emplace(Topic("BLOCKS"), blocks);

    TopicParams agg = eth_topic("0.5", "0.128", "-0.064", "-140.45");
    agg.time_in_mesh_quantum = 1;
    agg.first_message_deliveries_cap = rat("178.125");
    agg.mesh_message_deliveries_threshold = 10;
    agg.mesh_message_deliveries_cap = 200;
    twp.topics.emplace(Topic("AGG"), agg);

    for (unsigned k = 1; k <= subnets; ++k) {
        twp.topics.emplace(Topic("SUB" + std::to_string(k)), eth_subnet());
    }
    return twp;
}

Twp eth_preset() { return eth_preset_with_subnets(3); }

Twp eth_cap37_preset()
{
    Twp twp = eth_preset();
    twp.name = "eth-cap37";
    twp.global.topic_cap = rat("37.72");
    return twp;
}

Twp filecoin_preset()
{
    auto topic = [](std::string_view w1, std::string_view w2) {
        TopicParams p;
        p.topic_weight = 1;
        p.w1 = rat(w1);
        p.w2 = rat(w2);
        p.w3 = 0;
        p.w3b = 0;
        p.w4 = -1000;
        p.time_in_mesh_quantum = 1;
        p.time_in_mesh_cap = 100;
        p.first_message_deliveries_cap = 100;
        p.first_message_deliveries_decay = rat("0.9");
        p.mesh_message_deliveries_decay = rat("0.9");
        p.mesh_failure_penalty_decay = rat("0.9");
        p.invalid_message_deliveries_decay = rat("0.9");
        p.mesh_message_deliveries_threshold = 0;
        p.mesh_message_deliveries_cap = 0;
        p.activation_window = 0;
        p.d = 8;
        p.d_low = 6;
        p.d_high = 12;
        p.d_lazy = 8;
        return p;
    };

    Twp twp;
    twp.name = "filecoin";
    twp.topics.emplace(Topic("MESSAGES"), topic("2.78", "0.5"));
    twp.topics.emplace(Topic("BLOCKS"), topic("0.027", "5"));

    GlobalParams& g = twp.global;
    g.w5 = 1;
    g.w6 = -100;
    g.w7 = -10;
    g.topic_cap = 0;
    g.ip_colocation_threshold = 1;
    g.behaviour_penalty_threshold = 0;
    g.behaviour_penalty_decay = rat("0.9");
    g.gossip_threshold = -500;
    g.publish_threshold = -1000;
    g.graylist_threshold = -2500;
    g.opportunistic_graft_threshold = rat("3.5");
    return twp;
}

Twp pathological_preset()
{
    Twp twp;
    twp.name = "pathological";
    for (int k = 1; k <= 5; ++k) {
        TopicParams p;
        p.topic_weight = 40;
        p.w1 = 10;
        p.w2 = 10;
        p.w3 = -1;
        p.w3b = -1;
        p.w4 = -1;
        p.time_in_mesh_cap = 100;
        p.first_message_deliveries_cap = 10;
        p.mesh_message_deliveries_threshold = 1;
        p.mesh_message_deliveries_cap = 10;
        p.activation_window = 1;
        p.d = 5;
        p.d_low = 4;
        p.d_high = 8;
        p.d_lazy = 5;
        twp.topics.emplace(Topic("TOPIC" + std::to_string(k)), p);
    }
    twp.global.w5 = 10;
    twp.global.w6 = -1;
    twp.global.w7 = -1;
    twp.global.topic_cap = 5;
    return twp;
}

Twp good_preset()
{
    Twp twp;
    twp.name = "good";
    for (int k = 1; k <= 2; ++k) {
        TopicParams p;
        p.topic_weight = rat("0.5");
        p.w1 = rat("0.027");
        p.w2 = 5;
        p.w3 = -1000;
        p.w3b = -1000;
        p.w4 = -1000;
        p.time_in_mesh_cap = 100;
        p.first_message_deliveries_cap = 10;
        p.mesh_message_deliveries_threshold = 1;
        p.mesh_message_deliveries_cap = 10;
        p.activation_window = 1;
        p.d = 8;
        p.d_low = 6;
        p.d_high = 12;
        p.d_lazy = 6;
        twp.topics.emplace(Topic("GOOD" + std::to_string(k)), p);
    }
    twp.global.w5 = 1;
    twp.global.w6 = -100;
    twp.global.w7 = -10;
    twp.global.topic_cap = 100;
    twp.global.behaviour_penalty_threshold = 0;
    return twp;
}

Twp preset_by_name(std::string_view name)
{
    if (name == "eth") {
        return eth_preset();
    }
    if (name == "eth-cap37") {
        return eth_cap37_preset();
    }
    if (name == "filecoin") {
        return filecoin_preset();
    }
    if (name == "pathological") {
        return pathological_preset();
    }
    if (name == "good") {
        return good_preset();
    }
    throw ConfigError("unknown preset: " + std::string(name));
}

std::vector<std::string> preset_names() { return {"eth", "eth-cap37", "filecoin", "pathological", "good"}; }

} // namespace gsm
