#pragma once

#include "gsmodel/ids.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace gsm {

namespace msg {

struct Full {
    Topic topic;
    MessageId mid = 0;
    bool valid = true;
    bool operator==(const Full&) const = default;
};

struct IHave {
    Topic topic;
    std::vector<MessageId> mids;
    bool operator==(const IHave&) const = default;
};

struct IWant {
    std::vector<MessageId> mids;
    bool operator==(const IWant&) const = default;
};

struct Graft {
    Topic topic;
    bool operator==(const Graft&) const = default;
};

struct Prune {
    Topic topic;
    Tick backoff = 0;
    bool operator==(const Prune&) const = default;
};

struct Subscribe {
    Topic topic;
    bool operator==(const Subscribe&) const = default;
};

struct Unsubscribe {
    Topic topic;
    bool operator==(const Unsubscribe&) const = default;
};

} // namespace msg

using Payload = std::variant<msg::Full, msg::IHave, msg::IWant, msg::Graft, msg::Prune, msg::Subscribe, msg::Unsubscribe>;

/// True for IHAVE/IWANT/GRAFT/PRUNE (subject to the graylist).
bool is_control(const Payload& p);
const char* payload_name(const Payload& p);

namespace act {

struct Send {
    PeerId to;
    Payload payload;
    bool operator==(const Send&) const = default;
};

struct Receive {
    PeerId from;
    Payload payload;
    bool operator==(const Receive&) const = default;
};

struct Join {
    Topic topic;
    bool operator==(const Join&) const = default;
};

struct Leave {
    Topic topic;
    bool operator==(const Leave&) const = default;
};

struct Connect {
    PeerId other;
    std::string address; // address label of `other`; empty means "same as its id"
    bool outbound = true;
    bool operator==(const Connect&) const = default;
};

struct Heartbeat {
    bool operator==(const Heartbeat&) const = default;
};

struct Publish {
    Topic topic;
    MessageId mid = 0;
    bool valid = true;
    bool operator==(const Publish&) const = default;
};

} // namespace act

using Action = std::variant<act::Send, act::Receive, act::Join, act::Leave, act::Connect, act::Heartbeat, act::Publish>;

/// An event always names the peer that performs it first.
struct Event {
    PeerId actor;
    Action action;

    bool operator==(const Event&) const = default;
};

Event snd(PeerId from, PeerId to, Payload p);
Event rcv(PeerId at, PeerId from, Payload p);
Event join(PeerId p, Topic t);
Event leave(PeerId p, Topic t);
Event connect(PeerId p, PeerId other, std::string address = {}, bool outbound = true);
Event hbm(PeerId p);
Event app(PeerId p, Topic t, MessageId mid, bool valid = true);

bool is_heartbeat(const Event& e);

/// Compact one-line rendering, e.g. "a SND b FULL(t,7,valid)".
std::string to_string(const Payload& p);
std::string to_string(const Event& e);

void to_json(nlohmann::json& j, const Payload& p);
void from_json(const nlohmann::json& j, Payload& p);
void to_json(nlohmann::json& j, const Event& e);
void from_json(const nlohmann::json& j, Event& e);

/// Parses a JSON array of events. Throws std::runtime_error with the offending index.
std::vector<Event> parse_events(const std::string& text);
std::string serialize_events(const std::vector<Event>& events);

} // namespace gsm
