#include "gsmodel/events.hpp"

#include <stdexcept>

namespace gsm {

using json = nlohmann::json;

namespace {

template <class... F>
struct overloaded : F... {
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

std::string join_mids(const std::vector<MessageId>& mids)
{
    std::string out;
    for (std::size_t i = 0; i < mids.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += std::to_string(mids[i]);
    }
    return out;
}

const json& require(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw std::runtime_error(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

} // namespace

bool is_control(const Payload& p)
{
    return std::holds_alternative<msg::IHave>(p) || std::holds_alternative<msg::IWant>(p) ||
           std::holds_alternative<msg::Graft>(p) || std::holds_alternative<msg::Prune>(p);
}

const char* payload_name(const Payload& p)
{
    static constexpr const char* names[] = {"FULL", "IHAVE", "IWANT", "GRAFT", "PRUNE", "SUB", "UNSUB"};
    return names[p.index()];
}

Event snd(PeerId from, PeerId to, Payload p) { return {std::move(from), act::Send{std::move(to), std::move(p)}}; }
Event rcv(PeerId at, PeerId from, Payload p) { return {std::move(at), act::Receive{std::move(from), std::move(p)}}; }
Event join(PeerId p, Topic t) { return {std::move(p), act::Join{std::move(t)}}; }
Event leave(PeerId p, Topic t) { return {std::move(p), act::Leave{std::move(t)}}; }
Event connect(PeerId p, PeerId other, std::string address, bool outbound)
{
    return {std::move(p), act::Connect{std::move(other), std::move(address), outbound}};
}
Event hbm(PeerId p) { return {std::move(p), act::Heartbeat{}}; }
Event app(PeerId p, Topic t, MessageId mid, bool valid) { return {std::move(p), act::Publish{std::move(t), mid, valid}}; }

bool is_heartbeat(const Event& e) { return std::holds_alternative<act::Heartbeat>(e.action); }

std::string to_string(const Payload& p)
{
    return std::visit(
        overloaded{
            [](const msg::Full& m) {
                return "FULL(" + m.topic.str() + "," + std::to_string(m.mid) + "," + (m.valid ? "valid" : "invalid") +
                       ")";
            },
            [](const msg::IHave& m) { return "IHAVE(" + m.topic.str() + ",[" + join_mids(m.mids) + "])"; },
            [](const msg::IWant& m) { return "IWANT([" + join_mids(m.mids) + "])"; },
            [](const msg::Graft& m) { return "GRAFT(" + m.topic.str() + ")"; },
            [](const msg::Prune& m) { return "PRUNE(" + m.topic.str() + "," + std::to_string(m.backoff) + ")"; },
            [](const msg::Subscribe& m) { return "SUB(" + m.topic.str() + ")"; },
            [](const msg::Unsubscribe& m) { return "UNSUB(" + m.topic.str() + ")"; },
        },
        p);
}

std::string to_string(const Event& e)
{
    const std::string& a = e.actor.str();
    return std::visit(
        overloaded{
            [&](const act::Send& s) { return a + " SND " + s.to.str() + " " + to_string(s.payload); },
            [&](const act::Receive& r) { return a + " RCV " + r.from.str() + " " + to_string(r.payload); },
            [&](const act::Join& j) { return a + " JOIN " + j.topic.str(); },
            [&](const act::Leave& l) { return a + " LEAVE " + l.topic.str(); },
            [&](const act::Connect& c) { return a + " CONNECT " + c.other.str(); },
            [&](const act::Heartbeat&) { return a + " HBM"; },
            [&](const act::Publish& p) { return a + " APP " + p.topic.str() + " " + std::to_string(p.mid); },
        },
        e.action);
}

void to_json(json& j, const Payload& p)
{
    j = json::object();
    j["type"] = payload_name(p);
    std::visit(overloaded{
                   [&](const msg::Full& m) {
                       j["topic"] = m.topic.str();
                       j["mid"] = m.mid;
                       j["valid"] = m.valid;
                   },
                   [&](const msg::IHave& m) {
                       j["topic"] = m.topic.str();
                       j["mids"] = m.mids;
                   },
                   [&](const msg::IWant& m) { j["mids"] = m.mids; },
                   [&](const msg::Graft& m) { j["topic"] = m.topic.str(); },
                   [&](const msg::Prune& m) {
                       j["topic"] = m.topic.str();
                       j["backoff"] = m.backoff;
                   },
                   [&](const msg::Subscribe& m) { j["topic"] = m.topic.str(); },
                   [&](const msg::Unsubscribe& m) { j["topic"] = m.topic.str(); },
               },
               p);
}

void from_json(const json& j, Payload& p)
{
    const std::string type = require(j, "type").get<std::string>();
    auto topic = [&] { return Topic(require(j, "topic").get<std::string>()); };
    if (type == "FULL") {
        p = msg::Full{topic(), require(j, "mid").get<MessageId>(), j.value("valid", true)};
    } else if (type == "IHAVE") {
        p = msg::IHave{topic(), require(j, "mids").get<std::vector<MessageId>>()};
    } else if (type == "IWANT") {
        p = msg::IWant{require(j, "mids").get<std::vector<MessageId>>()};
    } else if (type == "GRAFT") {
        p = msg::Graft{topic()};
    } else if (type == "PRUNE") {
        p = msg::Prune{topic(), j.value("backoff", Tick{0})};
    } else if (type == "SUB") {
        p = msg::Subscribe{topic()};
    } else if (type == "UNSUB") {
        p = msg::Unsubscribe{topic()};
    } else {
        throw std::runtime_error("unknown payload type '" + type + "'");
    }
}

void to_json(json& j, const Event& e)
{
    j = json::object();
    j["actor"] = e.actor.str();
    std::visit(overloaded{
                   [&](const act::Send& s) {
                       j["verb"] = "SND";
                       j["peer"] = s.to.str();
                       to_json(j["payload"], s.payload);
                   },
                   [&](const act::Receive& r) {
                       j["verb"] = "RCV";
                       j["peer"] = r.from.str();
                       to_json(j["payload"], r.payload);
                   },
                   [&](const act::Join& x) {
                       j["verb"] = "JOIN";
                       j["topic"] = x.topic.str();
                   },
                   [&](const act::Leave& x) {
                       j["verb"] = "LEAVE";
                       j["topic"] = x.topic.str();
                   },
                   [&](const act::Connect& c) {
                       j["verb"] = "CONNECT";
                       j["peer"] = c.other.str();
                       if (!c.address.empty()) {
                           j["address"] = c.address;
                       }
                       if (!c.outbound) {
                           j["outbound"] = false;
                       }
                   },
                   [&](const act::Heartbeat&) { j["verb"] = "HBM"; },
                   [&](const act::Publish& x) {
                       j["verb"] = "APP";
                       j["topic"] = x.topic.str();
                       j["mid"] = x.mid;
                       if (!x.valid) {
                           j["valid"] = false;
                       }
                   },
               },
               e.action);
}

namespace {

Payload payload_from(const json& j)
{
    Payload p;
    from_json(j, p);
    return p;
}

} // namespace

void from_json(const json& j, Event& e)
{
    e.actor = PeerId(require(j, "actor").get<std::string>());
    const std::string verb = require(j, "verb").get<std::string>();
    auto peer = [&] { return PeerId(require(j, "peer").get<std::string>()); };
    auto topic = [&] { return Topic(require(j, "topic").get<std::string>()); };
    if (verb == "SND") {
        e.action = act::Send{peer(), payload_from(require(j, "payload"))};
    } else if (verb == "RCV") {
        e.action = act::Receive{peer(), payload_from(require(j, "payload"))};
    } else if (verb == "JOIN") {
        e.action = act::Join{topic()};
    } else if (verb == "LEAVE") {
        e.action = act::Leave{topic()};
    } else if (verb == "CONNECT") {
        e.action = act::Connect{peer(), j.value("address", std::string{}), j.value("outbound", true)};
    } else if (verb == "HBM") {
        e.action = act::Heartbeat{};
    } else if (verb == "APP") {
        e.action = act::Publish{topic(), require(j, "mid").get<MessageId>(), j.value("valid", true)};
    } else {
        throw std::runtime_error("unknown verb '" + verb + "'");
    }
}

std::vector<Event> parse_events(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::runtime_error(std::string("event file: ") + err.what());
    }
    if (!doc.is_array()) {
        throw std::runtime_error("event file: expected a JSON array");
    }
    std::vector<Event> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            out.push_back(doc[i].get<Event>());
        } catch (const std::exception& err) {
            throw std::runtime_error("event " + std::to_string(i) + ": " + err.what());
        }
    }
    return out;
}

std::string serialize_events(const std::vector<Event>& events)
{
    json doc = json::array();
    for (const Event& e : events) {
        doc.push_back(e);
    }
    return doc.dump();
}

} // namespace gsm
