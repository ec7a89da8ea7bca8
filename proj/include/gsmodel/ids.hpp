#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

namespace gsm {

/// String-backed identifier distinguished by tag, totally ordered.
template <class Tag>
class Name {
public:
    Name() = default;
    explicit Name(std::string value) : value_(std::move(value)) {}
    explicit Name(const char* value) : value_(value) {}

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    auto operator<=>(const Name&) const = default;
    bool operator==(const Name&) const = default;

private:
    std::string value_;
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Name<Tag>& name)
{
    return os << name.str();
}

using PeerId = Name<struct PeerIdTag>;
using Topic = Name<struct TopicTag>;
using MessageId = std::uint64_t;

/// Heartbeat ticks. One heartbeat is one tick.
using Tick = std::uint64_t;

} // namespace gsm
