#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vmirror {

using Instant = std::chrono::sys_seconds;

/// Opaque actor token: a raw address or a pseudonym. Ordering is byte order.
struct ActorId {
  std::string value;

  ActorId() = default;
  explicit ActorId(std::string v) : value(std::move(v)) {}

  auto operator<=>(const ActorId&) const = default;
  bool operator==(const ActorId&) const = default;
};

enum class Channel { email, social, content, im, webconf, f2f, video };

std::string_view to_string(Channel c);
std::optional<Channel> channel_from_string(std::string_view token);

struct InteractionEvent {
  Instant ts;
  ActorId sender;
  std::vector<ActorId> recipients;
  Channel channel = Channel::email;
  std::optional<std::string> msg_id;

  bool operator==(const InteractionEvent&) const = default;
};

/// Half-open interval [start, end).
struct TimeWindow {
  Instant start;
  Instant end;

  bool contains(Instant t) const { return start <= t && t < end; }
  bool operator==(const TimeWindow&) const = default;
};

}  // namespace vmirror
