#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "blade/hub.hpp"

namespace blade::protocol {

// Line-oriented hub protocol, one request per line:
//   SYNC <fitness> <n> <hex>  ->  BEST <fitness> <n> <hex> | ERR <reason>
//   PING                      ->  PONG
//   QUIT                      ->  (connection closed)
// <hex> is ceil(n/4) digits, lowest-order nibble first. Fitness -1 with an
// all-zero candidate is a read-only probe.

struct SyncRequest {
  BitString genome;
  Fitness fitness;
};
struct PingRequest {};
struct QuitRequest {};

using Request = std::variant<SyncRequest, PingRequest, QuitRequest>;

/// Throws ProtocolError whose what() is the short ERR reason
/// ("malformed", "length", "command").
[[nodiscard]] Request parse_request(std::string_view line, int expected_length);

[[nodiscard]] std::string format_sync(const BitString& genome, Fitness fitness);
[[nodiscard]] std::string format_best(const Candidate& best);
[[nodiscard]] std::string format_error(std::string_view reason);

/// Parses a BEST reply; throws ProtocolError on ERR or garbage.
[[nodiscard]] Candidate parse_best(std::string_view line);

/// Reads one request line and returns the reply line (without newline), or
/// an empty string for QUIT.
[[nodiscard]] std::string handle_line(ConcurrentHub& hub, std::string_view line, int expected_length);

}  // namespace blade::protocol
