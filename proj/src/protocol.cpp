#include "blade/protocol.hpp"

#include <charconv>
#include <vector>

namespace blade::protocol {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string_view trim_line_end(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  return line;
}

}  // namespace

Request parse_request(std::string_view line, int expected_length) {
  const auto words = split_words(trim_line_end(line));
  if (words.empty()) throw ProtocolError("malformed");
  if (words[0] == "PING" && words.size() == 1) return PingRequest{};
  if (words[0] == "QUIT" && words.size() == 1) return QuitRequest{};
  if (words[0] != "SYNC") throw ProtocolError("command");
  if (words.size() != 4) throw ProtocolError("malformed");

  Fitness fitness = 0;
  int length = 0;
  if (!parse_int(words[1], fitness) || !parse_int(words[2], length)) {
    throw ProtocolError("malformed");
  }
  if (fitness < -1) throw ProtocolError("malformed");
  if (length != expected_length) throw ProtocolError("length");
  if (words[3].size() != static_cast<std::size_t>((length + 3) / 4)) throw ProtocolError("length");
  try {
    return SyncRequest{BitString::from_hex(length, words[3]), fitness};
  } catch (const std::exception&) {
    throw ProtocolError("malformed");
  }
}

std::string format_sync(const BitString& genome, Fitness fitness) {
  return "SYNC " + std::to_string(fitness) + " " + std::to_string(genome.length()) + " " +
         genome.to_hex();
}

std::string format_best(const Candidate& best) {
  return "BEST " + std::to_string(best.fitness) + " " + std::to_string(best.genome.length()) +
         " " + best.genome.to_hex();
}

std::string format_error(std::string_view reason) { return "ERR " + std::string(reason); }

Candidate parse_best(std::string_view line) {
  const auto words = split_words(trim_line_end(line));
  if (!words.empty() && words[0] == "ERR") {
    throw ProtocolError("hub replied: " + std::string(trim_line_end(line)));
  }
  Fitness fitness = 0;
  int length = 0;
  if (words.size() != 4 || words[0] != "BEST" || !parse_int(words[1], fitness) ||
      !parse_int(words[2], length)) {
    throw ProtocolError("unexpected hub reply: " + std::string(line));
  }
  return {BitString::from_hex(length, words[3]), fitness};
}

std::string handle_line(ConcurrentHub& hub, std::string_view line, int expected_length) {
  try {
    const Request request = parse_request(line, expected_length);
    if (std::holds_alternative<PingRequest>(request)) return "PONG";
    if (std::holds_alternative<QuitRequest>(request)) return {};
    const auto& sync = std::get<SyncRequest>(request);
    return format_best(hub.sync(sync.genome, sync.fitness));
  } catch (const ProtocolError& e) {
    return format_error(e.what());
  } catch (const std::exception& e) {
    return format_error("malformed");
  }
}

}  // namespace blade::protocol
