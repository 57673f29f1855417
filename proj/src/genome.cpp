#include "blade/genome.hpp"

#include <string>

namespace blade {

void check_length(int length, int min_length) {
  if (length < min_length || length > BitString::kMaxLength) {
    throw ConfigError("genome length " + std::to_string(length) + " outside [" +
                      std::to_string(min_length) + ", 64]");
  }
}

BitString::BitString(int length, std::uint64_t bits) : bits_(0), length_(length) {
  check_length(length);
  bits_ = bits & length_mask(length);
}

BitString BitString::from_string(std::string_view text) {
  const int length = static_cast<int>(text.size());
  check_length(length);
  std::uint64_t bits = 0;
  for (int i = 0; i < length; ++i) {
    if (text[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw ConfigError("bit string may only contain 0 and 1: '" + std::string(text) + "'");
    }
  }
  return BitString(length, bits);
}

BitString BitString::from_hex(int length, std::string_view hex) {
  check_length(length);
  const auto digits = static_cast<std::size_t>((length + 3) / 4);
  if (hex.size() != digits) {
    throw ProtocolError("expected " + std::to_string(digits) + " hex digits, got " +
                        std::to_string(hex.size()));
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < digits; ++i) {
    const char c = hex[i];
    std::uint64_t nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<std::uint64_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<std::uint64_t>(c - 'A' + 10);
    } else {
      throw ProtocolError(std::string("invalid hex digit '") + c + "'");
    }
    bits |= nibble << (4 * i);
  }
  if ((bits & ~length_mask(length)) != 0) {
    throw ProtocolError("hex encodes bits beyond length " + std::to_string(length));
  }
  return BitString(length, bits);
}

bool BitString::test(int position) const {
  if (position < 1 || position > length_) {
    throw ContractViolation("bit position " + std::to_string(position) + " out of range");
  }
  return ((bits_ >> (position - 1)) & 1U) != 0;
}

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if ((bits_ >> i) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int digits = (length_ + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = 0; i < digits; ++i) {
    out[static_cast<std::size_t>(i)] = kDigits[(bits_ >> (4 * i)) & 0xF];
  }
  return out;
}

std::string_view to_string(Problem problem) {
  switch (problem) {
    case Problem::AllOnes:
      return "allones";
    case Problem::OneMax:
      return "onemax";
    case Problem::LeadingOnes:
      return "leadingones";
  }
  return "?";
}

Problem parse_problem(std::string_view name) {
  if (name == "allones") return Problem::AllOnes;
  if (name == "onemax") return Problem::OneMax;
  if (name == "leadingones") return Problem::LeadingOnes;
  throw ConfigError("unknown problem '" + std::string(name) +
                    "' (expected allones, onemax or leadingones)");
}

Fitness optimum_fitness(Problem problem, int length) {
  return problem == Problem::AllOnes ? 1 : length;
}

}  // namespace blade
