#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "blade/error.hpp"

namespace blade {

using Fitness = int;

/// Mask with the low `length` bits set.
constexpr std::uint64_t length_mask(int length) {
  return length >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

/// Fixed-length genotype of 1..64 bits packed into one word.
///
/// Bit 1 is the lowest-order position of the word and the leftmost character
/// of the textual form, so "1101" has bits 1, 2 and 4 set. Bits above the
/// length are always zero.
class BitString {
 public:
  static constexpr int kMaxLength = 64;

  explicit BitString(int length, std::uint64_t bits = 0);

  static BitString from_string(std::string_view text);
  // ceil(n/4) hex digits, lowest-order nibble first.
  static BitString from_hex(int length, std::string_view hex);

  [[nodiscard]] int length() const { return length_; }
  [[nodiscard]] std::uint64_t word() const { return bits_; }
  [[nodiscard]] std::uint64_t full_mask() const { return length_mask(length_); }

  // 1-based position.
  [[nodiscard]] bool test(int position) const;
  [[nodiscard]] int popcount() const { return std::popcount(bits_); }
  [[nodiscard]] int leading_ones() const { return std::countr_one(bits_); }
  [[nodiscard]] bool all_ones() const { return bits_ == full_mask(); }

  // XOR with a flip mask; bits above the length are dropped.
  [[nodiscard]] BitString flipped(std::uint64_t flip_mask) const {
    return BitString(length_, bits_ ^ flip_mask, Canonical{});
  }

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  struct Canonical {};
  BitString(int length, std::uint64_t bits, Canonical)
      : bits_(bits & length_mask(length)), length_(length) {}

  std::uint64_t bits_;
  int length_;
};

enum class Problem { AllOnes, OneMax, LeadingOnes };

[[nodiscard]] std::string_view to_string(Problem problem);
[[nodiscard]] Problem parse_problem(std::string_view name);

[[nodiscard]] Fitness optimum_fitness(Problem problem, int length);

[[nodiscard]] inline Fitness evaluate(Problem problem, const BitString& x) {
  switch (problem) {
    case Problem::AllOnes:
      return x.all_ones() ? 1 : 0;
    case Problem::OneMax:
      return x.popcount();
    case Problem::LeadingOnes:
      return x.leading_ones();
  }
  return 0;
}

[[nodiscard]] inline bool is_optimal(Problem problem, const BitString& x) {
  return evaluate(problem, x) == optimum_fitness(problem, x.length());
}

void check_length(int length, int min_length = 1);

/// Uniform random genotype of the given length.
template <std::uniform_random_bit_generator G>
BitString random_bitstring(int length, G& gen) {
  check_length(length);
  static_assert(G::max() - G::min() == ~std::uint64_t{0},
                "random_bitstring needs a full 64-bit generator");
  return BitString(length, static_cast<std::uint64_t>(gen() - G::min()));
}

}  // namespace blade
