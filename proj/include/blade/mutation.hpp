#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>

#include "blade/genome.hpp"
#include "blade/random.hpp"

namespace blade {

/// Base mutation-rate policy.
struct MutationSchedule {
  enum class Kind { StaticRate, StaticOptimalLO, AdaptiveLO };

  Kind kind = Kind::StaticRate;
  double rate = 0.0;  // StaticRate only

  static MutationSchedule static_rate(double rate);
  static MutationSchedule lo_static_optimal() { return {Kind::StaticOptimalLO, 0.0}; }
  static MutationSchedule lo_adaptive() { return {Kind::AdaptiveLO, 0.0}; }
  // 1/n, the rate used for AllOnes and OneMax.
  static MutationSchedule inverse_length(int n);

  /// Parses `static:<rate>`, `lo-static-opt` or `lo-adaptive`.
  static MutationSchedule parse(std::string_view text);
  [[nodiscard]] std::string name() const;

  friend bool operator==(const MutationSchedule&, const MutationSchedule&) = default;
};

inline constexpr double kLeadingOnesOptimalFactor = 1.5936;

double base_rate(const MutationSchedule& schedule, int n, Fitness parent_fitness);

/// Rate for the N - L unpreserved bits: min(1, mu * N / (N - L)).
double blanket_rate(double mu, int n, int preserved_count);

/// Preservation mask: a set bit keeps the parent's value at that position.
class Blanket {
 public:
  Blanket(int length, std::uint64_t mask);

  [[nodiscard]] int length() const { return length_; }
  [[nodiscard]] std::uint64_t mask() const { return mask_; }
  [[nodiscard]] int preserved_count() const { return std::popcount(mask_); }
  [[nodiscard]] std::uint64_t mutable_bits() const { return ~mask_ & length_mask(length_); }

  [[nodiscard]] std::string to_string() const { return BitString(length_, mask_).to_string(); }

  friend bool operator==(const Blanket&, const Blanket&) = default;

 private:
  std::uint64_t mask_;
  int length_;
};

/// Probability that sample_blanket(n) returns this particular mask.
double blanket_probability(const Blanket& blanket);

template <std::uniform_random_bit_generator G>
std::uint64_t bernoulli_mask(std::uint64_t candidates, double p, G& gen) {
  std::uint64_t flips = 0;
  if (p <= 0.0) return 0;
  if (p >= 1.0) return candidates;
  while (candidates != 0) {
    const int bit = std::countr_zero(candidates);
    candidates &= candidates - 1;
    if (uniform01(gen) < p) flips |= std::uint64_t{1} << bit;
  }
  return flips;
}

template <std::uniform_random_bit_generator G>
BitString standard_mutate(const BitString& x, double mu, G& gen) {
  return x.flipped(bernoulli_mask(x.full_mask(), mu, gen));
}

/// Preserved count uniform on {1..n-1}, then that many distinct positions.
template <std::uniform_random_bit_generator G>
Blanket sample_blanket(int n, G& gen) {
  check_length(n, 2);
  std::uniform_int_distribution<int> count_dist(1, n - 1);
  const int preserved = count_dist(gen);
  std::array<int, BitString::kMaxLength> positions{};
  std::iota(positions.begin(), positions.begin() + n, 0);
  std::array<int, BitString::kMaxLength> chosen{};
  std::sample(positions.begin(), positions.begin() + n, chosen.begin(), preserved, gen);
  std::uint64_t mask = 0;
  for (int i = 0; i < preserved; ++i) mask |= std::uint64_t{1} << chosen[static_cast<std::size_t>(i)];
  return Blanket(n, mask);
}

template <std::uniform_random_bit_generator G>
BitString blanket_mutate(const BitString& x, const Blanket& blanket, double mu, G& gen) {
  if (blanket.length() != x.length()) {
    throw ContractViolation("blanket length " + std::to_string(blanket.length()) +
                            " does not match genome length " + std::to_string(x.length()));
  }
  const double rate = blanket_rate(mu, x.length(), blanket.preserved_count());
  return x.flipped(bernoulli_mask(blanket.mutable_bits(), rate, gen));
}

}  // namespace blade
