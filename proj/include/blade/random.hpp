#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace blade {

/// Seedable, splittable random stream.
///
/// Every stochastic operation takes its generator explicitly. Child streams
/// are derived from (parent seed, stream id) through std::seed_seq, so a
/// sweep can hand each cell and each trial its own stream without any
/// shared state.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed);

  // Deterministic child stream. Distinct ids give unrelated streams.
  [[nodiscard]] RandomSource split(std::uint64_t stream) const;
  [[nodiscard]] RandomSource split(std::initializer_list<std::uint64_t> path) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  // Seed of split(path) without building any engine.
  [[nodiscard]] static std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

  result_type operator()() { return engine_(); }
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Uniform double in [0, 1).
template <std::uniform_random_bit_generator G>
double uniform01(G& gen) {
  return std::generate_canonical<double, 53>(gen);
}

}  // namespace blade
