#pragma once

#include <cstdint>
#include <limits>

namespace blade::testing {

// Generator that always returns the same word. With the maximum word every
// Bernoulli draw below 1 fails and every random bit is 1.
struct ConstantRng {
  using result_type = std::uint64_t;
  result_type value = std::numeric_limits<result_type>::max();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return value; }
};

inline ConstantRng all_heads() { return {std::numeric_limits<std::uint64_t>::max()}; }
inline ConstantRng all_tails() { return {0}; }

}  // namespace blade::testing
