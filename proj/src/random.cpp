#include "blade/random.hpp"

#include <array>
#include <vector>

namespace blade {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t RandomSource::derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * path.size());
  words.push_back(static_cast<std::uint32_t>(parent));
  words.push_back(static_cast<std::uint32_t>(parent >> 32));
  for (std::uint64_t id : path) {
    words.push_back(static_cast<std::uint32_t>(id));
    words.push_back(static_cast<std::uint32_t>(id >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(make_engine(seed)) {}

RandomSource RandomSource::split(std::uint64_t stream) const {
  return RandomSource(derive_seed(seed_, {stream}));
}

RandomSource RandomSource::split(std::initializer_list<std::uint64_t> path) const {
  return RandomSource(derive_seed(seed_, path));
}

}  // namespace blade
