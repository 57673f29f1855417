#pragma once

#include <cstdint>
#include <string_view>

#include "blade/genome.hpp"
#include "blade/mutation.hpp"
#include "blade/random.hpp"

namespace blade {

enum class Variant { Baseline, Blanket };

[[nodiscard]] std::string_view to_string(Variant variant);
// Accepts "baseline" and "blade" (alias "blanket").
[[nodiscard]] Variant parse_variant(std::string_view name);

struct EAConfig {
  Problem problem = Problem::OneMax;
  int n = 8;
  Variant variant = Variant::Baseline;
  MutationSchedule schedule = MutationSchedule::static_rate(0.125);
  std::uint64_t max_iterations = 10'000'000;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
};

// 10^9 for AllOnes, 10^7 otherwise.
[[nodiscard]] std::uint64_t default_max_iterations(Problem problem);

struct Individual {
  BitString genome;
  Fitness fitness;
};

struct RunRecord {
  std::uint64_t generations = 0;
  std::uint64_t evaluations = 0;
  bool converged = false;
  Fitness final_fitness = 0;
};

/// Random initial individual, evaluated once.
[[nodiscard]] Individual initialize(const EAConfig& config, RandomSource& rng);

/// Mutation step only: the offspring the variant proposes for `parent`.
[[nodiscard]] BitString make_offspring(const Individual& parent, const EAConfig& config,
                                       RandomSource& rng);

/// Elitist selection; ties go to the offspring.
[[nodiscard]] inline Individual select(const Individual& parent, Individual offspring) {
  return offspring.fitness >= parent.fitness ? offspring : parent;
}

/// One generation: offspring plus selection. Evaluates the offspring once.
[[nodiscard]] Individual step(const Individual& parent, const EAConfig& config, RandomSource& rng);
[[nodiscard]] BitString step(const BitString& x, const EAConfig& config, RandomSource& rng);

/// Stream used by single-client runs and by client 0 of a distributed run.
[[nodiscard]] RandomSource client_stream(std::uint64_t seed, int client_index);

/// Full (1+1) EA run from a uniform random start.
[[nodiscard]] RunRecord run(const EAConfig& config);

/// Same loop, starting from a given genome.
[[nodiscard]] RunRecord run_from(const EAConfig& config, const BitString& initial, RandomSource& rng);

}  // namespace blade
