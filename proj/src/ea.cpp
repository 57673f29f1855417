#include "blade/ea.hpp"

#include <string>

namespace blade {

std::string_view to_string(Variant variant) {
  return variant == Variant::Baseline ? "baseline" : "blade";
}

Variant parse_variant(std::string_view name) {
  if (name == "baseline") return Variant::Baseline;
  if (name == "blade" || name == "blanket") return Variant::Blanket;
  throw ConfigError("unknown variant '" + std::string(name) + "' (expected baseline or blade)");
}

void EAConfig::validate() const {
  check_length(n, 2);
  if (max_iterations == 0) throw ConfigError("max_iterations must be positive");
  if (schedule.kind == MutationSchedule::Kind::StaticRate &&
      !(schedule.rate > 0.0 && schedule.rate <= 1.0)) {
    throw ConfigError("static mutation rate must lie in (0, 1]");
  }
}

std::uint64_t default_max_iterations(Problem problem) {
  return problem == Problem::AllOnes ? 1'000'000'000ULL : 10'000'000ULL;
}

Individual initialize(const EAConfig& config, RandomSource& rng) {
  BitString x = random_bitstring(config.n, rng);
  const Fitness f = evaluate(config.problem, x);
  return {x, f};
}

BitString make_offspring(const Individual& parent, const EAConfig& config, RandomSource& rng) {
  const double mu = base_rate(config.schedule, config.n, parent.fitness);
  if (config.variant == Variant::Baseline) {
    return standard_mutate(parent.genome, mu, rng);
  }
  const Blanket blanket = sample_blanket(config.n, rng);
  return blanket_mutate(parent.genome, blanket, mu, rng);
}

Individual step(const Individual& parent, const EAConfig& config, RandomSource& rng) {
  BitString child = make_offspring(parent, config, rng);
  const Fitness f = evaluate(config.problem, child);
  return select(parent, {child, f});
}

BitString step(const BitString& x, const EAConfig& config, RandomSource& rng) {
  return step(Individual{x, evaluate(config.problem, x)}, config, rng).genome;
}

RandomSource client_stream(std::uint64_t seed, int client_index) {
  return RandomSource(RandomSource::derive_seed(seed, {static_cast<std::uint64_t>(client_index)}));
}

RunRecord run_from(const EAConfig& config, const BitString& initial, RandomSource& rng) {
  config.validate();
  if (initial.length() != config.n) throw ConfigError("initial genome length mismatch");
  const Fitness optimum = optimum_fitness(config.problem, config.n);
  Individual current{initial, evaluate(config.problem, initial)};
  RunRecord record;
  record.evaluations = 1;
  while (current.fitness != optimum && record.generations < config.max_iterations) {
    current = step(current, config, rng);
    ++record.generations;
    ++record.evaluations;
  }
  record.converged = current.fitness == optimum;
  record.final_fitness = current.fitness;
  return record;
}

RunRecord run(const EAConfig& config) {
  config.validate();
  RandomSource rng = client_stream(config.seed, 0);
  const BitString initial = random_bitstring(config.n, rng);
  return run_from(config, initial, rng);
}

}  // namespace blade
