#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blade/genome.hpp"
#include "blade/linalg.hpp"
#include "blade/mutation.hpp"

namespace blade {

/// Describes one chain state: a genotype, optionally paired with the blanket
/// that will be applied at that state's next mutation. The blanket chain
/// lumps the optimum into a single ABSORBED state.
struct StateLabel {
  BitString genome;
  std::optional<Blanket> blanket;
  bool absorbed = false;

  [[nodiscard]] std::string to_string() const;
};

/// Row-stochastic transition matrix over labeled EA states.
struct TransitionMatrix {
  DenseMatrix p;
  std::vector<StateLabel> labels;
  // Initial law of the EA: genotype uniform, blanket drawn by the sampler.
  std::vector<double> initial_weights;

  [[nodiscard]] std::size_t size() const { return labels.size(); }
  [[nodiscard]] bool is_absorbing(std::size_t state) const;
  [[nodiscard]] std::vector<std::size_t> absorbing_states() const;
  // Largest |row sum - 1|.
  [[nodiscard]] double stochasticity_error() const;
};

inline constexpr int kBaselineChainMaxLength = 10;
inline constexpr int kBlanketChainMaxLength = 4;

/// Standard bitwise mutation composed with elitist selection, one state per
/// genotype. Rate may depend on the parent's fitness through the schedule.
[[nodiscard]] TransitionMatrix build_baseline_chain(Problem problem, int n, const MutationSchedule& schedule);
[[nodiscard]] TransitionMatrix build_baseline_chain(Problem problem, int n, double mu);

/// States are (non-optimal genotype, blanket) pairs plus one absorbing
/// state. The successor's blanket follows the sampler's law.
[[nodiscard]] TransitionMatrix build_blanket_chain(Problem problem, int n, const MutationSchedule& schedule);
[[nodiscard]] TransitionMatrix build_blanket_chain(Problem problem, int n, double mu);

struct Spectrum {
  // Sorted by modulus, descending.
  std::vector<std::complex<double>> eigenvalues;

  [[nodiscard]] double modulus(std::size_t i) const { return std::abs(eigenvalues.at(i)); }
  // |lambda_2|; 0 for a 1x1 matrix.
  [[nodiscard]] double subdominant_modulus() const;
};

inline constexpr std::size_t kSpectrumMaxDimension = 256;

[[nodiscard]] Spectrum spectrum(const DenseMatrix& m);
[[nodiscard]] Spectrum spectrum(const TransitionMatrix& m);

/// Limit distribution of the chain started from `initial`.
[[nodiscard]] std::vector<double> absorbing_limit(const TransitionMatrix& m, const std::vector<double>& initial);

/// Steps until the total-variation distance between the state distribution
/// (started uniform over all chain states) and its absorbing limit drops
/// below epsilon.
[[nodiscard]] int iterate_to_convergence(const TransitionMatrix& m, double epsilon,
                                         int max_steps = 1'000'000);

/// Total-variation distance after each step 0..steps, from the uniform start.
[[nodiscard]] std::vector<double> convergence_trace(const TransitionMatrix& m, int steps);

struct AbsorptionTimes {
  std::vector<std::size_t> transient_states;
  // Expected steps to absorption, indexed like transient_states.
  std::vector<double> steps;
  // Uniform over transient states.
  double transient_mean = 0.0;
  // Under TransitionMatrix::initial_weights (absorbing states contribute 0).
  double initial_mean = 0.0;
};

/// Solves (I - Q) t = 1 over the transient block.
[[nodiscard]] AbsorptionTimes expected_absorption(const TransitionMatrix& m);

}  // namespace blade
