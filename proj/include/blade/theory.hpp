#pragma once

#include <vector>

#include "blade/genome.hpp"

namespace blade {

/// Fitness-level partition A_1..A_m with lower bounds s_1..s_{m-1} on the
/// probability of leaving each non-optimal level upward in one step.
/// s[j] belongs to the level whose fitness is the j-th smallest.
struct FitnessLevels {
  int m = 0;
  std::vector<double> s;

  void validate() const;
};

inline constexpr int kAllOnesLevelsMaxLength = 16;

/// OneMax: s_i = (n - i) mu (1 - mu)^(n-1) at fitness i.
/// LeadingOnes: s_i = mu (1 - mu)^i at fitness i.
/// AllOnes: worst case over fitness-0 genotypes of the one-step hit
/// probability (grouped by Hamming distance to the optimum).
[[nodiscard]] FitnessLevels levels(Problem problem, int n, double mu);

// T <= sum 1/s_i
[[nodiscard]] double bound_single(const FitnessLevels& levels);
// T <= sum 1/(1 - (1 - s_i)^c)
[[nodiscard]] double bound_distributed(const FitnessLevels& levels, int clients);
// T <= (m - 1) + (1/c) sum 1/s_i
[[nodiscard]] double bound_simplified(const FitnessLevels& levels, int clients);

/// (1 - x)^n <= 1 / (1 + n x) for x in [0, 1], n > 0. Returns both sides.
struct SmoothingSides {
  double lhs;
  double rhs;
};
[[nodiscard]] SmoothingSides smoothing_inequality(double x, double n);

}  // namespace blade
