#include "blade/theory.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace blade {

void FitnessLevels::validate() const {
  if (m < 2 || static_cast<int>(s.size()) != m - 1) {
    throw ContractViolation("fitness levels need m >= 2 and m - 1 probabilities");
  }
  for (double si : s) {
    if (!(si > 0.0 && si <= 1.0)) {
      throw ContractViolation("level probability " + std::to_string(si) + " outside (0, 1]");
    }
  }
}

FitnessLevels levels(Problem problem, int n, double mu) {
  check_length(n, 1);
  if (!(mu > 0.0 && mu < 1.0)) {
    throw ConfigError("fitness levels need mu in (0, 1), got " + std::to_string(mu));
  }
  FitnessLevels out;
  switch (problem) {
    case Problem::OneMax: {
      out.m = n + 1;
      const double single = mu * std::pow(1.0 - mu, n - 1);
      for (int i = 0; i < n; ++i) out.s.push_back((n - i) * single);
      break;
    }
    case Problem::LeadingOnes: {
      out.m = n + 1;
      for (int i = 0; i < n; ++i) out.s.push_back(mu * std::pow(1.0 - mu, i));
      break;
    }
    case Problem::AllOnes: {
      if (n > kAllOnesLevelsMaxLength) {
        throw CapacityError("AllOnes levels support n <= " + std::to_string(kAllOnesLevelsMaxLength));
      }
      out.m = 2;
      // A genotype at Hamming distance d hits the optimum iff exactly its d
      // zero bits flip. Each distance class is non-empty; keep the worst.
      double worst = std::numeric_limits<double>::infinity();
      for (int d = 1; d <= n; ++d) {
        worst = std::min(worst, std::pow(mu, d) * std::pow(1.0 - mu, n - d));
      }
      out.s.push_back(worst);
      break;
    }
  }
  out.validate();
  return out;
}

double bound_single(const FitnessLevels& levels) {
  levels.validate();
  double sum = 0.0;
  for (double si : levels.s) sum += 1.0 / si;
  return sum;
}

double bound_distributed(const FitnessLevels& levels, int clients) {
  levels.validate();
  if (clients < 1) throw ContractViolation("clients must be >= 1");
  double sum = 0.0;
  // 1 - (1 - s)^c without cancellation for tiny s.
  for (double si : levels.s) sum += 1.0 / -std::expm1(clients * std::log1p(-si));
  return sum;
}

double bound_simplified(const FitnessLevels& levels, int clients) {
  if (clients < 1) throw ContractViolation("clients must be >= 1");
  return (levels.m - 1) + bound_single(levels) / clients;
}

SmoothingSides smoothing_inequality(double x, double n) {
  if (!(x >= 0.0 && x <= 1.0) || !(n > 0.0)) {
    throw ContractViolation("smoothing inequality needs x in [0, 1] and n > 0");
  }
  return {std::pow(1.0 - x, n), 1.0 / (1.0 + n * x)};
}

}  // namespace blade
