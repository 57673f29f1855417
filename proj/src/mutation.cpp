#include "blade/mutation.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace blade {

MutationSchedule MutationSchedule::static_rate(double rate) {
  if (!(rate > 0.0 && rate <= 1.0)) {
    throw ConfigError("static mutation rate must lie in (0, 1], got " + std::to_string(rate));
  }
  return {Kind::StaticRate, rate};
}

MutationSchedule MutationSchedule::inverse_length(int n) {
  check_length(n);
  return static_rate(1.0 / n);
}

MutationSchedule MutationSchedule::parse(std::string_view text) {
  if (text == "lo-static-opt") return lo_static_optimal();
  if (text == "lo-adaptive") return lo_adaptive();
  constexpr std::string_view prefix = "static:";
  if (text.starts_with(prefix)) {
    const std::string value(text.substr(prefix.size()));
    std::size_t used = 0;
    double rate = 0.0;
    try {
      rate = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw ConfigError("bad static rate in schedule '" + std::string(text) + "'");
    }
    return static_rate(rate);
  }
  throw ConfigError("unknown schedule '" + std::string(text) +
                    "' (expected static:<rate>, lo-static-opt or lo-adaptive)");
}

std::string MutationSchedule::name() const {
  switch (kind) {
    case Kind::StaticRate: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "static:%.6g", rate);
      return buf;
    }
    case Kind::StaticOptimalLO:
      return "lo-static-opt";
    case Kind::AdaptiveLO:
      return "lo-adaptive";
  }
  return "?";
}

double base_rate(const MutationSchedule& schedule, int n, Fitness parent_fitness) {
  switch (schedule.kind) {
    case MutationSchedule::Kind::StaticRate:
      return schedule.rate;
    case MutationSchedule::Kind::StaticOptimalLO:
      if (n < 1) throw ContractViolation("lo-static-opt needs n >= 1");
      return std::min(1.0, kLeadingOnesOptimalFactor / n);
    case MutationSchedule::Kind::AdaptiveLO:
      if (parent_fitness < 0) {
        throw ContractViolation("adaptive schedule called with negative fitness " +
                                std::to_string(parent_fitness));
      }
      return 1.0 / (1.0 + parent_fitness);
  }
  return 0.0;
}

double blanket_rate(double mu, int n, int preserved_count) {
  if (preserved_count < 1 || preserved_count > n - 1) {
    throw ContractViolation("preserved count " + std::to_string(preserved_count) +
                            " outside [1, " + std::to_string(n - 1) + "]");
  }
  return std::min(1.0, mu * n / static_cast<double>(n - preserved_count));
}

Blanket::Blanket(int length, std::uint64_t mask) : mask_(mask), length_(length) {
  check_length(length, 2);
  if ((mask & ~length_mask(length)) != 0) {
    throw ContractViolation("blanket mask has bits beyond its length");
  }
  const int preserved = std::popcount(mask);
  if (preserved < 1 || preserved > length - 1) {
    throw ContractViolation("blanket must preserve between 1 and n-1 bits, got " +
                            std::to_string(preserved));
  }
}

double blanket_probability(const Blanket& blanket) {
  const int n = blanket.length();
  const int k = blanket.preserved_count();
  // C(n, k) computed in floating point; n <= 64 keeps it exact enough.
  double choose = 1.0;
  for (int i = 1; i <= k; ++i) choose = choose * (n - k + i) / i;
  return 1.0 / ((n - 1) * choose);
}

}  // namespace blade
