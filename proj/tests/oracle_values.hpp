#pragma once

// Exact values produced by tests/oracle/chain_oracle.py (rational arithmetic,
// independent state enumeration). Regenerate with that script.

#include <array>

namespace blade::oracle {

struct UniformInitMean {
  const char* problem;
  int n;
  const char* schedule;
  const char* variant;
  double mean;
};

inline constexpr std::array<UniformInitMean, 16> kUniformInitMeans{{
    {"allones", 2, "static:0.5", "baseline", 3.0},
    {"allones", 2, "static:0.5", "blade", 2.5},
    {"allones", 3, "static:0.333333", "baseline", 8.913461538461538},
    {"allones", 3, "static:0.333333", "blade", 7.738095238095238},
    {"onemax", 2, "static:0.5", "baseline", 3.0},
    {"onemax", 2, "static:0.5", "blade", 1.75},
    {"onemax", 3, "static:0.333333", "baseline", 6.596590909090909},
    {"onemax", 3, "static:0.333333", "blade", 4.384615384615385},
    {"leadingones", 2, "lo-static-opt", "baseline", 3.715650001581128},
    {"leadingones", 2, "lo-static-opt", "blade", 2.0},
    {"leadingones", 2, "lo-adaptive", "baseline", 2.5},
    {"leadingones", 2, "lo-adaptive", "blade", 2.0},
    {"leadingones", 3, "lo-static-opt", "baseline", 7.2319711641356275},
    {"leadingones", 3, "lo-static-opt", "blade", 4.9544838262529405},
    {"leadingones", 3, "lo-adaptive", "baseline", 5.875},
    {"leadingones", 3, "lo-adaptive", "blade", 4.548387096774194},
}};

inline constexpr double kOneMax8BaselineMean = 34.18491689341364;

// AllOnes, mu = 0.5: |lambda_2| of the baseline and blanket chains.
inline constexpr double kAllOnes3BaselineLambda2 = 0.875;
inline constexpr double kAllOnes3BlanketLambda2 = 0.8693927178551422;

struct ConvergenceSteps {
  double epsilon;
  int baseline;
  int blanket;
};

// AllOnes n = 2, mu = 0.5, uniform start over all chain states.
inline constexpr std::array<ConvergenceSteps, 4> kAllOnes2Steps{{
    {1e-2, 16, 13},
    {1e-3, 24, 20},
    {1e-4, 32, 27},
    {1e-6, 48, 40},
}};

struct StateTime {
  const char* label;
  double steps;
};

// LeadingOnes n = 3, blanket chain, mu = 1/3.
inline constexpr std::array<StateTime, 4> kLeadingOnes3BlanketTimes{{
    {"000|001", 20535.0 / 2926.0},
    {"000|010", 1125.0 / 154.0},
    {"000|100", 54.0 / 7.0},
    {"000|011", 925.0 / 133.0},
}};

}  // namespace blade::oracle
