#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blade/ea.hpp"
#include "blade/genome.hpp"
#include "blade/mutation.hpp"

namespace blade {

struct TrialStats {
  int runs = 0;
  int nonconverged = 0;
  // Over converged trials. For clients > 1 "generations" means rounds.
  double mean_generations = 0.0;
  double sd_generations = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double mean_total_evaluations = 0.0;
  double sd_total_evaluations = 0.0;

  [[nodiscard]] int converged() const { return runs - nonconverged; }
  // Standard error of mean_total_evaluations.
  [[nodiscard]] double se_total_evaluations() const;
};

inline constexpr double kZ95 = 1.96;

/// Mean, sample standard deviation and mean +/- 1.96 sd / sqrt(k).
struct MeanCI {
  double mean = 0.0;
  double sd = 0.0;
  double low = 0.0;
  double high = 0.0;
};
[[nodiscard]] MeanCI mean_ci(const std::vector<double>& values);

/// One cell of an experiment grid.
struct CellSpec {
  Problem problem = Problem::OneMax;
  Variant variant = Variant::Baseline;
  // Empty means the problem's default (1/n, or lo-static-opt for LeadingOnes).
  std::optional<MutationSchedule> schedule;
  int n = 8;
  int clients = 1;
  int runs = 1000;
  std::uint64_t base_seed = 0;
  std::uint64_t max_iterations = 0;  // 0 = default_max_iterations(problem)
  // Every trial gets the same seed. Only useful for testing the aggregator.
  bool fixed_seed = false;

  [[nodiscard]] MutationSchedule resolved_schedule() const;
  [[nodiscard]] EAConfig ea_config(std::uint64_t trial_seed) const;
  // Hierarchically derived seed for trial `index`.
  [[nodiscard]] std::uint64_t trial_seed(int index) const;
  void validate() const;
};

[[nodiscard]] MutationSchedule default_schedule(Problem problem, int n);

/// Runs every trial of the cell (threads = 0 uses all hardware threads).
/// Aggregation is in trial order regardless of scheduling.
[[nodiscard]] TrialStats run_cell(const CellSpec& cell, unsigned threads = 0);

/// single.mean_total_evaluations / multi.mean_total_evaluations.
[[nodiscard]] double speedup_ratio(const TrialStats& single, const TrialStats& multi);

struct RatioEstimate {
  double ratio = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

/// Ratio with a 95% interval from the delta method on two independent means.
[[nodiscard]] RatioEstimate speedup_ratio_ci(const TrialStats& single, const TrialStats& multi);

struct SweepSpec {
  Problem problem = Problem::OneMax;
  std::vector<Variant> variants{Variant::Baseline, Variant::Blanket};
  std::optional<MutationSchedule> schedule;
  std::vector<int> n_values;
  std::vector<int> client_counts{1};
  int runs = 1000;
  std::uint64_t base_seed = 0;
  // Lifts the desk-scale AllOnes cap of n <= 12.
  bool allow_large = false;
  unsigned threads = 0;
};

inline constexpr int kAllOnesDeskScaleMax = 12;

struct SweepRow {
  CellSpec cell;
  std::optional<TrialStats> stats;
  std::string error;
};

/// Cells in (n, variant, clients) order. A cell that fails validation gets
/// an error row; the sweep continues.
[[nodiscard]] std::vector<SweepRow> sweep(const SweepSpec& spec);

/// problem,variant,schedule,n,clients,runs,mean_generations,ci95_low,
/// ci95_high,mean_total_evals,nonconverged,seed
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string format_float(double value);

}  // namespace blade
