#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blade/bench.hpp"

namespace blade {

/// Malformed bench CSV. Row and column are 1-based (row 1 is the header).
class CsvError : public std::runtime_error {
 public:
  CsvError(std::string source, std::size_t row, std::size_t column, const std::string& message);

  [[nodiscard]] std::size_t row() const { return row_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// One parsed line of a sweep CSV.
struct BenchRow {
  std::string problem;
  std::string variant;
  std::string schedule;
  int n = 0;
  int clients = 1;
  int runs = 0;
  bool has_stats = false;  // false for sweep error rows
  double mean_generations = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  double mean_total_evals = 0.0;
  int nonconverged = 0;
  std::uint64_t seed = 0;

  // Rebuilds sd from the CI width; total evaluations scale with clients.
  [[nodiscard]] TrialStats to_stats() const;
};

[[nodiscard]] std::vector<BenchRow> read_bench_csv(std::istream& in, const std::string& source = "<csv>");

struct RatioRow {
  std::string problem;
  std::string variant;
  std::string schedule;
  int n = 0;
  int clients = 0;
  RatioEstimate estimate;
};

/// Pairs every multi-client row with the single-client row of the same
/// (problem, variant, schedule, n). Rows without a partner are skipped.
[[nodiscard]] std::vector<RatioRow> ratio_table(const std::vector<BenchRow>& rows);

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows);

}  // namespace blade
