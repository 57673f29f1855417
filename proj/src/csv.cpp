#include "blade/csv.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace blade {

CsvError::CsvError(std::string source, std::size_t row, std::size_t column, const std::string& message)
    : std::runtime_error(source + ": row " + std::to_string(row) + ", column " + std::to_string(column) +
                         ": " + message),
      row_(row),
      column_(column) {}

TrialStats BenchRow::to_stats() const {
  TrialStats s;
  s.runs = runs;
  s.nonconverged = nonconverged;
  s.mean_generations = mean_generations;
  s.ci95_low = ci95_low;
  s.ci95_high = ci95_high;
  s.mean_total_evaluations = mean_total_evals;
  const int k = runs - nonconverged;
  s.sd_generations = k > 0 ? (ci95_high - ci95_low) / (2.0 * kZ95) * std::sqrt(static_cast<double>(k)) : 0.0;
  s.sd_total_evaluations = clients * s.sd_generations;
  return s;
}

namespace {

constexpr std::size_t kColumns = 12;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<BenchRow> read_bench_csv(std::istream& in, const std::string& source) {
  std::vector<BenchRow> rows;
  std::string line;
  std::size_t row_number = 0;

  auto fail = [&](std::size_t column, const std::string& message) -> CsvError {
    return CsvError(source, row_number, column, message);
  };

  if (!std::getline(in, line)) throw CsvError(source, 1, 1, "empty file");
  row_number = 1;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw fail(1, "unexpected header");

  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != kColumns) {
      throw fail(std::min(f.size(), kColumns) + (f.size() < kColumns ? 1 : 0),
                 "expected " + std::to_string(kColumns) + " fields, got " + std::to_string(f.size()));
    }

    auto integer = [&](std::size_t column, auto& out) {
      const std::string& text = f[column - 1];
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
      if (ec != std::errc{} || ptr != text.data() + text.size()) throw fail(column, "not an integer: '" + text + "'");
    };
    auto real = [&](std::size_t column) {
      const std::string& text = f[column - 1];
      if (text == "nan") return std::nan("");
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text.size()) throw fail(column, "not a number: '" + text + "'");
      return value;
    };

    BenchRow row;
    row.problem = f[0];
    row.variant = f[1];
    row.schedule = f[2];
    if (row.problem.empty()) throw fail(1, "empty problem");
    if (row.variant.empty()) throw fail(2, "empty variant");
    integer(4, row.n);
    integer(5, row.clients);
    integer(6, row.runs);
    if (row.clients < 1) throw fail(5, "clients must be >= 1");
    row.has_stats = f[6] != "error";
    if (row.has_stats) {
      row.mean_generations = real(7);
      row.ci95_low = real(8);
      row.ci95_high = real(9);
      row.mean_total_evals = real(10);
    }
    integer(11, row.nonconverged);
    integer(12, row.seed);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RatioRow> ratio_table(const std::vector<BenchRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::string, int>;
  std::map<Key, const BenchRow*> singles;
  for (const auto& row : rows) {
    if (row.clients == 1 && row.has_stats) singles[{row.problem, row.variant, row.schedule, row.n}] = &row;
  }
  std::vector<RatioRow> out;
  for (const auto& row : rows) {
    if (row.clients == 1 || !row.has_stats) continue;
    const auto it = singles.find({row.problem, row.variant, row.schedule, row.n});
    if (it == singles.end()) continue;
    RatioRow r{row.problem, row.variant, row.schedule, row.n, row.clients, {}};
    r.estimate = speedup_ratio_ci(it->second->to_stats(), row.to_stats());
    out.push_back(std::move(r));
  }
  return out;
}

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows) {
  out << "problem,variant,schedule,n,clients,ratio,ci95_low,ci95_high\n";
  for (const auto& r : rows) {
    out << r.problem << ',' << r.variant << ',' << r.schedule << ',' << r.n << ',' << r.clients << ','
        << format_float(r.estimate.ratio) << ',' << format_float(r.estimate.ci95_low) << ','
        << format_float(r.estimate.ci95_high) << '\n';
  }
}

}  // namespace blade
