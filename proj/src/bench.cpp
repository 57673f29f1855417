#include "blade/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "blade/hub.hpp"

namespace blade {

double TrialStats::se_total_evaluations() const {
  const int k = converged();
  return k > 0 ? sd_total_evaluations / std::sqrt(static_cast<double>(k)) : 0.0;
}

MeanCI mean_ci(const std::vector<double>& values) {
  MeanCI out;
  if (values.empty()) {
    out.mean = out.sd = out.low = out.high = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double k = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / k;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (k - 1.0));
  }
  const double half = kZ95 * out.sd / std::sqrt(k);
  out.low = out.mean - half;
  out.high = out.mean + half;
  return out;
}

MutationSchedule default_schedule(Problem problem, int n) {
  return problem == Problem::LeadingOnes ? MutationSchedule::lo_static_optimal()
                                         : MutationSchedule::inverse_length(n);
}

MutationSchedule CellSpec::resolved_schedule() const {
  return schedule ? *schedule : default_schedule(problem, n);
}

EAConfig CellSpec::ea_config(std::uint64_t trial_seed) const {
  EAConfig config;
  config.problem = problem;
  config.n = n;
  config.variant = variant;
  config.schedule = resolved_schedule();
  config.max_iterations = max_iterations != 0 ? max_iterations : default_max_iterations(problem);
  config.seed = trial_seed;
  return config;
}

std::uint64_t CellSpec::trial_seed(int index) const {
  const MutationSchedule s = resolved_schedule();
  const std::uint64_t schedule_key =
      static_cast<std::uint64_t>(s.kind) * 1'000'003ULL + static_cast<std::uint64_t>(std::llround(s.rate * 1e9));
  const std::uint64_t cell_seed = RandomSource::derive_seed(
      base_seed, {static_cast<std::uint64_t>(problem), static_cast<std::uint64_t>(variant), schedule_key,
                  static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(clients)});
  return RandomSource::derive_seed(cell_seed, {fixed_seed ? 0 : static_cast<std::uint64_t>(index)});
}

void CellSpec::validate() const {
  if (runs < 2) throw ConfigError("a cell needs at least 2 runs");
  if (clients < 1) throw ConfigError("clients must be >= 1");
  ea_config(0).validate();
}

TrialStats run_cell(const CellSpec& cell, unsigned threads) {
  cell.validate();
  const auto runs = static_cast<std::size_t>(cell.runs);
  std::vector<double> generations(runs);
  std::vector<double> evaluations(runs);
  std::vector<char> converged(runs);

  auto run_trial = [&](std::size_t i) {
    const EAConfig config = cell.ea_config(cell.trial_seed(static_cast<int>(i)));
    if (cell.clients == 1) {
      const RunRecord r = run(config);
      generations[i] = static_cast<double>(r.generations);
      evaluations[i] = static_cast<double>(r.evaluations);
      converged[i] = r.converged;
    } else {
      const DistRunRecord r = run_lockstep(DistConfig{config, cell.clients, DistMode::LockStep});
      generations[i] = static_cast<double>(r.rounds);
      evaluations[i] = static_cast<double>(r.total_evaluations);
      converged[i] = r.converged;
    }
  };

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, runs));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < runs; i = next++) run_trial(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TrialStats stats;
  stats.runs = cell.runs;
  std::vector<double> gen_ok, eval_ok;
  for (std::size_t i = 0; i < runs; ++i) {
    if (converged[i]) {
      gen_ok.push_back(generations[i]);
      eval_ok.push_back(evaluations[i]);
    } else {
      ++stats.nonconverged;
    }
  }
  const MeanCI g = mean_ci(gen_ok);
  const MeanCI e = mean_ci(eval_ok);
  stats.mean_generations = g.mean;
  stats.sd_generations = g.sd;
  stats.ci95_low = g.low;
  stats.ci95_high = g.high;
  stats.mean_total_evaluations = e.mean;
  stats.sd_total_evaluations = e.sd;
  return stats;
}

double speedup_ratio(const TrialStats& single, const TrialStats& multi) {
  return single.mean_total_evaluations / multi.mean_total_evaluations;
}

RatioEstimate speedup_ratio_ci(const TrialStats& single, const TrialStats& multi) {
  RatioEstimate out;
  out.ratio = speedup_ratio(single, multi);
  const double rel_a = single.se_total_evaluations() / single.mean_total_evaluations;
  const double rel_b = multi.se_total_evaluations() / multi.mean_total_evaluations;
  const double half = kZ95 * out.ratio * std::sqrt(rel_a * rel_a + rel_b * rel_b);
  out.ci95_low = out.ratio - half;
  out.ci95_high = out.ratio + half;
  return out;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  for (int n : spec.n_values) {
    for (Variant variant : spec.variants) {
      for (int clients : spec.client_counts) {
        SweepRow row;
        row.cell.problem = spec.problem;
        row.cell.variant = variant;
        row.cell.schedule = spec.schedule;
        row.cell.n = n;
        row.cell.clients = clients;
        row.cell.runs = spec.runs;
        row.cell.base_seed = spec.base_seed;
        try {
          if (spec.problem == Problem::AllOnes && n > kAllOnesDeskScaleMax && !spec.allow_large) {
            throw CapacityError("allones n > " + std::to_string(kAllOnesDeskScaleMax) +
                                " needs --allow-large");
          }
          row.stats = run_cell(row.cell, spec.threads);
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string csv_header() {
  return "problem,variant,schedule,n,clients,runs,mean_generations,ci95_low,ci95_high,"
         "mean_total_evals,nonconverged,seed";
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << csv_header() << '\n';
  for (const auto& row : rows) {
    const CellSpec& c = row.cell;
    std::string schedule;
    try {
      schedule = c.resolved_schedule().name();
    } catch (const std::exception&) {
      schedule = "invalid";
    }
    out << to_string(c.problem) << ',' << to_string(c.variant) << ',' << schedule << ',' << c.n << ','
        << c.clients << ',' << c.runs << ',';
    if (row.stats) {
      const TrialStats& s = *row.stats;
      out << format_float(s.mean_generations) << ',' << format_float(s.ci95_low) << ','
          << format_float(s.ci95_high) << ',' << format_float(s.mean_total_evaluations) << ','
          << s.nonconverged;
    } else {
      out << "error,error,error,error," << c.runs;
    }
    out << ',' << c.base_seed << '\n';
  }
}

}  // namespace blade
