// Command-line front end: run, sweep, markov, bound, ratio, hub, client, plot.

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blade/bench.hpp"
#include "blade/csv.hpp"
#include "blade/ea.hpp"
#include "blade/hub.hpp"
#include "blade/markov.hpp"
#include "blade/network.hpp"
#include "blade/plot.hpp"
#include "blade/theory.hpp"

namespace {

using namespace blade;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError(flag, "not an integer list: '" + text + "'");
    }
  }
  return out;
}

struct EAFlags {
  std::string problem = "onemax";
  int n = 16;
  std::string variant = "baseline";
  std::string schedule;
  std::uint64_t seed = 1;
  std::uint64_t max_iterations = 0;

  void attach(CLI::App* app) {
    app->add_option("--problem", problem, "allones | onemax | leadingones")->capture_default_str();
    app->add_option("--n", n, "genome length")->capture_default_str();
    app->add_option("--variant", variant, "baseline | blade")->capture_default_str();
    app->add_option("--schedule", schedule, "static:<rate> | lo-static-opt | lo-adaptive (default per problem)");
    app->add_option("--seed", seed, "random seed")->envname("BLADE_SEED")->capture_default_str();
    app->add_option("--max-iterations", max_iterations, "iteration cap (0 = problem default)");
  }

  [[nodiscard]] EAConfig config() const {
    EAConfig c;
    c.problem = parse_problem(problem);
    c.n = n;
    c.variant = parse_variant(variant);
    c.schedule = schedule.empty() ? default_schedule(c.problem, n) : MutationSchedule::parse(schedule);
    c.max_iterations = max_iterations ? max_iterations : default_max_iterations(c.problem);
    c.seed = seed;
    c.validate();
    return c;
  }
};

void print_record_header(std::ostream& out) {
  out << "problem,variant,schedule,n,clients,seed,generations,total_evals,converged,final_fitness\n";
}

int cmd_run(const EAFlags& flags, int clients, const std::string& mode, const std::string& out_path) {
  const EAConfig config = flags.config();
  Output out(out_path);
  print_record_header(out.stream());
  std::uint64_t generations = 0, evals = 0;
  bool converged = false;
  Fitness fitness = 0;
  if (clients == 1 && mode == "lockstep") {
    const RunRecord r = run(config);
    generations = r.generations;
    evals = r.evaluations;
    converged = r.converged;
    fitness = r.final_fitness;
  } else {
    DistConfig dist{config, clients, mode == "network" ? DistMode::Network : DistMode::LockStep};
    const DistRunRecord r = run_distributed(dist);
    generations = r.rounds;
    evals = r.total_evaluations;
    converged = r.converged;
    fitness = r.best_fitness;
  }
  out.stream() << to_string(config.problem) << ',' << to_string(config.variant) << ','
               << config.schedule.name() << ',' << config.n << ',' << clients << ',' << config.seed << ','
               << generations << ',' << evals << ',' << (converged ? "true" : "false") << ',' << fitness
               << '\n';
  return 0;
}

int cmd_markov(const std::string& problem_name, int n, const std::string& variant_name, double mu,
               const std::string& schedule, double epsilon, const std::string& out_path) {
  const Problem problem = parse_problem(problem_name);
  const Variant variant = parse_variant(variant_name);
  const MutationSchedule s = schedule.empty() ? MutationSchedule::static_rate(mu) : MutationSchedule::parse(schedule);
  const TransitionMatrix m =
      variant == Variant::Baseline ? build_baseline_chain(problem, n, s) : build_blanket_chain(problem, n, s);
  Output out(out_path);
  auto& os = out.stream();

  os << "# transition matrix (" << m.size() << " states)\nstate";
  for (const auto& label : m.labels) os << ',' << label.to_string();
  os << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << m.labels[i].to_string();
    for (double v : m.p.row(i)) os << ',' << format_float(v);
    os << '\n';
  }

  os << "# spectrum (sorted by modulus)\nindex,real,imag,modulus\n";
  const Spectrum sp = spectrum(m);
  char buf[128];
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.10f,%.10f,%.10f\n", i + 1, sp.eigenvalues[i].real(),
                  sp.eigenvalues[i].imag(), std::abs(sp.eigenvalues[i]));
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "lambda2_modulus,%.10f\n", sp.subdominant_modulus());
  os << buf;

  os << "# convergence\nepsilon,steps\n" << format_float(epsilon) << ',' << iterate_to_convergence(m, epsilon)
     << '\n';

  os << "# expected absorption\nstate,expected_steps\n";
  const AbsorptionTimes t = expected_absorption(m);
  for (std::size_t i = 0; i < t.transient_states.size(); ++i) {
    os << m.labels[t.transient_states[i]].to_string() << ',' << format_float(t.steps[i]) << '\n';
  }
  os << "transient_mean," << format_float(t.transient_mean) << '\n'
     << "uniform_init_mean," << format_float(t.initial_mean) << '\n';
  return 0;
}

std::string fmt7(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.7g", v);
  return buf;
}

int cmd_bound(const std::string& problem_name, int n, double mu, int clients, const std::string& out_path) {
  const Problem problem = parse_problem(problem_name);
  const FitnessLevels lv = levels(problem, n, mu);
  Output out(out_path);
  auto& os = out.stream();
  os << "level,fitness,s\n";
  for (std::size_t i = 0; i < lv.s.size(); ++i) {
    os << i + 1 << ',' << (problem == Problem::AllOnes ? 0 : static_cast<int>(i)) << ',' << fmt7(lv.s[i])
       << '\n';
  }
  os << "quantity,value\n"
     << "bound_single," << fmt7(bound_single(lv)) << '\n'
     << "bound_distributed," << fmt7(bound_distributed(lv, clients)) << '\n'
     << "bound_simplified," << fmt7(bound_simplified(lv, clients)) << '\n';
  if (n <= kBaselineChainMaxLength) {
    const AbsorptionTimes t = expected_absorption(build_baseline_chain(problem, n, mu));
    double worst = 0.0;
    for (double v : t.steps) worst = std::max(worst, v);
    os << "exact_uniform_init," << fmt7(t.initial_mean) << '\n'
       << "exact_worst_state," << fmt7(worst) << '\n';
  }
  return 0;
}

int cmd_sweep(const std::string& problem_name, int n_min, int n_max, int n_step, const std::string& variants,
              const std::string& clients, const std::string& schedule, int runs, std::uint64_t seed,
              bool allow_large, unsigned threads, const std::string& out_path) {
  SweepSpec spec;
  spec.problem = parse_problem(problem_name);
  spec.variants.clear();
  for (const auto& v : split_list(variants)) spec.variants.push_back(parse_variant(v));
  spec.client_counts = parse_int_list(clients, "--clients");
  if (!schedule.empty()) spec.schedule = MutationSchedule::parse(schedule);
  for (int n = n_min; n <= n_max; n += n_step) spec.n_values.push_back(n);
  spec.runs = runs;
  spec.base_seed = seed;
  spec.allow_large = allow_large;
  spec.threads = threads;
  if (spec.variants.empty() || spec.client_counts.empty()) throw ConfigError("empty variant or client list");
  if (runs < 2) throw ConfigError("--runs must be >= 2");

  const auto rows = sweep(spec);
  Output out(out_path);
  write_csv(out.stream(), rows);
  int errors = 0;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      ++errors;
      std::cerr << "cell n=" << row.cell.n << " variant=" << to_string(row.cell.variant)
                << " clients=" << row.cell.clients << ": " << row.error << '\n';
    } else if (row.stats && row.stats->nonconverged > 0) {
      std::cerr << "warning: cell n=" << row.cell.n << " variant=" << to_string(row.cell.variant)
                << " clients=" << row.cell.clients << " has " << row.stats->nonconverged
                << " non-converged trials (excluded from means)\n";
    }
  }
  return errors ? 2 : 0;
}

std::vector<BenchRow> read_all(const std::vector<std::string>& paths) {
  std::vector<BenchRow> rows;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    auto part = read_bench_csv(in, path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blade: (1+1) EA with blanket mutation and hub-and-spoke distribution"};
  app.require_subcommand(1, 1);

  std::string out_path;

  auto* run_cmd = app.add_subcommand("run", "single run (or one distributed run with --clients > 1)");
  EAFlags run_flags;
  run_flags.attach(run_cmd);
  int run_clients = 1;
  std::string run_mode = "lockstep";
  run_cmd->add_option("--clients", run_clients, "number of clients")->check(CLI::PositiveNumber);
  run_cmd->add_option("--mode", run_mode, "lockstep | network")->check(CLI::IsMember({"lockstep", "network"}));
  run_cmd->add_option("--out", out_path, "output path");

  auto* sweep_cmd = app.add_subcommand("sweep", "grid of repeated trials, CSV output");
  std::string sw_problem = "onemax", sw_variants = "baseline,blade", sw_clients = "1", sw_schedule;
  int sw_n_min = 2, sw_n_max = 16, sw_n_step = 1, sw_runs = 1000;
  std::uint64_t sw_seed = 1;
  bool sw_large = false;
  unsigned sw_threads = 0;
  sweep_cmd->add_option("--problem", sw_problem)->capture_default_str();
  sweep_cmd->add_option("--n-min", sw_n_min)->capture_default_str();
  sweep_cmd->add_option("--n-max", sw_n_max)->capture_default_str();
  sweep_cmd->add_option("--n-step", sw_n_step)->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--variants", sw_variants, "comma list of baseline,blade")->capture_default_str();
  sweep_cmd->add_option("--clients", sw_clients, "comma list of client counts")->capture_default_str();
  sweep_cmd->add_option("--schedule", sw_schedule, "mutation schedule (default per problem)");
  sweep_cmd->add_option("--runs", sw_runs)->capture_default_str();
  sweep_cmd->add_option("--seed", sw_seed)->envname("BLADE_SEED")->capture_default_str();
  sweep_cmd->add_flag("--allow-large", sw_large, "allow allones cells above n=12");
  sweep_cmd->add_option("--threads", sw_threads, "worker threads (0 = all)");
  sweep_cmd->add_option("--out", out_path, "output path");

  auto* markov_cmd = app.add_subcommand("markov", "exact transition matrix analysis");
  std::string mk_problem = "allones", mk_variant = "baseline", mk_schedule;
  int mk_n = 2;
  double mk_mu = 0.5, mk_eps = 1e-3;
  markov_cmd->add_option("--problem", mk_problem)->capture_default_str();
  markov_cmd->add_option("--n", mk_n)->capture_default_str();
  markov_cmd->add_option("--variant", mk_variant)->capture_default_str();
  markov_cmd->add_option("--mu", mk_mu, "fixed mutation rate")->capture_default_str();
  markov_cmd->add_option("--schedule", mk_schedule, "schedule instead of --mu");
  markov_cmd->add_option("--epsilon", mk_eps, "total-variation threshold")->capture_default_str();
  markov_cmd->add_option("--out", out_path, "output path");

  auto* bound_cmd = app.add_subcommand("bound", "fitness-level runtime bounds");
  std::string bd_problem = "onemax";
  int bd_n = 16, bd_clients = 1;
  double bd_mu = -1.0;
  bound_cmd->add_option("--problem", bd_problem)->capture_default_str();
  bound_cmd->add_option("--n", bd_n)->capture_default_str();
  bound_cmd->add_option("--mu", bd_mu, "mutation rate (default 1/n)");
  bound_cmd->add_option("--clients", bd_clients)->check(CLI::PositiveNumber)->capture_default_str();
  bound_cmd->add_option("--out", out_path, "output path");

  auto* ratio_cmd = app.add_subcommand("ratio", "speedup ratios from sweep CSVs");
  std::vector<std::string> ratio_inputs;
  ratio_cmd->add_option("csv", ratio_inputs, "sweep CSV files")->required();
  ratio_cmd->add_option("--out", out_path, "output path");

  auto* hub_cmd = app.add_subcommand("hub", "serve the hub until interrupted");
  std::string hub_bind = "127.0.0.1:7777";
  int hub_n = 16;
  hub_cmd->add_option("--bind", hub_bind, "host:port")->capture_default_str();
  hub_cmd->add_option("--n", hub_n, "genome length")->capture_default_str();

  auto* client_cmd = app.add_subcommand("client", "run one EA client against a hub");
  EAFlags client_flags;
  client_flags.attach(client_cmd);
  std::string client_hub = "127.0.0.1:7777";
  int client_index = 0;
  client_cmd->add_option("--hub", client_hub, "hub host:port")->capture_default_str();
  client_cmd->add_option("--index", client_index, "client index (selects the random stream)");
  client_cmd->add_option("--out", out_path, "output path");

  auto* plot_cmd = app.add_subcommand("plot", "SVG chart from sweep CSVs");
  std::vector<std::string> plot_inputs;
  std::string plot_mode = "generations", plot_title;
  bool plot_log = false;
  plot_cmd->add_option("csv", plot_inputs, "sweep CSV files")->required();
  plot_cmd->add_option("--mode", plot_mode)->check(CLI::IsMember({"generations", "ratio"}))->capture_default_str();
  plot_cmd->add_flag("--log-y", plot_log, "logarithmic y axis");
  plot_cmd->add_option("--title", plot_title);
  plot_cmd->add_option("--out", out_path, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags, run_clients, run_mode, out_path);
    if (*sweep_cmd) {
      return cmd_sweep(sw_problem, sw_n_min, sw_n_max, sw_n_step, sw_variants, sw_clients, sw_schedule, sw_runs,
                       sw_seed, sw_large, sw_threads, out_path);
    }
    if (*markov_cmd) return cmd_markov(mk_problem, mk_n, mk_variant, mk_mu, mk_schedule, mk_eps, out_path);
    if (*bound_cmd) return cmd_bound(bd_problem, bd_n, bd_mu > 0 ? bd_mu : 1.0 / bd_n, bd_clients, out_path);
    if (*ratio_cmd) {
      Output out(out_path);
      write_ratio_csv(out.stream(), ratio_table(read_all(ratio_inputs)));
      return 0;
    }
    if (*hub_cmd) {
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const Endpoint endpoint = parse_endpoint(hub_bind);
      std::cerr << "hub listening on " << hub_bind << " (n=" << hub_n << ")\n";
      serve_hub(endpoint, hub_n, &g_stop);
      return 0;
    }
    if (*client_cmd) {
      ClientOptions options;
      options.client_index = client_index;
      const EAConfig config = client_flags.config();
      const RunRecord r = run_network_client(client_hub, config, options);
      Output out(out_path);
      print_record_header(out.stream());
      out.stream() << to_string(config.problem) << ',' << to_string(config.variant) << ','
                   << config.schedule.name() << ',' << config.n << ",1," << config.seed << ',' << r.generations
                   << ',' << r.evaluations << ',' << (r.converged ? "true" : "false") << ',' << r.final_fitness
                   << '\n';
      return 0;
    }
    if (*plot_cmd) {
      PlotOptions options;
      options.mode = plot_mode == "ratio" ? PlotOptions::Mode::Ratio : PlotOptions::Mode::Generations;
      options.log_y = plot_log;
      options.title = plot_title;
      const std::string svg = render_svg(build_series(read_all(plot_inputs), options.mode), options);
      Output out(out_path);
      out.stream() << svg;
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
