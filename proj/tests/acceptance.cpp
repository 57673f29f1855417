// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "blade/bench.hpp"
#include "blade/csv.hpp"
#include "blade/hub.hpp"
#include "blade/markov.hpp"
#include "blade/network.hpp"
#include "blade/plot.hpp"
#include "blade/theory.hpp"

using namespace blade;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Outcome eigenvalues_reproduced() {
  const auto base = spectrum(build_baseline_chain(Problem::AllOnes, 2, 0.5));
  const auto blanket = spectrum(build_blanket_chain(Problem::AllOnes, 2, 0.5));
  const double l2 = base.eigenvalues[1].real();
  const double b2 = blanket.subdominant_modulus();
  const bool ok = std::abs(base.eigenvalues[1] - 0.75) <= 1e-9 && std::fabs(b2 - 0.70710678) <= 1e-8 &&
                  std::fabs(b2 - 1 / std::sqrt(2.0)) <= 1e-9;
  return {ok, fmt("baseline lambda2=%.12f, blanket |lambda2|=%.12f", l2, b2)};
}

Outcome convergence_ordering() {
  const auto base = build_baseline_chain(Problem::AllOnes, 2, 0.5);
  const auto blanket = build_blanket_chain(Problem::AllOnes, 2, 0.5);
  bool ok = true;
  std::string detail;
  for (double eps : {1e-2, 1e-3, 1e-4, 1e-6}) {
    const int a = iterate_to_convergence(base, eps);
    const int b = iterate_to_convergence(blanket, eps);
    ok = ok && b < a;
    detail += fmt("eps=%g: %d vs %d; ", eps, b, a);
  }
  return {ok, "blanket vs baseline steps, " + detail};
}

TrialStats cell(Problem p, Variant v, std::optional<MutationSchedule> s, int n, int clients, int runs) {
  CellSpec c;
  c.problem = p;
  c.variant = v;
  c.schedule = s;
  c.n = n;
  c.clients = clients;
  c.runs = runs;
  c.base_seed = kSeed;
  return run_cell(c);
}

Outcome leadingones_constants() {
  bool ok = true;
  std::string detail;
  const std::pair<MutationSchedule, double> cases[] = {{MutationSchedule::lo_static_optimal(), 0.77},
                                                       {MutationSchedule::lo_adaptive(), 0.68}};
  for (const auto& [schedule, k] : cases) {
    for (int n : {16, 24, 32}) {
      const auto s = cell(Problem::LeadingOnes, Variant::Baseline, schedule, n, 1, 1000);
      const double target = k * n * n;
      const double rel = s.mean_generations / target - 1;
      ok = ok && s.nonconverged == 0 && std::fabs(rel) <= 0.05;
      detail += fmt("%s N=%d %.1f/%.1f (%+.1f%%); ", schedule.name().c_str(), n, s.mean_generations, target,
                    100 * rel);
    }
  }
  return {ok, detail};
}

Outcome oracle_agreement() {
  bool ok = true;
  double worst = 0;
  std::string worst_case;
  const int runs = 100000;
  for (auto p : {Problem::AllOnes, Problem::OneMax, Problem::LeadingOnes}) {
    std::vector<MutationSchedule> schedules;
    for (int n : {2, 3}) {
      if (p == Problem::LeadingOnes) {
        schedules = {MutationSchedule::lo_static_optimal(), MutationSchedule::lo_adaptive()};
      } else {
        schedules = {MutationSchedule::inverse_length(n)};
      }
      for (const auto& schedule : schedules) {
        for (auto v : {Variant::Baseline, Variant::Blanket}) {
          const auto chain = v == Variant::Baseline ? build_baseline_chain(p, n, schedule)
                                                    : build_blanket_chain(p, n, schedule);
          const double exact = expected_absorption(chain).initial_mean;
          const auto s = cell(p, v, schedule, n, 1, runs);
          const double z = (s.mean_generations - exact) / (s.sd_generations / std::sqrt(double(runs)));
          ok = ok && std::fabs(z) <= 3;
          if (std::fabs(z) >= std::fabs(worst)) {
            worst = z;
            worst_case = fmt("%s N=%d %s %s", std::string(to_string(p)).c_str(), n,
                             std::string(to_string(v)).c_str(), schedule.name().c_str());
          }
        }
      }
    }
  }
  return {ok, fmt("20 cells x %d runs, largest deviation %.2f SE (%s)", runs, worst, worst_case.c_str())};
}

bool separated(const TrialStats& blade, const TrialStats& base) {
  return blade.mean_generations < base.mean_generations && blade.ci95_high < base.ci95_low;
}

Outcome blanket_advantage() {
  bool ok = true;
  std::string detail;
  const std::pair<Problem, std::optional<MutationSchedule>> cases[] = {
      {Problem::OneMax, std::nullopt},
      {Problem::LeadingOnes, MutationSchedule::lo_static_optimal()},
      {Problem::LeadingOnes, MutationSchedule::lo_adaptive()}};
  for (const auto& [p, s] : cases) {
    const auto base = cell(p, Variant::Baseline, s, 32, 1, 1000);
    const auto blade = cell(p, Variant::Blanket, s, 32, 1, 1000);
    ok = ok && separated(blade, base);
    detail += fmt("%s%s N=32 blade [%.1f,%.1f] baseline [%.1f,%.1f]; ", std::string(to_string(p)).c_str(),
                  s ? (" " + s->name()).c_str() : "", blade.ci95_low, blade.ci95_high, base.ci95_low,
                  base.ci95_high);
  }
  const auto base = cell(Problem::AllOnes, Variant::Baseline, std::nullopt, 12, 1, 500);
  const auto blade = cell(Problem::AllOnes, Variant::Blanket, std::nullopt, 12, 1, 500);
  ok = ok && blade.mean_generations <= base.mean_generations && base.nonconverged == 0 && blade.nonconverged == 0;
  detail += fmt("allones N=12 blade %.1f <= baseline %.1f", blade.mean_generations, base.mean_generations);
  return {ok, detail};
}

Outcome distribution_efficiency() {
  bool ok = true;
  std::string detail;
  for (auto v : {Variant::Baseline, Variant::Blanket}) {
    const auto single = cell(Problem::OneMax, v, std::nullopt, 32, 1, 1000);
    for (int c : {4, 8}) {
      const auto multi = cell(Problem::OneMax, v, std::nullopt, 32, c, 1000);
      const double r = speedup_ratio(single, multi);
      ok = ok && r >= 0.85 && r <= 1.15;
      detail += fmt("%s c=%d ratio %.3f; ", std::string(to_string(v)).c_str(), c, r);
    }
  }
  return {ok, detail};
}

Outcome synergy() {
  const auto schedule = MutationSchedule::lo_static_optimal();
  auto estimate = [&](Variant v) {
    return speedup_ratio_ci(cell(Problem::LeadingOnes, v, schedule, 32, 1, 1000),
                            cell(Problem::LeadingOnes, v, schedule, 32, 2, 1000));
  };
  const auto blade = estimate(Variant::Blanket);
  const auto base = estimate(Variant::Baseline);
  const bool ok = blade.ratio > 1.0 && blade.ci95_low > 1.0 && base.ci95_low <= 1.0;
  return {ok, fmt("blade ratio %.4f [%.4f,%.4f], baseline ratio %.4f [%.4f,%.4f]", blade.ratio, blade.ci95_low,
                  blade.ci95_high, base.ratio, base.ci95_low, base.ci95_high)};
}

Outcome bound_soundness() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> ux(0.0, 1.0), un(1e-9, 100.0);
  int violations_a = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto s = smoothing_inequality(ux(rng), un(rng));
    violations_a += s.lhs > s.rhs * (1 + 1e-12);
  }

  int violations_b = 0, checked_b = 0;
  for (auto p : {Problem::AllOnes, Problem::OneMax, Problem::LeadingOnes}) {
    for (int n = 2; n <= 16; ++n) {
      for (double mu : {1.0 / n, 0.5 / n, 2.0 / n, 0.5}) {
        if (mu >= 1) continue;
        const auto lv = levels(p, n, mu);
        for (int c = 1; c <= 64; ++c, ++checked_b) {
          violations_b += bound_distributed(lv, c) > bound_simplified(lv, c) * (1 + 1e-12);
        }
      }
    }
  }

  int violations_c = 0;
  for (auto p : {Problem::AllOnes, Problem::OneMax, Problem::LeadingOnes}) {
    for (int n = 2; n <= 3; ++n) {
      for (double mu : {1.0 / n, 0.5}) {
        const auto t = expected_absorption(build_baseline_chain(p, n, mu));
        violations_c +=
            *std::max_element(t.steps.begin(), t.steps.end()) > bound_single(levels(p, n, mu)) * (1 + 1e-12);
      }
    }
  }

  std::string detail_d;
  bool ok_d = true;
  const auto lv = levels(Problem::OneMax, 16, 1.0 / 16);
  for (int c : {2, 4, 8}) {
    const auto s = cell(Problem::OneMax, Variant::Baseline, std::nullopt, 16, c, 1000);
    const double bound = bound_distributed(lv, c);
    ok_d = ok_d && s.mean_generations <= bound;
    detail_d += fmt("c=%d %.1f<=%.1f ", c, s.mean_generations, bound);
  }
  const bool ok = violations_a == 0 && violations_b == 0 && violations_c == 0 && ok_d;
  return {ok, fmt("(a) %d/100000 violations (b) %d/%d (c) %d/12 (d) rounds vs bound: %s", violations_a,
                  violations_b, checked_b, violations_c, detail_d.c_str())};
}

Outcome hub_correctness() {
  const int clients = 8;
  const int syncs = 1500;
  const int n = 16;
  HubServer server("127.0.0.1", 0, n, true);
  server.start();
  const Endpoint endpoint{"127.0.0.1", server.port()};
  std::vector<std::vector<Candidate>> submitted(clients);
  std::vector<std::string> errors(clients);
  {
    std::vector<std::jthread> threads;
    for (int i = 0; i < clients; ++i) {
      threads.emplace_back([&, i] {
        try {
          std::mt19937_64 rng(kSeed * 1000 + i);
          auto conn = HubConnection::connect(endpoint);
          for (int k = 0; k < syncs; ++k) {
            const BitString g(n, rng());
            const Fitness f = static_cast<Fitness>(rng() % 100000);
            submitted[i].push_back({g, f});
            const auto best = conn.sync(g, f);
            if (best.fitness < f) throw std::runtime_error("hub returned a worse candidate");
          }
          conn.quit();
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
    }
  }
  server.stop();
  for (const auto& e : errors) {
    if (!e.empty()) return {false, "client error: " + e};
  }
  const auto history = server.hub().history();
  const bool monotone = std::is_sorted(history.begin(), history.end());
  Fitness max_submitted = -1;
  for (const auto& list : submitted) {
    for (const auto& c : list) max_submitted = std::max(max_submitted, c.fitness);
  }
  const auto best = server.hub().best();
  bool best_was_submitted = false;
  for (const auto& list : submitted) {
    best_was_submitted = best_was_submitted || std::find(list.begin(), list.end(), *best) != list.end();
  }
  const bool network_ok = monotone && best && best->fitness == max_submitted && best_was_submitted &&
                          history.size() == static_cast<std::size_t>(clients * syncs);

  std::uint64_t rounds = 0, unequal = 0;
  for (auto p : {Problem::OneMax, Problem::LeadingOnes}) {
    for (auto v : {Variant::Baseline, Variant::Blanket}) {
      for (int c : {2, 4, 8}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          EAConfig config;
          config.problem = p;
          config.n = 24;
          config.variant = v;
          config.schedule = default_schedule(p, 24);
          config.seed = seed;
          (void)run_lockstep({config, c}, [&](std::uint64_t, std::span<const Individual> xs) {
            ++rounds;
            for (const auto& x : xs) unequal += x.fitness != xs.front().fitness;
          });
        }
      }
    }
  }
  return {network_ok && unequal == 0,
          fmt("%d clients x %d syncs: history %zu entries, monotone=%s, final %d = max submitted %d; "
              "lock-step: %llu rounds, %llu unequal fitness levels after sync",
              clients, syncs, history.size(), monotone ? "yes" : "no", best ? best->fitness : -1, max_submitted,
              static_cast<unsigned long long>(rounds), static_cast<unsigned long long>(unequal))};
}

Outcome determinism() {
  SweepSpec spec;
  spec.problem = Problem::LeadingOnes;
  spec.n_values = {4, 8, 12, 16};
  spec.client_counts = {1, 2};
  spec.runs = 200;
  spec.base_seed = kSeed;
  auto csv = [&](unsigned threads) {
    spec.threads = threads;
    std::ostringstream out;
    write_csv(out, sweep(spec));
    return out.str();
  };
  const std::string a = csv(1), b = csv(0), c = csv(3);
  auto chart = [](const std::string& text, PlotOptions::Mode mode) {
    std::istringstream in(text);
    PlotOptions options;
    options.mode = mode;
    return render_svg(build_series(read_bench_csv(in), mode), options);
  };
  const bool csv_ok = a == b && b == c;
  const bool svg_ok = chart(a, PlotOptions::Mode::Generations) == chart(b, PlotOptions::Mode::Generations) &&
                      chart(a, PlotOptions::Mode::Ratio) == chart(c, PlotOptions::Mode::Ratio);
  return {csv_ok && svg_ok, fmt("csv %zu bytes identical=%s, svg identical=%s", a.size(), csv_ok ? "yes" : "no",
                                svg_ok ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"eigenvalue reproduction", eigenvalues_reproduced},
      {"convergence-step ordering", convergence_ordering},
      {"LeadingOnes convergence constants", leadingones_constants},
      {"exact-oracle agreement", oracle_agreement},
      {"blanket advantage with CI separation", blanket_advantage},
      {"distribution efficiency", distribution_efficiency},
      {"synergy", synergy},
      {"bound soundness", bound_soundness},
      {"hub correctness", hub_correctness},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !outcome.pass;
    std::printf("%s %2d %s (%.1fs): %s\n", outcome.pass ? "PASS" : "FAIL", index, name, secs,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
