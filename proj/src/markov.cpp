#include "blade/markov.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace blade {

namespace {

// q^k (1-q)^(m-k) with 0^0 = 1.
double binomial_term(double q, int k, int m) {
  return std::pow(q, k) * std::pow(1.0 - q, m - k);
}

void check_capacity(int n, int max_length, const char* which) {
  if (n < 1 || n > max_length) {
    throw CapacityError(std::string(which) + " chain supports 1 <= n <= " + std::to_string(max_length) +
                        ", got " + std::to_string(n));
  }
}

// Words of all n-bit strings, ordered lexicographically by their text form.
std::vector<std::uint64_t> text_ordered_words(int n) {
  std::vector<std::uint64_t> words(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < words.size(); ++k) {
    std::uint64_t w = 0;
    for (int i = 0; i < n; ++i) {
      if (k >> i & 1) w |= std::uint64_t{1} << (n - 1 - i);
    }
    words[k] = w;
  }
  return words;
}

std::vector<Blanket> all_blankets(int n) {
  std::vector<Blanket> blankets;
  const std::uint64_t full = length_mask(n);
  for (std::uint64_t mask : text_ordered_words(n)) {
    if (mask != 0 && mask != full) blankets.emplace_back(n, mask);
  }
  return blankets;
}

}  // namespace

std::string StateLabel::to_string() const {
  if (absorbed) return "ABSORBED(" + genome.to_string() + ")";
  if (blanket) return genome.to_string() + "|" + blanket->to_string();
  return genome.to_string();
}

bool TransitionMatrix::is_absorbing(std::size_t state) const {
  const auto row = p.row(state);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] != (j == state ? 1.0 : 0.0)) return false;
  }
  return true;
}

std::vector<std::size_t> TransitionMatrix::absorbing_states() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_absorbing(i)) out.push_back(i);
  }
  return out;
}

double TransitionMatrix::stochasticity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double sum = 0.0;
    for (double v : p.row(i)) sum += v;
    worst = std::max(worst, std::fabs(sum - 1.0));
  }
  return worst;
}

TransitionMatrix build_baseline_chain(Problem problem, int n, const MutationSchedule& schedule) {
  check_capacity(n, kBaselineChainMaxLength, "baseline");
  const std::size_t states = std::size_t{1} << n;
  TransitionMatrix m;
  m.p = DenseMatrix(states, states);
  m.labels.reserve(states);
  m.initial_weights.assign(states, 1.0 / static_cast<double>(states));

  const auto words = text_ordered_words(n);
  std::vector<Fitness> fitness(states);
  for (std::size_t s = 0; s < states; ++s) {
    m.labels.push_back({BitString(n, words[s]), std::nullopt, false});
    fitness[s] = evaluate(problem, m.labels.back().genome);
  }

  std::vector<double> by_distance(static_cast<std::size_t>(n) + 1);
  const Fitness optimum = optimum_fitness(problem, n);
  for (std::size_t x = 0; x < states; ++x) {
    if (fitness[x] == optimum) {
      m.p(x, x) = 1.0;
      continue;
    }
    const double mu = base_rate(schedule, n, fitness[x]);
    for (int d = 0; d <= n; ++d) by_distance[static_cast<std::size_t>(d)] = binomial_term(mu, d, n);
    for (std::size_t y = 0; y < states; ++y) {
      const double q = by_distance[static_cast<std::size_t>(std::popcount(words[x] ^ words[y]))];
      if (fitness[y] >= fitness[x]) {
        m.p(x, y) += q;
      } else {
        m.p(x, x) += q;
      }
    }
  }
  return m;
}

TransitionMatrix build_baseline_chain(Problem problem, int n, double mu) {
  return build_baseline_chain(problem, n, MutationSchedule::static_rate(mu));
}

TransitionMatrix build_blanket_chain(Problem problem, int n, const MutationSchedule& schedule) {
  check_capacity(n, kBlanketChainMaxLength, "blanket");
  if (n < 2) throw ConfigError("blanket chain needs n >= 2");
  const std::uint64_t genotypes = std::uint64_t{1} << n;
  const std::uint64_t optimum = length_mask(n);
  const auto blankets = all_blankets(n);
  std::vector<double> blanket_weight;
  for (const auto& b : blankets) blanket_weight.push_back(blanket_probability(b));

  // State layout: genotype-major over non-optimal genotypes, then ABSORBED.
  TransitionMatrix m;
  std::vector<std::size_t> first_state(genotypes, 0);
  for (std::uint64_t g : text_ordered_words(n)) {
    if (g == optimum) continue;
    first_state[g] = m.labels.size();
    for (std::size_t b = 0; b < blankets.size(); ++b) {
      m.labels.push_back({BitString(n, g), blankets[b], false});
      m.initial_weights.push_back(blanket_weight[b] / static_cast<double>(genotypes));
    }
  }
  const std::size_t absorbed = m.labels.size();
  m.labels.push_back({BitString(n, optimum), std::nullopt, true});
  m.initial_weights.push_back(1.0 / static_cast<double>(genotypes));
  m.p = DenseMatrix(m.labels.size(), m.labels.size());
  m.p(absorbed, absorbed) = 1.0;

  for (std::size_t state = 0; state < absorbed; ++state) {
    const BitString& x = m.labels[state].genome;
    const Blanket& blanket = *m.labels[state].blanket;
    const Fitness fx = evaluate(problem, x);
    const double rate =
        blanket_rate(base_rate(schedule, n, fx), n, blanket.preserved_count());
    const std::uint64_t free_bits = blanket.mutable_bits();
    const int free_count = std::popcount(free_bits);

    // Every flip pattern over the unpreserved bits, including the empty one.
    std::uint64_t flips = 0;
    do {
      const double q = binomial_term(rate, std::popcount(flips), free_count);
      if (q > 0.0) {
        const BitString y = x.flipped(flips);
        const std::uint64_t next = evaluate(problem, y) >= fx ? y.word() : x.word();
        if (next == optimum) {
          m.p(state, absorbed) += q;
        } else {
          for (std::size_t b = 0; b < blankets.size(); ++b) {
            m.p(state, first_state[next] + b) += q * blanket_weight[b];
          }
        }
      }
      flips = (flips - free_bits) & free_bits;
    } while (flips != 0);
  }
  return m;
}

TransitionMatrix build_blanket_chain(Problem problem, int n, double mu) {
  return build_blanket_chain(problem, n, MutationSchedule::static_rate(mu));
}

double Spectrum::subdominant_modulus() const {
  return eigenvalues.size() < 2 ? 0.0 : std::abs(eigenvalues[1]);
}

Spectrum spectrum(const DenseMatrix& m) {
  if (m.rows() > kSpectrumMaxDimension) {
    throw CapacityError("spectrum supports dimension <= " + std::to_string(kSpectrumMaxDimension) +
                        ", got " + std::to_string(m.rows()));
  }
  Spectrum s{eigenvalues(m)};
  std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma > mb;
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return s;
}

Spectrum spectrum(const TransitionMatrix& m) { return spectrum(m.p); }

namespace {

struct Blocks {
  std::vector<std::size_t> transient;
  std::vector<std::size_t> absorbing;
};

Blocks partition(const TransitionMatrix& m) {
  Blocks blocks;
  for (std::size_t i = 0; i < m.size(); ++i) {
    (m.is_absorbing(i) ? blocks.absorbing : blocks.transient).push_back(i);
  }
  if (blocks.absorbing.empty()) throw ContractViolation("chain has no absorbing state");
  return blocks;
}

// I - Q over the transient block.
DenseMatrix fundamental_system(const TransitionMatrix& m, const Blocks& blocks) {
  const std::size_t t = blocks.transient.size();
  DenseMatrix a(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      a(i, j) = (i == j ? 1.0 : 0.0) - m.p(blocks.transient[i], blocks.transient[j]);
    }
  }
  return a;
}

std::vector<double> multiply(const std::vector<double>& row, const DenseMatrix& p) {
  std::vector<double> out(row.size(), 0.0);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] == 0.0) continue;
    const auto r = p.row(i);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += row[i] * r[j];
  }
  return out;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  return 0.5 * sum;
}

}  // namespace

std::vector<double> absorbing_limit(const TransitionMatrix& m, const std::vector<double>& initial) {
  const Blocks blocks = partition(m);
  std::vector<double> limit(m.size(), 0.0);
  for (std::size_t a : blocks.absorbing) limit[a] = initial[a];
  if (blocks.transient.empty()) return limit;

  DenseMatrix r(blocks.transient.size(), blocks.absorbing.size());
  for (std::size_t i = 0; i < blocks.transient.size(); ++i) {
    for (std::size_t j = 0; j < blocks.absorbing.size(); ++j) {
      r(i, j) = m.p(blocks.transient[i], blocks.absorbing[j]);
    }
  }
  const DenseMatrix b = solve(fundamental_system(m, blocks), std::move(r));
  for (std::size_t i = 0; i < blocks.transient.size(); ++i) {
    for (std::size_t j = 0; j < blocks.absorbing.size(); ++j) {
      limit[blocks.absorbing[j]] += initial[blocks.transient[i]] * b(i, j);
    }
  }
  return limit;
}

std::vector<double> convergence_trace(const TransitionMatrix& m, int steps) {
  std::vector<double> dist(m.size(), 1.0 / static_cast<double>(m.size()));
  const auto limit = absorbing_limit(m, dist);
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(steps) + 1);
  trace.push_back(total_variation(dist, limit));
  for (int t = 0; t < steps; ++t) {
    dist = multiply(dist, m.p);
    trace.push_back(total_variation(dist, limit));
  }
  return trace;
}

int iterate_to_convergence(const TransitionMatrix& m, double epsilon, int max_steps) {
  std::vector<double> dist(m.size(), 1.0 / static_cast<double>(m.size()));
  const auto limit = absorbing_limit(m, dist);
  if (epsilon >= 1.0) return 0;
  for (int t = 0; t <= max_steps; ++t) {
    if (total_variation(dist, limit) < epsilon) return t;
    dist = multiply(dist, m.p);
  }
  throw NumericalError("distribution did not converge within " + std::to_string(max_steps) +
                       " steps (epsilon " + std::to_string(epsilon) + ")");
}

AbsorptionTimes expected_absorption(const TransitionMatrix& m) {
  const Blocks blocks = partition(m);
  AbsorptionTimes out;
  out.transient_states = blocks.transient;
  if (blocks.transient.empty()) return out;
  out.steps = solve(fundamental_system(m, blocks), std::vector<double>(blocks.transient.size(), 1.0));
  double sum = 0.0;
  for (std::size_t i = 0; i < out.steps.size(); ++i) {
    sum += out.steps[i];
    out.initial_mean += m.initial_weights[blocks.transient[i]] * out.steps[i];
  }
  out.transient_mean = sum / static_cast<double>(out.steps.size());
  return out;
}

}  // namespace blade
