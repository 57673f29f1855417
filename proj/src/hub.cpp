#include "blade/hub.hpp"

#include <string>
#include <thread>

#include "blade/network.hpp"

namespace blade {

Candidate HubState::sync(const BitString& candidate, Fitness fitness) {
  if (length_ && candidate.length() != *length_) {
    throw ProtocolError("length");
  }
  if (fitness < 0) {
    return best_ ? *best_ : Candidate{candidate, fitness};
  }
  if (!length_) length_ = candidate.length();
  if (!best_ || fitness >= best_->fitness) {
    Candidate next{candidate, fitness};
    if (!best_ || !(*best_ == next)) ++version_;
    best_ = std::move(next);
  }
  return *best_;
}

ConcurrentHub::ConcurrentHub(std::optional<int> expected_length, bool record_history)
    : state_(expected_length ? HubState(*expected_length) : HubState()),
      record_history_(record_history) {}

Candidate ConcurrentHub::sync(const BitString& candidate, Fitness fitness) {
  std::lock_guard lock(mutex_);
  Candidate result = state_.sync(candidate, fitness);
  if (record_history_ && state_.best()) history_.push_back(state_.best()->fitness);
  return result;
}

std::optional<Candidate> ConcurrentHub::best() const {
  std::lock_guard lock(mutex_);
  return state_.best();
}

std::uint64_t ConcurrentHub::version() const {
  std::lock_guard lock(mutex_);
  return state_.version();
}

std::vector<Fitness> ConcurrentHub::history() const {
  std::lock_guard lock(mutex_);
  return history_;
}

void DistConfig::validate() const {
  ea.validate();
  if (clients < 1) throw ConfigError("clients must be >= 1");
}

DistRunRecord run_lockstep(const DistConfig& config, const RoundObserver& observer) {
  config.validate();
  const auto c = static_cast<std::size_t>(config.clients);
  const Fitness optimum = optimum_fitness(config.ea.problem, config.ea.n);

  std::vector<RandomSource> streams;
  std::vector<Individual> clients;
  streams.reserve(c);
  clients.reserve(c);
  for (std::size_t i = 0; i < c; ++i) {
    streams.push_back(client_stream(config.ea.seed, static_cast<int>(i)));
    clients.push_back(initialize(config.ea, streams.back()));
  }

  DistRunRecord record;
  record.total_evaluations = c;
  auto best_fitness = [&] {
    Fitness best = clients.front().fitness;
    for (const auto& client : clients) best = std::max(best, client.fitness);
    return best;
  };

  HubState hub(config.ea.n);
  while (best_fitness() != optimum && record.rounds < config.ea.max_iterations) {
    ++record.rounds;
    for (const auto& client : clients) (void)hub.sync(client.genome, client.fitness);
    for (auto& client : clients) client = adopt(client, hub.sync(client.genome, client.fitness));
    if (observer) observer(record.rounds, clients);
    for (std::size_t i = 0; i < c; ++i) clients[i] = step(clients[i], config.ea, streams[i]);
    record.total_evaluations += c;
  }
  record.best_fitness = best_fitness();
  record.converged = record.best_fitness == optimum;
  return record;
}

DistRunRecord run_distributed(const DistConfig& config) {
  config.validate();
  if (config.mode == DistMode::LockStep) return run_lockstep(config);

  HubServer server("127.0.0.1", 0, config.ea.n);
  server.start();
  const std::string address = "127.0.0.1:" + std::to_string(server.port());

  std::vector<RunRecord> records(static_cast<std::size_t>(config.clients));
  std::vector<std::exception_ptr> errors(records.size());
  {
    std::vector<std::jthread> threads;
    for (std::size_t i = 0; i < records.size(); ++i) {
      threads.emplace_back([&, i] {
        try {
          ClientOptions options;
          options.client_index = static_cast<int>(i);
          records[i] = run_network_client(address, config.ea, options);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  server.stop();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  DistRunRecord record;
  for (const auto& r : records) {
    record.rounds = std::max(record.rounds, r.generations);
    record.total_evaluations += r.evaluations;
    record.converged = record.converged || r.converged;
    record.best_fitness = std::max(record.best_fitness, r.final_fitness);
  }
  return record;
}

}  // namespace blade
