#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "blade/ea.hpp"
#include "blade/genome.hpp"

namespace blade {

struct Candidate {
  BitString genome;
  Fitness fitness;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Best-so-far candidate held by the hub.
///
/// sync() is the single compare-and-exchange primitive: a candidate at least
/// as fit as the current best replaces it, and the call returns whatever the
/// hub holds afterwards. A negative fitness is a read-only probe. Not
/// thread-safe; see ConcurrentHub.
class HubState {
 public:
  HubState() = default;
  explicit HubState(int expected_length) : length_(expected_length) {}

  Candidate sync(const BitString& candidate, Fitness fitness);

  [[nodiscard]] const std::optional<Candidate>& best() const { return best_; }
  [[nodiscard]] std::uint64_t version() const { return version_; }
  [[nodiscard]] std::optional<int> length() const { return length_; }

 private:
  std::optional<Candidate> best_;
  std::optional<int> length_;
  std::uint64_t version_ = 0;
};

/// The caller's side of a sync: take the hub's candidate only if strictly better.
[[nodiscard]] inline Individual adopt(const Individual& mine, const Candidate& hub_best) {
  return hub_best.fitness > mine.fitness ? Individual{hub_best.genome, hub_best.fitness} : mine;
}

/// HubState behind a mutex, optionally recording the best fitness after
/// every sync in serialization order.
class ConcurrentHub {
 public:
  explicit ConcurrentHub(std::optional<int> expected_length = std::nullopt,
                         bool record_history = false);

  Candidate sync(const BitString& candidate, Fitness fitness);

  [[nodiscard]] std::optional<Candidate> best() const;
  [[nodiscard]] std::uint64_t version() const;
  [[nodiscard]] std::vector<Fitness> history() const;

 private:
  mutable std::mutex mutex_;
  HubState state_;
  bool record_history_;
  std::vector<Fitness> history_;
};

enum class DistMode { LockStep, Network };

struct DistConfig {
  EAConfig ea;
  int clients = 1;
  DistMode mode = DistMode::LockStep;

  void validate() const;
};

struct DistRunRecord {
  std::uint64_t rounds = 0;
  std::uint64_t total_evaluations = 0;
  bool converged = false;
  Fitness best_fitness = 0;
};

// Called once per round after the sync phase, before any client steps.
using RoundObserver = std::function<void(std::uint64_t round, std::span<const Individual> clients)>;

/// Deterministic hub-and-spoke simulation.
///
/// Round structure: every client offers its candidate to the hub in index
/// order, then every client syncs again in index order and adopts the hub's
/// candidate if it is strictly fitter, then every client takes one EA step
/// with its own stream. The run ends after the first round in which some
/// client (and hence the hub, one sync later) holds the optimum.
[[nodiscard]] DistRunRecord run_lockstep(const DistConfig& config,
                                         const RoundObserver& observer = {});

/// Dispatches on config.mode. Network mode starts a loopback hub and one
/// thread per client.
[[nodiscard]] DistRunRecord run_distributed(const DistConfig& config);

}  // namespace blade
