#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "blade/ea.hpp"
#include "blade/hub.hpp"

namespace blade {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;
};

/// "host:port"; throws ConfigError.
[[nodiscard]] Endpoint parse_endpoint(std::string_view text);

/// TCP hub. One thread accepts, one thread per connection; every SYNC is
/// applied to a ConcurrentHub under its lock.
class HubServer {
 public:
  HubServer(std::string host, std::uint16_t port, int expected_length, bool record_history = false);
  ~HubServer();

  HubServer(const HubServer&) = delete;
  HubServer& operator=(const HubServer&) = delete;

  // Binds and starts accepting. Throws ProtocolError if the address is unusable.
  void start();
  void stop();
  // Blocks until stop() is called from another thread.
  void wait();

  [[nodiscard]] std::uint16_t port() const { return port_; }
  [[nodiscard]] ConcurrentHub& hub() { return hub_; }

 private:
  struct Connection {
    int fd = -1;
    bool done = false;
    std::thread thread;
  };

  void accept_loop();
  void serve_connection(Connection* connection);

  std::string host_;
  std::uint16_t port_;
  int expected_length_;
  ConcurrentHub hub_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex connections_mutex_;
  std::list<Connection> connections_;
};

/// Binds and serves until `stop_requested` becomes true (forever if null).
void serve_hub(const Endpoint& bind, int expected_length,
               const std::atomic<bool>* stop_requested = nullptr);

/// Client side of one hub connection.
class HubConnection {
 public:
  HubConnection() = default;
  ~HubConnection();
  HubConnection(HubConnection&& other) noexcept;
  HubConnection& operator=(HubConnection&& other) noexcept;

  // Throws ProtocolError if the hub cannot be reached.
  static HubConnection connect(const Endpoint& endpoint);

  [[nodiscard]] bool is_open() const { return fd_ >= 0; }
  void close();

  // Each throws ProtocolError on I/O failure (and closes the connection).
  Candidate sync(const BitString& genome, Fitness fitness);
  bool ping();
  // Sends QUIT and closes without waiting for a reply.
  void quit();
  // Sends a raw line and returns the raw reply line.
  std::string exchange(const std::string& line);

 private:
  explicit HubConnection(int fd) : fd_(fd) {}
  std::optional<std::string> read_line();

  int fd_ = -1;
  std::string buffer_;
};

struct ClientOptions {
  int client_index = 0;
  int connect_attempts = 6;
  std::chrono::milliseconds initial_backoff{20};
  // While disconnected, try to reconnect once every this many generations.
  std::uint64_t reconnect_interval = 256;
};

/// (1+1) EA client that syncs with a remote hub every generation. Uses the
/// same random stream as the lock-step client with the same index.
[[nodiscard]] RunRecord run_network_client(const std::string& hub_address, const EAConfig& config,
                                           const ClientOptions& options = {});

}  // namespace blade
