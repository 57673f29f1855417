#include "blade/network.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>

#include "blade/protocol.hpp"

namespace blade {

namespace {

struct AddrInfoDeleter {
  void operator()(addrinfo* info) const { freeaddrinfo(info); }
};
using AddrInfoPtr = std::unique_ptr<addrinfo, AddrInfoDeleter>;

AddrInfoPtr resolve(const std::string& host, std::uint16_t port, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* result = nullptr;
  const std::string service = std::to_string(port);
  const int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(), &hints, &result);
  if (rc != 0) {
    throw ProtocolError("cannot resolve '" + host + "': " + gai_strerror(rc));
  }
  return AddrInfoPtr(result);
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t sent = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (sent < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(sent));
  }
  return true;
}

// Appends to `buffer` until it holds a full line; returns it without '\n'.
std::optional<std::string> recv_line(int fd, std::string& buffer) {
  for (;;) {
    const auto newline = buffer.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer.substr(0, newline);
      buffer.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (buffer.size() > 4096) return std::nullopt;
    char chunk[512];
    const ssize_t got = ::recv(fd, chunk, sizeof chunk, 0);
    if (got < 0 && errno == EINTR) continue;
    if (got <= 0) return std::nullopt;
    buffer.append(chunk, static_cast<std::size_t>(got));
  }
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos || colon + 1 == text.size()) {
    throw ConfigError("expected host:port, got '" + std::string(text) + "'");
  }
  Endpoint endpoint;
  endpoint.host = std::string(text.substr(0, colon));
  const auto port_text = text.substr(colon + 1);
  unsigned port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port > 65535) {
    throw ConfigError("bad port in '" + std::string(text) + "'");
  }
  endpoint.port = static_cast<std::uint16_t>(port);
  return endpoint;
}

HubServer::HubServer(std::string host, std::uint16_t port, int expected_length, bool record_history)
    : host_(std::move(host)),
      port_(port),
      expected_length_(expected_length),
      hub_(expected_length, record_history) {
  check_length(expected_length);
}

HubServer::~HubServer() { stop(); }

void HubServer::start() {
  if (running_) return;
  auto info = resolve(host_, port_, true);
  const int fd = ::socket(info->ai_family, info->ai_socktype, info->ai_protocol);
  if (fd < 0) throw ProtocolError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd, info->ai_addr, info->ai_addrlen) != 0 || ::listen(fd, 64) != 0) {
    const std::string reason = std::strerror(errno);
    ::close(fd);
    throw ProtocolError("cannot listen on " + host_ + ":" + std::to_string(port_) + ": " + reason);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
  listen_fd_ = fd;
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void HubServer::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable()) acceptor_.join();
  std::list<Connection> connections;
  {
    std::lock_guard lock(connections_mutex_);
    for (auto& connection : connections_) {
      if (connection.fd >= 0) ::shutdown(connection.fd, SHUT_RDWR);
    }
    connections.swap(connections_);
  }
  for (auto& connection : connections) {
    if (connection.thread.joinable()) connection.thread.join();
  }
}

void HubServer::wait() {
  while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(50));
}

void HubServer::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    std::lock_guard lock(connections_mutex_);
    if (!running_) {
      ::close(fd);
      break;
    }
    for (auto it = connections_.begin(); it != connections_.end();) {
      if (it->done) {
        it->thread.join();
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
    auto& connection = connections_.emplace_back();
    connection.fd = fd;
    connection.thread = std::thread([this, &connection] { serve_connection(&connection); });
  }
}

void HubServer::serve_connection(Connection* connection) {
  const int fd = connection->fd;
  std::string buffer;
  while (running_) {
    const auto line = recv_line(fd, buffer);
    if (!line) break;
    const std::string reply = protocol::handle_line(hub_, *line, expected_length_);
    if (reply.empty()) break;  // QUIT
    if (!send_all(fd, reply + "\n")) break;
  }
  std::lock_guard lock(connections_mutex_);
  ::close(fd);
  connection->fd = -1;
  connection->done = true;
}

void serve_hub(const Endpoint& bind, int expected_length, const std::atomic<bool>* stop_requested) {
  HubServer server(bind.host, bind.port, expected_length);
  server.start();
  while (stop_requested == nullptr || !stop_requested->load()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  server.stop();
}

HubConnection::~HubConnection() { close(); }

HubConnection::HubConnection(HubConnection&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), buffer_(std::move(other.buffer_)) {}

HubConnection& HubConnection::operator=(HubConnection&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    buffer_ = std::move(other.buffer_);
  }
  return *this;
}

HubConnection HubConnection::connect(const Endpoint& endpoint) {
  auto info = resolve(endpoint.host, endpoint.port, false);
  const int fd = ::socket(info->ai_family, info->ai_socktype, info->ai_protocol);
  if (fd < 0) throw ProtocolError(std::string("socket: ") + std::strerror(errno));
  if (::connect(fd, info->ai_addr, info->ai_addrlen) != 0) {
    const std::string reason = std::strerror(errno);
    ::close(fd);
    throw ProtocolError("cannot reach hub " + endpoint.host + ":" + std::to_string(endpoint.port) +
                        ": " + reason);
  }
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return HubConnection(fd);
}

void HubConnection::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  buffer_.clear();
}

std::optional<std::string> HubConnection::read_line() { return recv_line(fd_, buffer_); }

std::string HubConnection::exchange(const std::string& line) {
  if (fd_ < 0) throw ProtocolError("not connected");
  if (!send_all(fd_, line + "\n")) {
    close();
    throw ProtocolError("send failed");
  }
  auto reply = read_line();
  if (!reply) {
    close();
    throw ProtocolError("connection closed by hub");
  }
  return *reply;
}

Candidate HubConnection::sync(const BitString& genome, Fitness fitness) {
  return protocol::parse_best(exchange(protocol::format_sync(genome, fitness)));
}

bool HubConnection::ping() { return exchange("PING") == "PONG"; }

void HubConnection::quit() {
  if (fd_ >= 0) (void)send_all(fd_, "QUIT\n");
  close();
}

RunRecord run_network_client(const std::string& hub_address, const EAConfig& config,
                             const ClientOptions& options) {
  config.validate();
  const Endpoint endpoint = parse_endpoint(hub_address);

  HubConnection connection;
  auto backoff = options.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      connection = HubConnection::connect(endpoint);
      break;
    } catch (const ProtocolError&) {
      if (attempt >= options.connect_attempts) throw;
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }

  RandomSource rng = client_stream(config.seed, options.client_index);
  Individual current = initialize(config, rng);
  const Fitness optimum = optimum_fitness(config.problem, config.n);
  RunRecord record;
  record.evaluations = 1;
  std::uint64_t last_attempt = 0;

  auto try_sync = [&] {
    if (!connection.is_open()) {
      if (record.generations - last_attempt < options.reconnect_interval) return;
      last_attempt = record.generations;
      try {
        connection = HubConnection::connect(endpoint);
      } catch (const ProtocolError&) {
        return;
      }
    }
    try {
      current = adopt(current, connection.sync(current.genome, current.fitness));
    } catch (const ProtocolError&) {
      connection.close();
      last_attempt = record.generations;
    }
  };

  for (;;) {
    try_sync();
    if (current.fitness == optimum || record.generations >= config.max_iterations) break;
    current = step(current, config, rng);
    ++record.generations;
    ++record.evaluations;
    if (current.fitness == optimum) {
      try_sync();
      break;
    }
  }
  connection.quit();
  record.converged = current.fitness == optimum;
  record.final_fitness = current.fitness;
  return record;
}

}  // namespace blade
