#include <doctest.h>

#include <algorithm>
#include <memory>
#include <thread>

#include "blade/error.hpp"
#include "blade/network.hpp"

using namespace blade;

namespace {

EAConfig onemax(int n, std::uint64_t seed) {
  EAConfig c;
  c.problem = Problem::OneMax;
  c.n = n;
  c.schedule = MutationSchedule::inverse_length(n);
  c.seed = seed;
  return c;
}

Endpoint local(const HubServer& s) { return {"127.0.0.1", s.port()}; }

}  // namespace

TEST_CASE("endpoint parsing") {
  const auto e = parse_endpoint("127.0.0.1:7777");
  CHECK(e.host == "127.0.0.1");
  CHECK(e.port == 7777);
  CHECK_THROWS_AS((void)parse_endpoint("localhost"), ConfigError);
  CHECK_THROWS_AS((void)parse_endpoint("h:99999"), ConfigError);
  CHECK_THROWS_AS((void)parse_endpoint("h:x"), ConfigError);
}

TEST_CASE("server answers ping, sync and errors on one connection") {
  HubServer server("127.0.0.1", 0, 8);
  server.start();
  auto conn = HubConnection::connect(local(server));
  CHECK(conn.ping());
  CHECK(conn.sync(BitString(8, 0x0F), 4).fitness == 4);
  CHECK(conn.sync(BitString(8, 0x01), 1).fitness == 4);
  CHECK(conn.exchange("SYNC 3 7 70") == "ERR length");
  CHECK(conn.exchange("garbage") == "ERR command");
  CHECK(conn.ping());
  const auto probe = conn.sync(BitString(8), -1);
  CHECK(probe.genome == BitString(8, 0x0F));
  conn.quit();
  CHECK_FALSE(conn.is_open());
  server.stop();
}

TEST_CASE("racing syncs end at the maximum") {
  for (int trial = 0; trial < 20; ++trial) {
    HubServer server("127.0.0.1", 0, 8);
    server.start();
    std::jthread a([&] { HubConnection::connect(local(server)).sync(BitString(8, 0x0F), 4); });
    std::jthread b([&] { HubConnection::connect(local(server)).sync(BitString(8, 0x3F), 6); });
    a.join();
    b.join();
    CHECK(server.hub().best()->fitness == 6);
    server.stop();
  }
}

TEST_CASE("port in use is a startup error") {
  HubServer first("127.0.0.1", 0, 8);
  first.start();
  HubServer second("127.0.0.1", first.port(), 8);
  CHECK_THROWS_AS(second.start(), ProtocolError);
}

TEST_CASE("single network client reproduces the plain run") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    HubServer server("127.0.0.1", 0, 16);
    server.start();
    const auto c = onemax(16, seed);
    const auto r = run_network_client("127.0.0.1:" + std::to_string(server.port()), c);
    CHECK(r.generations == run(c).generations);
    CHECK(r.converged);
    server.stop();
  }
}

TEST_CASE("client adopts a preloaded optimum immediately") {
  HubServer server("127.0.0.1", 0, 16);
  server.start();
  server.hub().sync(BitString(16, 0xFFFF), 16);
  const auto r = run_network_client("127.0.0.1:" + std::to_string(server.port()), onemax(16, 3));
  CHECK(r.generations == 0);
  CHECK(r.converged);
  CHECK(r.final_fitness == 16);
}

TEST_CASE("unreachable hub fails after bounded retries") {
  std::uint16_t port;
  {
    HubServer s("127.0.0.1", 0, 8);
    s.start();
    port = s.port();
  }
  ClientOptions options;
  options.connect_attempts = 3;
  options.initial_backoff = std::chrono::milliseconds(1);
  CHECK_THROWS_AS((void)run_network_client("127.0.0.1:" + std::to_string(port), onemax(8, 0), options),
                  ProtocolError);
}

TEST_CASE("four network clients converge within 3x of lock-step") {
  EAConfig c = onemax(16, 5);
  const auto net = run_distributed({c, 4, DistMode::Network});
  CHECK(net.converged);
  double lock = 0;
  for (int i = 0; i < 200; ++i) lock += run_lockstep({onemax(16, 100 + i), 4}).total_evaluations;
  CHECK(net.total_evaluations <= 3 * lock / 200);
}

TEST_CASE("clients may leave and join while the hub runs") {
  HubServer server("127.0.0.1", 0, 12, true);
  server.start();
  const std::string address = "127.0.0.1:" + std::to_string(server.port());
  for (int wave = 0; wave < 3; ++wave) {
    std::vector<std::jthread> clients;
    for (int i = 0; i < 3; ++i) {
      clients.emplace_back([&, i] {
        ClientOptions o;
        o.client_index = wave * 3 + i;
        (void)run_network_client(address, onemax(12, 7), o);
      });
    }
  }
  const auto h = server.hub().history();
  CHECK(std::is_sorted(h.begin(), h.end()));
  CHECK(server.hub().best()->fitness == 12);
}

TEST_CASE("client resumes syncing after the hub restarts") {
  EAConfig c;
  c.problem = Problem::AllOnes;
  c.n = 20;
  c.schedule = MutationSchedule::inverse_length(20);
  c.seed = 11;
  c.max_iterations = 300000;

  auto first = std::make_unique<HubServer>("127.0.0.1", 0, 20);
  first->start();
  const std::uint16_t port = first->port();
  RunRecord record;
  std::jthread client([&] {
    ClientOptions o;
    o.reconnect_interval = 64;
    record = run_network_client("127.0.0.1:" + std::to_string(port), c, o);
  });
  while (!first->hub().best()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  first->stop();
  first.reset();
  HubServer second("127.0.0.1", port, 20);
  second.start();
  client.join();
  CHECK(record.generations == 300000);
  CHECK(second.hub().best().has_value());
  second.stop();
}
