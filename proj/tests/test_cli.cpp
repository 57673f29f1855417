#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run_cli(const std::string& args) {
  const std::string cmd = std::string(BLADE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "blade_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("markov prints matrix, spectrum and steps") {
  const auto r = run_cli("markov --problem allones --n 2 --variant baseline --mu 0.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("state,00,01,10,11") != std::string::npos);
  CHECK(r.out.find("2,0.7500000000,0.0000000000,0.7500000000") != std::string::npos);
  CHECK(r.out.find("0.001,24") != std::string::npos);
}

TEST_CASE("bound prints the three bounds") {
  const auto r = run_cli("bound --problem leadingones --n 2 --mu 0.5 --clients 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("bound_single,6\n") != std::string::npos);
  CHECK(r.out.find("bound_distributed,3.619048\n") != std::string::npos);
  CHECK(r.out.find("bound_simplified,5\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("frobnicate").code == 1);
  CHECK(run_cli("run --bogus").code == 1);
  CHECK(run_cli("markov --n 11").code == 2);
  CHECK(run_cli("run --problem trap").code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("run is deterministic and honours the seed variable") {
  const auto a = run_cli("run --problem onemax --n 16 --seed 4");
  const auto b = run_cli("run --problem onemax --n 16 --seed 4");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto env = run_cli("run --problem onemax --n 16 --seed 4");
  const auto via_env = [] {
    setenv("BLADE_SEED", "4", 1);
    auto r = run_cli("run --problem onemax --n 16");
    setenv("BLADE_SEED", "9", 1);
    auto flag = run_cli("run --problem onemax --n 16 --seed 4");
    unsetenv("BLADE_SEED");
    return std::pair{r, flag};
  }();
  CHECK(via_env.first.out == env.out);
  CHECK(via_env.second.out == env.out);
  const auto dist = run_cli("run --problem onemax --n 16 --clients 4 --seed 2");
  CHECK(dist.code == 0);
  CHECK(dist.out.find("onemax,baseline,static:0.0625,16,4,2,") != std::string::npos);
}

TEST_CASE("sweep, ratio and plot pipeline") {
  const auto csv = scratch("sweep.csv");
  const auto csv2 = scratch("sweep2.csv");
  const std::string args = "sweep --problem onemax --n-min 4 --n-max 12 --n-step 4 --variants baseline,blade "
                           "--clients 1,2 --runs 30 --seed 42 --out ";
  REQUIRE(run_cli(args + csv.string()).code == 0);
  REQUIRE(run_cli(args + csv2.string()).code == 0);
  const auto text = slurp(csv);
  CHECK(text == slurp(csv2));
  CHECK(text.starts_with("problem,variant,schedule,n,clients,runs,mean_generations"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);

  const auto ratio = run_cli("ratio " + csv.string());
  CHECK(ratio.code == 0);
  CHECK(std::count(ratio.out.begin(), ratio.out.end(), '\n') == 7);

  const auto svg = scratch("chart.svg");
  const auto svg2 = scratch("chart2.svg");
  CHECK(run_cli("plot " + csv.string() + " --out " + svg.string()).code == 0);
  CHECK(run_cli("plot " + csv2.string() + " --out " + svg2.string()).code == 0);
  CHECK(slurp(svg) == slurp(svg2));
  CHECK(run_cli("plot " + csv.string() + " --mode ratio --log-y --out " + svg.string()).code == 0);
}

TEST_CASE("plot rejects a malformed csv with exit 2") {
  const auto bad = scratch("bad.csv");
  std::ofstream(bad) << "problem,variant\nx,y\n";
  CHECK(run_cli("plot " + bad.string() + " --out " + scratch("x.svg").string()).code == 2);
}

TEST_CASE("sweep reports capacity errors per cell") {
  const auto r = run_cli("sweep --problem allones --n-min 12 --n-max 13 --variants baseline --runs 3");
  CHECK(r.code == 2);
  CHECK(r.out.find("allones,baseline,static:0.0769231,13,1,3,error") != std::string::npos);
}
