#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gcache_cli/cli.hpp"
#include "oracles.hpp"

using namespace gcache;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("params reports the headline numbers") {
  const auto r = run({"params", "--K", "100", "--L", "5", "--gamma", "1/10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"S_L\": \"190\"") != std::string::npos);
  CHECK(r.out.find("\"theoretical_dof\": 15") != std::string::npos);
  CHECK(r.out.find("\"S_1\": \"" + oracle::pascal(100, 10).str() + "\"") != std::string::npos);

  const auto example = run({"params", "--K", "50", "--L", "5", "--gamma", "3/10", "--format", "csv"});
  REQUIRE(example.code == 0);
  CHECK(example.out.find("S_L,120\r\n") != std::string::npos);
  CHECK(example.out.find("theoretical_dof,20\r\n") != std::string::npos);

  const auto none = run({"params", "--K", "10", "--L", "2", "--gamma", "0"});
  REQUIRE(none.code == 0);
  CHECK(none.out.find("\"S_L\": \"1\"") != std::string::npos);
  CHECK(none.out.find("\"theoretical_dof\": 2") != std::string::npos);
}

TEST_CASE("sweep rows follow the effective_K search") {
  const auto r = run({"sweep", "--gamma", "1/20,1/100", "--smax", "1e6"});
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "K,gamma,L,S_max,K_bar_L,G_bar_L,d_bar_L\r\n"
        "unbounded,1/20,1,1000000,60,3,4\r\n"
        "unbounded,1/100,1,1000000,200,2,3\r\n");
  // Huge S_max: the effective gain reaches K gamma.
  const auto big = run({"sweep", "--K", "100", "--gamma", "1/10", "--L", "2", "--smax", "1e300"});
  REQUIRE(big.code == 0);
  CHECK(big.out.find("100,1/10,2,1" + std::string(300, '0') + ",100,10,12\r\n") != std::string::npos);
}

TEST_CASE("sweep output is byte-identical across runs and worker counts") {
  const std::vector<std::string> base{"sweep", "--k-range", "20:400:20", "--gamma", "1/20,1/10",
                                      "--L", "1,2,4", "--smax", "3.6e4;1e6;1e9"};
  auto a = base;
  a.insert(a.end(), {"--out", "cli_sweep_a.csv"});
  auto b = base;
  b.insert(b.end(), {"--out", "cli_sweep_b.csv", "--workers", "3"});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  const std::string x = read_file("cli_sweep_a.csv");
  CHECK(!x.empty());
  CHECK(x == read_file("cli_sweep_b.csv"));
  std::remove("cli_sweep_a.csv");
  std::remove("cli_sweep_b.csv");
}

TEST_CASE("simulate prints a summary and passes") {
  const auto r = run({"simulate", "--K", "50", "--L", "5", "--gamma", "3/10", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("210 transmissions, delay 7/4 (expected 7/4), dof 20") != std::string::npos);
  const auto csv = run({"simulate", "--K", "6", "--L", "2", "--gamma", "1/3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("user,requested_file,subfiles_recovered,max_error\r\n", 0) == 0);
  const auto noisy = run({"simulate", "--K", "6", "--L", "2", "--gamma", "1/3", "--snr-db", "20"});
  CHECK(noisy.code == 0);
}

TEST_CASE("ms-plan and ic-simulate") {
  const auto ms = run({"ms-plan", "--K", "7", "--L", "2", "--gamma", "2/7"});
  REQUIRE(ms.code == 0);
  CHECK(ms.out.find("\"p\": \"6/7\"") != std::string::npos);
  CHECK(ms.out.find("\"exact_delay\": \"29/21\"") != std::string::npos);
  CHECK(ms.out.find("\"gap_bound\": \"2\"") != std::string::npos);
  CHECK(ms.out.find("\"within_gap_bound\": true") != std::string::npos);

  const auto ic = run({"ic-simulate", "--kt", "3", "--mt", "2", "--library-n", "3", "--K", "6", "--gamma", "1/3"});
  REQUIRE(ic.code == 0);
  CHECK(ic.err.find("emulated L=2") != std::string::npos);
  CHECK(ic.err.find("dof 4") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"params", "--K", "10", "--gamma", "3/2"}).code == 2);
  CHECK(run({"simulate", "--K", "7", "--L", "2", "--gamma", "2/7"}).code == 2);
  CHECK(run({"ic-simulate", "--kt", "3", "--mt", "2", "--library-n", "4", "--K", "6", "--gamma", "1/3"}).code == 2);
  CHECK(run({"nope"}).code == 2);
  CHECK(run({"simulate", "--K", "4", "--gamma", "1/2", "--snr-db", "10", "--noiseless"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file values yield to flags") {
  {
    std::ofstream f("cli_config.toml");
    f << "K = 50\nL = 5\ngamma = \"3/10\"\n";
  }
  const auto from_file = run({"params", "--config", "cli_config.toml"});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("\"K\": 50") != std::string::npos);
  const auto overridden = run({"params", "--config", "cli_config.toml", "--L", "10"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("\"L\": 10") != std::string::npos);
  CHECK(overridden.out.find("\"K\": 50") != std::string::npos);
  std::remove("cli_config.toml");
}
