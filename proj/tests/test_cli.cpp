#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout captured to a file and stderr discarded.
Run cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / ("onbuy_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter++));
  const std::string cmd = env + " " + ONBUY_CLI + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream s;
  s << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, s.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("thresholds") {
  const auto a = cli("thresholds --k 1 --N 3");
  CHECK(a.code == 0);
  CHECK(a.out.find("\n1,1,0.5\n") != std::string::npos);
  const auto b = cli("thresholds --k 2 --N 2");
  CHECK(b.code == 0);
  CHECK(b.out.find("\n2,2,1\n") != std::string::npos);
  CHECK(cli("thresholds --k 3 --N 2").code == 2);
  CHECK(cli("thresholds --k 1").code == 2);
  CHECK(cli("thresholds --k 1 --N 10 --density -1").code == 2);
}

TEST_CASE("constants") {
  const auto r = cli("constants --k-max 3 --r-max 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("c,1,2\n") != std::string::npos);
  CHECK(r.out.find("d,4,0.222222222222222") != std::string::npos);
}

TEST_CASE("lowerbound") {
  CHECK(cli("lowerbound --n 5").code == 2);
  const auto r = cli("lowerbound --n 200");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["objective"].get<double>() >= 2.499);
  CHECK(j["residual"].get<double>() <= 1e-9);
}

TEST_CASE("simulate") {
  const fs::path dir = fs::temp_directory_path() / ("onbuy_sim_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
  const std::string flags = "simulate --structure triangle --n 300 --order aom:vertex-sweep --trials 6 --seed 7 --out ";
  CHECK(cli(flags + a, "ONBUY_THREADS=1").code == 0);
  CHECK(cli(flags + b, "ONBUY_THREADS=4").code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(nlohmann::json::parse(slurp(dir / "a.json"))["config"]["order"] == "aom:vertex-sweep");
  fs::remove_all(dir);
}

TEST_CASE("configuration errors exit 2") {
  CHECK(cli("simulate --structure triangle --n 300 --order aom").code == 2);
  CHECK(cli("simulate --structure nonesuch --n 300").code == 2);
  CHECK(cli("simulate --structure triangle --n 300 --param ell").code == 2);
  CHECK(cli("simulate --structure triangle --n 300 --param colour=red").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("report") {
  const auto r = cli("report --structure bipartite-pm --n 80 --trials 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("upper 4 c_3") != std::string::npos);
}

TEST_CASE("selftest") {
  const auto ok = cli("selftest");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS rho monotonicity") != std::string::npos);
  const auto bad = cli("selftest --inject-fault rho");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL rho monotonicity") != std::string::npos);
}

}
