// Drives the cogrowth binary and checks outputs and exit codes.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(COGROWTH_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string body(const std::string& out) {
  std::istringstream in(out);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') kept += line + "\n";
  return kept;
}

}  // namespace

TEST_CASE("series z2 prints squared binomials") {
  const auto r = run("series z2 --max-len 8");
  CHECK(r.code == 0);
  CHECK(r.out.find("# config {") != std::string::npos);
  CHECK(body(r.out) == "n,cogrowth,returns\n0,1,1\n1,0,0\n2,0,4\n3,0,0\n4,8,36\n5,0,0\n6,40,400\n7,0,0\n8,312,4900\n");
}

TEST_CASE("series thompson reaches the first relators") {
  const auto r = run("series thompson --max-len 16");
  CHECK(r.code == 0);
  for (const char* row : {"\n10,20,", "\n12,64,", "\n14,336,", "\n16,1160,"}) CHECK(r.out.find(row) != std::string::npos);
}

TEST_CASE("free group bound is zero") {
  const auto r = run("bound f2 --vertices 2000 --per-decade 5");
  CHECK(r.code == 0);
  CHECK(body(r.out).find("\n2000,") != std::string::npos);
  CHECK(body(r.out).find(",0,0,0,0\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("series nosuchgroup").code == 2);
  CHECK(run("series").code == 2);
  CHECK(run("bound z2 --vertices 1.5").code == 2);
  CHECK(run("flatperm bs:1:2 --max-len 4 --tours 10").code == 2);
  CHECK(run("bound z2 --vertices 5000 --max-vertices 1000").code == 3);
  CHECK(run("series f2 --max-len 30 --max-vertices 1000").code == 3);
  CHECK(run("bound z2 --vertices 5000 --max-iterations 2 --per-decade 1").code == 4);
  CHECK(run("--help").code == 0);
}

TEST_CASE("saved configs replay to identical output") {
  const auto first = run("series bs:1:2 --max-len 10");
  REQUIRE(first.code == 0);
  const auto pos = first.out.find("# config ") + 9;
  const auto config = first.out.substr(pos, first.out.find('\n', pos) - pos);
  {
    std::ofstream f("replay_config.json");
    f << config;
  }
  const auto again = run("replay replay_config.json");
  CHECK(again.code == 0);
  CHECK(again.out == first.out);
  CHECK(run("replay no_such_file.json").code == 2);
}

TEST_CASE("flatperm and escape produce tables") {
  const auto f = run("flatperm z2 --max-len 4 --tours 1e3 --seed 3");
  CHECK(f.code == 0);
  CHECK(body(f.out).rfind("n,l,weight_sum,visits,c_hat,std_error,normalized\n", 0) == 0);
  CHECK(f.out == run("flatperm z2 --max-len 4 --tours 1e3 --seed 3").out);
  const auto e = run("escape zwrz --words 16 --len 1024");
  CHECK(e.code == 0);
  CHECK(e.out.find("# fit n>=") != std::string::npos);
}

TEST_CASE("extrapolate a synthetic ladder") {
  {
    std::ofstream f("synthetic_ladder.csv");
    f << std::setprecision(17) << "N,alpha_N_rayleigh\n";
    for (double n = 100; n < 1e7; n *= 1.5) f << n << ',' << 3.0 - 2.0 / std::log(n) << '\n';
  }
  const auto r = run("extrapolate synthetic_ladder.csv --delta-lo 0.5 --delta-hi 2 --delta-step 0.5");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("fit").at("delta").get<double>() == doctest::Approx(1.0));
  CHECK(std::abs(j.at("fit").at("alpha_inf").get<double>() - 3.0) < 1e-9);
}

TEST_CASE("metric check") {
  const auto r = run("metric-check thompson --radius 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("# mismatches 0") != std::string::npos);
  CHECK(run("metric-check bs:1:2 --radius 3").code == 2);
}
