#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const char* exe = std::getenv("DYNR_CLI_PATH");
  REQUIRE_MESSAGE(exe != nullptr, "DYNR_CLI_PATH must point at the dynr executable");
  const std::string out = "/tmp/dynr_cli_test.out", err = "/tmp/dynr_cli_test.err";
  const std::string cmd = std::string(exe) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

Eigen::Matrix4cd matrix_of(const std::string& text) {
  std::istringstream in(text);
  Eigen::Matrix4cd m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double re = 0, im = 0;
      in >> re >> im;
      m(i, j) = {re, im};
    }
  REQUIRE(!in.fail());
  return m;
}

// "key value" lines, skipping comments
std::map<std::string, double> keyed(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    double v = 0;
    if (ls >> key >> v) out[key] = v;
  }
  return out;
}

}  // namespace

TEST_CASE("verify on a passing suite exits 0 and prints a report") {
  const Run r = run("verify --suite theta --samples 5");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(j["summary"]["total"] == 21);
  CHECK(j["config_echo"]["samples"] == 5);
}

TEST_CASE("verify is deterministic and writes the report file") {
  const std::string path = "/tmp/dynr_cli_report.json";
  std::remove(path.c_str());
  const Run a = run("verify --suite theta,dybe --samples 4 --seed 7 --report " + path);
  CHECK(a.code == 0);
  auto ja = nlohmann::json::parse(slurp(path));
  const Run b = run("verify --suite theta,dybe --samples 4 --seed 7 --threads 3");
  auto jb = nlohmann::json::parse(b.out);
  CHECK(ja["records"] == jb["records"]);
}

TEST_CASE("a failing asserted check exits 1") {
  // the series suite contains a literal check that does not hold
  const Run r = run("verify --suite series --samples 3");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["summary"]["failed"].get<int>() > 0);
}

TEST_CASE("invalid parameters exit 2 with a message") {
  Run r = run("verify --tau 0.5");
  CHECK(r.code == 2);
  CHECK(r.err.find("tau") != std::string::npos);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("verify --samples 0").code == 2);
  CHECK(run("eval --kind rzzz").code == 2);
  CHECK(run("--no-such-flag").code == 2);
  CHECK(run("eval --z notanumber").code == 2);
}

TEST_CASE("eval prints the 4x4 matrix; gamma = 0 gives the identity") {
  for (const char* kind : {"rminus", "rplus", "rbar"}) {
    const Run r = run(std::string("eval --kind ") + kind + " --z 0.31 --lambda 0.17+0.05i --gamma 0");
    CHECK(r.code == 0);
    CHECK(matrix_of(r.out).isApprox(Eigen::Matrix4cd::Identity()));
  }
}

TEST_CASE("eval: R+ output inverts R- output") {
  const std::string at = " --z 0.31 --lambda 0.17+0.05i --gamma 0.02";
  const Eigen::Matrix4cd m = matrix_of(run("eval --kind rminus" + at).out);
  const Eigen::Matrix4cd p = matrix_of(run("eval --kind rplus" + at).out);
  CHECK((p * m - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eval: classical r shows the antisymmetric pattern") {
  const Eigen::Matrix4cd r = matrix_of(run("eval --kind classical --z 0.3 --lambda 0.2").out);
  const Eigen::Matrix4cd s = matrix_of(run("eval --kind classical --z -0.3 --lambda 0.2").out);
  // r(z) = -P r(-z) P: the diagonal flips sign, the off-diagonal pair swaps with a sign
  CHECK(std::abs(r(0, 0) + s(0, 0)) < 1e-12);
  CHECK(std::abs(r(1, 1) + s(2, 2)) < 1e-12);
  CHECK(std::abs(r(1, 2) + s(2, 1)) < 1e-12);
  CHECK(std::abs(r(2, 1) + s(1, 2)) < 1e-12);
}

TEST_CASE("eval at a singular point names the vanishing factor") {
  const Run r = run("eval --kind rminus --z 0 --lambda 0.3");
  CHECK(r.code == 1);
  CHECK(r.err.find("theta(z)") != std::string::npos);
}

TEST_CASE("kernels: generic lambda passes, near-lattice lambda reports conditioning") {
  Run r = run("kernels --lambda 0.3+0.1i --order 6");
  CHECK(r.code == 0);
  CHECK(r.out.find("duality_deviation") != std::string::npos);
  r = run("kernels --lambda 1e-7 --order 6");
  CHECK(r.code == 1);
  CHECK(r.err.find("condition number") != std::string::npos);
  CHECK(run("kernels --sector zero --order 6").code == 0);
}

TEST_CASE("kernels: order 1 and order 12") {
  auto k1 = keyed(run("kernels --order 1").out);
  CHECK(k1.at("duality_deviation") < 1e-12);
  auto k12 = keyed(run("kernels --order 12 --lambda 0.3+0.1i").out);
  CHECK(k12.at("kernel_sum_residual") < 1e-8);
  CHECK(k12.at("duality_deviation") < 1e-8);
  CHECK(run("kernels --order 0").code == 1);
}

TEST_CASE("series subcommands") {
  Run r = run("series phi --order 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("\n0 1 0 0\n") != std::string::npos);

  r = run("series shift-identity --order 8");
  CHECK(r.code == 0);
  const auto res = keyed(r.out);
  CHECK(res.size() == 9);
  for (const auto& [order, v] : res) CHECK(v < 1e-9);

  r = run("series fk --p 1 --order 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("closed") != std::string::npos);
  CHECK(keyed(r.out).at("series_vs_closed_forward") < 1e-9);

  CHECK(run("series a --order 4").code == 0);
  CHECK(run("series fk --zeta 0").code == 1);
  CHECK(run("series phi --order -1").code == 2);
}
