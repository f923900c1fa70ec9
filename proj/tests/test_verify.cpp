#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "dynr/verify.hpp"

using namespace dynr;

namespace {
VerificationConfig small(std::vector<std::string> suites, int samples = 10) {
  VerificationConfig c;
  c.suites = std::move(suites);
  c.samples = samples;
  return c;
}
}  // namespace

TEST_CASE("empty suite list gives no records") {
  const auto recs = run_suite(small({}));
  CHECK(recs.empty());
  CHECK(summarize(recs) == Summary{});
}

TEST_CASE("same seed, same records; other seed, other samples") {
  const auto a = run_suite(small({"rmatrix", "dybe"}));
  const auto b = run_suite(small({"rmatrix", "dybe"}));
  CHECK(a == b);
  auto c = small({"rmatrix", "dybe"});
  c.seed = 43;
  const auto d = run_suite(c);
  REQUIRE(d.size() == a.size());
  CHECK(d[0].params != a[0].params);
}

TEST_CASE("records do not depend on the thread count") {
  auto c = small({"all"}, 12);
  const auto one = run_suite(c);
  c.threads = 4;
  CHECK(run_suite(c) == one);
}

TEST_CASE("sample stream is keyed by seed, check and sample") {
  SampleRng a(1, "x", 0), b(1, "x", 0), c(1, "y", 0), d(1, "x", 1);
  const auto va = a.next();
  CHECK(va == b.next());
  CHECK(va != c.next());
  CHECK(va != d.next());
  SampleRng u(5, "cell", 3);
  const cplx tau(0.3, 0.9);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    const cplx z = u.in_cell(tau);
    const double v = z.imag() / tau.imag(), w = z.real() - v * tau.real();
    CHECK((v >= -0.5 && v < 0.5 && w >= -0.5 - 1e-12 && w < 0.5 + 1e-12));
  }
}

TEST_CASE("dybe suite: one record per sample, all passing") {
  const auto recs = run_suite(small({"dybe"}, 100));
  CHECK(recs.size() == 100);
  std::set<int> samples;
  for (const auto& r : recs) {
    samples.insert(r.sample);
    CHECK(r.suite == "dybe");
    CHECK(r.passed);
    CHECK(r.asserted);
    CHECK(r.residual <= r.tolerance);
    CHECK(r.params.count("z1") == 1);
    CHECK(r.params.count("lambda") == 1);
  }
  CHECK(samples.size() == 100);
}

TEST_CASE("summary counts are consistent") {
  const auto recs = run_suite(small({"all"}, 5));
  const Summary s = summarize(recs);
  CHECK(s.total == int(recs.size()));
  int passed = 0, failed = 0, skipped = 0, recorded = 0;
  for (const auto& r : recs) {
    if (r.skipped_singular) ++skipped;
    else if (!r.asserted) ++recorded;
    else if (r.passed) ++passed;
    else ++failed;
  }
  CHECK(s.passed == passed);
  CHECK(s.failed == failed);
  CHECK(s.skipped == skipped);
  CHECK(s.recorded == recorded);
  CHECK(s.passed + s.failed + s.skipped + s.recorded == s.total);
}

TEST_CASE("every suite produces records and check names are stable") {
  for (const auto& suite : known_suites()) {
    if (suite == "all") continue;
    const auto recs = run_suite(small({suite}, 3));
    CHECK_MESSAGE(!recs.empty(), suite);
    for (const auto& r : recs) CHECK(r.suite == suite);
  }
}

TEST_CASE("tolerance scales every check") {
  auto c = small({"theta"}, 4);
  const auto base = run_suite(c);
  c.tolerance = 1e-6;
  const auto loose = run_suite(c);
  REQUIRE(base.size() == loose.size());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(loose[i].tolerance == doctest::Approx(base[i].tolerance * 1e3));
}

TEST_CASE("report JSON round-trip") {
  auto c = small({"theta", "rmatrix"}, 3);
  c.report_path = "/tmp/x.json";
  const Report r = run_report(c);
  const std::string text = serialize(r);
  const Report back = parse_report(text);
  CHECK(back.records == r.records);
  CHECK(back.summary == r.summary);
  CHECK(back.config == r.config);
  CHECK(back.version == "1.0");
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"version", "config_echo", "records", "summary", "wall_time_ms"}) CHECK(j.contains(key));
  CHECK(j["records"][0].contains("residual"));
}

TEST_CASE("config validation names the invariant") {
  auto bad = [](auto mutate) {
    VerificationConfig c;
    mutate(c);
    try {
      c.validate();
    } catch (const ParameterError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(bad([](VerificationConfig& c) { c.tau = {0.3, 0.0}; }).find("tau") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.tau = {0.3, -1.0}; }).find("tau") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.samples = 0; }).find("samples") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.tolerance = -1.0; }).find("tol") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.suites = {"nope"}; }).find("nope") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.threads = 0; }).find("threads") != std::string::npos);
  CHECK(bad([](VerificationConfig& c) { c.orders.kernel_N = 0; }) != "");
  CHECK(bad([](VerificationConfig&) {}) == "");
}

TEST_CASE("default report directory follows the environment") {
  ::setenv("DYNR_REPORT_DIR", "/tmp/reports", 1);
  CHECK(default_report_dir() == std::optional<std::string>("/tmp/reports"));
  ::unsetenv("DYNR_REPORT_DIR");
  CHECK(!default_report_dir().has_value());
}
