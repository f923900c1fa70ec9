#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynr/common.hpp"

namespace dynr {

struct TruncationOrders {
  int laurent = 24;
  int jet = 8;
  int kernel_N = 12;
  friend bool operator==(const TruncationOrders&, const TruncationOrders&) = default;
};

/// Suite labels: theta, series, kernels, rmatrix, dybe, rll, det, gauge, all.
struct VerificationConfig {
  cplx tau{0.0, 0.75};
  cplx gamma{0.05, 0.0};
  std::vector<std::string> suites{"all"};
  int samples = 100;
  std::uint64_t seed = 42;
  /// Base tolerance. Every check has a nominal tolerance at base 1e-9 and is scaled by tolerance / 1e-9.
  double tolerance = 1e-9;
  TruncationOrders orders;
  std::optional<std::string> report_path;
  int threads = 1;

  /// Throws ParameterError naming the violated invariant.
  void validate() const;
  friend bool operator==(const VerificationConfig&, const VerificationConfig&) = default;
};

const std::vector<std::string>& known_suites();

struct VerificationRecord {
  std::string suite;
  std::string check_name;
  int sample = 0;
  std::map<std::string, cplx> params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped_singular = false;
  /// false for exploratory checks whose outcome is recorded but does not decide the exit status
  bool asserted = true;
  std::map<std::string, cplx> observed;
  std::string note;
  friend bool operator==(const VerificationRecord&, const VerificationRecord&) = default;
};

struct Summary {
  int total = 0, passed = 0, failed = 0, skipped = 0, recorded = 0;
  friend bool operator==(const Summary&, const Summary&) = default;
};

struct Report {
  std::string version = "1.0";
  VerificationConfig config;
  std::vector<VerificationRecord> records;
  Summary summary;
  std::int64_t wall_time_ms = 0;
  friend bool operator==(const Report&, const Report&) = default;
};

/// Failed counts only asserted, non-skipped records; recorded counts the exploratory ones.
Summary summarize(const std::vector<VerificationRecord>& records);

/// Deterministic for a fixed config (independent of the thread count).
std::vector<VerificationRecord> run_suite(const VerificationConfig& config);

Report run_report(const VerificationConfig& config);

/// Deterministic uniform stream keyed by (seed, check, sample).
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, const std::string& check, int sample);
  std::uint64_t next();
  double uniform();                       ///< [0, 1)
  double uniform(double a, double b);
  cplx in_cell(cplx tau);                 ///< u + v tau, u, v in [-1/2, 1/2)

 private:
  std::uint64_t state_;
};

void to_json(nlohmann::json& j, const VerificationConfig& c);
void from_json(const nlohmann::json& j, VerificationConfig& c);
void to_json(nlohmann::json& j, const VerificationRecord& r);
void from_json(const nlohmann::json& j, VerificationRecord& r);
void to_json(nlohmann::json& j, const Summary& s);
void from_json(const nlohmann::json& j, Summary& s);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// Pretty JSON text of the report.
std::string serialize(const Report& r);
Report parse_report(const std::string& text);

/// Directory for reports when no path is given: $DYNR_REPORT_DIR, if set.
std::optional<std::string> default_report_dir();

}  // namespace dynr
