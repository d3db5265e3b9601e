#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "commcalc/limits.hpp"

namespace commcalc::cli {

enum class Verdict { Pass, Fail, Unstable };
std::string toString(Verdict v);

struct VerifyConfig {
  std::uint64_t seed = 20240517;
  /// Truncation override; checks needing a larger q report "unstable".
  std::optional<int> q;
  Limits limits = defaultLimits();
  /// Per-check wall-time limits in seconds, keyed by check id.
  std::map<std::string, double> timeouts;
  /// Restrict the run to these ids; empty runs everything.
  std::vector<std::string> only;

  static VerifyConfig fromJson(const nlohmann::json& j);
  static VerifyConfig load(const std::string& path);
  nlohmann::json toJson() const;
};

struct CheckResult {
  std::string id;
  std::string claim;
  nlohmann::json parameters = nlohmann::json::object();
  Verdict verdict = Verdict::Pass;
  /// Stabilization flag; null for checks without a truncation parameter.
  std::optional<bool> stable;
  double seconds = 0;
  double limitSeconds = 0;
  std::vector<std::string> notes;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool allPass() const;
  bool anyFail() const;
  nlohmann::json toJson() const;
};

struct CheckInfo {
  std::string id;
  std::string claim;
  double defaultLimit;
  int requiredQ;
};

/// The registered checks in acceptance order.
const std::vector<CheckInfo>& checkCatalog();

/// Runs the selected checks; `progress` is called after each one.
VerificationReport runVerify(const VerifyConfig& config,
                             const std::function<void(const CheckResult&)>& progress = {});

}  // namespace commcalc::cli
