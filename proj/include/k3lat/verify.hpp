#pragma once

// The built-in verification pipeline behind `k3lat verify-all`.

#include <json.hpp>

#include <string>
#include <vector>

namespace k3lat {

inline constexpr const char* kVersion = "0.1.0";

struct CheckResult {
  std::string id;      ///< unique, report is ordered by id
  std::string anchor;  ///< the statement being checked
  bool passed = false;
  nlohmann::json values = nlohmann::json::object();
};

struct VerificationReport {
  std::string version = kVersion;
  std::string timestamp;  ///< UTC, ISO 8601; not part of the deterministic body
  std::vector<CheckResult> checks;

  bool all_passed() const;
  std::vector<const CheckResult*> failures() const;

  /// Exact integers are serialized as strings. The timestamp is included
  /// only on request so that two runs compare byte for byte.
  nlohmann::json to_json(bool with_timestamp = true) const;
  std::string to_text() const;
};

struct VerifyOptions {
  /// Test hook: alters one entry of the Neron-Severi Gram matrix before the
  /// determinant check.
  bool perturb_gram = false;
};

VerificationReport run_verify_all(const VerifyOptions& options = {});

}  // namespace k3lat
