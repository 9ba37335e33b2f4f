#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace expt {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Run only the named checks; empty runs all of them.
  std::vector<std::string> only;
  std::uint64_t seed = 20240611;
  int threads = 0;
};

struct CheckInfo {
  int id;
  std::string name;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// The acceptance checks in order: disk, annulus, ellipse,
/// bernoulli-moments, bernoulli-cauchy, bernoulli-exp, appell-f2,
/// resultants, pushforward, principal-factor, rationality, rose,
/// quadrature-identity.
const std::vector<CheckInfo>& acceptance_checks();

/// Throws Error for unknown names in opts.only.
std::vector<CheckResult> run_verify(const VerifyOptions& opts);

/// "PASS  1 disk  (0.12 s)  detail" lines.
std::string format_result(const CheckResult& r);

}  // namespace expt
