#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace molsym {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double duration_ms = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1729;
  std::string only;  // substring filter; empty runs everything
};

/// Names of the built-in verification checks, in run order.
const std::vector<std::string>& builtin_check_names();

/// Run the built-in verification suite (all built-in specs; no input files).
std::vector<CheckResult> run_builtin_checks(const VerifyOptions& opts = {});

}  // namespace molsym
