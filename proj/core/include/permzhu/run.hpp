#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "permzhu/weight.hpp"

namespace permzhu {

// Raised for invalid configuration (maps to the usage exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct RunConfig {
  std::string algebra = "fermion";
  int k = 0;
  std::vector<int> cycles;  // defaults to the single k-cycle
  bool has_cutoff = false;
  Weight cutoff;      // N
  bool has_gen_cutoff = false;
  Weight gen_cutoff;  // W_gen
  std::vector<std::string> checks;  // verify: subset of the known check names
  std::string out_path;
  std::string cache_dir;
  int threads = 0;

  void validate_and_default(bool need_k = true);
};

struct RunResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 success, 1 verification failure, 2 usage error
};

// Quotient dimensions, structure constants, a_j list, stabilization flags.
RunResult run_compute(RunConfig config);

// Theorem checks: well-definedness, homomorphism, iso matrix, corollary for
// composite cycle types, optional conjugation sweep.  Exit 0 iff all pass.
RunResult run_verify(RunConfig config);

// The serialized report: "meta" (timing, cache traffic) is volatile; the
// rest is byte-deterministic for a fixed config.
std::string render_report(const nlohmann::ordered_json& report);

}  // namespace permzhu
