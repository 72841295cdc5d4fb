#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hbopt {
namespace verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double metric = 0.0;  // the extremal residual/slack/error the check measured
  std::string detail;
};

// Sort-based projection against the enumeration oracle, idempotence,
// non-expansiveness, and the nearest-point variational inequality on random
// l1/l2 instances.
std::vector<CheckResult> run_projection_suite(uint64_t seed, int instances = 500,
                                              int vi_samples = 1000);

// Momentum-reformulation identities on random box-constrained problems:
// time-varying, constant-beta in {0, 0.5, 0.9}, adaptive with gamma in
// {0.1, 0.5, 1}. The problem generator keeps the reformulated walk strictly
// feasible, the regime where the identities are exact.
std::vector<CheckResult> run_identity_suite(uint64_t seed, int problems = 50, long steps = 1000);

// EMA second-moment properties on random adaptive runs: the normalized
// squared-gradient sum bound and per-coordinate monotonicity of sqrt(t v).
std::vector<CheckResult> run_ema_suite(uint64_t seed, int problems = 10, long steps = 1000);

// Rate-fit sanity on synthetic gap sequences with known exponents.
std::vector<CheckResult> run_rate_suite(uint64_t seed);

std::vector<CheckResult> run_all(uint64_t seed);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace verify
}  // namespace hbopt
