// Copyright 2026 The densleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DENSLEAK_VERIFY_H_
#define DENSLEAK_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "densleak/probability.h"

namespace densleak {

// One property checked across many evaluations. `worst_margin` is the
// largest observed violation of the property (negative when every
// evaluation satisfied it with room to spare; an absolute error for
// equalities). The check passes when worst_margin <= tolerance.
struct OracleCheck {
  std::string name;
  double tolerance = 0.0;
  double worst_margin = 0.0;
  int evaluations = 0;
  bool passed = true;
};

struct OracleSuiteReport {
  std::uint64_t seed = 0;
  int trials = 0;
  bool passed = true;
  std::vector<OracleCheck> checks;
};

struct OracleSuiteOptions {
  std::uint64_t seed = 0;
  // Random kernels and random cost matrices drawn per reachable output.
  int trials = 200;
  std::size_t max_kernel_width = 6;
  std::size_t max_cost_width = 6;
  double bisection_tolerance = 1e-10;
};

// Cross-checks every closed form against its adversarial characterization on
// `model`: the risk-averse leakage identities, sampled and constructed
// guessing adversaries, cost-function equivalence in both directions,
// pre-processing closure, the maximal cost leakage candidate and the
// implied-bound conversions. Requires a full-support prior.
absl::StatusOr<OracleSuiteReport> RunOracleSuite(
    const JointModel& model, const OracleSuiteOptions& options);

}  // namespace densleak

#endif  // DENSLEAK_VERIFY_H_
