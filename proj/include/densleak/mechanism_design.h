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

#ifndef DENSLEAK_MECHANISM_DESIGN_H_
#define DENSLEAK_MECHANISM_DESIGN_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <string>

#include "absl/status/statusor.h"
#include "densleak/probability.h"

namespace densleak {

struct DesignSpec {
  Pmf prior;
  double eps_u = 0.0;
  // +inf means no explicit lower-bound constraint.
  double eps_l = std::numeric_limits<double>::infinity();
};

// Square mechanism maximizing sub-convex utilities under eps_u-PML in the
// high-privacy regime (and under (eps_l, eps_u)-ALIP whenever eps_l is at
// least the implied lower bound):
//
//   P(y_j | x_i) = 1 - e^{eps_u} (1 - P_X(x_i))   if i == j
//                  e^{eps_u} P_X(x_j)             otherwise
//
// Output y_j is paired with input x_j. Every entry is strictly positive.
absl::StatusOr<StochasticMatrix> OptimalHighPrivacyMechanism(
    const DesignSpec& spec);

// 2x2 randomized response keeping the input with probability
// e^eps / (1 + e^eps).
absl::StatusOr<StochasticMatrix> BinaryRandomizedResponse(double eps_ldp);

// sum_{x,y} P_X(x) P(y|x) gain(x, y).
absl::StatusOr<double> ExpectedUtility(const Pmf& prior,
                                       const StochasticMatrix& mechanism,
                                       const Matrix& gain);

// Expected gain after assigning each output y its best gain column k:
//   sum_y max_k sum_x P_X(x) P(y|x) gain(x, k).
// Invariant under relabeling (and merging) of outputs. `gain` is N x K.
absl::StatusOr<double> RelabeledExpectedUtility(const Pmf& prior,
                                                const StochasticMatrix& mechanism,
                                                const Matrix& gain);

struct UtilityFunctional {
  std::string name;
  std::function<absl::StatusOr<double>(const Pmf&, const StochasticMatrix&)>
      evaluate;
};

UtilityFunctional ExpectedGainUtility(Matrix gain);
UtilityFunctional RelabeledGainUtility(Matrix gain);

struct GridSearchResult {
  StochasticMatrix mechanism;
  double utility = 0.0;
  std::size_t feasible_points = 0;
  std::size_t total_points = 0;
};

// Exhaustive search over square N x N mechanisms whose rows lie on the
// simplex grid {k / resolution}. A grid point is feasible when its audited
// information densities satisfy -eps_l - 1e-9 <= i(x;y) <= eps_u + 1e-9 on
// every reachable output. Returns the feasible point with the largest
// expected gain; ties go to the lexicographically smallest matrix.
//
// N = 2 requires resolution >= 100. N = 3 accepts any resolution >= 1 but is
// meant for coarse grids.
absl::StatusOr<GridSearchResult> BruteForceBestMechanism(
    const Pmf& prior, double eps_l, double eps_u, const Matrix& gain,
    int grid_resolution);

}  // namespace densleak

#endif  // DENSLEAK_MECHANISM_DESIGN_H_
