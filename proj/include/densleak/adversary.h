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

// Risk-averse adversaries. An adversary either guesses a randomized function
// U of X (kernel P_{U|X}, Markov chain U - X - Y) and is scored by its error
// probability, or picks an action w minimizing an expected cost c(X, w).
// Leakage to such an adversary compares its best prior and best posterior
// performance:
//
//   Lambda_U(X -> y) = log (1 - max_u P_U(u)) / (1 - max_u P_{U|Y=y}(u))
//   Lambda_c(X -> y) = log min_w E[c(X,w)] / min_w E[c(X,w) | Y=y]
//
// Both are bounded by max_x log P_X(x) / P_{X|Y=y}(x), and the bound is
// attained. The constructions below realize each side explicitly.
//
// Conventions: 0/0 gives 0 and a positive numerator over zero gives +inf.
// Argmax/argmin ties resolve to the lowest index.

#ifndef DENSLEAK_ADVERSARY_H_
#define DENSLEAK_ADVERSARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "densleak/probability.h"

namespace densleak {

// Row-stochastic kernel P_{U|X} with N rows and K >= 1 columns.
class FunctionKernel {
 public:
  static absl::StatusOr<FunctionKernel> Create(StochasticMatrix kernel);
  static absl::StatusOr<FunctionKernel> Create(
      const std::vector<std::vector<double>>& rows);
  static FunctionKernel Identity(std::size_t n);
  static FunctionKernel Constant(std::size_t n);

  const StochasticMatrix& kernel() const { return kernel_; }
  std::size_t num_inputs() const { return kernel_.rows(); }
  std::size_t num_values() const { return kernel_.cols(); }

 private:
  explicit FunctionKernel(StochasticMatrix kernel)
      : kernel_(std::move(kernel)) {}
  StochasticMatrix kernel_;
};

// Nonnegative cost c(x, w), N rows over X and W columns over actions.
class CostMatrix {
 public:
  static absl::StatusOr<CostMatrix> Create(Matrix entries);
  static absl::StatusOr<CostMatrix> Create(
      const std::vector<std::vector<double>>& rows);

  const Matrix& entries() const { return entries_; }
  std::size_t num_inputs() const { return entries_.rows(); }
  std::size_t num_actions() const { return entries_.cols(); }
  double operator()(std::size_t x, std::size_t w) const {
    return entries_(x, w);
  }

  // All entries in [0, 1].
  bool is_normalized() const;
  // Divides by the largest entry; an all-zero cost is returned unchanged.
  CostMatrix Normalized() const;

 private:
  explicit CostMatrix(Matrix entries) : entries_(std::move(entries)) {}
  Matrix entries_;
};

absl::StatusOr<double> LambdaU(const JointModel& model,
                               const FunctionKernel& kernel, std::size_t y);

// max_x log P_X(x) / P_{X|Y=y}(x), evaluated as -min_x i(x;y) so it agrees
// bitwise with RiskAverseLeakage().
absl::StatusOr<double> LambdaSupAnalytic(const JointModel& model,
                                         std::size_t y);

struct WAchiever {
  FunctionKernel kernel;
  std::size_t x_star = 0;
  std::size_t k = 0;
  std::size_t min_valid_k = 0;
};

// Smallest k for which output k+1 of the two-stage construction
//   V = 1{X != x*},  W | V=0 ~ Uniform{1..k},  W | V=1 = k+1
// is a most likely value both a priori and given y.
absl::StatusOr<std::size_t> MinimalAchieverK(const JointModel& model,
                                             std::size_t y);

// Builds the kernel P_{W|X} (k+1 columns) whose LambdaU equals
// LambdaSupAnalytic. x* is the lowest-index maximizer of the prior to
// posterior ratio. Fails if k is below MinimalAchieverK().
absl::StatusOr<WAchiever> ConstructWAchiever(const JointModel& model,
                                             std::size_t y, std::size_t k);

absl::StatusOr<double> LambdaC(const JointModel& model, const CostMatrix& cost,
                               std::size_t y);

// c_U(x, u) = 1 - P_{U|X=x}(u). LambdaC of the result equals LambdaU.
CostMatrix CostFromFunction(const FunctionKernel& kernel);

// Limit (k -> infinity) form of the mixture U_delta of the two kernels
//   S | X=x: c(x,w_S)/k on 1..k, 1 - c(x,w_S) on k+1
//   T | X=x: c(x,w_T)/k on 1..k, 1 - c(x,w_T) on k+1
// where w_S is the prior-optimal and w_T the posterior-optimal action.
struct MixtureDescriptor {
  std::size_t w_s = 0;
  std::size_t w_t = 0;
  double delta = 0.0;
  // m(x) = delta c(x,w_S) + (1 - delta) c(x,w_T), normalized cost.
  std::vector<double> mixed_cost;

  // Finite-k kernel of U_delta (k + 1 columns).
  absl::StatusOr<FunctionKernel> Materialize(std::size_t k) const;
};

struct CostRealization {
  enum class Kind { kMixtureLimit, kBinaryKernel };
  Kind kind = Kind::kMixtureLimit;
  std::optional<MixtureDescriptor> mixture;
  // Set for kBinaryKernel: the randomized function used when Lambda_c is
  // infinite.
  std::optional<FunctionKernel> kernel;
  double delta_star = 0.0;
  double lambda_c = 0.0;
  double lambda_achieved = 0.0;
  int iterations = 0;
};

// log of sum_x m(x) P_X(x) / sum_x m(x) P_{X|Y=y}(x), the k -> infinity
// leakage of U_delta.
absl::StatusOr<double> MixtureLimitLambda(const JointModel& model,
                                          const CostMatrix& normalized_cost,
                                          std::size_t w_s, std::size_t w_t,
                                          double delta, std::size_t y);

// Finds a randomized function whose leakage equals LambdaC(cost) at y.
// Finite case: bisects delta in [0, 1] on the sign of
// Lambda_{U_delta} - Lambda_c until within `tol` (at most 200 iterations);
// the bracket Lambda_{U_1} <= Lambda_c <= Lambda_{U_0} is checked first.
// Infinite case: returns the binary kernel assigning U = 0 surely on
// supp(P_{X|Y=y}) and a fair coin elsewhere. The cost is normalized first.
absl::StatusOr<CostRealization> FunctionFromCost(const JointModel& model,
                                                 const CostMatrix& cost,
                                                 std::size_t y, double tol);

struct KernelSamplingResult {
  double max_lambda = 0.0;
  // -1 when the maximum came from the W-achiever.
  int argmax_trial = 0;
  int trials = 0;
};

// Flat-Dirichlet kernel with K columns drawn for trial `trial` of `seed`.
FunctionKernel SampleKernel(std::size_t n, std::size_t max_k,
                            std::uint64_t seed, int trial);

// Nonnegative cost matrix with uniform [0, 1) entries and W in [1, max_w].
CostMatrix SampleCost(std::size_t n, std::size_t max_w, std::uint64_t seed,
                      int trial);

// Max of LambdaU over `trials` random kernels. Trial t draws from seed + t,
// so results do not depend on evaluation order.
absl::StatusOr<KernelSamplingResult> SampleRandomKernels(
    const JointModel& model, std::size_t y, int trials, std::size_t max_k,
    std::uint64_t seed, bool include_w_achiever = false);

// P_U = P_X K and P_{Y|U} for u in supp(P_U). Values with P_U(u) = 0 are
// dropped.
absl::StatusOr<JointModel> InducedModel(const JointModel& model,
                                        const FunctionKernel& kernel);

struct PreprocessingCheck {
  bool holds = true;
  // Lambda(X -> y) - Lambda(U -> y) per output; NaN for unreachable y.
  std::vector<double> margins;
  double worst_margin = 0.0;
};

// Lambda of the induced U-model never exceeds Lambda of the X-model (within
// 1e-9) at any reachable output.
absl::StatusOr<PreprocessingCheck> CheckPreprocessing(
    const JointModel& model, const FunctionKernel& kernel);

}  // namespace densleak

#endif  // DENSLEAK_ADVERSARY_H_
