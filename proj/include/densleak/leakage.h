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

// Leakage measures built on the information density
//
//   i(x;y) = log P_{X|Y=y}(x) / P_X(x)
//
// All values are in nats. Outputs y with P_Y(y) = 0 are excluded from every
// maximum; a zero posterior entry yields i = -inf.

#ifndef DENSLEAK_LEAKAGE_H_
#define DENSLEAK_LEAKAGE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "densleak/probability.h"

namespace densleak {

class InfoDensityMatrix {
 public:
  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }

  // NaN for unreachable outputs.
  double operator()(std::size_t x, std::size_t y) const { return values_(x, y); }
  bool reachable(std::size_t y) const { return marginal_[y] > 0.0; }
  std::span<const double> marginal() const { return marginal_; }

  // max_x i(x;y) and min_x i(x;y). Only meaningful for reachable y.
  double ColumnMax(std::size_t y) const;
  double ColumnMin(std::size_t y) const;

 private:
  friend absl::StatusOr<InfoDensityMatrix> ComputeInfoDensity(
      const JointModel& model);
  InfoDensityMatrix(Matrix values, std::vector<double> marginal)
      : values_(std::move(values)), marginal_(std::move(marginal)) {}

  Matrix values_;
  std::vector<double> marginal_;
};

// Fails if the prior has a zero entry.
absl::StatusOr<InfoDensityMatrix> ComputeInfoDensity(const JointModel& model);

struct AlipEpsilons {
  double eps_l = 0.0;
  double eps_u = 0.0;
};

struct OutcomeLeakage {
  std::size_t y = 0;
  double pml = 0.0;     // max_x i(x;y)
  double lambda = 0.0;  // -min_x i(x;y)
};

struct PrivacyReport {
  std::vector<OutcomeLeakage> per_y;
  std::vector<std::size_t> unreachable;
  double pml = 0.0;
  double eps_lip = 0.0;
  AlipEpsilons alip;
  double eps_ldp = 0.0;
  double l_cost = 0.0;
  double l_realizable_cost = 0.0;
};

std::vector<OutcomeLeakage> PerOutcomeLeakage(const InfoDensityMatrix& density);

// Pointwise maximal leakage, maximized over reachable outputs.
double Pml(const InfoDensityMatrix& density);

// Smallest eps with -eps <= i(x;y) <= eps everywhere.
double LipEpsilon(const InfoDensityMatrix& density);

// Tightest (eps_l, eps_u) pair. eps_u is bitwise equal to Pml().
AlipEpsilons AlipEpsilonsOf(const InfoDensityMatrix& density);

// Worst-case log ratio of entries within each column, over ordered pairs of
// rows. Prior-free. All-zero columns are skipped; a column that mixes zero
// and nonzero entries gives +inf.
double LdpEpsilon(const StochasticMatrix& mechanism);

// Risk-averse leakage Lambda(X -> y) = max_x log P_X(x) / P_{X|Y=y}(x),
// computed as -min_x i(x;y).
absl::StatusOr<double> RiskAverseLeakage(const InfoDensityMatrix& density,
                                         std::size_t y);

// max_y Lambda(X -> y).
double MaximalRealizableCost(const InfoDensityMatrix& density);

// Closed-form candidate for maximal cost leakage evaluated at U = X:
//   -log sum_y P_Y(y) exp(-Lambda(X -> y)).
// Never exceeds E_Y[Lambda(X -> Y)].
double MaximalCostLeakage(const InfoDensityMatrix& density);

// E_Y[Lambda(X -> Y)] over reachable outputs.
double ExpectedRiskAverseLeakage(const InfoDensityMatrix& density);

absl::StatusOr<PrivacyReport> Audit(const JointModel& model);

}  // namespace densleak

#endif  // DENSLEAK_LEAKAGE_H_
