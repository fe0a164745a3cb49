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

#include "densleak/leakage.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace densleak {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

absl::StatusOr<InfoDensityMatrix> ComputeInfoDensity(const JointModel& model) {
  const Pmf& prior = model.prior();
  for (std::size_t x = 0; x < prior.size(); ++x) {
    if (!(prior[x] > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "information density requires a full-support prior; P_X(x", x + 1,
          ") = 0"));
    }
  }
  const std::size_t n = model.num_inputs();
  const std::size_t m = model.num_outputs();
  Matrix values(n, m, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t y = 0; y < m; ++y) {
    if (!model.reachable(y)) continue;
    for (std::size_t x = 0; x < n; ++x) {
      values(x, y) = std::log(model.posterior(x, y) / prior[x]);
    }
  }
  return InfoDensityMatrix(
      std::move(values),
      std::vector<double>(model.marginal().begin(), model.marginal().end()));
}

double InfoDensityMatrix::ColumnMax(std::size_t y) const {
  double out = -kInf;
  for (std::size_t x = 0; x < rows(); ++x) out = std::max(out, values_(x, y));
  return out;
}

double InfoDensityMatrix::ColumnMin(std::size_t y) const {
  double out = kInf;
  for (std::size_t x = 0; x < rows(); ++x) out = std::min(out, values_(x, y));
  return out;
}

std::vector<OutcomeLeakage> PerOutcomeLeakage(const InfoDensityMatrix& density) {
  std::vector<OutcomeLeakage> out;
  for (std::size_t y = 0; y < density.cols(); ++y) {
    if (!density.reachable(y)) continue;
    out.push_back({y, density.ColumnMax(y), -density.ColumnMin(y)});
  }
  return out;
}

double Pml(const InfoDensityMatrix& density) {
  double out = 0.0;
  for (std::size_t y = 0; y < density.cols(); ++y) {
    if (density.reachable(y)) out = std::max(out, density.ColumnMax(y));
  }
  return out;
}

double LipEpsilon(const InfoDensityMatrix& density) {
  const AlipEpsilons alip = AlipEpsilonsOf(density);
  return std::max(alip.eps_l, alip.eps_u);
}

AlipEpsilons AlipEpsilonsOf(const InfoDensityMatrix& density) {
  return {MaximalRealizableCost(density), Pml(density)};
}

double LdpEpsilon(const StochasticMatrix& mechanism) {
  double out = 0.0;
  for (std::size_t y = 0; y < mechanism.cols(); ++y) {
    double lo = kInf;
    double hi = 0.0;
    for (std::size_t x = 0; x < mechanism.rows(); ++x) {
      lo = std::min(lo, mechanism(x, y));
      hi = std::max(hi, mechanism(x, y));
    }
    if (hi == 0.0) continue;
    if (lo == 0.0) return kInf;
    out = std::max(out, std::log(hi / lo));
  }
  return out;
}

absl::StatusOr<double> RiskAverseLeakage(const InfoDensityMatrix& density,
                                         std::size_t y) {
  if (y >= density.cols()) {
    return absl::OutOfRangeError(absl::StrCat("output index ", y,
                                              " out of range"));
  }
  if (!density.reachable(y)) {
    return absl::FailedPreconditionError(
        absl::StrCat("output y", y + 1, " is unreachable"));
  }
  return -density.ColumnMin(y);
}

double MaximalRealizableCost(const InfoDensityMatrix& density) {
  double out = 0.0;
  for (std::size_t y = 0; y < density.cols(); ++y) {
    if (density.reachable(y)) out = std::max(out, -density.ColumnMin(y));
  }
  return out;
}

double MaximalCostLeakage(const InfoDensityMatrix& density) {
  double sum = 0.0;
  for (std::size_t y = 0; y < density.cols(); ++y) {
    if (!density.reachable(y)) continue;
    sum += density.marginal()[y] * std::exp(density.ColumnMin(y));
  }
  // The weighted sum of min-ratios is at most one; clamp rounding excess so
  // an independent mechanism reports exactly zero.
  return sum >= 1.0 ? 0.0 : -std::log(sum);
}

double ExpectedRiskAverseLeakage(const InfoDensityMatrix& density) {
  double sum = 0.0;
  for (std::size_t y = 0; y < density.cols(); ++y) {
    if (!density.reachable(y)) continue;
    const double lambda = -density.ColumnMin(y);
    if (std::isinf(lambda)) return kInf;
    sum += density.marginal()[y] * lambda;
  }
  return sum;
}

absl::StatusOr<PrivacyReport> Audit(const JointModel& model) {
  absl::StatusOr<InfoDensityMatrix> density = ComputeInfoDensity(model);
  if (!density.ok()) return density.status();
  PrivacyReport report;
  report.per_y = PerOutcomeLeakage(*density);
  for (std::size_t y = 0; y < model.num_outputs(); ++y) {
    if (!model.reachable(y)) report.unreachable.push_back(y);
  }
  report.alip = AlipEpsilonsOf(*density);
  report.pml = report.alip.eps_u;
  report.eps_lip = std::max(report.alip.eps_l, report.alip.eps_u);
  report.eps_ldp = LdpEpsilon(model.mechanism());
  report.l_cost = MaximalCostLeakage(*density);
  report.l_realizable_cost = report.alip.eps_l;
  return report;
}

}  // namespace densleak
