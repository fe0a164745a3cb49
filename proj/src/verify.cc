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

#include "densleak/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "densleak/adversary.h"
#include "densleak/conversions.h"
#include "densleak/leakage.h"

namespace densleak {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExact = 1e-12;
constexpr double kLoose = 1e-9;

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    check_.name = std::move(name);
    check_.tolerance = tolerance;
    check_.worst_margin = -kInf;
  }

  // Records `value <= bound`.
  void AtMost(double value, double bound) {
    double margin = value - bound;
    if (std::isinf(value) && std::isinf(bound) && value > 0 && bound > 0) {
      margin = 0.0;
    }
    Record(margin);
  }

  // Records `a == b`; equal infinities count as exact agreement.
  void Equal(double a, double b) {
    Record(a == b ? 0.0 : std::abs(a - b));
  }

  void Record(double margin) {
    if (std::isnan(margin)) margin = kInf;
    check_.worst_margin = std::max(check_.worst_margin, margin);
    ++check_.evaluations;
  }

  OracleCheck Finish() {
    if (check_.evaluations == 0) check_.worst_margin = 0.0;
    check_.passed = check_.worst_margin <= check_.tolerance;
    return check_;
  }

 private:
  OracleCheck check_;
};

}  // namespace

absl::StatusOr<OracleSuiteReport> RunOracleSuite(
    const JointModel& model, const OracleSuiteOptions& options) {
  if (options.trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  absl::StatusOr<InfoDensityMatrix> density = ComputeInfoDensity(model);
  if (!density.ok()) return density.status();
  const std::size_t n = model.num_inputs();
  const double p_min = model.prior().MinProb();

  Tracker normalization("density_normalization", kLoose);
  Tracker identity("lambda_analytic_identity", kExact);
  Tracker sampled("lambda_u_upper_bound", kLoose);
  Tracker achiever("w_achiever_attains_sup", kExact);
  Tracker forward("cost_from_function_identity", kExact);
  Tracker backward("function_from_cost_bisection", options.bisection_tolerance);
  Tracker cost_sup("lambda_c_upper_bound", kLoose);
  Tracker preprocessing("preprocessing_closure", kLoose);
  Tracker cost_leakage("max_cost_leakage_candidate", kLoose);
  Tracker jensen("max_cost_leakage_jensen", kExact);
  Tracker realizable("max_realizable_cost_identity", 0.0);
  Tracker alip_ldp("alip_implies_ldp", kLoose);
  Tracker prop1("implied_lower_bound_soundness", kLoose);
  Tracker prop2("implied_upper_bound_soundness", kLoose);

  double max_analytic = 0.0;
  for (std::size_t y = 0; y < model.num_outputs(); ++y) {
    if (!model.reachable(y)) continue;
    double total = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      total += model.prior()[x] * std::exp((*density)(x, y));
    }
    normalization.Equal(total, 1.0);

    absl::StatusOr<double> analytic = LambdaSupAnalytic(model, y);
    absl::StatusOr<double> risk_averse = RiskAverseLeakage(*density, y);
    if (!analytic.ok()) return analytic.status();
    if (!risk_averse.ok()) return risk_averse.status();
    identity.Equal(*analytic, *risk_averse);
    max_analytic = std::max(max_analytic, *analytic);

    if (n > 1) {
      absl::StatusOr<std::size_t> k = MinimalAchieverK(model, y);
      if (!k.ok()) return k.status();
      absl::StatusOr<WAchiever> w = ConstructWAchiever(model, y, *k);
      if (!w.ok()) return w.status();
      absl::StatusOr<double> attained = LambdaU(model, w->kernel, y);
      if (!attained.ok()) return attained.status();
      achiever.Equal(*attained, *analytic);
    }

    for (int t = 0; t < options.trials; ++t) {
      const FunctionKernel kernel =
          SampleKernel(n, options.max_kernel_width, options.seed, t);
      absl::StatusOr<double> lambda_u = LambdaU(model, kernel, y);
      if (!lambda_u.ok()) return lambda_u.status();
      sampled.AtMost(*lambda_u, *analytic);
      absl::StatusOr<double> lambda_cu =
          LambdaC(model, CostFromFunction(kernel), y);
      if (!lambda_cu.ok()) return lambda_cu.status();
      forward.Equal(*lambda_cu, *lambda_u);

      const CostMatrix cost = SampleCost(n, options.max_cost_width,
                                         options.seed + options.trials, t);
      absl::StatusOr<double> lambda_c = LambdaC(model, cost, y);
      if (!lambda_c.ok()) return lambda_c.status();
      cost_sup.AtMost(*lambda_c, *analytic);
      absl::StatusOr<CostRealization> realized =
          FunctionFromCost(model, cost, y, options.bisection_tolerance);
      if (!realized.ok()) return realized.status();
      backward.Equal(realized->lambda_achieved, realized->lambda_c);
    }
  }

  const double l_cost = MaximalCostLeakage(*density);
  jensen.AtMost(l_cost, ExpectedRiskAverseLeakage(*density));
  realizable.Equal(MaximalRealizableCost(*density), max_analytic);

  for (int t = 0; t < options.trials; ++t) {
    const FunctionKernel kernel =
        SampleKernel(n, options.max_kernel_width, options.seed, t);
    absl::StatusOr<PreprocessingCheck> check =
        CheckPreprocessing(model, kernel);
    if (!check.ok()) return check.status();
    preprocessing.Record(-check->worst_margin);
    absl::StatusOr<JointModel> induced = InducedModel(model, kernel);
    if (!induced.ok()) return induced.status();
    absl::StatusOr<InfoDensityMatrix> u_density = ComputeInfoDensity(*induced);
    if (!u_density.ok()) return u_density.status();
    cost_leakage.AtMost(MaximalCostLeakage(*u_density), l_cost);
  }

  const AlipEpsilons alip = AlipEpsilonsOf(*density);
  alip_ldp.AtMost(LdpEpsilon(model.mechanism()), AlipToLdp({alip.eps_l,
                                                             alip.eps_u}));
  if (ClassifyRegime(alip.eps_u, p_min) == Regime::kHighPrivacy) {
    absl::StatusOr<double> bound = EpsLOfEpsU(alip.eps_u, p_min);
    if (!bound.ok()) return bound.status();
    prop1.AtMost(alip.eps_l, *bound);
  }
  absl::StatusOr<double> upper = EpsUOfEpsL(alip.eps_l, p_min);
  if (!upper.ok()) return upper.status();
  prop2.AtMost(alip.eps_u, *upper);

  OracleSuiteReport report;
  report.seed = options.seed;
  report.trials = options.trials;
  for (Tracker* t :
       {&normalization, &identity, &sampled, &achiever, &forward, &backward,
        &cost_sup, &preprocessing, &cost_leakage, &jensen, &realizable,
        &alip_ldp, &prop1, &prop2}) {
    report.checks.push_back(t->Finish());
    report.passed = report.passed && report.checks.back().passed;
  }
  return report;
}

}  // namespace densleak
