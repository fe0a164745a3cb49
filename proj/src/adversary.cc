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

#include "densleak/adversary.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "densleak/leakage.h"

namespace densleak {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBracketSlack = 1e-9;
constexpr int kMaxBisectionIterations = 200;

absl::Status CheckOutput(const JointModel& model, std::size_t y) {
  if (y >= model.num_outputs()) {
    return absl::OutOfRangeError(
        absl::StrCat("output index ", y, " out of range [0, ",
                     model.num_outputs(), ")"));
  }
  if (!model.reachable(y)) {
    return absl::FailedPreconditionError(
        absl::StrCat("output y", y + 1, " is unreachable"));
  }
  return absl::OkStatus();
}

absl::Status CheckRows(const JointModel& model, std::size_t rows,
                       absl::string_view what) {
  if (rows != model.num_inputs()) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " has ", rows, " rows but the model has ",
                     model.num_inputs(), " inputs"));
  }
  return absl::OkStatus();
}

// log(numerator / denominator) with 0/0 = 0 and a/0 = +inf.
double LogRatio(double numerator, double denominator) {
  if (denominator <= 0.0) return numerator <= 0.0 ? 0.0 : kInf;
  return std::log(numerator / denominator);
}

// 1 - max_u dist(u), summed over the non-maximal entries to avoid
// cancellation. Exactly one (lowest-index) maximizer is excluded.
double ErrorProbability(const std::vector<double>& dist) {
  const auto top = std::max_element(dist.begin(), dist.end());
  long double rest = 0.0L;
  for (auto it = dist.begin(); it != dist.end(); ++it) {
    if (it != top) rest += *it;
  }
  return static_cast<double>(rest);
}

// dist(u) = sum_x weights(x) K(x, u).
std::vector<double> PushForward(std::span<const double> weights,
                                const StochasticMatrix& kernel) {
  std::vector<double> out(kernel.cols(), 0.0);
  for (std::size_t x = 0; x < kernel.rows(); ++x) {
    if (weights[x] == 0.0) continue;
    for (std::size_t u = 0; u < kernel.cols(); ++u) {
      out[u] += weights[x] * kernel(x, u);
    }
  }
  return out;
}

std::vector<double> ExpectedCosts(std::span<const double> weights,
                                  const CostMatrix& cost) {
  std::vector<double> out(cost.num_actions(), 0.0);
  for (std::size_t w = 0; w < cost.num_actions(); ++w) {
    for (std::size_t x = 0; x < cost.num_inputs(); ++x) {
      out[w] += cost(x, w) * weights[x];
    }
  }
  return out;
}

std::size_t ArgMin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) -
                                  v.begin());
}

struct AchieverSetup {
  std::size_t x_star = 0;
  double prior_rest = 0.0;
  double posterior_rest = 0.0;
};

absl::StatusOr<AchieverSetup> SetUpAchiever(const JointModel& model,
                                            std::size_t y) {
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  if (model.num_inputs() < 2) {
    return absl::FailedPreconditionError(
        "the achiever construction needs at least two inputs");
  }
  absl::StatusOr<InfoDensityMatrix> density = ComputeInfoDensity(model);
  if (!density.ok()) return density.status();
  AchieverSetup setup;
  double lowest = kInf;
  for (std::size_t x = 0; x < model.num_inputs(); ++x) {
    if ((*density)(x, y) < lowest) {
      lowest = (*density)(x, y);
      setup.x_star = x;
    }
  }
  for (std::size_t x = 0; x < model.num_inputs(); ++x) {
    if (x == setup.x_star) continue;
    setup.prior_rest += model.prior()[x];
    setup.posterior_rest += model.posterior(x, y);
  }
  return setup;
}

StochasticMatrix AchieverKernel(std::size_t n, std::size_t x_star,
                                std::size_t k) {
  Matrix m(n, k + 1);
  const double share = 1.0 / static_cast<double>(k);
  for (std::size_t x = 0; x < n; ++x) {
    if (x == x_star) {
      for (std::size_t w = 0; w < k; ++w) m(x, w) = share;
    } else {
      m(x, k) = 1.0;
    }
  }
  // Rows are stochastic up to rounding of k * (1/k).
  return *StochasticMatrix::Create(std::move(m));
}

// Output k+1 (index k) is a maximizer of both P_W and P_{W|Y=y}.
bool AchieverValid(const JointModel& model, std::size_t y,
                   const StochasticMatrix& kernel) {
  const std::size_t k = kernel.cols() - 1;
  const std::vector<double> prior_w = PushForward(model.prior().probs(), kernel);
  const std::vector<double> posterior = model.Posterior(y);
  const std::vector<double> post_w = PushForward(posterior, kernel);
  for (std::size_t w = 0; w < k; ++w) {
    if (prior_w[w] > prior_w[k] || post_w[w] > post_w[k]) return false;
  }
  return true;
}

}  // namespace

absl::StatusOr<FunctionKernel> FunctionKernel::Create(StochasticMatrix kernel) {
  if (!kernel.is_row_stochastic()) {
    return absl::InvalidArgumentError("function kernel must be row-stochastic");
  }
  return FunctionKernel(std::move(kernel));
}

absl::StatusOr<FunctionKernel> FunctionKernel::Create(
    const std::vector<std::vector<double>>& rows) {
  absl::StatusOr<StochasticMatrix> m = StochasticMatrix::Create(rows);
  if (!m.ok()) return m.status();
  return Create(*std::move(m));
}

FunctionKernel FunctionKernel::Identity(std::size_t n) {
  return FunctionKernel(*StochasticMatrix::Create(Matrix::Identity(n)));
}

FunctionKernel FunctionKernel::Constant(std::size_t n) {
  return FunctionKernel(*StochasticMatrix::Create(Matrix(n, 1, 1.0)));
}

absl::StatusOr<CostMatrix> CostMatrix::Create(Matrix entries) {
  absl::StatusOr<StochasticMatrix> checked =
      StochasticMatrix::CreateNonnegative(entries);
  if (!checked.ok()) return checked.status();
  return CostMatrix(std::move(entries));
}

absl::StatusOr<CostMatrix> CostMatrix::Create(
    const std::vector<std::vector<double>>& rows) {
  absl::StatusOr<Matrix> m = Matrix::FromRows(rows);
  if (!m.ok()) return m.status();
  return Create(*std::move(m));
}

bool CostMatrix::is_normalized() const {
  const auto d = entries_.data();
  return std::all_of(d.begin(), d.end(), [](double c) { return c <= 1.0; });
}

CostMatrix CostMatrix::Normalized() const {
  const auto d = entries_.data();
  const double top = *std::max_element(d.begin(), d.end());
  if (top <= 0.0) return *this;
  Matrix m = entries_;
  for (std::size_t x = 0; x < m.rows(); ++x) {
    for (std::size_t w = 0; w < m.cols(); ++w) m(x, w) /= top;
  }
  return CostMatrix(std::move(m));
}

absl::StatusOr<double> LambdaU(const JointModel& model,
                               const FunctionKernel& kernel, std::size_t y) {
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  if (auto s = CheckRows(model, kernel.num_inputs(), "kernel"); !s.ok()) {
    return s;
  }
  const std::vector<double> posterior = model.Posterior(y);
  const double prior_error =
      ErrorProbability(PushForward(model.prior().probs(), kernel.kernel()));
  const double posterior_error =
      ErrorProbability(PushForward(posterior, kernel.kernel()));
  return LogRatio(prior_error, posterior_error);
}

absl::StatusOr<double> LambdaSupAnalytic(const JointModel& model,
                                         std::size_t y) {
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  absl::StatusOr<InfoDensityMatrix> density = ComputeInfoDensity(model);
  if (!density.ok()) return density.status();
  return RiskAverseLeakage(*density, y);
}

absl::StatusOr<std::size_t> MinimalAchieverK(const JointModel& model,
                                             std::size_t y) {
  absl::StatusOr<AchieverSetup> setup = SetUpAchiever(model, y);
  if (!setup.ok()) return setup.status();
  const double p_star = model.prior()[setup->x_star];
  const double q_star = model.posterior(setup->x_star, y);
  // k >= P_X(x*) / P_X(X \ x*) and k >= P_{X|Y=y}(x*) / P_{X|Y=y}(X \ x*).
  double bound = 1.0;
  bound = std::max(bound, std::ceil(p_star / setup->prior_rest));
  if (setup->posterior_rest > 0.0) {
    bound = std::max(bound, std::ceil(q_star / setup->posterior_rest));
  }
  if (!std::isfinite(bound) || bound > 1e8) {
    return absl::FailedPreconditionError(
        absl::StrCat("achiever needs k = ", bound, ", which is too large"));
  }
  auto k = static_cast<std::size_t>(bound);
  // Rounding in the pushed-forward probabilities can defeat the analytic
  // bound by one.
  while (!AchieverValid(model, y,
                        AchieverKernel(model.num_inputs(), setup->x_star, k))) {
    ++k;
  }
  return k;
}

absl::StatusOr<WAchiever> ConstructWAchiever(const JointModel& model,
                                             std::size_t y, std::size_t k) {
  absl::StatusOr<std::size_t> min_k = MinimalAchieverK(model, y);
  if (!min_k.ok()) return min_k.status();
  if (k < *min_k) {
    return absl::InvalidArgumentError(absl::StrCat(
        "k = ", k, " is below the minimal valid k = ", *min_k));
  }
  absl::StatusOr<AchieverSetup> setup = SetUpAchiever(model, y);
  if (!setup.ok()) return setup.status();
  absl::StatusOr<FunctionKernel> kernel = FunctionKernel::Create(
      AchieverKernel(model.num_inputs(), setup->x_star, k));
  if (!kernel.ok()) return kernel.status();
  return WAchiever{*std::move(kernel), setup->x_star, k, *min_k};
}

absl::StatusOr<double> LambdaC(const JointModel& model, const CostMatrix& cost,
                               std::size_t y) {
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  if (auto s = CheckRows(model, cost.num_inputs(), "cost"); !s.ok()) return s;
  const std::vector<double> prior_costs =
      ExpectedCosts(model.prior().probs(), cost);
  const std::vector<double> posterior_costs =
      ExpectedCosts(model.Posterior(y), cost);
  return LogRatio(*std::min_element(prior_costs.begin(), prior_costs.end()),
                  *std::min_element(posterior_costs.begin(),
                                    posterior_costs.end()));
}

CostMatrix CostFromFunction(const FunctionKernel& kernel) {
  const StochasticMatrix& k = kernel.kernel();
  Matrix m(k.rows(), k.cols());
  for (std::size_t x = 0; x < k.rows(); ++x) {
    for (std::size_t u = 0; u < k.cols(); ++u) {
      m(x, u) = std::max(0.0, 1.0 - k(x, u));
    }
  }
  return *CostMatrix::Create(std::move(m));
}

absl::StatusOr<FunctionKernel> MixtureDescriptor::Materialize(
    std::size_t k) const {
  if (k == 0) return absl::InvalidArgumentError("k must be positive");
  Matrix m(mixed_cost.size(), k + 1);
  for (std::size_t x = 0; x < mixed_cost.size(); ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      m(x, i) = mixed_cost[x] / static_cast<double>(k);
    }
    m(x, k) = 1.0 - mixed_cost[x];
  }
  absl::StatusOr<StochasticMatrix> kernel =
      StochasticMatrix::Create(std::move(m));
  if (!kernel.ok()) return kernel.status();
  return FunctionKernel::Create(*std::move(kernel));
}

absl::StatusOr<double> MixtureLimitLambda(const JointModel& model,
                                          const CostMatrix& normalized_cost,
                                          std::size_t w_s, std::size_t w_t,
                                          double delta, std::size_t y) {
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  if (auto s = CheckRows(model, normalized_cost.num_inputs(), "cost");
      !s.ok()) {
    return s;
  }
  if (w_s >= normalized_cost.num_actions() ||
      w_t >= normalized_cost.num_actions()) {
    return absl::OutOfRangeError("action index out of range");
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t x = 0; x < model.num_inputs(); ++x) {
    const double mixed = delta * normalized_cost(x, w_s) +
                         (1.0 - delta) * normalized_cost(x, w_t);
    numerator += mixed * model.prior()[x];
    denominator += mixed * model.posterior(x, y);
  }
  return LogRatio(numerator, denominator);
}

absl::StatusOr<CostRealization> FunctionFromCost(const JointModel& model,
                                                 const CostMatrix& cost,
                                                 std::size_t y, double tol) {
  if (!(tol > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tolerance must be positive, got ", tol));
  }
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  if (auto s = CheckRows(model, cost.num_inputs(), "cost"); !s.ok()) return s;
  const CostMatrix c = cost.Normalized();
  absl::StatusOr<double> target = LambdaC(model, c, y);
  if (!target.ok()) return target.status();

  CostRealization out;
  out.lambda_c = *target;

  if (std::isinf(*target)) {
    // E = supp(P_{X|Y=y}); U = 0 surely on E and a fair coin off E.
    Matrix m(model.num_inputs(), 2);
    for (std::size_t x = 0; x < model.num_inputs(); ++x) {
      const bool in_support = model.posterior(x, y) > 0.0;
      m(x, 0) = in_support ? 1.0 : 0.5;
      m(x, 1) = in_support ? 0.0 : 0.5;
    }
    absl::StatusOr<FunctionKernel> kernel =
        FunctionKernel::Create(*StochasticMatrix::Create(std::move(m)));
    if (!kernel.ok()) return kernel.status();
    absl::StatusOr<double> achieved = LambdaU(model, *kernel, y);
    if (!achieved.ok()) return achieved.status();
    out.kind = CostRealization::Kind::kBinaryKernel;
    out.kernel = *std::move(kernel);
    out.lambda_achieved = *achieved;
    out.delta_star = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  MixtureDescriptor mixture;
  mixture.w_s = ArgMin(ExpectedCosts(model.prior().probs(), c));
  mixture.w_t = ArgMin(ExpectedCosts(model.Posterior(y), c));

  auto lambda_at = [&](double delta) {
    return MixtureLimitLambda(model, c, mixture.w_s, mixture.w_t, delta, y);
  };
  auto finish = [&](double delta, double achieved,
                    int iterations) -> CostRealization {
    mixture.delta = delta;
    mixture.mixed_cost.resize(model.num_inputs());
    for (std::size_t x = 0; x < model.num_inputs(); ++x) {
      mixture.mixed_cost[x] =
          delta * c(x, mixture.w_s) + (1.0 - delta) * c(x, mixture.w_t);
    }
    out.kind = CostRealization::Kind::kMixtureLimit;
    out.delta_star = delta;
    out.lambda_achieved = achieved;
    out.iterations = iterations;
    out.mixture = mixture;
    return out;
  };

  if (mixture.w_s == mixture.w_t) {
    absl::StatusOr<double> achieved = lambda_at(0.5);
    if (!achieved.ok()) return achieved.status();
    return finish(0.5, *achieved, 0);
  }

  absl::StatusOr<double> at_one = lambda_at(1.0);
  absl::StatusOr<double> at_zero = lambda_at(0.0);
  if (!at_one.ok()) return at_one.status();
  if (!at_zero.ok()) return at_zero.status();
  if (*at_one > *target + kBracketSlack || *target > *at_zero + kBracketSlack) {
    return absl::InternalError(absl::StrCat(
        "bisection bracket violated: Lambda_U1 = ", *at_one,
        ", Lambda_c = ", *target, ", Lambda_U0 = ", *at_zero));
  }
  if (std::abs(*at_one - *target) <= tol) return finish(1.0, *at_one, 0);
  if (std::abs(*at_zero - *target) <= tol) return finish(0.0, *at_zero, 0);

  // Lambda_{U_delta} - Lambda_c is >= 0 at lo and <= 0 at hi.
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 1; iter <= kMaxBisectionIterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<double> value = lambda_at(mid);
    if (!value.ok()) return value.status();
    const double gap = *value - *target;
    if (std::abs(gap) <= tol) return finish(mid, *value, iter);
    if (gap > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return absl::InternalError(absl::StrCat(
      "bisection did not reach tolerance ", tol, " in ",
      kMaxBisectionIterations, " iterations"));
}

FunctionKernel SampleKernel(std::size_t n, std::size_t max_k,
                            std::uint64_t seed, int trial) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
  std::uniform_int_distribution<std::size_t> width(1, std::max<std::size_t>(
                                                          1, max_k));
  std::exponential_distribution<double> flat(1.0);
  const std::size_t k = width(rng);
  Matrix m(n, k);
  for (std::size_t x = 0; x < n; ++x) {
    double sum = 0.0;
    for (std::size_t u = 0; u < k; ++u) {
      m(x, u) = flat(rng);
      sum += m(x, u);
    }
    for (std::size_t u = 0; u < k; ++u) m(x, u) /= sum;
  }
  return *FunctionKernel::Create(*StochasticMatrix::Create(std::move(m)));
}

CostMatrix SampleCost(std::size_t n, std::size_t max_w, std::uint64_t seed,
                      int trial) {
  std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
  std::uniform_int_distribution<std::size_t> width(1, std::max<std::size_t>(
                                                          1, max_w));
  std::uniform_real_distribution<double> entry(0.0, 1.0);
  const std::size_t w = width(rng);
  Matrix m(n, w);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t a = 0; a < w; ++a) m(x, a) = entry(rng);
  }
  return *CostMatrix::Create(std::move(m));
}

absl::StatusOr<KernelSamplingResult> SampleRandomKernels(
    const JointModel& model, std::size_t y, int trials, std::size_t max_k,
    std::uint64_t seed, bool include_w_achiever) {
  if (trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be at least 1, got ", trials));
  }
  if (max_k < 1) return absl::InvalidArgumentError("max_k must be positive");
  if (auto s = CheckOutput(model, y); !s.ok()) return s;
  KernelSamplingResult result;
  result.trials = trials;
  result.max_lambda = -kInf;
  for (int t = 0; t < trials; ++t) {
    absl::StatusOr<double> lambda =
        LambdaU(model, SampleKernel(model.num_inputs(), max_k, seed, t), y);
    if (!lambda.ok()) return lambda.status();
    if (*lambda > result.max_lambda) {
      result.max_lambda = *lambda;
      result.argmax_trial = t;
    }
  }
  if (include_w_achiever && model.num_inputs() > 1) {
    absl::StatusOr<std::size_t> k = MinimalAchieverK(model, y);
    if (!k.ok()) return k.status();
    absl::StatusOr<WAchiever> achiever = ConstructWAchiever(model, y, *k);
    if (!achiever.ok()) return achiever.status();
    absl::StatusOr<double> lambda = LambdaU(model, achiever->kernel, y);
    if (!lambda.ok()) return lambda.status();
    if (*lambda > result.max_lambda) {
      result.max_lambda = *lambda;
      result.argmax_trial = -1;
    }
  }
  return result;
}

absl::StatusOr<JointModel> InducedModel(const JointModel& model,
                                        const FunctionKernel& kernel) {
  if (auto s = CheckRows(model, kernel.num_inputs(), "kernel"); !s.ok()) {
    return s;
  }
  const StochasticMatrix& k = kernel.kernel();
  const std::vector<double> p_u = PushForward(model.prior().probs(), k);
  std::vector<double> support_probs;
  std::vector<std::vector<double>> rows;
  for (std::size_t u = 0; u < p_u.size(); ++u) {
    if (!(p_u[u] > 0.0)) continue;
    std::vector<double> row(model.num_outputs(), 0.0);
    for (std::size_t x = 0; x < model.num_inputs(); ++x) {
      const double joint = model.prior()[x] * k(x, u);
      if (joint == 0.0) continue;
      for (std::size_t y = 0; y < model.num_outputs(); ++y) {
        row[y] += joint * model.mechanism()(x, y);
      }
    }
    for (double& v : row) v /= p_u[u];
    support_probs.push_back(p_u[u]);
    rows.push_back(std::move(row));
  }
  absl::StatusOr<Pmf> prior = Pmf::Create(std::move(support_probs));
  if (!prior.ok()) return prior.status();
  absl::StatusOr<StochasticMatrix> mechanism = StochasticMatrix::Create(rows);
  if (!mechanism.ok()) return mechanism.status();
  return MakeJoint(*std::move(prior), *std::move(mechanism));
}

absl::StatusOr<PreprocessingCheck> CheckPreprocessing(
    const JointModel& model, const FunctionKernel& kernel) {
  absl::StatusOr<JointModel> induced = InducedModel(model, kernel);
  if (!induced.ok()) return induced.status();
  absl::StatusOr<InfoDensityMatrix> x_density = ComputeInfoDensity(model);
  if (!x_density.ok()) return x_density.status();
  absl::StatusOr<InfoDensityMatrix> u_density = ComputeInfoDensity(*induced);
  if (!u_density.ok()) return u_density.status();

  PreprocessingCheck check;
  check.margins.assign(model.num_outputs(),
                       std::numeric_limits<double>::quiet_NaN());
  check.worst_margin = kInf;
  for (std::size_t y = 0; y < model.num_outputs(); ++y) {
    if (!model.reachable(y) || !induced->reachable(y)) continue;
    const double lambda_x = -x_density->ColumnMin(y);
    const double lambda_u = -u_density->ColumnMin(y);
    double margin = lambda_x - lambda_u;
    if (std::isinf(lambda_x) && std::isinf(lambda_u)) margin = 0.0;
    check.margins[y] = margin;
    check.worst_margin = std::min(check.worst_margin, margin);
  }
  check.holds = check.worst_margin >= -kBracketSlack;
  return check;
}

}  // namespace densleak
