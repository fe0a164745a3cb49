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

#include "densleak/mechanism_design.h"

#include <cmath>
#include <random>
#include <vector>

#include "densleak/conversions.h"
#include "densleak/leakage.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densleak {
namespace {

using ::densleak::testing::IsOk;
using ::densleak::testing::StatusIs;
using ::densleak::testing::ValueOrDie;

constexpr double kExact = 1e-12;

Matrix IdentityGain(std::size_t n) { return Matrix::Identity(n); }

void ExpectMatrixNear(const StochasticMatrix& m,
                      const std::vector<std::vector<double>>& expected,
                      double tol) {
  ASSERT_EQ(m.rows(), expected.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ASSERT_EQ(m.cols(), expected[i].size());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      EXPECT_NEAR(m(i, j), expected[i][j], tol) << i << "," << j;
    }
  }
}

TEST(OptimalHighPrivacyMechanismTest, BinaryUniform) {
  absl::StatusOr<StochasticMatrix> m =
      OptimalHighPrivacyMechanism({Pmf::Uniform(2), std::log(1.5)});
  ASSERT_THAT(m, IsOk());
  ExpectMatrixNear(*m, {{0.25, 0.75}, {0.75, 0.25}}, kExact);
}

TEST(OptimalHighPrivacyMechanismTest, ZeroEpsilonIsIndependent) {
  absl::StatusOr<StochasticMatrix> m =
      OptimalHighPrivacyMechanism({Pmf::Uniform(4), 0.0});
  ASSERT_THAT(m, IsOk());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ((*m)(i, j), 0.25);
  }
}

TEST(OptimalHighPrivacyMechanismTest, UniformFourAtPointTwo) {
  absl::StatusOr<StochasticMatrix> m =
      OptimalHighPrivacyMechanism({Pmf::Uniform(4), 0.2});
  ASSERT_THAT(m, IsOk());
  for (std::size_t i = 0; i < 4; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      // 1 - 0.75 e^0.2 and 0.25 e^0.2.
      EXPECT_NEAR((*m)(i, j),
                  i == j ? 0.083947931379872581 : 0.30535068954004247, kExact);
      sum += (*m)(i, j);
    }
    EXPECT_NEAR(sum, 1.0, kExact);
  }
}

TEST(OptimalHighPrivacyMechanismTest, FrozenNonUniformPrior) {
  Pmf prior = *Pmf::Create({0.1, 0.2, 0.3, 0.4});
  absl::StatusOr<StochasticMatrix> m = OptimalHighPrivacyMechanism({prior, 0.1});
  ASSERT_THAT(m, IsOk());
  ExpectMatrixNear(
      *m,
      {{0.0053461737319171376695, 0.22103418361512952496,
        0.33155127542269428744, 0.44206836723025904992},
       {0.11051709180756476248, 0.11586326553948190015,
        0.33155127542269428744, 0.44206836723025904992},
       {0.11051709180756476248, 0.22103418361512952496,
        0.22638035734704666263, 0.44206836723025904992},
       {0.11051709180756476248, 0.22103418361512952496,
        0.33155127542269428744, 0.33689744915461142511}},
      kExact);
  PrivacyReport r = ValueOrDie(Audit(ValueOrDie(MakeJoint(prior, *m))));
  EXPECT_NEAR(r.pml, 0.1, 1e-9);
  EXPECT_NEAR(r.alip.eps_l, 2.9287890712466226667, 1e-9);
}

TEST(OptimalHighPrivacyMechanismTest, RejectsInvalidSpecs) {
  EXPECT_THAT(OptimalHighPrivacyMechanism({Pmf::Uniform(4), 0.3}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(OptimalHighPrivacyMechanism({Pmf::Uniform(4), -0.1}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(OptimalHighPrivacyMechanism({*Pmf::Create({0.0, 1.0}), 0.1}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  // An explicit lower bound tighter than the implied one.
  EXPECT_THAT(OptimalHighPrivacyMechanism({Pmf::Uniform(4), 0.2, 0.5}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  // Exactly the implied one is accepted.
  EXPECT_THAT(OptimalHighPrivacyMechanism(
                  {Pmf::Uniform(4), 0.2, *EpsLOfEpsU(0.2, 0.25)}),
              IsOk());
}

TEST(BinaryRandomizedResponseTest, Examples) {
  ExpectMatrixNear(*BinaryRandomizedResponse(std::log(3.0)),
                   {{0.75, 0.25}, {0.25, 0.75}}, kExact);
  ExpectMatrixNear(*BinaryRandomizedResponse(0.0), {{0.5, 0.5}, {0.5, 0.5}},
                   0.0);
  ExpectMatrixNear(*BinaryRandomizedResponse(std::log(2.0)),
                   {{2.0 / 3.0, 1.0 / 3.0}, {1.0 / 3.0, 2.0 / 3.0}}, kExact);
  EXPECT_THAT(BinaryRandomizedResponse(-1.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(BinaryRandomizedResponseTest, LdpRoundTrip) {
  for (double eps = 0.0; eps < 8.0; eps += 0.25) {
    EXPECT_NEAR(LdpEpsilon(*BinaryRandomizedResponse(eps)), eps, kExact);
  }
}

TEST(BinaryRandomizedResponseTest, MatchesOptimalBinaryMechanism) {
  for (int k = 1; k <= 6; ++k) {
    const double eps = 0.1 * k;
    StochasticMatrix opt = *OptimalHighPrivacyMechanism({Pmf::Uniform(2), eps});
    StochasticMatrix rr =
        *BinaryRandomizedResponse(eps + *EpsLOfEpsU(eps, 0.5));
    // The optimal mechanism has the small entry on the diagonal, so it equals
    // randomized response with its two outputs swapped.
    EXPECT_NEAR(opt(0, 0), rr(0, 1), kExact);
    EXPECT_NEAR(opt(0, 1), rr(0, 0), kExact);
    EXPECT_NEAR(opt(1, 0), rr(1, 1), kExact);
    EXPECT_NEAR(opt(1, 1), rr(1, 0), kExact);
  }
}

TEST(ExpectedUtilityTest, Examples) {
  Pmf prior = Pmf::Uniform(2);
  StochasticMatrix opt = *StochasticMatrix::Create({{0.25, 0.75}, {0.75, 0.25}});
  EXPECT_NEAR(*ExpectedUtility(prior, opt, IdentityGain(2)), 0.25, kExact);
  EXPECT_EQ(*ExpectedUtility(prior, opt, Matrix(2, 2)), 0.0);
  Pmf skewed = *Pmf::Create({0.7, 0.2, 0.1});
  EXPECT_NEAR(*ExpectedUtility(skewed,
                               *StochasticMatrix::Create(Matrix::Identity(3)),
                               IdentityGain(3)),
              1.0, kExact);
  EXPECT_THAT(ExpectedUtility(prior, opt, IdentityGain(3)),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RelabeledExpectedUtilityTest, DecodesEachOutputOptimally) {
  Pmf prior = Pmf::Uniform(2);
  StochasticMatrix opt = *StochasticMatrix::Create({{0.25, 0.75}, {0.75, 0.25}});
  EXPECT_NEAR(*RelabeledExpectedUtility(prior, opt, IdentityGain(2)), 0.75,
              kExact);
  // A skewed prior where the best decision is the same for both outputs.
  Pmf skewed = *Pmf::Create({0.9, 0.1});
  StochasticMatrix m = *StochasticMatrix::Create({{0.6, 0.4}, {0.4, 0.6}});
  EXPECT_NEAR(*RelabeledExpectedUtility(skewed, m, IdentityGain(2)), 0.9,
              kExact);
}

TEST(UtilityFunctionalTest, WrapsEvaluators) {
  UtilityFunctional f = ExpectedGainUtility(IdentityGain(2));
  UtilityFunctional g = RelabeledGainUtility(IdentityGain(2));
  StochasticMatrix opt = *StochasticMatrix::Create({{0.25, 0.75}, {0.75, 0.25}});
  EXPECT_EQ(f.name, "expected_gain");
  EXPECT_NEAR(*f.evaluate(Pmf::Uniform(2), opt), 0.25, kExact);
  EXPECT_NEAR(*g.evaluate(Pmf::Uniform(2), opt), 0.75, kExact);
}

TEST(BruteForceBestMechanismTest, BinaryUniformMatchesClosedForm) {
  absl::StatusOr<GridSearchResult> best = BruteForceBestMechanism(
      Pmf::Uniform(2), std::log(2.0), std::log(1.5), IdentityGain(2), 2000);
  ASSERT_THAT(best, IsOk());
  StochasticMatrix opt =
      *OptimalHighPrivacyMechanism({Pmf::Uniform(2), std::log(1.5)});
  const double closed =
      *RelabeledExpectedUtility(Pmf::Uniform(2), opt, IdentityGain(2));
  EXPECT_NEAR(best->utility, closed, 2.0 / 2000);
  EXPECT_EQ(best->total_points, 2001u * 2001u);
  EXPECT_GT(best->feasible_points, 0u);
}

TEST(BruteForceBestMechanismTest, ZeroEpsilonForcesIndependence) {
  Pmf prior = *Pmf::Create({0.6, 0.4});
  absl::StatusOr<GridSearchResult> best =
      BruteForceBestMechanism(prior, 0.0, 0.0, IdentityGain(2), 200);
  ASSERT_THAT(best, IsOk());
  EXPECT_NEAR(best->utility, 0.6, kExact);
  EXPECT_EQ(best->mechanism(0, 0), best->mechanism(1, 0));
  EXPECT_EQ(best->mechanism(0, 1), best->mechanism(1, 1));
}

TEST(BruteForceBestMechanismTest, TightLowerBoundStillFeasible) {
  Pmf prior = *Pmf::Create({0.7, 0.3});
  const double eps_u = 0.2;
  const double eps_l = 0.5 * *EpsLOfEpsU(eps_u, 0.3);
  absl::StatusOr<GridSearchResult> best =
      BruteForceBestMechanism(prior, eps_l, eps_u, IdentityGain(2), 400);
  ASSERT_THAT(best, IsOk());
  PrivacyReport r =
      ValueOrDie(Audit(ValueOrDie(MakeJoint(prior, best->mechanism))));
  EXPECT_LE(r.alip.eps_u, eps_u + 1e-9);
  EXPECT_LE(r.alip.eps_l, eps_l + 1e-9);
}

TEST(BruteForceBestMechanismTest, TernaryCoarseGrid) {
  Pmf prior = *Pmf::Create({0.5, 0.3, 0.2});
  const double eps_u = 0.15;
  absl::StatusOr<GridSearchResult> best = BruteForceBestMechanism(
      prior, std::numeric_limits<double>::infinity(), eps_u, IdentityGain(3),
      12);
  ASSERT_THAT(best, IsOk());
  PrivacyReport r =
      ValueOrDie(Audit(ValueOrDie(MakeJoint(prior, best->mechanism))));
  EXPECT_LE(r.pml, eps_u + 1e-9);
  StochasticMatrix opt = *OptimalHighPrivacyMechanism({prior, eps_u});
  EXPECT_LE(best->utility,
            *RelabeledExpectedUtility(prior, opt, IdentityGain(3)) + 1e-9);
}

TEST(BruteForceBestMechanismTest, Deterministic) {
  Pmf prior = *Pmf::Create({0.55, 0.45});
  GridSearchResult a = *BruteForceBestMechanism(prior, 1.0, 0.3,
                                                IdentityGain(2), 300);
  GridSearchResult b = *BruteForceBestMechanism(prior, 1.0, 0.3,
                                                IdentityGain(2), 300);
  EXPECT_EQ(a.mechanism.entries(), b.mechanism.entries());
  EXPECT_EQ(a.utility, b.utility);
  EXPECT_EQ(a.feasible_points, b.feasible_points);
}

TEST(BruteForceBestMechanismTest, RejectsUnsupportedShapes) {
  EXPECT_THAT(BruteForceBestMechanism(Pmf::Uniform(4), 1.0, 0.1,
                                      IdentityGain(4), 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(BruteForceBestMechanism(Pmf::Uniform(2), 1.0, 0.1,
                                      IdentityGain(2), 50),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(BruteForceBestMechanism(Pmf::Uniform(2), 1.0, 0.1,
                                      IdentityGain(3), 100),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

// Generated mechanisms close the loop with the audit for random specs.
TEST(DesignPropertyTest, AuditClosure) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(2, 8);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = dim(rng);
    std::vector<double> p(n);
    double sum = 0.0;
    for (double& v : p) sum += (v = gamma(rng) + 0.01);
    for (double& v : p) v /= sum;
    Pmf prior = *Pmf::Create(p);
    const double eps_u =
        unit(rng) * 0.999 * HighPrivacyBoundary(prior.MinProb());
    StochasticMatrix m = ValueOrDie(OptimalHighPrivacyMechanism({prior, eps_u}));
    JointModel model = ValueOrDie(MakeJoint(prior, m));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        EXPECT_GT(m(i, j), 0.0);
        row += m(i, j);
      }
      EXPECT_NEAR(row, 1.0, kExact);
      EXPECT_NEAR(model.marginal(i), prior[i], kExact);
    }
    PrivacyReport r = ValueOrDie(Audit(model));
    EXPECT_NEAR(r.pml, eps_u, 1e-9);
    for (const OutcomeLeakage& o : r.per_y) EXPECT_NEAR(o.pml, eps_u, 1e-9);
    EXPECT_NEAR(r.alip.eps_l, *EpsLOfEpsU(eps_u, prior.MinProb()), 1e-9);
  }
}

}  // namespace
}  // namespace densleak
