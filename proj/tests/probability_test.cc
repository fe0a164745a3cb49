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

#include "densleak/probability.h"

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densleak {
namespace {

using ::densleak::testing::IsOk;
using ::densleak::testing::Model;
using ::densleak::testing::RandomModel;
using ::densleak::testing::StatusIs;
using ::testing::DoubleEq;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(PmfTest, AcceptsExactDistribution) {
  absl::StatusOr<Pmf> pmf = Pmf::Create({0.25, 0.25, 0.5});
  ASSERT_THAT(pmf, IsOk());
  EXPECT_THAT(testing::Vec(pmf->probs()), ElementsAre(0.25, 0.25, 0.5));
  EXPECT_TRUE(pmf->HasFullSupport());
}

TEST(PmfTest, NormalizesSmallDeviation) {
  absl::StatusOr<Pmf> pmf = Pmf::Create({0.5 + 4e-10, 0.5});
  ASSERT_THAT(pmf, IsOk());
  EXPECT_NEAR((*pmf)[0] + (*pmf)[1], 1.0, 1e-15);
}

TEST(PmfTest, RejectsLargeDeviation) {
  EXPECT_THAT(Pmf::Create({0.5, 0.6}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Pmf::Create({0.5, 0.5 - 2e-9}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PmfTest, RejectsNegativeNonFiniteAndEmpty) {
  EXPECT_THAT(Pmf::Create({1.5, -0.5}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Pmf::Create({NAN, 1.0}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Pmf::Create({INFINITY, 0.0}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Pmf::Create({}), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(PmfTest, NormalizationIsIdempotent) {
  Pmf once = *Pmf::Create({0.1, 0.2, 0.7 + 3e-10});
  std::vector<double> values(once.probs().begin(), once.probs().end());
  Pmf twice = *Pmf::Create(values);
  for (std::size_t i = 0; i < once.size(); ++i) {
    EXPECT_EQ(once[i], twice[i]);
  }
}

TEST(PmfTest, MinProbIsOverSupport) {
  EXPECT_EQ(Pmf::Create({0.25, 0.25, 0.25, 0.25})->MinProb(), 0.25);
  EXPECT_EQ(Pmf::Create({1.0})->MinProb(), 1.0);
  EXPECT_EQ(Pmf::Create({0.99, 0.01})->MinProb(), 0.01);
  Pmf partial = *Pmf::Create({0.0, 0.3, 0.7});
  EXPECT_EQ(MinProb(partial), 0.3);
  EXPECT_FALSE(partial.HasFullSupport());
}

TEST(PmfTest, Uniform) {
  EXPECT_THAT(testing::Vec(Pmf::Uniform(4).probs()), ElementsAre(0.25, 0.25, 0.25, 0.25));
}

TEST(MatrixTest, FromRowsRejectsRaggedInput) {
  EXPECT_THAT(Matrix::FromRows({{1.0, 0.0}, {1.0}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Matrix::FromRows({}),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MatrixTest, RoundTripsRows) {
  const std::vector<std::vector<double>> rows = {{1, 2, 3}, {4, 5, 6}};
  absl::StatusOr<Matrix> m = Matrix::FromRows(rows);
  ASSERT_THAT(m, IsOk());
  EXPECT_EQ(m->rows(), 2u);
  EXPECT_EQ(m->cols(), 3u);
  EXPECT_EQ((*m)(1, 2), 6.0);
  EXPECT_EQ(m->ToRows(), rows);
  EXPECT_EQ(Matrix::Identity(2).ToRows(),
            (std::vector<std::vector<double>>{{1, 0}, {0, 1}}));
}

TEST(StochasticMatrixTest, ValidatesRows) {
  EXPECT_THAT(StochasticMatrix::Create({{0.5, 0.5}, {0.2, 0.7}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(StochasticMatrix::Create({{1.5, -0.5}}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  absl::StatusOr<StochasticMatrix> ok =
      StochasticMatrix::Create({{0.5, 0.5}, {0.0, 1.0}});
  ASSERT_THAT(ok, IsOk());
  EXPECT_TRUE(ok->is_row_stochastic());
}

TEST(StochasticMatrixTest, NonnegativeOnlyClearsFlag) {
  absl::StatusOr<StochasticMatrix> m = StochasticMatrix::CreateNonnegative(
      *Matrix::FromRows({{0.2, 0.2}, {1.0, 0.0}}));
  ASSERT_THAT(m, IsOk());
  EXPECT_FALSE(m->is_row_stochastic());
  EXPECT_THAT(MakeJoint(Pmf::Uniform(2), *m),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MakeJointTest, BinaryRandomizedResponse) {
  JointModel m = Model({0.5, 0.5}, {{0.75, 0.25}, {0.25, 0.75}});
  EXPECT_THAT(testing::Vec(m.marginal()), ElementsAre(0.5, 0.5));
  EXPECT_THAT(m.Posterior(0), ElementsAre(0.75, 0.25));
  EXPECT_THAT(m.Posterior(1), ElementsAre(0.25, 0.75));
}

TEST(MakeJointTest, PointMass) {
  JointModel m = Model({1.0}, {{1.0}});
  EXPECT_THAT(testing::Vec(m.marginal()), ElementsAre(1.0));
  EXPECT_THAT(m.Posterior(0), ElementsAre(1.0));
}

TEST(MakeJointTest, IndependenceGivesPriorPosteriors) {
  JointModel m = Model({0.25, 0.25, 0.25, 0.25},
                       {{0.25, 0.25, 0.25, 0.25},
                        {0.25, 0.25, 0.25, 0.25},
                        {0.25, 0.25, 0.25, 0.25},
                        {0.25, 0.25, 0.25, 0.25}});
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 4; ++x) {
      EXPECT_NEAR(m.posterior(x, y), 0.25, 1e-12);
    }
  }
}

TEST(MakeJointTest, FlagsUnreachableOutputs) {
  JointModel m = Model({0.5, 0.5}, {{0.5, 0.5, 0.0}, {1.0, 0.0, 0.0}});
  EXPECT_TRUE(m.reachable(0));
  EXPECT_TRUE(m.reachable(1));
  EXPECT_FALSE(m.reachable(2));
  EXPECT_EQ(m.num_reachable(), 2u);
  EXPECT_THAT(m.Posterior(2), ElementsAre(0.0, 0.0));
}

TEST(MakeJointTest, RejectsDimensionMismatch) {
  absl::StatusOr<JointModel> m =
      MakeJoint(Pmf::Uniform(3), *StochasticMatrix::Create(testing::Rows{{1.0}, {1.0}}));
  EXPECT_THAT(m, StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(std::string(m.status().message()), HasSubstr("3"));
}

TEST(MakeJointPropertyTest, MarginalSumsToOne) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    JointModel m = RandomModel(seed, 8, 0.1);
    double total = 0.0;
    for (double p : m.marginal()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-9) << "seed " << seed;
  }
}

TEST(MakeJointPropertyTest, BayesConsistency) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    JointModel m = RandomModel(seed, 8, 0.1);
    for (std::size_t y = 0; y < m.num_outputs(); ++y) {
      if (!m.reachable(y)) continue;
      double column = 0.0;
      for (std::size_t x = 0; x < m.num_inputs(); ++x) {
        const double lhs = m.prior()[x] * m.mechanism()(x, y);
        const double rhs = m.posterior(x, y) * m.marginal(y);
        EXPECT_NEAR(lhs, rhs, 4 * std::numeric_limits<double>::epsilon() *
                                  std::max(lhs, 1e-300))
            << "seed " << seed;
        EXPECT_NEAR(m.posterior(x, y),
                    static_cast<double>(testing::reference::Posterior(m, x, y)),
                    1e-15);
        column += m.posterior(x, y);
      }
      EXPECT_NEAR(column, 1.0, 1e-9);
    }
  }
}

TEST(MakeJointPropertyTest, IdenticalRowsGiveIndependence) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const int k = 2 + trial % 4;
    std::vector<double> row(k);
    double sum = 0.0;
    for (double& v : row) sum += (v = unit(rng));
    for (double& v : row) v /= sum;
    std::vector<double> prior(n);
    sum = 0.0;
    for (double& v : prior) sum += (v = unit(rng));
    for (double& v : prior) v /= sum;
    JointModel m = Model(prior, std::vector<std::vector<double>>(n, row));
    for (std::size_t y = 0; y < m.num_outputs(); ++y) {
      for (std::size_t x = 0; x < m.num_inputs(); ++x) {
        EXPECT_NEAR(m.posterior(x, y), m.prior()[x], 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace densleak
