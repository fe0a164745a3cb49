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

#include "densleak/conversions.h"

#include <cmath>
#include <limits>

#include "densleak/leakage.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace densleak {
namespace {

using ::densleak::testing::IsOk;
using ::densleak::testing::kInf;
using ::densleak::testing::RandomModel;
using ::densleak::testing::StatusIs;
namespace reference = ::densleak::testing::reference;

constexpr double kExact = 1e-12;

TEST(EpsLOfEpsUTest, ZeroMapsToZero) {
  for (double p : {0.01, 0.25, 0.5, 1.0}) {
    EXPECT_EQ(*EpsLOfEpsU(0.0, p), 0.0) << p;
  }
}

TEST(EpsLOfEpsUTest, FrozenValues) {
  // 40-digit evaluations of log(p / (1 - e^u (1 - p))).
  EXPECT_NEAR(*EpsLOfEpsU(0.2, 0.25), 1.0912641757397011232, kExact);
  EXPECT_NEAR(*EpsLOfEpsU(0.1, 0.1), 2.9287890712466226667, kExact);
  EXPECT_NEAR(*EpsLOfEpsU(0.05, 0.3), 0.12741591117076383822, kExact);
  EXPECT_NEAR(*EpsLOfEpsU(0.4, 0.5), 0.67692880754790548015, kExact);
  EXPECT_NEAR(*EpsLOfEpsU(std::log(1.5), 0.5), std::log(2.0), kExact);
}

TEST(EpsLOfEpsUTest, InfiniteAtAndBeyondBoundary) {
  EXPECT_EQ(*EpsLOfEpsU(std::log(4.0 / 3.0), 0.25), kInf);
  EXPECT_EQ(*EpsLOfEpsU(1.0, 0.25), kInf);
  EXPECT_EQ(*EpsLOfEpsU(kInf, 0.25), kInf);
}

TEST(EpsLOfEpsUTest, RejectsInvalidArguments) {
  EXPECT_THAT(EpsLOfEpsU(-0.1, 0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EpsLOfEpsU(0.1, 0.0),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EpsLOfEpsU(0.1, 1.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(EpsLOfEpsU(NAN, 0.5),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(EpsUOfEpsLTest, Values) {
  EXPECT_EQ(*EpsUOfEpsL(0.0, 0.3), 0.0);
  EXPECT_NEAR(*EpsUOfEpsL(std::log(2.0), 0.5), std::log(1.5), kExact);
  EXPECT_NEAR(*EpsUOfEpsL(1.0, 0.25), 1.063455355014828512, kExact);
  EXPECT_NEAR(*EpsUOfEpsL(0.3, 0.1), 1.203763586600795733, kExact);
  EXPECT_NEAR(*EpsUOfEpsL(2.5, 0.4), 0.86578554876705619678, kExact);
  EXPECT_NEAR(*EpsUOfEpsL(kInf, 0.25), std::log(4.0), kExact);
  EXPECT_NEAR(*EpsUOfEpsL(60.0, 0.25), std::log(4.0), kExact);
  EXPECT_THAT(EpsUOfEpsL(-1.0, 0.25),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(RegimeTest, Classification) {
  const double boundary = std::log(4.0 / 3.0);
  EXPECT_NEAR(HighPrivacyBoundary(0.25), boundary, kExact);
  EXPECT_EQ(ClassifyRegime(0.2, 0.25), Regime::kHighPrivacy);
  EXPECT_EQ(ClassifyRegime(boundary, 0.25), Regime::kBoundary);
  EXPECT_EQ(ClassifyRegime(boundary + 1e-13, 0.25), Regime::kBoundary);
  EXPECT_EQ(ClassifyRegime(boundary - 1e-11, 0.25), Regime::kHighPrivacy);
  EXPECT_EQ(ClassifyRegime(1.0, 0.25), Regime::kLowPrivacy);
  EXPECT_EQ(HighPrivacyBoundary(1.0), kInf);
  EXPECT_EQ(RegimeName(Regime::kBoundary), "boundary");
}

TEST(PmlToAlipTest, Examples) {
  absl::StatusOr<AlipGuarantee> rr = PmlToAlip(std::log(1.5), 0.5);
  ASSERT_THAT(rr, IsOk());
  EXPECT_NEAR(rr->eps_l, std::log(2.0), kExact);
  EXPECT_EQ(rr->eps_u, std::log(1.5));
  EXPECT_EQ(PmlToAlip(0.0, 0.3)->eps_l, 0.0);
  absl::StatusOr<AlipGuarantee> low = PmlToAlip(1.0, 0.25);
  EXPECT_EQ(low->eps_l, kInf);
  EXPECT_EQ(low->eps_u, 1.0);
}

TEST(PmlToLipTest, Examples) {
  EXPECT_NEAR(*PmlToLip(std::log(1.5), 0.5), std::log(2.0), kExact);
  EXPECT_EQ(*PmlToLip(0.0, 0.5), 0.0);
  EXPECT_NEAR(*PmlToLip(0.2, 0.25), 1.0912641757397011232, kExact);
}

TEST(PmlToLdpTest, Examples) {
  EXPECT_NEAR(*PmlToLdp(std::log(1.5), 0.5), std::log(3.0), kExact);
  EXPECT_EQ(*PmlToLdp(0.0, 0.5), 0.0);
  EXPECT_NEAR(*PmlToLdp(0.2, 0.25), 1.2912641757397011232, kExact);
  EXPECT_EQ(*PmlToLdp(1.0, 0.25), kInf);
}

TEST(TrivialImplicationsTest, Values) {
  EXPECT_EQ(LipToPml(0.7), 0.7);
  EXPECT_EQ(AlipToPml({2.0, 0.3}), 0.3);
  EXPECT_EQ(AlipToLdp({2.0, 0.3}), 2.3);
}

TEST(ConvertFromPmlTest, ZeroIsAllZero) {
  absl::StatusOr<ConversionResult> r = ConvertFromPml(0.0, 0.5);
  ASSERT_THAT(r, IsOk());
  EXPECT_EQ(r->eps_l, 0.0);
  EXPECT_EQ(r->eps_u, 0.0);
  EXPECT_EQ(r->eps_lip, 0.0);
  EXPECT_EQ(r->eps_ldp, 0.0);
  EXPECT_EQ(r->regime, Regime::kHighPrivacy);
}

TEST(ConvertFromPmlTest, FiniteExactlyInHighPrivacyRegime) {
  for (double p : {0.05, 0.25, 0.5}) {
    for (double eps = 0.0; eps < 2.0; eps += 0.01) {
      absl::StatusOr<ConversionResult> r = ConvertFromPml(eps, p);
      ASSERT_THAT(r, IsOk());
      const bool high = eps < HighPrivacyBoundary(p) - kRegimeBoundaryBand;
      EXPECT_EQ(r->regime == Regime::kHighPrivacy, high);
      if (high) {
        EXPECT_TRUE(std::isfinite(r->eps_l) && std::isfinite(r->eps_lip) &&
                    std::isfinite(r->eps_ldp));
      } else {
        EXPECT_EQ(r->eps_l, kInf);
      }
    }
  }
}

TEST(ConversionPropertyTest, MatchesReferenceFormulas) {
  for (double p : {0.01, 0.1, 0.25, 0.4, 0.5}) {
    const double boundary = HighPrivacyBoundary(p);
    for (int k = 1; k < 200; ++k) {
      const double u = boundary * k / 200.0;
      EXPECT_NEAR(*EpsLOfEpsU(u, p), reference::EpsL(u, p),
                  1e-12 * std::max(1.0, reference::EpsL(u, p)));
      const double l = 0.05 * k;
      EXPECT_NEAR(*EpsUOfEpsL(l, p), reference::EpsU(l, p), kExact);
    }
  }
}

TEST(ConversionPropertyTest, BinaryUniformRoundTrip) {
  const double boundary = std::log(2.0);
  for (int k = 1; k <= 1000; ++k) {
    const double eps = boundary * k / 1001.0;
    EXPECT_NEAR(*EpsUOfEpsL(*EpsLOfEpsU(eps, 0.5), 0.5), eps, 1e-9);
  }
}

TEST(ConversionPropertyTest, ImpliedBoundNeverTighter) {
  for (double p : {0.02, 0.1, 0.2, 0.3, 0.45, 0.5}) {
    const double boundary = HighPrivacyBoundary(p);
    for (int k = 1; k < 500; ++k) {
      const double eps = boundary * k / 500.0;
      EXPECT_GE(*EpsUOfEpsL(*EpsLOfEpsU(eps, p), p), eps - 1e-9);
    }
  }
}

TEST(ConversionPropertyTest, StrictlyIncreasing) {
  for (double p : {0.1, 0.25, 0.5}) {
    const double boundary = HighPrivacyBoundary(p);
    double last_l = -1.0;
    double last_u = -1.0;
    for (int k = 0; k < 400; ++k) {
      const double l = *EpsLOfEpsU(boundary * k / 400.0, p);
      const double u = *EpsUOfEpsL(0.02 * k, p);
      EXPECT_GT(l, last_l - 1e-12);
      EXPECT_GT(u, last_u - 1e-12);
      if (k > 0) {
        EXPECT_GT(l, last_l);
        EXPECT_GT(u, last_u);
      }
      last_l = l;
      last_u = u;
    }
  }
}

TEST(RegionSweepTest, BinaryCurvesCoincide) {
  absl::StatusOr<RegionCurve> c = RegionSweep(0.5, 0.69, 50);
  ASSERT_THAT(c, IsOk());
  ASSERT_EQ(c->samples.size(), 50u);
  EXPECT_EQ(c->samples.front().eps_u, 0.0);
  EXPECT_EQ(c->samples.back().eps_u, 0.69);
  for (const RegionPoint& s : c->samples) {
    EXPECT_NEAR(s.prop1_eps_l, s.prop2_eps_l_inverse, 1e-9);
  }
  EXPECT_NEAR(*EpsLOfEpsUInverseBound(std::log(1.5), 0.5), std::log(2.0),
              kExact);
}

TEST(RegionSweepTest, QuarterCurvesSeparate) {
  absl::StatusOr<RegionCurve> c =
      RegionSweep(0.25, std::log(4.0 / 3.0) - 1e-6, 300);
  ASSERT_THAT(c, IsOk());
  double last = -1.0;
  for (const RegionPoint& s : c->samples) {
    EXPECT_GT(s.eps_u, last);
    last = s.eps_u;
    if (s.eps_u == 0.0) {
      EXPECT_EQ(s.prop1_eps_l, 0.0);
      EXPECT_EQ(s.prop2_eps_l_inverse, 0.0);
    } else {
      EXPECT_GT(s.prop1_eps_l, s.prop2_eps_l_inverse);
    }
  }
  EXPECT_NEAR(*EpsLOfEpsUInverseBound(0.2, 0.25), 0.076666077579816700222,
              kExact);
  EXPECT_NEAR(*EpsLOfEpsUInverseBound(0.1, 0.1), 0.011754471476180368064,
              kExact);
}

TEST(RegionSweepTest, TinyRangeApproachesOrigin) {
  absl::StatusOr<RegionCurve> c = RegionSweep(0.3, 1e-12, 2);
  ASSERT_THAT(c, IsOk());
  EXPECT_NEAR(c->samples[1].prop1_eps_l, 0.0, 1e-10);
  EXPECT_NEAR(c->samples[1].prop2_eps_l_inverse, 0.0, 1e-10);
}

TEST(RegionSweepTest, RejectsInvalidArguments) {
  EXPECT_THAT(RegionSweep(0.5, 0.5, 1),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(RegionSweep(0.5, std::log(2.0), 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(RegionSweep(0.5, 0.0, 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(RegionSweep(0.0, 0.1, 10),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

// Implied-bound soundness on random models: whatever PML a model has, its
// lower density is bounded by the conversion, and vice versa.
TEST(ConversionSoundnessTest, RandomModels) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const JointModel m = RandomModel(seed, 6);
    const InfoDensityMatrix d = *ComputeInfoDensity(m);
    const AlipEpsilons a = AlipEpsilonsOf(d);
    const double p = m.prior().MinProb();
    if (ClassifyRegime(a.eps_u, p) == Regime::kHighPrivacy) {
      EXPECT_LE(a.eps_l, *EpsLOfEpsU(a.eps_u, p) + 1e-9) << seed;
      ++checked;
    }
    EXPECT_LE(a.eps_u, *EpsUOfEpsL(a.eps_l, p) + 1e-9) << seed;
  }
  EXPECT_GT(checked, 0);
}

}  // namespace
}  // namespace densleak
