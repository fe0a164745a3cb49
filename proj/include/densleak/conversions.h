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

// Closed-form conversions between PML, LIP, ALIP and LDP guarantees. These
// are scalar functions of (eps, p_min) and never look at a mechanism.

#ifndef DENSLEAK_CONVERSIONS_H_
#define DENSLEAK_CONVERSIONS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace densleak {

// Half-width of the band around log(1/(1 - p_min)) classified as Boundary.
inline constexpr double kRegimeBoundaryBand = 1e-12;

enum class Regime { kHighPrivacy, kBoundary, kLowPrivacy };

absl::string_view RegimeName(Regime regime);

// log(1 / (1 - p_min)); +inf for p_min = 1.
double HighPrivacyBoundary(double p_min);

Regime ClassifyRegime(double eps, double p_min);

// Lower bound on min_x i(x;y) implied by max_x i(x;y) <= eps_u:
//   eps_l = log p_min / (1 - e^{eps_u} (1 - p_min)).
// +inf outside the high-privacy regime.
absl::StatusOr<double> EpsLOfEpsU(double eps_u, double p_min);

// Upper bound on max_x i(x;y) implied by min_x i(x;y) >= -eps_l:
//   eps_u = log (1 - e^{-eps_l} (1 - p_min)) / p_min.
// Accepts eps_l = +inf (gives log 1/p_min).
absl::StatusOr<double> EpsUOfEpsL(double eps_l, double p_min);

struct AlipGuarantee {
  double eps_l = 0.0;
  double eps_u = 0.0;
};

// eps-PML implies (EpsLOfEpsU(eps), eps)-ALIP.
absl::StatusOr<AlipGuarantee> PmlToAlip(double eps, double p_min);
// eps-PML implies max(eps, EpsLOfEpsU(eps))-LIP.
absl::StatusOr<double> PmlToLip(double eps, double p_min);
// eps-PML implies (EpsLOfEpsU(eps) + eps)-LDP.
absl::StatusOr<double> PmlToLdp(double eps, double p_min);

// eps-LIP implies eps-PML.
inline double LipToPml(double eps_lip) { return eps_lip; }
// (eps_l, eps_u)-ALIP implies eps_u-PML.
inline double AlipToPml(const AlipGuarantee& alip) { return alip.eps_u; }
// (eps_l, eps_u)-ALIP implies (eps_l + eps_u)-LDP.
inline double AlipToLdp(const AlipGuarantee& alip) {
  return alip.eps_l + alip.eps_u;
}

struct ConversionResult {
  double input_eps = 0.0;
  double p_min = 0.0;
  double eps_l = 0.0;
  double eps_u = 0.0;
  double eps_lip = 0.0;
  double eps_ldp = 0.0;
  Regime regime = Regime::kHighPrivacy;
};

// Everything implied by an eps-PML guarantee.
absl::StatusOr<ConversionResult> ConvertFromPml(double eps, double p_min);

struct RegionPoint {
  double eps_u = 0.0;
  // Implied lower-bound parameter from an upper bound of eps_u.
  double prop1_eps_l = 0.0;
  // eps_l whose implied upper bound equals eps_u (inverse of EpsUOfEpsL).
  double prop2_eps_l_inverse = 0.0;
};

struct RegionCurve {
  double p_min = 0.0;
  std::vector<RegionPoint> samples;
};

// Inverse of EpsUOfEpsL in its first argument: the eps_l at which the
// implied upper bound equals eps_u. +inf when no finite eps_l does.
absl::StatusOr<double> EpsLOfEpsUInverseBound(double eps_u, double p_min);

// Evenly spaced eps_u grid on [0, eps_u_max]. Requires steps >= 2 and
// eps_u_max strictly inside the high-privacy regime.
absl::StatusOr<RegionCurve> RegionSweep(double p_min, double eps_u_max,
                                        int steps);

}  // namespace densleak

#endif  // DENSLEAK_CONVERSIONS_H_
