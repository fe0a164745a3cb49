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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace densleak {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status ValidateEpsilon(double eps, absl::string_view name) {
  if (std::isnan(eps) || eps < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be nonnegative, got ", eps));
  }
  return absl::OkStatus();
}

absl::Status ValidatePMin(double p_min) {
  if (!(p_min > 0.0 && p_min <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("p_min must lie in (0, 1], got ", p_min));
  }
  return absl::OkStatus();
}

}  // namespace

absl::string_view RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kHighPrivacy:
      return "high_privacy";
    case Regime::kBoundary:
      return "boundary";
    case Regime::kLowPrivacy:
      return "low_privacy";
  }
  return "unknown";
}

double HighPrivacyBoundary(double p_min) { return -std::log1p(-p_min); }

Regime ClassifyRegime(double eps, double p_min) {
  const double boundary = HighPrivacyBoundary(p_min);
  if (eps < boundary - kRegimeBoundaryBand) return Regime::kHighPrivacy;
  if (eps <= boundary + kRegimeBoundaryBand) return Regime::kBoundary;
  return Regime::kLowPrivacy;
}

absl::StatusOr<double> EpsLOfEpsU(double eps_u, double p_min) {
  if (auto s = ValidateEpsilon(eps_u, "eps_u"); !s.ok()) return s;
  if (auto s = ValidatePMin(p_min); !s.ok()) return s;
  if (ClassifyRegime(eps_u, p_min) != Regime::kHighPrivacy) return kInf;
  // log(p / (1 - e^u (1 - p))) = -log1p(-(1 - p)(e^u - 1) / p)
  const double t = (1.0 - p_min) * std::expm1(eps_u) / p_min;
  if (t >= 1.0) return kInf;
  return -std::log1p(-t);
}

absl::StatusOr<double> EpsUOfEpsL(double eps_l, double p_min) {
  if (auto s = ValidateEpsilon(eps_l, "eps_l"); !s.ok()) return s;
  if (auto s = ValidatePMin(p_min); !s.ok()) return s;
  // log((1 - e^{-l}(1 - p)) / p) = log1p((1 - p)(1 - e^{-l}) / p)
  return std::log1p((1.0 - p_min) * -std::expm1(-eps_l) / p_min);
}

absl::StatusOr<double> EpsLOfEpsUInverseBound(double eps_u, double p_min) {
  if (auto s = ValidateEpsilon(eps_u, "eps_u"); !s.ok()) return s;
  if (auto s = ValidatePMin(p_min); !s.ok()) return s;
  if (eps_u == 0.0) return 0.0;
  if (p_min == 1.0) return kInf;
  // log((1 - p) / (1 - p e^u)) = -log1p(-p (e^u - 1) / (1 - p))
  const double t = p_min * std::expm1(eps_u) / (1.0 - p_min);
  if (t >= 1.0) return kInf;
  return -std::log1p(-t);
}

absl::StatusOr<AlipGuarantee> PmlToAlip(double eps, double p_min) {
  absl::StatusOr<double> eps_l = EpsLOfEpsU(eps, p_min);
  if (!eps_l.ok()) return eps_l.status();
  return AlipGuarantee{*eps_l, eps};
}

absl::StatusOr<double> PmlToLip(double eps, double p_min) {
  absl::StatusOr<double> eps_l = EpsLOfEpsU(eps, p_min);
  if (!eps_l.ok()) return eps_l.status();
  return std::max(eps, *eps_l);
}

absl::StatusOr<double> PmlToLdp(double eps, double p_min) {
  absl::StatusOr<double> eps_l = EpsLOfEpsU(eps, p_min);
  if (!eps_l.ok()) return eps_l.status();
  return *eps_l + eps;
}

absl::StatusOr<ConversionResult> ConvertFromPml(double eps, double p_min) {
  absl::StatusOr<AlipGuarantee> alip = PmlToAlip(eps, p_min);
  if (!alip.ok()) return alip.status();
  ConversionResult out;
  out.input_eps = eps;
  out.p_min = p_min;
  out.eps_l = alip->eps_l;
  out.eps_u = alip->eps_u;
  out.eps_lip = std::max(alip->eps_l, alip->eps_u);
  out.eps_ldp = AlipToLdp(*alip);
  out.regime = ClassifyRegime(eps, p_min);
  return out;
}

absl::StatusOr<RegionCurve> RegionSweep(double p_min, double eps_u_max,
                                        int steps) {
  if (auto s = ValidatePMin(p_min); !s.ok()) return s;
  if (steps < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("steps must be at least 2, got ", steps));
  }
  if (!(eps_u_max > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("max eps_u must be positive, got ", eps_u_max));
  }
  if (ClassifyRegime(eps_u_max, p_min) != Regime::kHighPrivacy) {
    return absl::InvalidArgumentError(absl::StrCat(
        "max eps_u ", eps_u_max, " is not below the high-privacy boundary ",
        HighPrivacyBoundary(p_min)));
  }
  RegionCurve curve;
  curve.p_min = p_min;
  curve.samples.reserve(steps);
  for (int k = 0; k < steps; ++k) {
    const double eps_u = eps_u_max * k / (steps - 1);
    absl::StatusOr<double> lower = EpsLOfEpsU(eps_u, p_min);
    absl::StatusOr<double> inverse = EpsLOfEpsUInverseBound(eps_u, p_min);
    if (!lower.ok()) return lower.status();
    if (!inverse.ok()) return inverse.status();
    curve.samples.push_back({eps_u, *lower, *inverse});
  }
  return curve;
}

}  // namespace densleak
