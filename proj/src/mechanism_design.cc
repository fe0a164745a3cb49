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

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "densleak/conversions.h"

namespace densleak {
namespace {

constexpr double kAuditTolerance = 1e-9;
constexpr std::size_t kMaxGridDim = 3;

absl::Status CheckGainShape(const Pmf& prior, const StochasticMatrix& mechanism,
                            const Matrix& gain, bool require_same_cols) {
  if (prior.size() != mechanism.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prior has ", prior.size(), " entries but mechanism has ",
                     mechanism.rows(), " rows"));
  }
  if (gain.rows() != mechanism.rows() ||
      (require_same_cols && gain.cols() != mechanism.cols()) ||
      gain.cols() == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "gain is ", gain.rows(), "x", gain.cols(), " but mechanism is ",
        mechanism.rows(), "x", mechanism.cols()));
  }
  return absl::OkStatus();
}

// All compositions of `total` into `parts` nonnegative integers, in
// lexicographic order.
std::vector<std::array<int, kMaxGridDim>> Compositions(int total,
                                                       std::size_t parts) {
  std::vector<std::array<int, kMaxGridDim>> out;
  std::array<int, kMaxGridDim> current{};
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == parts) {
      current[pos] = left;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      current[pos] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, total);
  return out;
}

struct Candidate {
  bool found = false;
  double utility = 0.0;
  std::array<int, kMaxGridDim * kMaxGridDim> cells{};
  std::size_t feasible = 0;
};

// Larger utility wins; ties go to the lexicographically smaller matrix.
bool Better(double utility,
            const std::array<int, kMaxGridDim * kMaxGridDim>& cells,
            const Candidate& best) {
  if (!best.found) return true;
  if (utility != best.utility) return utility > best.utility;
  return cells < best.cells;
}

}  // namespace

absl::StatusOr<StochasticMatrix> OptimalHighPrivacyMechanism(
    const DesignSpec& spec) {
  const Pmf& prior = spec.prior;
  if (!prior.HasFullSupport()) {
    return absl::InvalidArgumentError("prior must have full support");
  }
  if (!std::isfinite(spec.eps_u) || spec.eps_u < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps_u must be finite and nonnegative, got ", spec.eps_u));
  }
  const double p_min = prior.MinProb();
  if (ClassifyRegime(spec.eps_u, p_min) != Regime::kHighPrivacy) {
    return absl::InvalidArgumentError(absl::StrCat(
        "eps_u = ", spec.eps_u, " is outside the high-privacy regime (< ",
        HighPrivacyBoundary(p_min), ")"));
  }
  absl::StatusOr<double> implied = EpsLOfEpsU(spec.eps_u, p_min);
  if (!implied.ok()) return implied.status();
  if (std::isnan(spec.eps_l) || spec.eps_l + 1e-12 < *implied) {
    return absl::InvalidArgumentError(absl::StrCat(
        "eps_l = ", spec.eps_l, " is below the lower bound ", *implied,
        " implied by eps_u; the closed form does not apply"));
  }
  const std::size_t n = prior.size();
  const double scale = std::exp(spec.eps_u);
  const double growth = std::expm1(spec.eps_u);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // 1 - e^u (1 - p) == p - (e^u - 1)(1 - p)
      m(i, j) = i == j ? prior[i] - growth * (1.0 - prior[i])
                       : scale * prior[j];
    }
  }
  return StochasticMatrix::Create(std::move(m));
}

absl::StatusOr<StochasticMatrix> BinaryRandomizedResponse(double eps_ldp) {
  if (std::isnan(eps_ldp) || eps_ldp < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps_ldp must be nonnegative, got ", eps_ldp));
  }
  const double stay = 1.0 / (1.0 + std::exp(-eps_ldp));
  const double flip = 1.0 / (1.0 + std::exp(eps_ldp));
  Matrix m(2, 2);
  m(0, 0) = m(1, 1) = stay;
  m(0, 1) = m(1, 0) = flip;
  return StochasticMatrix::Create(std::move(m));
}

absl::StatusOr<double> ExpectedUtility(const Pmf& prior,
                                       const StochasticMatrix& mechanism,
                                       const Matrix& gain) {
  if (auto s = CheckGainShape(prior, mechanism, gain, true); !s.ok()) return s;
  double total = 0.0;
  for (std::size_t x = 0; x < mechanism.rows(); ++x) {
    for (std::size_t y = 0; y < mechanism.cols(); ++y) {
      total += prior[x] * mechanism(x, y) * gain(x, y);
    }
  }
  return total;
}

absl::StatusOr<double> RelabeledExpectedUtility(
    const Pmf& prior, const StochasticMatrix& mechanism, const Matrix& gain) {
  if (auto s = CheckGainShape(prior, mechanism, gain, false); !s.ok()) {
    return s;
  }
  double total = 0.0;
  for (std::size_t y = 0; y < mechanism.cols(); ++y) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < gain.cols(); ++k) {
      double value = 0.0;
      for (std::size_t x = 0; x < mechanism.rows(); ++x) {
        value += prior[x] * mechanism(x, y) * gain(x, k);
      }
      best = std::max(best, value);
    }
    total += best;
  }
  return total;
}

UtilityFunctional ExpectedGainUtility(Matrix gain) {
  return {"expected_gain",
          [gain = std::move(gain)](const Pmf& prior,
                                   const StochasticMatrix& mechanism) {
            return ExpectedUtility(prior, mechanism, gain);
          }};
}

UtilityFunctional RelabeledGainUtility(Matrix gain) {
  return {"relabeled_expected_gain",
          [gain = std::move(gain)](const Pmf& prior,
                                   const StochasticMatrix& mechanism) {
            return RelabeledExpectedUtility(prior, mechanism, gain);
          }};
}

absl::StatusOr<GridSearchResult> BruteForceBestMechanism(
    const Pmf& prior, double eps_l, double eps_u, const Matrix& gain,
    int grid_resolution) {
  const std::size_t n = prior.size();
  if (n != 2 && n != 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid search supports N = 2 or 3, got ", n));
  }
  if (n == 2 && grid_resolution < 100) {
    return absl::InvalidArgumentError(absl::StrCat(
        "N = 2 requires grid resolution >= 100, got ", grid_resolution));
  }
  if (grid_resolution < 1) {
    return absl::InvalidArgumentError("grid resolution must be positive");
  }
  if (gain.rows() != n || gain.cols() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("gain must be ", n, "x", n));
  }
  if (!prior.HasFullSupport()) {
    return absl::InvalidArgumentError("prior must have full support");
  }
  if (std::isnan(eps_l) || std::isnan(eps_u) || eps_l < 0.0 || eps_u < 0.0) {
    return absl::InvalidArgumentError("epsilons must be nonnegative");
  }

  const std::vector<std::array<int, kMaxGridDim>> rows =
      Compositions(grid_resolution, n);
  const std::size_t per_row = rows.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_row;

  // Ratio-form bounds on P_{X|Y=y}(x) / P_X(x).
  const double ratio_hi = std::exp(eps_u + kAuditTolerance);
  const double ratio_lo = std::exp(-(eps_l + kAuditTolerance));
  const double step = 1.0 / grid_resolution;

  auto search = [&](std::size_t begin, std::size_t end) {
    Candidate best;
    std::array<double, kMaxGridDim * kMaxGridDim> m{};
    std::array<int, kMaxGridDim * kMaxGridDim> cells{};
    for (std::size_t index = begin; index < end; ++index) {
      std::size_t rest = index;
      for (std::size_t i = n; i-- > 0;) {
        const auto& row = rows[rest % per_row];
        rest /= per_row;
        for (std::size_t j = 0; j < n; ++j) {
          cells[i * n + j] = row[j];
          m[i * n + j] = row[j] * step;
        }
      }
      bool feasible = true;
      for (std::size_t y = 0; y < n && feasible; ++y) {
        double py = 0.0;
        for (std::size_t x = 0; x < n; ++x) py += prior[x] * m[x * n + y];
        if (!(py > 0.0)) continue;
        for (std::size_t x = 0; x < n; ++x) {
          const double ratio = m[x * n + y] / py;
          if (ratio > ratio_hi || ratio < ratio_lo) {
            feasible = false;
            break;
          }
        }
      }
      if (!feasible) continue;
      ++best.feasible;
      double utility = 0.0;
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          utility += prior[x] * m[x * n + y] * gain(x, y);
        }
      }
      if (Better(utility, cells, best)) {
        best.found = true;
        best.utility = utility;
        best.cells = cells;
      }
    }
    return best;
  };

  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 16);
  std::vector<Candidate> partial(workers);
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(total, w * chunk);
      const std::size_t end = std::min(total, begin + chunk);
      threads.emplace_back(
          [&, w, begin, end] { partial[w] = search(begin, end); });
    }
  }
  Candidate best;
  std::size_t feasible = 0;
  for (const Candidate& c : partial) {
    feasible += c.feasible;
    if (c.found && Better(c.utility, c.cells, best)) {
      best.found = true;
      best.utility = c.utility;
      best.cells = c.cells;
    }
  }
  if (!best.found) {
    return absl::NotFoundError("no grid point satisfies the ALIP bounds");
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = best.cells[i * n + j] * step;
    }
  }
  absl::StatusOr<StochasticMatrix> mechanism =
      StochasticMatrix::Create(std::move(out));
  if (!mechanism.ok()) return mechanism.status();
  return GridSearchResult{*std::move(mechanism), best.utility, feasible,
                          total};
}

}  // namespace densleak
