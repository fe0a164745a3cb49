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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"

namespace densleak {
namespace {

absl::Status CheckEntry(double v, absl::string_view what, std::size_t i,
                        std::size_t j) {
  if (!std::isfinite(v) || v < 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        what, "[", i, "][", j, "] = ", v, " must be finite and nonnegative"));
  }
  return absl::OkStatus();
}

// Sums within a few ulps of one are left untouched so that normalizing an
// already-normalized vector is the identity.
bool AlreadyNormalized(double sum, std::size_t terms) {
  return std::abs(sum - 1.0) <=
         2.0 * static_cast<double>(terms) *
             std::numeric_limits<double>::epsilon();
}

}  // namespace

absl::StatusOr<Pmf> Pmf::Create(std::vector<double> probs) {
  if (probs.empty()) {
    return absl::InvalidArgumentError("probability vector is empty");
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "probability[", i, "] = ", probs[i],
          " must be finite and nonnegative"));
    }
  }
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(sum - 1.0) > kStochasticTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("probabilities sum to ", sum, ", expected 1"));
  }
  if (!AlreadyNormalized(sum, probs.size())) {
    for (double& p : probs) p /= sum;
  }
  return Pmf(std::move(probs));
}

Pmf Pmf::Uniform(std::size_t n) {
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double Pmf::MinProb() const {
  double min = std::numeric_limits<double>::infinity();
  for (double p : probs_) {
    if (p > 0.0) min = std::min(min, p);
  }
  return min;
}

bool Pmf::HasFullSupport() const {
  return std::all_of(probs_.begin(), probs_.end(),
                     [](double p) { return p > 0.0; });
}

absl::StatusOr<Matrix> Matrix::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    return absl::InvalidArgumentError("matrix has no entries");
  }
  const std::size_t cols = rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " has ", rows[i].size(),
                       " entries, expected ", cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  return out;
}

absl::StatusOr<StochasticMatrix> StochasticMatrix::Create(Matrix entries) {
  if (entries.rows() == 0 || entries.cols() == 0) {
    return absl::InvalidArgumentError("matrix has no entries");
  }
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      if (auto s = CheckEntry(entries(i, j), "mechanism", i, j); !s.ok()) {
        return s;
      }
      sum += entries(i, j);
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", i, " sums to ", sum, ", expected 1"));
    }
    if (!AlreadyNormalized(sum, entries.cols())) {
      for (std::size_t j = 0; j < entries.cols(); ++j) entries(i, j) /= sum;
    }
  }
  return StochasticMatrix(std::move(entries), /*row_stochastic=*/true);
}

absl::StatusOr<StochasticMatrix> StochasticMatrix::Create(
    const std::vector<std::vector<double>>& rows) {
  absl::StatusOr<Matrix> m = Matrix::FromRows(rows);
  if (!m.ok()) return m.status();
  return Create(*std::move(m));
}

absl::StatusOr<StochasticMatrix> StochasticMatrix::CreateNonnegative(
    Matrix entries) {
  if (entries.rows() == 0 || entries.cols() == 0) {
    return absl::InvalidArgumentError("matrix has no entries");
  }
  bool stochastic = true;
  for (std::size_t i = 0; i < entries.rows(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < entries.cols(); ++j) {
      if (auto s = CheckEntry(entries(i, j), "matrix", i, j); !s.ok()) {
        return s;
      }
      sum += entries(i, j);
    }
    stochastic = stochastic && std::abs(sum - 1.0) <= kStochasticTolerance;
  }
  return StochasticMatrix(std::move(entries), stochastic);
}

std::size_t JointModel::num_reachable() const {
  return static_cast<std::size_t>(std::count_if(
      marginal_.begin(), marginal_.end(), [](double p) { return p > 0.0; }));
}

std::vector<double> JointModel::Posterior(std::size_t y) const {
  std::vector<double> out(num_inputs());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = posteriors_(x, y);
  return out;
}

absl::StatusOr<JointModel> MakeJoint(Pmf prior, StochasticMatrix mechanism) {
  if (mechanism.rows() == 0 || mechanism.cols() == 0) {
    return absl::InvalidArgumentError("empty alphabet");
  }
  if (prior.size() != mechanism.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("prior has ", prior.size(), " entries but mechanism has ",
                     mechanism.rows(), " rows"));
  }
  if (!mechanism.is_row_stochastic()) {
    return absl::InvalidArgumentError("mechanism is not row-stochastic");
  }
  const std::size_t n = mechanism.rows();
  const std::size_t m = mechanism.cols();
  std::vector<double> marginal(m, 0.0);
  for (std::size_t y = 0; y < m; ++y) {
    for (std::size_t x = 0; x < n; ++x) {
      marginal[y] += prior[x] * mechanism(x, y);
    }
  }
  Matrix posteriors(n, m);
  for (std::size_t y = 0; y < m; ++y) {
    if (!(marginal[y] > 0.0)) continue;
    for (std::size_t x = 0; x < n; ++x) {
      posteriors(x, y) = prior[x] * mechanism(x, y) / marginal[y];
    }
  }
  return JointModel(std::move(prior), std::move(mechanism),
                    std::move(marginal), std::move(posteriors));
}

}  // namespace densleak
