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

#ifndef DENSLEAK_PROBABILITY_H_
#define DENSLEAK_PROBABILITY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace densleak {

// Tolerance used when checking that probabilities sum to one.
inline constexpr double kStochasticTolerance = 1e-9;

// Probability mass function on a finite alphabet {0, ..., N-1}.
class Pmf {
 public:
  // Validates and normalizes `probs`. Entries must be finite and nonnegative
  // and sum to one within kStochasticTolerance; the stored values are divided
  // by their sum.
  static absl::StatusOr<Pmf> Create(std::vector<double> probs);

  // N-point uniform distribution. Requires n >= 1.
  static Pmf Uniform(std::size_t n);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  // Minimum over strictly positive entries.
  double MinProb() const;
  bool HasFullSupport() const;

 private:
  explicit Pmf(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  // Rows must be non-empty and of equal length.
  static absl::StatusOr<Matrix> FromRows(
      const std::vector<std::vector<double>>& rows);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  std::vector<std::vector<double>> ToRows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Nonnegative matrix, optionally constrained to be row-stochastic. Holds
// mechanisms P_{Y|X} and function kernels P_{U|X}.
class StochasticMatrix {
 public:
  // Requires every row to sum to one within kStochasticTolerance; rows are
  // renormalized by their sums.
  static absl::StatusOr<StochasticMatrix> Create(Matrix entries);
  static absl::StatusOr<StochasticMatrix> Create(
      const std::vector<std::vector<double>>& rows);
  // Nonnegativity only; the row-stochastic flag is set if the rows happen to
  // sum to one.
  static absl::StatusOr<StochasticMatrix> CreateNonnegative(Matrix entries);

  std::size_t rows() const { return entries_.rows(); }
  std::size_t cols() const { return entries_.cols(); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(i, j);
  }
  std::span<const double> row(std::size_t i) const { return entries_.row(i); }
  const Matrix& entries() const { return entries_; }
  bool is_row_stochastic() const { return row_stochastic_; }

 private:
  StochasticMatrix(Matrix entries, bool row_stochastic)
      : entries_(std::move(entries)), row_stochastic_(row_stochastic) {}

  Matrix entries_;
  bool row_stochastic_ = false;
};

// Prior P_X together with a mechanism P_{Y|X}, the output marginal P_Y and
// the posteriors P_{X|Y=y}. Immutable.
class JointModel {
 public:
  const Pmf& prior() const { return prior_; }
  const StochasticMatrix& mechanism() const { return mechanism_; }
  std::size_t num_inputs() const { return prior_.size(); }
  std::size_t num_outputs() const { return mechanism_.cols(); }

  std::span<const double> marginal() const { return marginal_; }
  double marginal(std::size_t y) const { return marginal_[y]; }

  // P_Y(y) > 0. Posteriors of unreachable outputs are all zero.
  bool reachable(std::size_t y) const { return marginal_[y] > 0.0; }
  std::size_t num_reachable() const;

  double posterior(std::size_t x, std::size_t y) const {
    return posteriors_(x, y);
  }
  std::vector<double> Posterior(std::size_t y) const;

 private:
  friend absl::StatusOr<JointModel> MakeJoint(Pmf prior,
                                              StochasticMatrix mechanism);
  JointModel(Pmf prior, StochasticMatrix mechanism,
             std::vector<double> marginal, Matrix posteriors)
      : prior_(std::move(prior)),
        mechanism_(std::move(mechanism)),
        marginal_(std::move(marginal)),
        posteriors_(std::move(posteriors)) {}

  Pmf prior_;
  StochasticMatrix mechanism_;
  std::vector<double> marginal_;
  // N x M; column y holds P_{X|Y=y}.
  Matrix posteriors_;
};

absl::StatusOr<JointModel> MakeJoint(Pmf prior, StochasticMatrix mechanism);

inline double MinProb(const Pmf& pmf) { return pmf.MinProb(); }

}  // namespace densleak

#endif  // DENSLEAK_PROBABILITY_H_
