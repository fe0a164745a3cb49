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

// File formats.
//
// Model JSON:
//   {"prior": [..], "mechanism": [[..], ..], "x_labels": [..], "y_labels": [..]}
// Labels are optional and default to x1..xN and y1..yM.
//
// Numbers are written with 17 significant digits; +inf is written as the
// string "inf" (and -inf as "-inf").

#ifndef DENSLEAK_IO_H_
#define DENSLEAK_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "densleak/conversions.h"
#include "densleak/leakage.h"
#include "densleak/probability.h"
#include "densleak/verify.h"

namespace densleak {

struct ModelFile {
  JointModel model;
  std::vector<std::string> x_labels;
  std::vector<std::string> y_labels;
};

std::vector<std::string> DefaultLabels(char prefix, std::size_t count);

absl::StatusOr<ModelFile> ParseModelJson(absl::string_view text);
absl::StatusOr<ModelFile> ReadModelFile(const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view contents);

// Accepts a JSON array ("[0.5, 0.5]") or comma-separated values
// ("0.5,0.5").
absl::StatusOr<Pmf> ParsePrior(absl::string_view text);

// "%.17g", or "inf" / "-inf" / "nan".
std::string FormatNumber(double value);

std::string ModelToJson(const ModelFile& file);
std::string MechanismToJson(const StochasticMatrix& mechanism);
// `seed` is echoed into the report; `oracles` is appended when non-null.
std::string ReportToJson(const PrivacyReport& report,
                         const std::vector<std::string>& y_labels,
                         std::uint64_t seed,
                         const OracleSuiteReport* oracles = nullptr);
std::string ConversionToJson(const ConversionResult& result);
std::string OracleReportToJson(const OracleSuiteReport& report);

// Header "eps_u,prop1_eps_l,prop2_eps_l_inverse" followed by one row per
// sample.
std::string RegionToCsv(const RegionCurve& curve);

}  // namespace densleak

#endif  // DENSLEAK_IO_H_
