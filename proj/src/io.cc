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

#include "densleak/io.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "absl/strings/strip.h"
#include "json.hpp"

namespace densleak {
namespace {

using Json = nlohmann::ordered_json;

void Dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        Dump(value, out);
      }
      out += '}';
      return;
    }
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        Dump(value, out);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (std::isfinite(v)) {
        out += FormatNumber(v);
      } else {
        out += '"' + FormatNumber(v) + '"';
      }
      return;
    }
    default:
      out += j.dump();
  }
}

std::string DumpJson(const Json& j) {
  std::string out;
  Dump(j, out);
  return out;
}

Json Rows(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::Status FieldError(absl::string_view field, absl::string_view message) {
  return absl::InvalidArgumentError(absl::StrCat(field, ": ", message));
}

absl::StatusOr<std::vector<double>> NumberArray(const Json& j,
                                                absl::string_view field) {
  if (!j.is_array()) return FieldError(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      return FieldError(absl::StrCat(field, "[", i, "]"), "expected a number");
    }
    out.push_back(j[i].get<double>());
  }
  return out;
}

absl::StatusOr<std::vector<std::string>> Labels(const Json& root,
                                                const char* field,
                                                std::size_t expected,
                                                char prefix) {
  if (!root.contains(field)) return DefaultLabels(prefix, expected);
  const Json& j = root[field];
  if (!j.is_array()) return FieldError(field, "expected an array of strings");
  if (j.size() != expected) {
    return FieldError(field, absl::StrCat("expected ", expected,
                                          " labels, got ", j.size()));
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      return FieldError(absl::StrCat(field, "[", i, "]"), "expected a string");
    }
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<std::string> DefaultLabels(char prefix, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back(absl::StrCat(std::string(1, prefix), i));
  }
  return out;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

absl::StatusOr<ModelFile> ParseModelJson(absl::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // The parser message carries the line and column.
    return absl::InvalidArgumentError(
        absl::StrCat("malformed JSON: ", e.what()));
  }
  if (!root.is_object()) {
    return absl::InvalidArgumentError("model must be a JSON object");
  }
  if (!root.contains("prior")) return FieldError("prior", "missing field");
  if (!root.contains("mechanism")) {
    return FieldError("mechanism", "missing field");
  }
  absl::StatusOr<std::vector<double>> prior_values =
      NumberArray(root["prior"], "prior");
  if (!prior_values.ok()) return prior_values.status();
  const Json& mech = root["mechanism"];
  if (!mech.is_array()) {
    return FieldError("mechanism", "expected an array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < mech.size(); ++i) {
    absl::StatusOr<std::vector<double>> row =
        NumberArray(mech[i], absl::StrCat("mechanism[", i, "]"));
    if (!row.ok()) return row.status();
    rows.push_back(*std::move(row));
  }
  absl::StatusOr<Pmf> prior = Pmf::Create(*std::move(prior_values));
  if (!prior.ok()) {
    return FieldError("prior", prior.status().message());
  }
  absl::StatusOr<StochasticMatrix> mechanism = StochasticMatrix::Create(rows);
  if (!mechanism.ok()) {
    return FieldError("mechanism", mechanism.status().message());
  }
  const std::size_t n = mechanism->rows();
  const std::size_t m = mechanism->cols();
  absl::StatusOr<JointModel> model =
      MakeJoint(*std::move(prior), *std::move(mechanism));
  if (!model.ok()) return model.status();
  absl::StatusOr<std::vector<std::string>> x_labels =
      Labels(root, "x_labels", n, 'x');
  if (!x_labels.ok()) return x_labels.status();
  absl::StatusOr<std::vector<std::string>> y_labels =
      Labels(root, "y_labels", m, 'y');
  if (!y_labels.ok()) return y_labels.status();
  return ModelFile{*std::move(model), *std::move(x_labels),
                   *std::move(y_labels)};
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write ", path));
  }
  out << contents;
  return out ? absl::OkStatus()
             : absl::DataLossError(absl::StrCat("short write to ", path));
}

absl::StatusOr<ModelFile> ReadModelFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<ModelFile> model = ParseModelJson(*text);
  if (!model.ok()) {
    return absl::Status(model.status().code(),
                        absl::StrCat(path, ": ", model.status().message()));
  }
  return model;
}

absl::StatusOr<Pmf> ParsePrior(absl::string_view text) {
  const absl::string_view trimmed = absl::StripAsciiWhitespace(text);
  std::vector<double> values;
  if (absl::StartsWith(trimmed, "[")) {
    Json j;
    try {
      j = Json::parse(trimmed.begin(), trimmed.end());
    } catch (const Json::parse_error& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed prior JSON: ", e.what()));
    }
    absl::StatusOr<std::vector<double>> parsed = NumberArray(j, "prior");
    if (!parsed.ok()) return parsed.status();
    values = *std::move(parsed);
  } else {
    std::size_t index = 0;
    for (absl::string_view field :
         absl::StrSplit(trimmed, absl::ByAnyChar(",\n"), absl::SkipEmpty())) {
      field = absl::StripAsciiWhitespace(field);
      if (field.empty()) continue;
      double v = 0.0;
      std::string buf(field);
      char* end = nullptr;
      v = std::strtod(buf.c_str(), &end);
      if (end != buf.c_str() + buf.size()) {
        return FieldError(absl::StrCat("prior[", index, "]"),
                          absl::StrCat("cannot parse '", field, "'"));
      }
      values.push_back(v);
      ++index;
    }
  }
  return Pmf::Create(std::move(values));
}

std::string ModelToJson(const ModelFile& file) {
  Json j;
  Json prior = Json::array();
  for (double p : file.model.prior().probs()) prior.push_back(p);
  j["prior"] = std::move(prior);
  j["mechanism"] = Rows(file.model.mechanism().entries());
  j["x_labels"] = file.x_labels;
  j["y_labels"] = file.y_labels;
  return DumpJson(j);
}

std::string MechanismToJson(const StochasticMatrix& mechanism) {
  Json j;
  j["mechanism"] = Rows(mechanism.entries());
  return DumpJson(j);
}

std::string ReportToJson(const PrivacyReport& report,
                         const std::vector<std::string>& y_labels,
                         std::uint64_t seed,
                         const OracleSuiteReport* oracles) {
  Json j;
  Json per_y = Json::array();
  for (const OutcomeLeakage& o : report.per_y) {
    Json entry;
    entry["y"] = y_labels.at(o.y);
    entry["pml"] = o.pml;
    entry["lambda"] = o.lambda;
    per_y.push_back(std::move(entry));
  }
  j["per_y"] = std::move(per_y);
  j["pml"] = report.pml;
  j["eps_lip"] = report.eps_lip;
  j["alip"] = {{"eps_l", report.alip.eps_l}, {"eps_u", report.alip.eps_u}};
  j["eps_ldp"] = report.eps_ldp;
  j["l_cost"] = report.l_cost;
  j["l_rc"] = report.l_realizable_cost;
  Json unreachable = Json::array();
  for (std::size_t y : report.unreachable) unreachable.push_back(y_labels.at(y));
  j["unreachable"] = std::move(unreachable);
  j["seed"] = seed;
  if (oracles != nullptr) {
    j["oracles"] = Json::parse(OracleReportToJson(*oracles));
  }
  return DumpJson(j);
}

std::string ConversionToJson(const ConversionResult& result) {
  Json j;
  j["from"] = "pml";
  j["input_eps"] = result.input_eps;
  j["p_min"] = result.p_min;
  j["eps_l"] = result.eps_l;
  j["eps_u"] = result.eps_u;
  j["eps_lip"] = result.eps_lip;
  j["eps_ldp"] = result.eps_ldp;
  j["regime"] = std::string(RegimeName(result.regime));
  return DumpJson(j);
}

std::string OracleReportToJson(const OracleSuiteReport& report) {
  Json j;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["passed"] = report.passed;
  Json checks = Json::array();
  for (const OracleCheck& c : report.checks) {
    Json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["worst_margin"] = c.worst_margin;
    entry["tolerance"] = c.tolerance;
    entry["evaluations"] = c.evaluations;
    checks.push_back(std::move(entry));
  }
  j["checks"] = std::move(checks);
  return DumpJson(j);
}

std::string RegionToCsv(const RegionCurve& curve) {
  std::string out = "eps_u,prop1_eps_l,prop2_eps_l_inverse\n";
  for (const RegionPoint& p : curve.samples) {
    absl::StrAppend(&out, FormatNumber(p.eps_u), ",",
                    FormatNumber(p.prop1_eps_l), ",",
                    FormatNumber(p.prop2_eps_l_inverse), "\n");
  }
  return out;
}

}  // namespace densleak
