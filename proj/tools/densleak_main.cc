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

// densleak: audit, convert, design, region and verify privacy mechanisms
// from the command line.
//
// Exit status: 0 on success, 1 on invalid input or usage, 2 when `verify`
// finds a violated property.

#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "densleak/conversions.h"
#include "densleak/io.h"
#include "densleak/leakage.h"
#include "densleak/mechanism_design.h"
#include "densleak/probability.h"
#include "densleak/verify.h"

namespace densleak {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitViolation = 2;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status.message() << "\n";
  return kExitInvalid;
}

int Usage(const CLI::App& command, const std::string& message) {
  std::cerr << "error: " << message << "\n\n" << command.help();
  return kExitInvalid;
}

// Writes to `path`, or to stdout when it is empty.
int Emit(const std::string& path, const std::string& contents) {
  if (path.empty()) {
    std::cout << contents;
    return kExitOk;
  }
  absl::Status status = WriteFile(path, contents);
  return status.ok() ? kExitOk : Fail(status);
}

struct AuditFlags {
  std::string model;
  bool oracles = false;
  std::uint64_t seed = 0;
  int trials = 200;
  std::string out;
};

int RunAudit(const AuditFlags& flags) {
  absl::StatusOr<ModelFile> file = ReadModelFile(flags.model);
  if (!file.ok()) return Fail(file.status());
  absl::StatusOr<PrivacyReport> report = Audit(file->model);
  if (!report.ok()) return Fail(report.status());
  std::optional<OracleSuiteReport> oracles;
  if (flags.oracles) {
    OracleSuiteOptions options;
    options.seed = flags.seed;
    options.trials = flags.trials;
    absl::StatusOr<OracleSuiteReport> suite =
        RunOracleSuite(file->model, options);
    if (!suite.ok()) return Fail(suite.status());
    oracles = *std::move(suite);
  }
  return Emit(flags.out,
              ReportToJson(*report, file->y_labels, flags.seed,
                           oracles ? &*oracles : nullptr) +
                  "\n");
}

struct ConvertFlags {
  double eps = 0.0;
  double p_min = 0.0;
  std::string from = "pml";
};

int RunConvert(const ConvertFlags& flags) {
  absl::StatusOr<ConversionResult> result =
      ConvertFromPml(flags.eps, flags.p_min);
  if (!result.ok()) return Fail(result.status());
  std::cout << ConversionToJson(*result) << "\n";
  return kExitOk;
}

struct RegionFlags {
  double p_min = 0.0;
  double max_eps_u = 0.0;
  int steps = 0;
  std::string out;
};

int RunRegion(const RegionFlags& flags) {
  absl::StatusOr<RegionCurve> curve =
      RegionSweep(flags.p_min, flags.max_eps_u, flags.steps);
  if (!curve.ok()) return Fail(curve.status());
  return Emit(flags.out, RegionToCsv(*curve));
}

struct DesignFlags {
  std::string prior;
  std::optional<double> eps_u;
  double eps_l = std::numeric_limits<double>::infinity();
  std::string out;
  double eps_ldp = 0.0;
  std::string rr_out;
};

absl::StatusOr<Pmf> LoadPrior(const std::string& arg) {
  // A readable file wins over inline text.
  absl::StatusOr<std::string> text = ReadFile(arg);
  return ParsePrior(text.ok() ? *text : arg);
}

int RunDesign(const DesignFlags& flags) {
  absl::StatusOr<Pmf> prior = LoadPrior(flags.prior);
  if (!prior.ok()) return Fail(prior.status());
  DesignSpec spec{*prior, *flags.eps_u, flags.eps_l};
  absl::StatusOr<StochasticMatrix> mechanism =
      OptimalHighPrivacyMechanism(spec);
  if (!mechanism.ok()) return Fail(mechanism.status());
  const std::size_t n = prior->size();
  absl::StatusOr<JointModel> model =
      MakeJoint(*std::move(prior), *std::move(mechanism));
  if (!model.ok()) return Fail(model.status());
  ModelFile file{*std::move(model), DefaultLabels('x', n),
                 DefaultLabels('y', n)};
  return Emit(flags.out, ModelToJson(file) + "\n");
}

int RunDesignRr(const DesignFlags& flags) {
  absl::StatusOr<StochasticMatrix> rr =
      BinaryRandomizedResponse(flags.eps_ldp);
  if (!rr.ok()) return Fail(rr.status());
  return Emit(flags.rr_out, MechanismToJson(*rr) + "\n");
}

struct VerifyFlags {
  std::string model;
  std::uint64_t seed = 0;
  int trials = 200;
  std::string out;
};

int RunVerify(const VerifyFlags& flags) {
  absl::StatusOr<ModelFile> file = ReadModelFile(flags.model);
  if (!file.ok()) return Fail(file.status());
  OracleSuiteOptions options;
  options.seed = flags.seed;
  options.trials = flags.trials;
  absl::StatusOr<OracleSuiteReport> report =
      RunOracleSuite(file->model, options);
  if (!report.ok()) return Fail(report.status());
  const int written = Emit(flags.out, OracleReportToJson(*report) + "\n");
  if (written != kExitOk) return written;
  return report->passed ? kExitOk : kExitViolation;
}

int Main(int argc, char** argv) {
  CLI::App app{"Pointwise leakage auditing and mechanism design."};
  app.name("densleak");
  app.require_subcommand(1);

  AuditFlags audit;
  CLI::App* audit_cmd = app.add_subcommand(
      "audit", "Compute every leakage measure of a model.");
  audit_cmd->add_option("--model", audit.model, "Model JSON file")
      ->required();
  audit_cmd->add_flag("--oracles", audit.oracles,
                      "Append adversarial cross-check margins");
  audit_cmd->add_option("--seed", audit.seed, "Oracle sampling seed")
      ->capture_default_str();
  audit_cmd->add_option("--trials", audit.trials, "Oracle trials per output")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  audit_cmd->add_option("--out", audit.out, "Output path (default stdout)");

  ConvertFlags convert;
  CLI::App* convert_cmd = app.add_subcommand(
      "convert", "Guarantees implied by an eps-PML guarantee.");
  convert_cmd->add_option("--eps", convert.eps, "Input epsilon")->required();
  convert_cmd->add_option("--p-min", convert.p_min, "Smallest prior mass")
      ->required();
  convert_cmd->add_option("--from", convert.from, "Source notion")
      ->capture_default_str()
      ->check(CLI::IsMember({"pml"}));

  RegionFlags region;
  CLI::App* region_cmd = app.add_subcommand(
      "region", "Sweep the implied lower-bound curves as CSV.");
  region_cmd->add_option("--p-min", region.p_min, "Smallest prior mass")
      ->required();
  region_cmd->add_option("--max-eps-u", region.max_eps_u,
                         "Largest eps_u on the grid")
      ->required();
  region_cmd->add_option("--steps", region.steps, "Number of grid points")
      ->required();
  region_cmd->add_option("--out", region.out, "CSV path (default stdout)");

  DesignFlags design;
  CLI::App* design_cmd = app.add_subcommand(
      "design", "Optimal high-privacy mechanism for a prior.");
  design_cmd->add_option("--prior", design.prior,
                         "Prior as a JSON array, CSV values, or a file");
  design_cmd->add_option("--eps-u", design.eps_u, "Upper leakage bound");
  design_cmd->add_option("--eps-l", design.eps_l,
                         "Explicit lower leakage bound (default none)");
  design_cmd->add_option("--out", design.out, "Output path (default stdout)");
  CLI::App* rr_cmd = design_cmd->add_subcommand(
      "rr", "Binary randomized response.");
  rr_cmd->add_option("--eps-ldp", design.eps_ldp, "LDP epsilon")->required();
  rr_cmd->add_option("--out", design.rr_out, "Output path (default stdout)");

  VerifyFlags verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the adversarial oracle suite on a model.");
  verify_cmd->add_option("--model", verify.model, "Model JSON file")
      ->required();
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Trials per output")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", verify.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  if (*audit_cmd) return RunAudit(audit);
  if (*convert_cmd) return RunConvert(convert);
  if (*region_cmd) return RunRegion(region);
  if (*rr_cmd) {
    if (!design.prior.empty() || design.eps_u || !design.out.empty()) {
      return Usage(*design_cmd,
                   "design rr does not take --prior, --eps-u or --out "
                   "before the subcommand");
    }
    return RunDesignRr(design);
  }
  if (*design_cmd) {
    if (design.prior.empty()) return Usage(*design_cmd, "--prior is required");
    if (!design.eps_u) return Usage(*design_cmd, "--eps-u is required");
    return RunDesign(design);
  }
  if (*verify_cmd) return RunVerify(verify);
  return Usage(app, "no command given");
}

}  // namespace
}  // namespace densleak

int main(int argc, char** argv) { return densleak::Main(argc, argv); }
