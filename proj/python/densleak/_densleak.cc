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

// Python bindings. Models are passed as (prior, mechanism) with the prior a
// list of floats and the mechanism a list of rows. Invalid input raises
// ValueError.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "densleak/adversary.h"
#include "densleak/conversions.h"
#include "densleak/io.h"
#include "densleak/leakage.h"
#include "densleak/mechanism_design.h"
#include "densleak/probability.h"
#include "densleak/verify.h"

namespace py = pybind11;

namespace densleak {
namespace {

using Rows = std::vector<std::vector<double>>;

template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  if (!value.ok()) throw py::value_error(std::string(value.status().message()));
  return *std::move(value);
}

Pmf ToPmf(std::vector<double> probs) {
  return Unwrap(Pmf::Create(std::move(probs)));
}

JointModel ToModel(std::vector<double> prior, const Rows& mechanism) {
  return Unwrap(
      MakeJoint(ToPmf(std::move(prior)),
                Unwrap(StochasticMatrix::Create(mechanism))));
}

Matrix ToMatrix(const Rows& rows) { return Unwrap(Matrix::FromRows(rows)); }

py::dict ReportDict(const PrivacyReport& r) {
  py::list per_y;
  for (const OutcomeLeakage& o : r.per_y) {
    py::dict entry;
    entry["y"] = o.y;
    entry["pml"] = o.pml;
    entry["lambda"] = o.lambda;
    per_y.append(entry);
  }
  py::dict out;
  out["per_y"] = per_y;
  out["unreachable"] = r.unreachable;
  out["pml"] = r.pml;
  out["eps_lip"] = r.eps_lip;
  out["alip"] = py::make_tuple(r.alip.eps_l, r.alip.eps_u);
  out["eps_ldp"] = r.eps_ldp;
  out["l_cost"] = r.l_cost;
  out["l_rc"] = r.l_realizable_cost;
  return out;
}

py::dict OracleDict(const OracleSuiteReport& r) {
  py::list checks;
  for (const OracleCheck& c : r.checks) {
    py::dict entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["worst_margin"] = c.worst_margin;
    entry["tolerance"] = c.tolerance;
    entry["evaluations"] = c.evaluations;
    checks.append(entry);
  }
  py::dict out;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["passed"] = r.passed;
  out["checks"] = checks;
  return out;
}

}  // namespace
}  // namespace densleak

PYBIND11_MODULE(_densleak, m) {
  using namespace densleak;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  m.doc() = "Information-density leakage measures and mechanism design.";

  m.def(
      "info_density",
      [](std::vector<double> prior, const Rows& mechanism) {
        const InfoDensityMatrix d =
            Unwrap(ComputeInfoDensity(ToModel(std::move(prior), mechanism)));
        Rows out(d.rows(), std::vector<double>(d.cols()));
        for (std::size_t x = 0; x < d.rows(); ++x) {
          for (std::size_t y = 0; y < d.cols(); ++y) out[x][y] = d(x, y);
        }
        return out;
      },
      py::arg("prior"), py::arg("mechanism"),
      "log posterior/prior ratios; NaN columns mark unreachable outputs.");
  m.def(
      "audit",
      [](std::vector<double> prior, const Rows& mechanism) {
        return ReportDict(Unwrap(Audit(ToModel(std::move(prior), mechanism))));
      },
      py::arg("prior"), py::arg("mechanism"));
  m.def(
      "ldp_epsilon",
      [](const Rows& mechanism) {
        return LdpEpsilon(Unwrap(StochasticMatrix::Create(mechanism)));
      },
      py::arg("mechanism"));

  m.def("eps_l_of_eps_u",
        [](double eps_u, double p_min) {
          return Unwrap(EpsLOfEpsU(eps_u, p_min));
        },
        py::arg("eps_u"), py::arg("p_min"));
  m.def("eps_u_of_eps_l",
        [](double eps_l, double p_min) {
          return Unwrap(EpsUOfEpsL(eps_l, p_min));
        },
        py::arg("eps_l"), py::arg("p_min"));
  m.def(
      "convert_from_pml",
      [](double eps, double p_min) {
        const ConversionResult r = Unwrap(ConvertFromPml(eps, p_min));
        py::dict out;
        out["input_eps"] = r.input_eps;
        out["p_min"] = r.p_min;
        out["eps_l"] = r.eps_l;
        out["eps_u"] = r.eps_u;
        out["eps_lip"] = r.eps_lip;
        out["eps_ldp"] = r.eps_ldp;
        out["regime"] = std::string(RegimeName(r.regime));
        return out;
      },
      py::arg("eps"), py::arg("p_min"));
  m.def(
      "region_sweep",
      [](double p_min, double eps_u_max, int steps) {
        std::vector<std::tuple<double, double, double>> out;
        for (const RegionPoint& s :
             Unwrap(RegionSweep(p_min, eps_u_max, steps)).samples) {
          out.emplace_back(s.eps_u, s.prop1_eps_l, s.prop2_eps_l_inverse);
        }
        return out;
      },
      py::arg("p_min"), py::arg("eps_u_max"), py::arg("steps"));

  m.def(
      "optimal_high_privacy_mechanism",
      [](std::vector<double> prior, double eps_u, double eps_l) {
        return Unwrap(OptimalHighPrivacyMechanism(
                          {ToPmf(std::move(prior)), eps_u, eps_l}))
            .entries()
            .ToRows();
      },
      py::arg("prior"), py::arg("eps_u"), py::arg("eps_l") = kInf);
  m.def(
      "binary_randomized_response",
      [](double eps_ldp) {
        return Unwrap(BinaryRandomizedResponse(eps_ldp)).entries().ToRows();
      },
      py::arg("eps_ldp"));
  m.def(
      "expected_utility",
      [](std::vector<double> prior, const Rows& mechanism, const Rows& gain) {
        return Unwrap(ExpectedUtility(ToPmf(std::move(prior)),
                                      Unwrap(StochasticMatrix::Create(mechanism)),
                                      ToMatrix(gain)));
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("gain"));
  m.def(
      "brute_force_best_mechanism",
      [](std::vector<double> prior, double eps_l, double eps_u,
         const Rows& gain, int resolution) {
        const Pmf pmf = ToPmf(std::move(prior));
        const Matrix g = ToMatrix(gain);
        absl::StatusOr<GridSearchResult> r;
        {
          py::gil_scoped_release release;
          r = BruteForceBestMechanism(pmf, eps_l, eps_u, g, resolution);
        }
        const GridSearchResult best = Unwrap(std::move(r));
        return py::make_tuple(best.mechanism.entries().ToRows(), best.utility);
      },
      py::arg("prior"), py::arg("eps_l"), py::arg("eps_u"), py::arg("gain"),
      py::arg("resolution"));

  m.def(
      "lambda_u",
      [](std::vector<double> prior, const Rows& mechanism, const Rows& kernel,
         std::size_t y) {
        return Unwrap(LambdaU(ToModel(std::move(prior), mechanism),
                              Unwrap(FunctionKernel::Create(kernel)), y));
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("kernel"), py::arg("y"));
  m.def(
      "lambda_sup_analytic",
      [](std::vector<double> prior, const Rows& mechanism, std::size_t y) {
        return Unwrap(
            LambdaSupAnalytic(ToModel(std::move(prior), mechanism), y));
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("y"));
  m.def(
      "lambda_c",
      [](std::vector<double> prior, const Rows& mechanism, const Rows& cost,
         std::size_t y) {
        return Unwrap(LambdaC(ToModel(std::move(prior), mechanism),
                              Unwrap(CostMatrix::Create(cost)), y));
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("cost"), py::arg("y"));
  m.def(
      "w_achiever",
      [](std::vector<double> prior, const Rows& mechanism, std::size_t y,
         std::size_t k) {
        JointModel model = ToModel(std::move(prior), mechanism);
        if (k == 0) k = Unwrap(MinimalAchieverK(model, y));
        const WAchiever w = Unwrap(ConstructWAchiever(model, y, k));
        return py::make_tuple(w.kernel.kernel().entries().ToRows(), w.x_star,
                              w.k);
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("y"), py::arg("k") = 0,
      "Kernel attaining the guessing supremum; k = 0 picks the minimal k.");
  m.def(
      "function_from_cost",
      [](std::vector<double> prior, const Rows& mechanism, const Rows& cost,
         std::size_t y, double tol) {
        const CostRealization r = Unwrap(
            FunctionFromCost(ToModel(std::move(prior), mechanism),
                             Unwrap(CostMatrix::Create(cost)), y, tol));
        py::dict out;
        out["kind"] = r.kind == CostRealization::Kind::kMixtureLimit
                          ? "mixture_limit"
                          : "binary_kernel";
        out["delta"] = r.delta_star;
        out["lambda_c"] = r.lambda_c;
        out["lambda_achieved"] = r.lambda_achieved;
        out["iterations"] = r.iterations;
        return out;
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("cost"), py::arg("y"),
      py::arg("tol") = 1e-6);
  m.def(
      "run_oracle_suite",
      [](std::vector<double> prior, const Rows& mechanism, std::uint64_t seed,
         int trials) {
        JointModel model = ToModel(std::move(prior), mechanism);
        OracleSuiteOptions options;
        options.seed = seed;
        options.trials = trials;
        absl::StatusOr<OracleSuiteReport> r;
        {
          py::gil_scoped_release release;
          r = RunOracleSuite(model, options);
        }
        return OracleDict(Unwrap(std::move(r)));
      },
      py::arg("prior"), py::arg("mechanism"), py::arg("seed") = 0,
      py::arg("trials") = 200);

  m.def(
      "report_json",
      [](const std::string& model_json, std::uint64_t seed) {
        const ModelFile f = Unwrap(ParseModelJson(model_json));
        return ReportToJson(Unwrap(Audit(f.model)), f.y_labels, seed);
      },
      py::arg("model_json"), py::arg("seed") = 0,
      "Audit a model given as JSON text and return the report as JSON text.");
  m.def(
      "normalize_model_json",
      [](const std::string& model_json) {
        return ModelToJson(Unwrap(ParseModelJson(model_json)));
      },
      py::arg("model_json"));
}
