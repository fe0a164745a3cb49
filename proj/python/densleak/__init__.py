# Copyright 2026 The densleak Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Information-density leakage measures and privacy mechanism design."""

from ._densleak import (
    audit,
    binary_randomized_response,
    brute_force_best_mechanism,
    convert_from_pml,
    eps_l_of_eps_u,
    eps_u_of_eps_l,
    expected_utility,
    function_from_cost,
    info_density,
    lambda_c,
    lambda_sup_analytic,
    lambda_u,
    ldp_epsilon,
    normalize_model_json,
    optimal_high_privacy_mechanism,
    region_sweep,
    report_json,
    run_oracle_suite,
    w_achiever,
)

__all__ = [
    "audit",
    "binary_randomized_response",
    "brute_force_best_mechanism",
    "convert_from_pml",
    "eps_l_of_eps_u",
    "eps_u_of_eps_l",
    "expected_utility",
    "function_from_cost",
    "info_density",
    "lambda_c",
    "lambda_sup_analytic",
    "lambda_u",
    "ldp_epsilon",
    "normalize_model_json",
    "optimal_high_privacy_mechanism",
    "region_sweep",
    "report_json",
    "run_oracle_suite",
    "w_achiever",
]
