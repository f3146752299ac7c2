# Copyright 2026 The noiseless-privacy Authors
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

"""Explicit (epsilon, delta) guarantees for sums of randomized records.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    CompromisePlan,
    DataVectorSpec,
    DependencyBlock,
    DistributionSpec,
    MomentSummary,
    PrivacyBound,
    binomial_delta_given_eps,
    binomial_eps_given_delta,
    central_moments,
    dependent_bound,
    dependent_bound_compromised,
    eps_with_laplace,
    eps_with_noise,
    exact_np_delta,
    hockey_stick_delta,
    independent_bound,
    independent_bound_compromised,
    laplace_baseline_variance,
    mc_estimate_delta,
    required_noise_variance,
    worst_case_compromise,
)

__all__ = [
    "CompromisePlan",
    "DataVectorSpec",
    "DependencyBlock",
    "DistributionSpec",
    "MomentSummary",
    "PrivacyBound",
    "binomial_delta_given_eps",
    "binomial_eps_given_delta",
    "central_moments",
    "dependent_bound",
    "dependent_bound_compromised",
    "eps_with_laplace",
    "eps_with_noise",
    "exact_np_delta",
    "hockey_stick_delta",
    "independent_bound",
    "independent_bound_compromised",
    "laplace_baseline_variance",
    "mc_estimate_delta",
    "required_noise_variance",
    "worst_case_compromise",
]

__version__ = "0.1.0"
