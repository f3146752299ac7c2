// Copyright 2026 The noiseless-privacy Authors
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

#ifndef NOISELESS_ADVERSARY_HPP_
#define NOISELESS_ADVERSARY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "noiseless/model.hpp"

namespace noiseless {

// Which records an adversary is assumed to observe outright, and the moment
// totals of what remains. Selections are tracked per record group; explicit
// index sets are kept when the caller provided one.
struct CompromisePlan {
  double gamma = 0.0;
  std::int64_t compromised_count = 0;
  std::vector<std::int64_t> taken_per_group;
  std::optional<std::vector<std::int64_t>> explicit_indices;

  std::int64_t remaining_n = 0;
  double remaining_variance = 0.0;  // sum of remaining per-record variances
  std::optional<double> remaining_sum_abs_third;
  std::optional<double> remaining_sum_fourth;
};

// The epsilon-worst compromise of ceil(gamma * n) records: highest variance
// first, ties broken by larger absolute third moment, then input order.
CompromisePlan worst_case_compromise(const DataVectorSpec& spec, double gamma);

// Plan for a caller-chosen compromised index set (expanded record indices).
CompromisePlan compromise_from_indices(const DataVectorSpec& spec, double gamma,
                                       const std::vector<std::int64_t>& indices);

// Supplementary delta-worst search. Exhaustive over all selections for
// n <= 20, greedy beyond that. Only defined for independent records; the
// result is advisory and reported alongside the epsilon-worst plan.
CompromisePlan delta_adversarial_compromise(const DataVectorSpec& spec, double gamma,
                                            const BoundOptions& options = {});

// Independent-record bound with the compromised records removed from the
// moment sums. The record count inside the bound shrinks to (1-gamma) n
// while the trailing tail term keeps the full n.
PrivacyBound independent_bound_compromised(const DataVectorSpec& spec,
                                           const CompromisePlan& plan,
                                           const BoundOptions& options = {});

// Dependent-record bound on the uncompromised remainder. The variance of the
// remaining sum cannot be derived from marginals, so the caller supplies it.
PrivacyBound dependent_bound_compromised(const DataVectorSpec& spec,
                                         const CompromisePlan& plan,
                                         double remaining_total_variance,
                                         const BoundOptions& options = {});

}  // namespace noiseless

#endif  // NOISELESS_ADVERSARY_HPP_
