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

#ifndef NOISELESS_BOUNDS_DEPENDENT_HPP_
#define NOISELESS_BOUNDS_DEPENDENT_HPP_

#include <cstdint>
#include <string>

#include "noiseless/model.hpp"

namespace noiseless {

// Moment profile of a sum of locally dependent records: every record depends
// on at most `dependency_bound` records (itself included), `total_variance`
// is the variance of the whole sum, and the third/fourth moment sums run
// over individual marginals.
struct DependentAggregate {
  std::int64_t n = 0;
  double total_variance = 0.0;
  double sum_abs_third = 0.0;
  double sum_fourth = 0.0;
  std::int64_t dependency_bound = 1;
  double sensitivity = 0.0;
};

// Guarantee for a sum of locally dependent records via an exchangeable-pair
// normal approximation:
//   epsilon = sqrt(sens^2 ln(n) / total_variance)
//   delta   = c(eps) * sqrt(D^2/sigma^3 * sum_abs_third
//                           + D^{3/2} sqrt(K) / (sigma^2 sqrt(pi)) * sqrt(sum_fourth))
//             + 4 / (5 sqrt(n))
// with c(eps) = 2 (1 + e^eps) (2/pi)^{1/4} and K the Stein constant knob
// (28 by default, 26 selectable; the choice is echoed in the diagnostics).
PrivacyBound dependent_bound(const DependentAggregate& agg, const BoundOptions& options = {});
PrivacyBound dependent_bound(const DataVectorSpec& spec, const BoundOptions& options = {});

// The Wasserstein-distance bound between the standardized sum and a normal:
//   D^2/sigma^3 * sum_abs_third + D^{3/2} sqrt(K) / (sigma^2 sqrt(pi)) * sqrt(sum_fourth).
double stein_wasserstein_bound(const DependentAggregate& agg, int stein_k = 28);

// Kolmogorov distance from a Wasserstein distance against a standard normal:
// (2/pi)^{1/4} * sqrt(dw).
double kolmogorov_from_wasserstein(double dw);

namespace detail {

// Shared core for the dependent-record bound and its compromised variant.
// `m` records remain in the sum; the trailing tail term uses `tail_n`.
PrivacyBound stein_sum_bound(std::int64_t m, double total_variance, double sum_abs_third,
                             double sum_fourth, std::int64_t dependency_bound,
                             double sensitivity, std::int64_t tail_n, int stein_k,
                             const std::string& source);

}  // namespace detail

}  // namespace noiseless

#endif  // NOISELESS_BOUNDS_DEPENDENT_HPP_
