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

#ifndef NOISELESS_BOUNDS_INDEPENDENT_HPP_
#define NOISELESS_BOUNDS_INDEPENDENT_HPP_

#include <cstdint>
#include <string>

#include "noiseless/model.hpp"

namespace noiseless {

// Moment profile of a sum of n independent (not necessarily identical)
// records: the mean per-record variance, the summed absolute third central
// moments, and the sensitivity bound on any single record's contribution.
struct IndependentAggregate {
  std::int64_t n = 0;
  double mean_variance = 0.0;
  double sum_abs_third = 0.0;
  double sensitivity = 0.0;
};

// Guarantee for a sum of independent records via the normal-approximation
// route:
//   epsilon = sqrt(sens^2 ln(n) / (n * mean_variance))
//   delta   = be_factor * sum_abs_third / (n * mean_variance)^{3/2}
//             * (1 + e^epsilon) + 4 / (5 sqrt(n))
// A failed normal-mechanism consistency check or a vacuous delta is surfaced
// in the diagnostics, never silently repaired.
PrivacyBound independent_bound(const IndependentAggregate& agg,
                               const BoundOptions& options = {});
PrivacyBound independent_bound(const DataVectorSpec& spec, const BoundOptions& options = {});

// Whether (sigma, epsilon, delta_param) satisfies the additive-gaussian
// calibration sigma * epsilon / sensitivity > sqrt(2 ln(1.25 / delta_param)).
// Used as an internal consistency diagnostic on the (epsilon, delta) pairs
// the bounds emit.
bool gaussian_mechanism_check(double sigma, double delta_param, double sensitivity,
                              double epsilon);

// Uniform normal-approximation error C * sum_abs_third / sum_variance^{3/2}
// with the default constant 0.56.
double berry_esseen_distance(double sum_abs_third, double sum_variance, double c = 0.56);

namespace detail {

// Shared core for the independent-record bound and its compromised variant:
// `m` records remain in the sum (sum_variance and sum_abs_third are taken
// over them) while the trailing tail term keeps using `tail_n`.
PrivacyBound clt_sum_bound(std::int64_t m, double sum_variance, double sum_abs_third,
                           double sensitivity, std::int64_t tail_n, double be_factor,
                           const std::string& source);

}  // namespace detail

}  // namespace noiseless

#endif  // NOISELESS_BOUNDS_INDEPENDENT_HPP_
