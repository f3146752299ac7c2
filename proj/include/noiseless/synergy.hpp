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

#ifndef NOISELESS_SYNERGY_HPP_
#define NOISELESS_SYNERGY_HPP_

#include <cstdint>

namespace noiseless {

// How much independent zero-mean noise to add on top of the data's own
// randomness, and what it buys. Only the noise variance enters the epsilon;
// the family is carried for reporting and for sampling checks.
struct NoisePlan {
  enum class Family { kGenericUnbiased, kLaplace };

  double noise_variance = 0.0;
  Family family = Family::kGenericUnbiased;
  double laplace_scale = 0.0;  // set when family == kLaplace
  double resulting_epsilon = 0.0;
  double baseline_laplace_variance = 0.0;  // noise a pure-noise design needs
};

// Epsilon for a sum whose randomness is data variance plus an independent
// zero-mean noise term: sqrt(sens^2 ln(n) / (data_variance + noise_variance)).
// Adding noise never changes the delta of the underlying guarantee.
double eps_with_noise(double sensitivity, std::int64_t n, double data_variance,
                      double noise_variance);

// Smallest added noise variance that reaches a target epsilon:
// max((sens^2 ln(n) - eps^2 * data_variance) / eps^2, 0). Zero exactly when
// the data variance alone already achieves the target.
double required_noise_variance(double sensitivity, std::int64_t n, double data_variance,
                               double target_epsilon);

// Combined epsilon when laplace noise calibrated for eps2 rides on data whose
// own randomness gives eps1: sqrt(eps1^2 eps2^2 ln(n) / (2 eps1^2 + eps2^2 ln(n))).
double eps_with_laplace(double eps1, double eps2, std::int64_t n);

// Variance 2 sens^2 / eps^2 of the laplace noise a pure-noise design needs at
// the same epsilon; the comparison baseline for every noise plan.
double laplace_baseline_variance(double sensitivity, double epsilon);

}  // namespace noiseless

#endif  // NOISELESS_SYNERGY_HPP_
