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

#include "noiseless/synergy.hpp"

#include <cmath>
#include <stdexcept>

#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

void check_n(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("noise planning: n must be >= 2");
}

void check_sensitivity(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::invalid_argument("noise planning: sensitivity must be > 0");
  }
}

}  // namespace

double eps_with_noise(double sensitivity, std::int64_t n, double data_variance,
                      double noise_variance) {
  check_sensitivity(sensitivity);
  check_n(n);
  if (!(data_variance >= 0.0) || !(noise_variance >= 0.0)) {
    throw std::invalid_argument("noise planning: variances must be >= 0");
  }
  if (data_variance == 0.0 && noise_variance == 0.0) {
    throw std::domain_error("no randomness at all");
  }
  return detail::sum_epsilon(sensitivity, n, data_variance + noise_variance);
}

double required_noise_variance(double sensitivity, std::int64_t n, double data_variance,
                               double target_epsilon) {
  check_sensitivity(sensitivity);
  check_n(n);
  if (!(data_variance >= 0.0)) {
    throw std::invalid_argument("noise planning: data variance must be >= 0");
  }
  if (!(target_epsilon > 0.0) || !std::isfinite(target_epsilon)) {
    throw std::invalid_argument("noise planning: target epsilon must be > 0");
  }
  // Decide the clamp on the epsilon comparison itself so that a target the
  // data already meets yields exactly zero even when the subtraction below
  // would leave a one-ulp residue.
  if (data_variance > 0.0 &&
      detail::sum_epsilon(sensitivity, n, data_variance) <= target_epsilon) {
    return 0.0;
  }
  const double numerator = sensitivity * sensitivity * std::log(static_cast<double>(n)) -
                           target_epsilon * target_epsilon * data_variance;
  if (numerator <= 0.0) return 0.0;
  return numerator / (target_epsilon * target_epsilon);
}

double eps_with_laplace(double eps1, double eps2, std::int64_t n) {
  check_n(n);
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw std::invalid_argument("noise planning: both epsilons must be > 0");
  }
  const double ln_n = std::log(static_cast<double>(n));
  return std::sqrt(eps1 * eps1 * eps2 * eps2 * ln_n /
                   (2.0 * eps1 * eps1 + eps2 * eps2 * ln_n));
}

double laplace_baseline_variance(double sensitivity, double epsilon) {
  check_sensitivity(sensitivity);
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("noise planning: epsilon must be > 0");
  }
  return 2.0 * sensitivity * sensitivity / (epsilon * epsilon);
}

}  // namespace noiseless
