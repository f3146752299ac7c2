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

#include "noiseless/bounds_independent.hpp"

#include <cmath>
#include <stdexcept>

#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace detail {

PrivacyBound clt_sum_bound(std::int64_t m, double sum_variance, double sum_abs_third,
                           double sensitivity, std::int64_t tail_n, double be_factor,
                           const std::string& source) {
  if (m < 2) throw std::invalid_argument(source + ": at least 2 records are required");
  if (!(sum_variance > 0.0)) {
    throw std::domain_error("no adversarial uncertainty: use standard DP");
  }
  if (!(sum_abs_third >= 0.0) || !std::isfinite(sum_abs_third)) {
    throw std::invalid_argument(source + ": sum of absolute third moments must be >= 0");
  }
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw std::invalid_argument(source + ": sensitivity must be > 0");
  }
  if (!(be_factor > 0.0)) {
    throw std::invalid_argument(source + ": the delta prefactor must be > 0");
  }
  PrivacyBound b;
  b.epsilon = sum_epsilon(sensitivity, m, sum_variance);
  const double tail = 4.0 / (5.0 * std::sqrt(static_cast<double>(tail_n)));
  b.delta = be_factor * sum_abs_third / (sum_variance * std::sqrt(sum_variance)) *
                (1.0 + std::exp(b.epsilon)) +
            tail;
  b.source = source;
  if (!gaussian_mechanism_check(std::sqrt(sum_variance), tail, sensitivity, b.epsilon)) {
    b.preconditions_ok = false;
    b.diagnostics.push_back(
        "normal-mechanism consistency check failed: sigma*epsilon/sensitivity = " +
        format12(std::sqrt(sum_variance) * b.epsilon / sensitivity) +
        " does not exceed sqrt(2 ln(1.25/delta_tail)) = " +
        format12(std::sqrt(std::max(2.0 * std::log(1.25 / tail), 0.0))) +
        "; the stated pair is reported unchanged");
  }
  if (b.vacuous()) {
    b.diagnostics.push_back("delta >= 1: bound is vacuous at this record count");
  }
  return b;
}

}  // namespace detail

PrivacyBound independent_bound(const IndependentAggregate& agg, const BoundOptions& options) {
  return detail::clt_sum_bound(agg.n, static_cast<double>(agg.n) * agg.mean_variance,
                               agg.sum_abs_third, agg.sensitivity, agg.n,
                               options.be_factor, "independent-clt");
}

PrivacyBound independent_bound(const DataVectorSpec& spec, const BoundOptions& options) {
  spec.validate();
  if (spec.dependency_bound != 1) {
    throw std::invalid_argument(
        "independent bound: requires dependency_bound 1 (use the dependent bound)");
  }
  const MomentTotals t = moment_totals(spec);
  if (!t.sum_abs_third) {
    throw std::invalid_argument(
        "insufficient moments: a record group lacks the absolute third moment");
  }
  return detail::clt_sum_bound(t.n, t.sum_variance, *t.sum_abs_third, spec.sensitivity,
                               t.n, options.be_factor, "independent-clt");
}

bool gaussian_mechanism_check(double sigma, double delta_param, double sensitivity,
                              double epsilon) {
  if (!(sigma > 0.0) || !(delta_param > 0.0) || !(sensitivity > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("normal-mechanism check: all arguments must be > 0");
  }
  const double lhs = sigma * epsilon / sensitivity;
  const double rhs_sq = 2.0 * std::log(1.25 / delta_param);
  // rhs_sq <= 0 means any positive calibration passes.
  return lhs * lhs > rhs_sq;
}

double berry_esseen_distance(double sum_abs_third, double sum_variance, double c) {
  if (!(sum_variance > 0.0) || !(sum_abs_third >= 0.0) || !(c > 0.0)) {
    throw std::invalid_argument(
        "normal-approximation distance: moments and constant must be positive");
  }
  return c * sum_abs_third / (sum_variance * std::sqrt(sum_variance));
}

}  // namespace noiseless
