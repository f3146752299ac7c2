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

#include "noiseless/bounds_dependent.hpp"

#include <cmath>
#include <stdexcept>

#include "noiseless/bounds_independent.hpp"
#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

// (2/pi)^{1/4}, the constant translating Wasserstein into Kolmogorov distance
// against a normal.
const double kQuarterRoot2OverPi = std::sqrt(std::sqrt(2.0 / 3.14159265358979323846));

double wasserstein_core(double total_variance, double sum_abs_third, double sum_fourth,
                        double dependency_bound, double stein_k) {
  const double sigma = std::sqrt(total_variance);
  const double d = dependency_bound;
  return d * d / (total_variance * sigma) * sum_abs_third +
         std::pow(d, 1.5) * std::sqrt(stein_k) /
             (total_variance * std::sqrt(3.14159265358979323846)) *
             std::sqrt(sum_fourth);
}

}  // namespace

namespace detail {

PrivacyBound stein_sum_bound(std::int64_t m, double total_variance, double sum_abs_third,
                             double sum_fourth, std::int64_t dependency_bound,
                             double sensitivity, std::int64_t tail_n, int stein_k,
                             const std::string& source) {
  if (m < 2) throw std::invalid_argument(source + ": at least 2 records are required");
  if (!(total_variance > 0.0)) {
    throw std::domain_error("no adversarial uncertainty: use standard DP");
  }
  if (!(sum_abs_third >= 0.0) || !(sum_fourth >= 0.0)) {
    throw std::invalid_argument(source + ": moment sums must be >= 0");
  }
  if (dependency_bound < 1) {
    throw std::invalid_argument(source + ": dependency bound must be >= 1");
  }
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw std::invalid_argument(source + ": sensitivity must be > 0");
  }
  if (stein_k != 26 && stein_k != 28) {
    throw std::invalid_argument(source + ": the Stein constant must be 26 or 28");
  }
  PrivacyBound b;
  b.epsilon = sum_epsilon(sensitivity, m, total_variance);
  const double dw = wasserstein_core(total_variance, sum_abs_third, sum_fourth,
                                     static_cast<double>(dependency_bound),
                                     static_cast<double>(stein_k));
  const double c_eps = 2.0 * (1.0 + std::exp(b.epsilon)) * kQuarterRoot2OverPi;
  const double tail = 4.0 / (5.0 * std::sqrt(static_cast<double>(tail_n)));
  b.delta = c_eps * std::sqrt(dw) + tail;
  b.source = source;
  b.diagnostics.push_back("stein constant: sqrt(" + std::to_string(stein_k) +
                          ") in the fourth-moment term (26 and 28 are both supported)");
  if (!gaussian_mechanism_check(std::sqrt(total_variance), tail, sensitivity, b.epsilon)) {
    b.preconditions_ok = false;
    b.diagnostics.push_back(
        "normal-mechanism consistency check failed: sigma*epsilon/sensitivity = " +
        format12(std::sqrt(total_variance) * b.epsilon / sensitivity) +
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

PrivacyBound dependent_bound(const DependentAggregate& agg, const BoundOptions& options) {
  return detail::stein_sum_bound(agg.n, agg.total_variance, agg.sum_abs_third,
                                 agg.sum_fourth, agg.dependency_bound, agg.sensitivity,
                                 agg.n, options.stein_k, "dependent-stein");
}

PrivacyBound dependent_bound(const DataVectorSpec& spec, const BoundOptions& options) {
  spec.validate();
  const MomentTotals t = moment_totals(spec);
  if (!t.sum_abs_third || !t.sum_fourth) {
    throw std::invalid_argument(
        "insufficient moments: a record group lacks the third or fourth moment");
  }
  return detail::stein_sum_bound(t.n, spec.total_variance_value(), *t.sum_abs_third,
                                 *t.sum_fourth, spec.dependency_bound, spec.sensitivity,
                                 t.n, options.stein_k, "dependent-stein");
}

double stein_wasserstein_bound(const DependentAggregate& agg, int stein_k) {
  if (!(agg.total_variance > 0.0)) {
    throw std::invalid_argument("wasserstein bound: total variance must be > 0");
  }
  if (!(agg.sum_abs_third >= 0.0) || !(agg.sum_fourth >= 0.0)) {
    throw std::invalid_argument("wasserstein bound: moment sums must be >= 0");
  }
  if (agg.dependency_bound < 1) {
    throw std::invalid_argument("wasserstein bound: dependency bound must be >= 1");
  }
  if (stein_k != 26 && stein_k != 28) {
    throw std::invalid_argument("wasserstein bound: the Stein constant must be 26 or 28");
  }
  return wasserstein_core(agg.total_variance, agg.sum_abs_third, agg.sum_fourth,
                          static_cast<double>(agg.dependency_bound),
                          static_cast<double>(stein_k));
}

double kolmogorov_from_wasserstein(double dw) {
  if (!(dw >= 0.0) || !std::isfinite(dw)) {
    throw std::invalid_argument("kolmogorov conversion: distance must be >= 0");
  }
  return kQuarterRoot2OverPi * std::sqrt(dw);
}

}  // namespace noiseless
