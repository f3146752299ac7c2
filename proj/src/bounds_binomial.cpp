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

#include "noiseless/bounds_binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

// Window ratio epsilon for a half-width expressed as a fraction r = lambda/n.
// Written once so both public entry points share the exact expression.
double window_ratio_eps(double p, double r) {
  const double lo = std::min(p, 1.0 - p);
  const double hi = 1.0 - lo;
  return r * (1.0 / hi + 1.0 / (lo - r));
}

}  // namespace

void BinomialCase::validate() const {
  if (n < 2) throw std::invalid_argument("binomial case: n must be >= 2");
  if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
    throw std::invalid_argument("binomial case: p must lie strictly in (0, 1)");
  }
}

PrivacyBound binomial_eps_given_delta(const BinomialCase& c, double delta) {
  c.validate();
  if (!std::isfinite(delta) || delta <= 0.0 || delta >= 2.0) {
    throw std::invalid_argument("binomial bound: delta must lie in (0, 2)");
  }
  const double nd = static_cast<double>(c.n);
  const double pmin = std::min(c.p, 1.0 - c.p);
  // Point masses at the extremes can never be hidden by a window argument.
  const double ends = std::exp(nd * std::log1p(-c.p)) + std::exp(nd * std::log(c.p));
  const double r = std::sqrt(std::log(2.0 / delta) / (2.0 * nd));
  if (delta < ends || r >= pmin) {
    const double admissible = std::max(ends, 2.0 * std::exp(-2.0 * nd * pmin * pmin));
    throw std::domain_error(
        "tail dominates: delta too small for this (n, p); minimal admissible delta = " +
        detail::format12(admissible));
  }
  PrivacyBound b;
  b.epsilon = window_ratio_eps(c.p, r);
  b.delta = delta;
  b.source = "binomial-window-ratio";
  if (b.vacuous()) b.diagnostics.push_back("delta >= 1: the requested guarantee is vacuous");
  return b;
}

PrivacyBound binomial_delta_given_eps(const BinomialCase& c, double epsilon) {
  c.validate();
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("binomial bound: epsilon must be > 0");
  }
  const double nd = static_cast<double>(c.n);
  const double q = std::min(c.p, 1.0 - c.p);
  const double t = std::expm1(epsilon) / (std::exp(epsilon) + q / (1.0 - q));
  PrivacyBound b;
  b.epsilon = epsilon;
  b.delta = 2.0 * std::exp(-2.0 * nd * q * q * t * t);
  b.source = "binomial-window-ratio";
  if (b.vacuous()) {
    b.diagnostics.push_back("delta >= 1: bound is vacuous at this (n, p, epsilon)");
  }
  return b;
}

double window_ratio_epsilon(std::int64_t n, double p, double lambda) {
  BinomialCase c{n, p};
  c.validate();
  const double nd = static_cast<double>(n);
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("window ratio: lambda must be > 0");
  }
  if (!(nd * p - lambda > 0.0) || !(nd * p + lambda < nd)) {
    throw std::domain_error(
        "window ratio: the window [np - lambda, np + lambda] must stay inside (0, n)");
  }
  return window_ratio_eps(p, lambda / nd);
}

double chernoff_tail(std::int64_t n, double p, double lambda) {
  BinomialCase c{n, p};
  c.validate();
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("tail bound: lambda must be >= 0");
  }
  return 2.0 * std::exp(-2.0 * lambda * lambda / static_cast<double>(n));
}

}  // namespace noiseless
