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

#ifndef NOISELESS_BOUNDS_BINOMIAL_HPP_
#define NOISELESS_BOUNDS_BINOMIAL_HPP_

#include <cstdint>

#include "noiseless/model.hpp"

namespace noiseless {

// A sum of n i.i.d. bernoulli(p) records, the one case with fully explicit
// closed forms in both directions (epsilon from delta and delta from epsilon).
struct BinomialCase {
  std::int64_t n = 0;
  double p = 0.0;

  void validate() const;
};

// Smallest certified epsilon at a caller-chosen delta. The delta budget is
// split into a two-sided tail of half-width lambda around np via
// lambda/n = sqrt(ln(2/delta) / (2n)), and epsilon is the worst log ratio of
// neighboring binomial pmf values inside that window:
//   epsilon = (lambda/n) * (1/(1-p) + 1/(p - lambda/n))   for p <= 1/2,
// with p and 1-p swapped otherwise. Fails with "tail dominates" when delta
// cannot cover the point masses at 0 and n or when the window would reach a
// boundary (lambda/n >= min(p, 1-p)).
PrivacyBound binomial_eps_given_delta(const BinomialCase& c, double delta);

// Certified delta at a caller-chosen epsilon:
//   delta = 2 * exp(-2 n p^2 ((e^eps - 1) / (e^eps + p/(1-p)))^2)  for p <= 1/2,
// mirrored in 1-p otherwise. Vacuous results (delta >= 1) are flagged, not
// rejected.
PrivacyBound binomial_delta_given_eps(const BinomialCase& c, double epsilon);

// Worst log ratio of binomial pmf values between neighboring counts inside
// the window [np - lambda, np + lambda]. Requires 0 < lambda and the window
// to stay inside (0, n).
double window_ratio_epsilon(std::int64_t n, double p, double lambda);

// Two-sided Hoeffding tail mass bound 2 * exp(-2 lambda^2 / n) for the sum
// leaving [np - lambda, np + lambda].
double chernoff_tail(std::int64_t n, double p, double lambda);

}  // namespace noiseless

#endif  // NOISELESS_BOUNDS_BINOMIAL_HPP_
