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

#ifndef NOISELESS_MODEL_HPP_
#define NOISELESS_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace noiseless {

// Central moments of one record's distribution. `abs_third` is the absolute
// third central moment E|X - mu|^3 and `fourth` is E(X - mu)^4; both are
// optional because a caller may describe a record by mean and variance alone,
// in which case bounds that need the higher moments refuse to run.
struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> abs_third;
  std::optional<double> fourth;
};

// One group of identically distributed records. A data vector is described as
// a list of groups with multiplicities rather than n individual entries.
struct DistributionSpec {
  enum class Family { kBernoulli, kDiscrete, kMomentsOnly };

  Family family = Family::kBernoulli;
  std::int64_t count = 1;

  // kBernoulli
  double p = 0.0;

  // kDiscrete: (value, probability) points. Canonicalized to sorted unique
  // values on validation.
  std::vector<std::pair<double, double>> support;

  // kMomentsOnly
  double mean = 0.0;
  double variance = 0.0;
  std::optional<double> abs_third;
  std::optional<double> fourth;
  std::optional<double> support_min;
  std::optional<double> support_max;

  // True when the support was fitted from a raw data column instead of being
  // asserted by the caller; results derived from it are labeled non-rigorous.
  bool empirical = false;

  static DistributionSpec bernoulli(double p, std::int64_t count = 1);
  static DistributionSpec discrete(std::vector<std::pair<double, double>> support,
                                   std::int64_t count = 1);
  static DistributionSpec from_moments(double mean, double variance,
                                       std::optional<double> abs_third = std::nullopt,
                                       std::optional<double> fourth = std::nullopt,
                                       std::int64_t count = 1);
  // Fits an empirical pmf from observed values (relative frequencies).
  static DistributionSpec from_data(const std::vector<double>& values,
                                    std::int64_t count = 1);

  // Largest |value| the record can take, when the family bounds it.
  std::optional<double> abs_value_bound() const;

  // Throws std::invalid_argument on malformed parameters.
  void validate() const;
};

// Explicit joint law for a small set of mutually dependent records. Only the
// exact oracle consumes these; closed-form bounds read per-record marginal
// moments plus the user-supplied total variance.
struct DependencyBlock {
  std::vector<std::int64_t> indices;
  // Each entry: one joint outcome (a value per index) and its probability.
  std::vector<std::pair<std::vector<double>, double>> joint;
};

// The randomized data vector a sum is aggregated over.
struct DataVectorSpec {
  std::vector<DistributionSpec> records;  // groups, in input order
  double sensitivity = 0.0;               // bound on one record's contribution
  std::int64_t dependency_bound = 1;      // max records any record depends on
  std::optional<double> total_variance;   // Var of the sum; required when
                                          // dependency_bound > 1
  std::vector<DependencyBlock> blocks;    // optional explicit joint laws

  std::int64_t n() const;
  // Sum of per-record variances (independent case) or the user-supplied total.
  double total_variance_value() const;

  // Throws std::invalid_argument on inconsistent structure.
  void validate() const;
};

// Adversary knowledge: how many records it may fully observe (a fraction
// gamma, optionally pinned to explicit indices) and the dependency bound it
// is allowed to exploit.
struct AdversaryModel {
  std::int64_t dependency_bound = 1;
  double gamma = 0.0;
  std::optional<std::vector<std::int64_t>> compromised;

  void validate(std::int64_t n) const;
};

// An (epsilon, delta) indistinguishability guarantee together with how it was
// obtained. delta above one is legal output and flagged vacuous rather than
// rejected, so sweeps can show where a bound stops being informative.
struct PrivacyBound {
  double epsilon = 0.0;
  double delta = 0.0;
  std::string source;
  bool preconditions_ok = true;
  std::vector<std::string> diagnostics;

  bool vacuous() const { return !(delta < 1.0); }
};

// Knobs shared by the closed-form bounds. The central-limit delta prefactor
// defaults to 1.12; 1.1182 is the sharper published alternative. The Stein
// route constant defaults to 28 with 26 selectable.
struct BoundOptions {
  double be_factor = 1.12;
  int stein_k = 28;
};

// Moment sums over a data vector, optionally with some records excluded
// (excluded_per_group[i] records of group i are dropped). The optional sums
// are present only when every contributing group provides that moment.
struct MomentTotals {
  std::int64_t n = 0;
  double sum_variance = 0.0;
  std::optional<double> sum_abs_third;
  std::optional<double> sum_fourth;
};

// Computes mean, variance, E|X-mu|^3 and E(X-mu)^4 for one record group.
// Closed forms for bernoulli, finite sums for discrete supports, pass-through
// for moments-only groups (with absent higher moments left absent).
MomentSummary central_moments(const DistributionSpec& spec);

MomentTotals moment_totals(const DataVectorSpec& spec);
MomentTotals moment_totals(const DataVectorSpec& spec,
                           const std::vector<std::int64_t>& excluded_per_group);

}  // namespace noiseless

#endif  // NOISELESS_MODEL_HPP_
