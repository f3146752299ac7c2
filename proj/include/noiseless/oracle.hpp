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

#ifndef NOISELESS_ORACLE_HPP_
#define NOISELESS_ORACLE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "noiseless/model.hpp"

namespace noiseless {

// Controls for the exact oracle. Values are snapped to a rational grid of
// the given resolution before any convolution so that support equality is
// well defined; the support cap aborts instances that would not finish.
struct OracleOptions {
  double resolution = 1e-9;
  std::size_t support_cap = 2000000;
};

// A finite distribution over grid-aligned real values. Stored as integer
// grid keys (value = key * resolution) with strictly increasing keys and
// probabilities >= 0 summing to 1 within 1e-12.
class DiscretePmf {
 public:
  DiscretePmf() : resolution_(1e-9) {}

  static DiscretePmf from_points(const std::vector<std::pair<double, double>>& points,
                                 double resolution = 1e-9);
  static DiscretePmf from_keys(std::vector<std::int64_t> keys, std::vector<double> probs,
                               double resolution);

  std::size_t size() const { return keys_.size(); }
  const std::vector<std::int64_t>& keys() const { return keys_; }
  const std::vector<double>& probs() const { return probs_; }
  double resolution() const { return resolution_; }
  double value(std::size_t i) const {
    return static_cast<double>(keys_[i]) * resolution_;
  }
  std::vector<std::pair<double, double>> points() const;
  double total_mass() const;

  // The same distribution translated by a constant.
  DiscretePmf shifted(double offset) const;

 private:
  std::vector<std::int64_t> keys_;
  std::vector<double> probs_;
  double resolution_;
};

// One adjacent-vector case the oracle compares the base sum against:
// removing the record at `index`, or appending one independent record.
struct AdjacencyCase {
  enum class Action { kRemove, kInsert };
  Action action = Action::kRemove;
  std::int64_t index = -1;  // expanded record index for kRemove
};

// The distinct adjacency cases for a data vector. Removals inside a group of
// exchangeable records collapse to one case; every coordinate of an explicit
// dependency block is its own case.
std::vector<AdjacencyCase> adjacency_cases(const DataVectorSpec& spec);

// Exact law of the sum. Every record family must be finite-discrete
// (bernoulli counts as two-point); independent records are convolved and
// dependency blocks are enumerated jointly, then convolved across blocks.
DiscretePmf exact_sum_pmf(const DataVectorSpec& spec, const OracleOptions& options = {});

// Sum pmf after applying one adjacency action.
DiscretePmf adjacent_sum_pmf(const DataVectorSpec& spec, const AdjacencyCase& adj,
                             const DistributionSpec& insert_spec,
                             const OracleOptions& options = {});

// The divergence sum_x max(p(x) - e^eps * q(x), 0). This is the exact,
// smallest delta for which p is (eps, delta)-dominated by q, so it is the
// ground truth every closed-form bound is certified against.
double hockey_stick_delta(const DiscretePmf& p, const DiscretePmf& q, double epsilon);

// Exact worst-case delta at a given epsilon over all adjacency cases and
// both divergence orderings. `insert_spec` is the law of the appended record
// for insertion adjacency; it defaults to the first record group.
double exact_np_delta(const DataVectorSpec& spec, double epsilon,
                      const std::optional<DistributionSpec>& insert_spec = std::nullopt,
                      const OracleOptions& options = {});

struct McOptions {
  std::int64_t samples = 100000;  // per distribution; must be >= 10000
  std::uint64_t seed = 12345;
  // When set, adds centered Laplace noise of this scale to every sampled sum
  // (the sums become continuous and are histogrammed by Freedman-Diaconis).
  std::optional<double> laplace_scale;
  int bootstrap_rounds = 100;
};

struct McResult {
  double estimate = 0.0;
  double ci95 = 0.0;  // half-width of the 95% bootstrap interval
};

// Monte Carlo counterpart of exact_np_delta. Deterministic for a fixed seed:
// sampling is split into fixed-size chunks with per-chunk derived substreams,
// so the merged histogram does not depend on scheduling. The result is an
// estimate with a bootstrap interval, never a certification.
McResult mc_estimate_delta(const DataVectorSpec& spec, double epsilon,
                           const std::optional<DistributionSpec>& insert_spec = std::nullopt,
                           const McOptions& mc = {}, const OracleOptions& options = {});

// A deterministic map applied to the released sum.
struct PostprocessMap {
  enum class Kind { kIdentity, kRoundToMultiple, kBucketFloor, kThreshold, kConstant };
  Kind kind = Kind::kIdentity;
  double param = 0.0;

  double apply(double value) const;

  static PostprocessMap identity() { return {Kind::kIdentity, 0.0}; }
  static PostprocessMap round_to_multiple(double width) {
    return {Kind::kRoundToMultiple, width};
  }
  static PostprocessMap bucket_floor(double width) { return {Kind::kBucketFloor, width}; }
  static PostprocessMap threshold(double cut) { return {Kind::kThreshold, cut}; }
  static PostprocessMap constant(double value) { return {Kind::kConstant, value}; }
};

// Verifies that post-processing cannot worsen the guarantee: the exact delta
// of the pushed-forward sums stays within 1e-12 of the original's.
bool postprocess_check(const DataVectorSpec& spec, double epsilon, const PostprocessMap& map,
                       const std::optional<DistributionSpec>& insert_spec = std::nullopt,
                       const OracleOptions& options = {});

}  // namespace noiseless

#endif  // NOISELESS_ORACLE_HPP_
