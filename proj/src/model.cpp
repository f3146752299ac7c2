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

#include "noiseless/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace noiseless {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

DistributionSpec DistributionSpec::bernoulli(double p, std::int64_t count) {
  DistributionSpec s;
  s.family = Family::kBernoulli;
  s.p = p;
  s.count = count;
  return s;
}

DistributionSpec DistributionSpec::discrete(std::vector<std::pair<double, double>> support,
                                            std::int64_t count) {
  DistributionSpec s;
  s.family = Family::kDiscrete;
  s.support = std::move(support);
  s.count = count;
  return s;
}

DistributionSpec DistributionSpec::from_moments(double mean, double variance,
                                                std::optional<double> abs_third,
                                                std::optional<double> fourth,
                                                std::int64_t count) {
  DistributionSpec s;
  s.family = Family::kMomentsOnly;
  s.mean = mean;
  s.variance = variance;
  s.abs_third = abs_third;
  s.fourth = fourth;
  s.count = count;
  return s;
}

DistributionSpec DistributionSpec::from_data(const std::vector<double>& values,
                                             std::int64_t count) {
  require(!values.empty(), "empirical record group: data column is empty");
  std::map<double, std::int64_t> freq;
  for (double v : values) {
    require(finite(v), "empirical record group: data contains a non-finite value");
    ++freq[v];
  }
  std::vector<std::pair<double, double>> pts;
  pts.reserve(freq.size());
  const double m = static_cast<double>(values.size());
  for (const auto& [v, c] : freq) pts.emplace_back(v, static_cast<double>(c) / m);
  DistributionSpec s = discrete(std::move(pts), count);
  s.empirical = true;
  return s;
}

std::optional<double> DistributionSpec::abs_value_bound() const {
  switch (family) {
    case Family::kBernoulli:
      return 1.0;
    case Family::kDiscrete: {
      double b = 0.0;
      for (const auto& [v, p_] : support) b = std::max(b, std::abs(v));
      return b;
    }
    case Family::kMomentsOnly:
      if (support_min && support_max) {
        return std::max(std::abs(*support_min), std::abs(*support_max));
      }
      return std::nullopt;
  }
  return std::nullopt;
}

void DistributionSpec::validate() const {
  require(count >= 1, "record group: count must be >= 1");
  switch (family) {
    case Family::kBernoulli:
      require(finite(p) && p > 0.0 && p < 1.0,
              "bernoulli record group: p must lie strictly in (0, 1)");
      break;
    case Family::kDiscrete: {
      require(!support.empty(), "discrete record group: support is empty");
      double mass = 0.0;
      for (const auto& [v, pr] : support) {
        require(finite(v), "discrete record group: support value is not finite");
        require(finite(pr) && pr >= 0.0 && pr <= 1.0,
                "discrete record group: probability outside [0, 1]");
        mass += pr;
      }
      require(std::abs(mass - 1.0) <= 1e-12,
              "discrete record group: probabilities sum to " + std::to_string(mass) +
                  ", not 1 within 1e-12");
      break;
    }
    case Family::kMomentsOnly: {
      require(finite(mean), "moments record group: mean is not finite");
      require(finite(variance) && variance > 0.0,
              "moments record group: variance must be > 0");
      if (abs_third) {
        require(finite(*abs_third) && *abs_third >= 0.0,
                "moments record group: abs_third must be >= 0");
      }
      if (fourth) {
        require(finite(*fourth) && *fourth >= variance * variance,
                "moments record group: fourth moment below variance^2");
      }
      if (support_min && support_max) {
        require(*support_min <= mean && mean <= *support_max,
                "moments record group: mean outside the stated support bounds");
      }
      break;
    }
  }
}

MomentSummary central_moments(const DistributionSpec& spec) {
  MomentSummary m;
  switch (spec.family) {
    case DistributionSpec::Family::kBernoulli: {
      const double p = spec.p;
      const double q = 1.0 - p;
      m.mean = p;
      m.variance = p * q;
      m.abs_third = p * q * (q * q + p * p);
      m.fourth = p * q * (q * q * q + p * p * p);
      break;
    }
    case DistributionSpec::Family::kDiscrete: {
      double mu = 0.0;
      for (const auto& [v, pr] : spec.support) mu += pr * v;
      double v2 = 0.0, a3 = 0.0, v4 = 0.0;
      for (const auto& [v, pr] : spec.support) {
        const double d = v - mu;
        const double d2 = d * d;
        v2 += pr * d2;
        a3 += pr * d2 * std::abs(d);
        v4 += pr * d2 * d2;
      }
      m.mean = mu;
      m.variance = v2;
      m.abs_third = a3;
      m.fourth = v4;
      break;
    }
    case DistributionSpec::Family::kMomentsOnly:
      m.mean = spec.mean;
      m.variance = spec.variance;
      m.abs_third = spec.abs_third;
      m.fourth = spec.fourth;
      break;
  }
  return m;
}

std::int64_t DataVectorSpec::n() const {
  std::int64_t total = 0;
  for (const auto& g : records) total += g.count;
  return total;
}

double DataVectorSpec::total_variance_value() const {
  if (total_variance) return *total_variance;
  double sum = 0.0;
  for (const auto& g : records) {
    sum += static_cast<double>(g.count) * central_moments(g).variance;
  }
  return sum;
}

void DataVectorSpec::validate() const {
  require(!records.empty(), "data vector: records list is empty");
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      records[i].validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("records[" + std::to_string(i) + "]: " + e.what());
    }
  }
  require(std::isfinite(sensitivity) && sensitivity > 0.0,
          "data vector: sensitivity must be > 0");
  require(dependency_bound >= 1, "data vector: dependency_bound must be >= 1");

  const std::int64_t total = n();

  // The declared sensitivity must cover every bounded record value.
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (auto b = records[i].abs_value_bound()) {
      require(sensitivity >= *b,
              "data vector: sensitivity " + std::to_string(sensitivity) +
                  " is below the largest record magnitude " + std::to_string(*b) +
                  " in records[" + std::to_string(i) + "]");
    }
  }

  if (dependency_bound == 1) {
    if (total_variance) {
      double derived = 0.0;
      for (const auto& g : records) {
        derived += static_cast<double>(g.count) * central_moments(g).variance;
      }
      const double scale = std::max(std::abs(derived), std::abs(*total_variance));
      require(std::abs(derived - *total_variance) <= 1e-9 * std::max(scale, 1.0),
              "data vector: total_variance disagrees with the sum of record "
              "variances under dependency_bound 1");
    }
  } else {
    require(total_variance.has_value(),
            "data vector: total_variance is required when dependency_bound > 1");
    require(std::isfinite(*total_variance) && *total_variance > 0.0,
            "data vector: total_variance must be > 0");
  }

  // Blocks must form a partial partition of [0, n) with sizes within the
  // dependency bound and coherent joint laws.
  std::vector<char> covered(static_cast<std::size_t>(total), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& blk = blocks[b];
    const std::string tag = "dependency_blocks[" + std::to_string(b) + "]";
    require(!blk.indices.empty(), tag + ": empty index list");
    require(static_cast<std::int64_t>(blk.indices.size()) <= dependency_bound,
            tag + ": block size exceeds dependency_bound");
    for (auto idx : blk.indices) {
      require(idx >= 0 && idx < total, tag + ": index out of range");
      require(!covered[static_cast<std::size_t>(idx)],
              tag + ": index " + std::to_string(idx) + " appears in two blocks");
      covered[static_cast<std::size_t>(idx)] = 1;
    }
    require(!blk.joint.empty(), tag + ": joint pmf is empty");
    double mass = 0.0;
    for (const auto& [tuple, pr] : blk.joint) {
      require(tuple.size() == blk.indices.size(),
              tag + ": joint outcome arity does not match the index list");
      for (double v : tuple) require(finite(v), tag + ": joint value is not finite");
      require(finite(pr) && pr >= 0.0 && pr <= 1.0,
              tag + ": joint probability outside [0, 1]");
      mass += pr;
    }
    require(std::abs(mass - 1.0) <= 1e-12,
            tag + ": joint probabilities sum to " + std::to_string(mass) +
                ", not 1 within 1e-12");
  }
}

void AdversaryModel::validate(std::int64_t n) const {
  require(dependency_bound >= 1, "adversary: dependency_bound must be >= 1");
  require(std::isfinite(gamma) && gamma >= 0.0 && gamma < 1.0,
          "adversary: gamma must lie in [0, 1)");
  if (compromised) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (auto idx : *compromised) {
      require(idx >= 0 && idx < n, "adversary: compromised index out of range");
      require(!seen[static_cast<std::size_t>(idx)],
              "adversary: compromised index listed twice");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
    // ceil(gamma * n), with a snap window for products one ulp off an integer.
    const double k = std::ceil(gamma * static_cast<double>(n) - 1e-9);
    require(static_cast<double>(compromised->size()) <= k,
            "adversary: explicit compromised set larger than ceil(gamma * n)");
  }
}

MomentTotals moment_totals(const DataVectorSpec& spec) {
  return moment_totals(spec, std::vector<std::int64_t>(spec.records.size(), 0));
}

MomentTotals moment_totals(const DataVectorSpec& spec,
                           const std::vector<std::int64_t>& excluded_per_group) {
  require(excluded_per_group.size() == spec.records.size(),
          "moment totals: exclusion list does not match the group count");
  MomentTotals t;
  t.sum_abs_third = 0.0;
  t.sum_fourth = 0.0;
  bool have_third = true;
  bool have_fourth = true;
  for (std::size_t i = 0; i < spec.records.size(); ++i) {
    const auto& g = spec.records[i];
    const std::int64_t kept = g.count - excluded_per_group[i];
    require(kept >= 0, "moment totals: more records excluded than the group holds");
    if (kept == 0) continue;
    const MomentSummary m = central_moments(g);
    const double w = static_cast<double>(kept);
    t.n += kept;
    t.sum_variance += w * m.variance;
    if (m.abs_third && have_third) {
      *t.sum_abs_third += w * *m.abs_third;
    } else {
      have_third = false;
    }
    if (m.fourth && have_fourth) {
      *t.sum_fourth += w * *m.fourth;
    } else {
      have_fourth = false;
    }
  }
  if (!have_third) t.sum_abs_third.reset();
  if (!have_fourth) t.sum_fourth.reset();
  return t;
}

}  // namespace noiseless
