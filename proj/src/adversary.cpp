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

#include "noiseless/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "noiseless/bounds_dependent.hpp"
#include "noiseless/bounds_independent.hpp"
#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

CompromisePlan finish_plan(const DataVectorSpec& spec, double gamma,
                           std::vector<std::int64_t> taken,
                           std::optional<std::vector<std::int64_t>> explicit_indices) {
  CompromisePlan plan;
  plan.gamma = gamma;
  plan.compromised_count = std::accumulate(taken.begin(), taken.end(), std::int64_t{0});
  plan.taken_per_group = std::move(taken);
  plan.explicit_indices = std::move(explicit_indices);
  const MomentTotals rem = moment_totals(spec, plan.taken_per_group);
  plan.remaining_n = rem.n;
  plan.remaining_variance = rem.sum_variance;
  plan.remaining_sum_abs_third = rem.sum_abs_third;
  plan.remaining_sum_fourth = rem.sum_fourth;
  return plan;
}

std::int64_t checked_budget(const DataVectorSpec& spec, double gamma) {
  if (!std::isfinite(gamma) || gamma < 0.0 || gamma >= 1.0) {
    throw std::invalid_argument("compromise: gamma must lie in [0, 1)");
  }
  const std::int64_t n = spec.n();
  const std::int64_t k = detail::snapped_ceil(gamma, n);
  if (n - k < 2) throw std::domain_error("fewer than 2 uncompromised records");
  return k;
}

// Group order for epsilon-worst selection: variance desc, then absolute
// third moment desc (absent treated as 0), then input order.
std::vector<std::size_t> selection_order(const DataVectorSpec& spec) {
  std::vector<MomentSummary> m;
  m.reserve(spec.records.size());
  for (const auto& g : spec.records) m.push_back(central_moments(g));
  std::vector<std::size_t> order(spec.records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&m](std::size_t a, std::size_t b) {
    if (m[a].variance != m[b].variance) return m[a].variance > m[b].variance;
    const double ta = m[a].abs_third.value_or(0.0);
    const double tb = m[b].abs_third.value_or(0.0);
    return ta > tb;
  });
  return order;
}

// The delta the independent-record bound yields for a candidate exclusion,
// or +infinity when the remainder cannot support a bound.
double delta_for_taken(const DataVectorSpec& spec, const std::vector<std::int64_t>& taken,
                       const BoundOptions& options) {
  const MomentTotals rem = moment_totals(spec, taken);
  if (rem.n < 2 || !(rem.sum_variance > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  if (!rem.sum_abs_third) {
    throw std::invalid_argument(
        "insufficient moments: a record group lacks the absolute third moment");
  }
  const PrivacyBound b =
      detail::clt_sum_bound(rem.n, rem.sum_variance, *rem.sum_abs_third, spec.sensitivity,
                            spec.n(), options.be_factor, "independent-clt-compromised");
  return b.delta;
}

void exhaustive_delta_search(const DataVectorSpec& spec, std::int64_t budget,
                             std::size_t group, std::vector<std::int64_t>& taken,
                             const BoundOptions& options, double& best_delta,
                             std::vector<std::int64_t>& best_taken) {
  if (budget == 0 || group == spec.records.size()) {
    if (budget != 0) return;
    const double d = delta_for_taken(spec, taken, options);
    if (d > best_delta && std::isfinite(d)) {
      best_delta = d;
      best_taken = taken;
    }
    return;
  }
  const std::int64_t cap = std::min(budget, spec.records[group].count);
  for (std::int64_t t = 0; t <= cap; ++t) {
    taken[group] = t;
    exhaustive_delta_search(spec, budget - t, group + 1, taken, options, best_delta,
                            best_taken);
  }
  taken[group] = 0;
}

}  // namespace

CompromisePlan worst_case_compromise(const DataVectorSpec& spec, double gamma) {
  spec.validate();
  std::int64_t budget = checked_budget(spec, gamma);
  std::vector<std::int64_t> taken(spec.records.size(), 0);
  for (std::size_t gi : selection_order(spec)) {
    if (budget == 0) break;
    const std::int64_t t = std::min(budget, spec.records[gi].count);
    taken[gi] = t;
    budget -= t;
  }
  return finish_plan(spec, gamma, std::move(taken), std::nullopt);
}

CompromisePlan compromise_from_indices(const DataVectorSpec& spec, double gamma,
                                       const std::vector<std::int64_t>& indices) {
  spec.validate();
  AdversaryModel adv;
  adv.dependency_bound = spec.dependency_bound;
  adv.gamma = gamma;
  adv.compromised = indices;
  adv.validate(spec.n());
  if (spec.n() - static_cast<std::int64_t>(indices.size()) < 2) {
    throw std::domain_error("fewer than 2 uncompromised records");
  }
  // Map expanded indices onto their groups.
  std::vector<std::int64_t> start(spec.records.size());
  std::int64_t at = 0;
  for (std::size_t gi = 0; gi < spec.records.size(); ++gi) {
    start[gi] = at;
    at += spec.records[gi].count;
  }
  std::vector<std::int64_t> taken(spec.records.size(), 0);
  for (std::int64_t idx : indices) {
    const auto it = std::upper_bound(start.begin(), start.end(), idx);
    ++taken[static_cast<std::size_t>(it - start.begin()) - 1];
  }
  return finish_plan(spec, gamma, std::move(taken), indices);
}

CompromisePlan delta_adversarial_compromise(const DataVectorSpec& spec, double gamma,
                                            const BoundOptions& options) {
  spec.validate();
  if (spec.dependency_bound != 1) {
    throw std::invalid_argument(
        "delta-worst compromise search is only defined for independent records");
  }
  const std::int64_t budget = checked_budget(spec, gamma);
  std::vector<std::int64_t> best(spec.records.size(), 0);
  if (spec.n() <= 20) {
    std::vector<std::int64_t> taken(spec.records.size(), 0);
    double best_delta = -1.0;
    exhaustive_delta_search(spec, budget, 0, taken, options, best_delta, best);
  } else {
    // Greedy: repeatedly take one more record from whichever group pushes the
    // remainder's delta highest.
    for (std::int64_t step = 0; step < budget; ++step) {
      double step_best = -1.0;
      std::size_t pick = spec.records.size();
      for (std::size_t gi = 0; gi < spec.records.size(); ++gi) {
        if (best[gi] >= spec.records[gi].count) continue;
        ++best[gi];
        const double d = delta_for_taken(spec, best, options);
        --best[gi];
        if (std::isfinite(d) && d > step_best) {
          step_best = d;
          pick = gi;
        }
      }
      if (pick == spec.records.size()) break;
      ++best[pick];
    }
  }
  return finish_plan(spec, gamma, std::move(best), std::nullopt);
}

PrivacyBound independent_bound_compromised(const DataVectorSpec& spec,
                                           const CompromisePlan& plan,
                                           const BoundOptions& options) {
  spec.validate();
  if (spec.dependency_bound != 1) {
    throw std::invalid_argument(
        "compromised independent bound: requires dependency_bound 1");
  }
  if (plan.remaining_n < 2) throw std::domain_error("fewer than 2 uncompromised records");
  if (!(plan.remaining_variance > 0.0)) {
    throw std::domain_error("no adversarial uncertainty: use standard DP");
  }
  if (!plan.remaining_sum_abs_third) {
    throw std::invalid_argument(
        "insufficient moments: a record group lacks the absolute third moment");
  }
  PrivacyBound b = detail::clt_sum_bound(
      plan.remaining_n, plan.remaining_variance, *plan.remaining_sum_abs_third,
      spec.sensitivity, spec.n(), options.be_factor,
      plan.compromised_count > 0 ? "independent-clt-compromised" : "independent-clt");
  if (plan.compromised_count > 0) {
    b.diagnostics.push_back(
        "tail term uses the full record count n rather than the uncompromised count; "
        "the stated bound keeps that asymmetry");
  }
  return b;
}

PrivacyBound dependent_bound_compromised(const DataVectorSpec& spec,
                                         const CompromisePlan& plan,
                                         double remaining_total_variance,
                                         const BoundOptions& options) {
  spec.validate();
  if (plan.remaining_n < 2) throw std::domain_error("fewer than 2 uncompromised records");
  if (!(remaining_total_variance > 0.0)) {
    throw std::domain_error("no adversarial uncertainty: use standard DP");
  }
  if (!plan.remaining_sum_abs_third || !plan.remaining_sum_fourth) {
    throw std::invalid_argument(
        "insufficient moments: a record group lacks the third or fourth moment");
  }
  return detail::stein_sum_bound(
      plan.remaining_n, remaining_total_variance, *plan.remaining_sum_abs_third,
      *plan.remaining_sum_fourth, spec.dependency_bound, spec.sensitivity, plan.remaining_n,
      options.stein_k,
      plan.compromised_count > 0 ? "dependent-stein-compromised" : "dependent-stein");
}

}  // namespace noiseless
