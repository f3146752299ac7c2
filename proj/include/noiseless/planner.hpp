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

#ifndef NOISELESS_PLANNER_HPP_
#define NOISELESS_PLANNER_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noiseless/model.hpp"
#include "noiseless/synergy.hpp"

namespace noiseless {

// Which release strategy the planner recommends.
enum class PlanPath {
  kStandardDp,            // no distributional assumptions: add calibrated noise
  kNoiselessIndependent,  // data randomness alone suffices, independent records
  kNoiselessDependent,    // data randomness alone suffices, dependent records
  kNoiselessPlusNoise,    // data randomness plus a top-up noise term
};

const char* plan_path_name(PlanPath path);

// Caller's privacy goal. Either coordinate may be left open.
struct PlanTarget {
  std::optional<double> epsilon;
  std::optional<double> delta;
};

struct PlanOptions {
  BoundOptions bounds;
  NoisePlan::Family noise_family = NoisePlan::Family::kLaplace;
  // Variance of the sum of uncompromised records; needed when records are
  // dependent and some are compromised (marginals cannot supply it).
  std::optional<double> remaining_total_variance;
};

// Input facts echoed back so a rendered report is self-describing.
struct PlanInputs {
  std::int64_t n = 0;
  double sensitivity = 0.0;
  std::int64_t dependency_bound = 1;
  double gamma = 0.0;
  std::int64_t compromised_count = 0;
  std::optional<double> target_epsilon;
  std::optional<double> target_delta;
};

struct PlanReport {
  PlanPath path = PlanPath::kStandardDp;
  PrivacyBound bound;
  std::optional<NoisePlan> noise_plan;             // set iff path is plus-noise
  std::optional<double> standard_noise_variance;   // set iff path is standard-dp
  PlanInputs inputs;
  std::vector<std::string> diagnostics;
};

// Routes a data vector through the release-strategy decision: independent vs
// dependent records, compromised fraction, and whether the achieved epsilon
// meets the target or a noise top-up is needed. Throws std::domain_error when
// the target delta is below the computed delta (adding noise cannot shrink
// delta here) or when required inputs for a branch are missing.
PlanReport plan(const DataVectorSpec& spec, const AdversaryModel& adversary,
                const PlanTarget& target, const PlanOptions& options = {});

// The no-assumptions branch: nothing is known about the data, so the report
// carries only the calibrated-noise variance for the target epsilon.
PlanReport plan_no_assumptions(double sensitivity, const PlanTarget& target,
                               const PlanOptions& options = {});

std::string render_plan_text(const PlanReport& report);
std::string render_plan_structured(const PlanReport& report);

// One of the built-in parameter sweeps, written as CSV.
struct CurveRequest {
  int figure_id = 1;               // 1, 2, 3, 4 or 6
  std::int64_t n_min = 100;
  std::int64_t n_max = 1000000;
  int points = 120;

  // Per-curve parameters; defaults depend on the figure id.
  std::optional<double> epsilon;        // figures 1, 2, 6
  std::optional<double> p;              // figures 1, 2
  std::optional<double> sensitivity;    // figures 3, 4, 6
  std::optional<double> mean_variance;  // figures 3, 4: per-record variance
  std::optional<double> rho_per_record; // figure 4: per-record E|X-mu|^3
  std::optional<double> variance_slope; // figure 6: sum variance = slope * n
};

// Writes "n,value" rows (figures 1-4) or "n,value,baseline" rows (figure 6)
// on a log-spaced strictly increasing integer grid of n. Figures 1 and 2
// sweep the i.i.d. binary delta at fixed epsilon; figure 3 sweeps epsilon and
// figure 4 delta for an independent-records profile; figure 6 sweeps the
// required top-up noise variance against the pure-noise baseline.
void emit_curves(const CurveRequest& request, std::ostream& out,
                 const BoundOptions& options = {});

}  // namespace noiseless

#endif  // NOISELESS_PLANNER_HPP_
