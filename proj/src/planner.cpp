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

#include "noiseless/planner.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "noiseless/adversary.hpp"
#include "noiseless/bounds_binomial.hpp"
#include "noiseless/bounds_dependent.hpp"
#include "noiseless/bounds_independent.hpp"
#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

using detail::format12;
using detail::round12;

NoisePlan make_noise_plan(double sensitivity, std::int64_t m, double data_variance,
                          double target_epsilon, NoisePlan::Family family) {
  NoisePlan plan;
  plan.noise_variance = required_noise_variance(sensitivity, m, data_variance, target_epsilon);
  plan.family = family;
  if (family == NoisePlan::Family::kLaplace) {
    plan.laplace_scale = std::sqrt(plan.noise_variance / 2.0);
  }
  plan.resulting_epsilon = eps_with_noise(sensitivity, m, data_variance, plan.noise_variance);
  plan.baseline_laplace_variance = laplace_baseline_variance(sensitivity, target_epsilon);
  return plan;
}

const char* family_name(NoisePlan::Family family) {
  return family == NoisePlan::Family::kLaplace ? "laplace" : "generic-unbiased";
}

}  // namespace

const char* plan_path_name(PlanPath path) {
  switch (path) {
    case PlanPath::kStandardDp: return "standard-dp";
    case PlanPath::kNoiselessIndependent: return "noiseless-independent";
    case PlanPath::kNoiselessDependent: return "noiseless-dependent";
    case PlanPath::kNoiselessPlusNoise: return "noiseless+noise";
  }
  return "unknown";
}

PlanReport plan(const DataVectorSpec& spec, const AdversaryModel& adversary,
                const PlanTarget& target, const PlanOptions& options) {
  spec.validate();
  adversary.validate(spec.n());

  PlanReport report;
  report.inputs.n = spec.n();
  report.inputs.sensitivity = spec.sensitivity;
  report.inputs.dependency_bound = spec.dependency_bound;
  report.inputs.gamma = adversary.gamma;
  report.inputs.target_epsilon = target.epsilon;
  report.inputs.target_delta = target.delta;

  CompromisePlan compromise =
      adversary.compromised.has_value()
          ? compromise_from_indices(spec, adversary.gamma, *adversary.compromised)
          : worst_case_compromise(spec, adversary.gamma);
  report.inputs.compromised_count = compromise.compromised_count;

  double usable_variance = 0.0;
  if (spec.dependency_bound == 1) {
    report.path = PlanPath::kNoiselessIndependent;
    report.bound = independent_bound_compromised(spec, compromise, options.bounds);
    usable_variance = compromise.remaining_variance;
  } else {
    report.path = PlanPath::kNoiselessDependent;
    double remaining_total = spec.total_variance_value();
    if (compromise.compromised_count > 0) {
      if (!options.remaining_total_variance.has_value()) {
        throw std::domain_error(
            "remaining_total_variance is required when records are dependent and "
            "some are compromised");
      }
      remaining_total = *options.remaining_total_variance;
    } else if (options.remaining_total_variance.has_value()) {
      remaining_total = *options.remaining_total_variance;
    }
    report.bound = dependent_bound_compromised(spec, compromise, remaining_total,
                                               options.bounds);
    usable_variance = remaining_total;
  }

  if (target.delta.has_value() && report.bound.delta > *target.delta) {
    throw std::domain_error(
        "target delta " + format12(*target.delta) + " is below the achieved delta " +
        format12(report.bound.delta) +
        ": delta is not improvable by adding noise in this tool");
  }

  if (target.epsilon.has_value() && report.bound.epsilon > *target.epsilon) {
    report.path = PlanPath::kNoiselessPlusNoise;
    report.noise_plan = make_noise_plan(spec.sensitivity, compromise.remaining_n,
                                        usable_variance, *target.epsilon,
                                        options.noise_family);
    report.diagnostics.push_back(
        "added noise improves epsilon only; the stated delta is carried unchanged");
    if (report.noise_plan->noise_variance >= report.noise_plan->baseline_laplace_variance) {
      report.diagnostics.push_back(
          "required noise variance is not below the pure-noise baseline at this size; "
          "the data's own randomness buys nothing here");
    }
  }

  return report;
}

PlanReport plan_no_assumptions(double sensitivity, const PlanTarget& target,
                               const PlanOptions& options) {
  (void)options;
  if (!(sensitivity > 0.0)) {
    throw std::domain_error("sensitivity must be > 0");
  }
  if (!target.epsilon.has_value() || !(*target.epsilon > 0.0)) {
    throw std::domain_error(
        "a positive target epsilon is required when no data assumptions are given");
  }

  PlanReport report;
  report.path = PlanPath::kStandardDp;
  report.inputs.sensitivity = sensitivity;
  report.inputs.target_epsilon = target.epsilon;
  report.inputs.target_delta = target.delta;
  report.standard_noise_variance = laplace_baseline_variance(sensitivity, *target.epsilon);
  report.bound.epsilon = *target.epsilon;
  report.bound.delta = 0.0;
  report.bound.source = "laplace-mechanism";
  report.diagnostics.push_back(
      "no distributional assumptions: the data's own randomness is not used");
  return report;
}

std::string render_plan_text(const PlanReport& report) {
  std::ostringstream out;
  out << "plan: " << plan_path_name(report.path) << "\n";
  if (report.inputs.n > 0) {
    out << "records: " << report.inputs.n
        << "  sensitivity: " << format12(report.inputs.sensitivity)
        << "  dependency bound: " << report.inputs.dependency_bound
        << "  gamma: " << format12(report.inputs.gamma);
    if (report.inputs.compromised_count > 0) {
      out << "  compromised: " << report.inputs.compromised_count;
    }
    out << "\n";
  } else {
    out << "sensitivity: " << format12(report.inputs.sensitivity) << "\n";
  }
  if (report.inputs.target_epsilon.has_value() || report.inputs.target_delta.has_value()) {
    out << "target:";
    if (report.inputs.target_epsilon.has_value()) {
      out << " epsilon <= " << format12(*report.inputs.target_epsilon);
    }
    if (report.inputs.target_delta.has_value()) {
      if (report.inputs.target_epsilon.has_value()) out << ",";
      out << " delta <= " << format12(*report.inputs.target_delta);
    }
    out << "\n";
  }

  if (report.path == PlanPath::kStandardDp) {
    out << "noise variance for the target epsilon: "
        << format12(*report.standard_noise_variance) << " (laplace scale "
        << format12(report.inputs.sensitivity / report.bound.epsilon) << ")\n";
  } else {
    out << "guarantee: epsilon = " << format12(report.bound.epsilon)
        << ", delta = " << format12(report.bound.delta) << " (source "
        << report.bound.source << ")\n";
    if (report.bound.vacuous()) {
      out << "  delta is vacuous (>= 1)\n";
    }
  }

  if (report.noise_plan.has_value()) {
    const NoisePlan& np = *report.noise_plan;
    out << "noise plan: family " << family_name(np.family) << ", variance = "
        << format12(np.noise_variance);
    if (np.family == NoisePlan::Family::kLaplace) {
      out << ", scale = " << format12(np.laplace_scale);
    }
    out << "\n";
    out << "  resulting epsilon = " << format12(np.resulting_epsilon) << "\n";
    out << "  pure-noise baseline variance = " << format12(np.baseline_laplace_variance)
        << "\n";
  }

  bool any_notes = !report.bound.diagnostics.empty() || !report.diagnostics.empty() ||
                   !report.bound.preconditions_ok;
  if (any_notes) {
    out << "notes:\n";
    if (!report.bound.preconditions_ok) {
      out << "  - one or more consistency checks failed; see below\n";
    }
    for (const std::string& d : report.bound.diagnostics) {
      out << "  - " << d << "\n";
    }
    for (const std::string& d : report.diagnostics) {
      out << "  - " << d << "\n";
    }
  }
  return out.str();
}

std::string render_plan_structured(const PlanReport& report) {
  nlohmann::ordered_json doc;
  doc["path"] = plan_path_name(report.path);

  nlohmann::ordered_json inputs;
  if (report.inputs.n > 0) inputs["records"] = report.inputs.n;
  inputs["sensitivity"] = round12(report.inputs.sensitivity);
  if (report.inputs.n > 0) {
    inputs["dependency_bound"] = report.inputs.dependency_bound;
    inputs["gamma"] = round12(report.inputs.gamma);
    inputs["compromised_count"] = report.inputs.compromised_count;
  }
  if (report.inputs.target_epsilon.has_value()) {
    inputs["target_epsilon"] = round12(*report.inputs.target_epsilon);
  }
  if (report.inputs.target_delta.has_value()) {
    inputs["target_delta"] = round12(*report.inputs.target_delta);
  }
  doc["inputs"] = inputs;

  nlohmann::ordered_json bound;
  bound["epsilon"] = round12(report.bound.epsilon);
  bound["delta"] = round12(report.bound.delta);
  bound["source"] = report.bound.source;
  bound["preconditions_ok"] = report.bound.preconditions_ok;
  bound["vacuous"] = report.bound.vacuous();
  bound["diagnostics"] = report.bound.diagnostics;
  doc["bound"] = bound;

  if (report.standard_noise_variance.has_value()) {
    doc["standard_noise_variance"] = round12(*report.standard_noise_variance);
  }
  if (report.noise_plan.has_value()) {
    const NoisePlan& np = *report.noise_plan;
    nlohmann::ordered_json noise;
    noise["family"] = family_name(np.family);
    noise["variance"] = round12(np.noise_variance);
    if (np.family == NoisePlan::Family::kLaplace) {
      noise["laplace_scale"] = round12(np.laplace_scale);
    }
    noise["resulting_epsilon"] = round12(np.resulting_epsilon);
    noise["baseline_laplace_variance"] = round12(np.baseline_laplace_variance);
    doc["noise_plan"] = noise;
  }
  doc["diagnostics"] = report.diagnostics;
  return doc.dump(2) + "\n";
}

void emit_curves(const CurveRequest& request, std::ostream& out,
                 const BoundOptions& options) {
  if (request.figure_id != 1 && request.figure_id != 2 && request.figure_id != 3 &&
      request.figure_id != 4 && request.figure_id != 6) {
    throw std::domain_error("unknown figure id " + std::to_string(request.figure_id) +
                            " (supported: 1, 2, 3, 4, 6)");
  }
  if (request.n_min < 2 || request.n_max <= request.n_min) {
    throw std::domain_error("curve grid needs 2 <= n_min < n_max");
  }
  if (request.points < 2) {
    throw std::domain_error("curve grid needs at least 2 points");
  }

  std::vector<std::int64_t> grid;
  grid.reserve(static_cast<std::size_t>(request.points));
  const double lo = std::log(static_cast<double>(request.n_min));
  const double hi = std::log(static_cast<double>(request.n_max));
  for (int i = 0; i < request.points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(request.points - 1);
    auto v = static_cast<std::int64_t>(std::llround(std::exp(lo + t * (hi - lo))));
    v = std::clamp(v, request.n_min, request.n_max);
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }

  switch (request.figure_id) {
    case 1:
    case 2: {
      const double eps = request.epsilon.value_or(request.figure_id == 1 ? 0.5 : 1.0);
      const double p = request.p.value_or(request.figure_id == 1 ? 0.95 : 0.2);
      out << "n,value\n";
      for (std::int64_t n : grid) {
        out << n << "," << format12(binomial_delta_given_eps({n, p}, eps).delta) << "\n";
      }
      break;
    }
    case 3:
    case 4: {
      const double sens = request.sensitivity.value_or(30.0);
      const double mean_var = request.mean_variance.value_or(4.0);
      const double rho = request.rho_per_record.value_or(3.0);
      out << "n,value\n";
      for (std::int64_t n : grid) {
        IndependentAggregate agg;
        agg.n = n;
        agg.mean_variance = mean_var;
        agg.sum_abs_third = rho * static_cast<double>(n);
        agg.sensitivity = sens;
        const PrivacyBound b = independent_bound(agg, options);
        out << n << "," << format12(request.figure_id == 3 ? b.epsilon : b.delta) << "\n";
      }
      break;
    }
    case 6: {
      const double sens = request.sensitivity.value_or(10.0);
      const double eps = request.epsilon.value_or(0.2);
      const double slope = request.variance_slope.value_or(0.1);
      const double baseline = laplace_baseline_variance(sens, eps);
      out << "n,value,baseline\n";
      for (std::int64_t n : grid) {
        const double needed =
            required_noise_variance(sens, n, slope * static_cast<double>(n), eps);
        out << n << "," << format12(needed) << "," << format12(baseline) << "\n";
      }
      break;
    }
    default: break;
  }
}

}  // namespace noiseless
