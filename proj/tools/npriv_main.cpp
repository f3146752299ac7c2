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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "noiseless/adversary.hpp"
#include "noiseless/bounds_binomial.hpp"
#include "noiseless/config.hpp"
#include "noiseless/detail/math.hpp"
#include "noiseless/model.hpp"
#include "noiseless/oracle.hpp"
#include "noiseless/planner.hpp"

namespace {

using noiseless::detail::format12;
using noiseless::detail::round12;

constexpr int kExitUsage = 64;

struct CommonFlags {
  std::string config_path;
  std::string format = "text";
  double be_constant = 1.12;
  int stein_k = 28;
  std::uint64_t seed = 12345;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "Path to a JSON data description");
  cmd->add_option("--format", flags->format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}));
  cmd->add_option("--be-constant", flags->be_constant,
                  "Central-limit delta prefactor: 1.12 (default) or 1.1182");
  cmd->add_option("--stein-k", flags->stein_k,
                  "Fourth-moment constant for dependent records: 26 or 28 (default)");
  cmd->add_option("--seed", flags->seed, "Seed for sampling-based estimates");
}

noiseless::BoundOptions bound_options(const CommonFlags& flags) {
  return {flags.be_constant, flags.stein_k};
}

noiseless::IngestResult load_config_or_exit(const CommonFlags& flags) {
  if (flags.config_path.empty()) {
    std::cerr << "error: this command needs --config <path>\n";
    std::exit(kExitUsage);
  }
  return noiseless::ingest_config(flags.config_path);
}

const char* family_label(noiseless::DistributionSpec::Family family) {
  switch (family) {
    case noiseless::DistributionSpec::Family::kBernoulli: return "bernoulli";
    case noiseless::DistributionSpec::Family::kDiscrete: return "discrete";
    case noiseless::DistributionSpec::Family::kMomentsOnly: return "moments-only";
  }
  return "unknown";
}

void print_bound_text(const noiseless::PrivacyBound& bound, std::ostream& out) {
  out << "source: " << bound.source << "\n";
  out << "epsilon = " << format12(bound.epsilon) << "\n";
  out << "delta = " << format12(bound.delta) << "\n";
  if (bound.vacuous()) out << "delta is vacuous (>= 1)\n";
  if (!bound.preconditions_ok) out << "one or more consistency checks failed\n";
  for (const std::string& d : bound.diagnostics) out << "note: " << d << "\n";
}

nlohmann::ordered_json bound_json(const noiseless::PrivacyBound& bound) {
  nlohmann::ordered_json j;
  j["source"] = bound.source;
  j["epsilon"] = round12(bound.epsilon);
  j["delta"] = round12(bound.delta);
  j["vacuous"] = bound.vacuous();
  j["preconditions_ok"] = bound.preconditions_ok;
  j["diagnostics"] = bound.diagnostics;
  return j;
}

// ---------------------------------------------------------------------------
// moments

int run_moments(const CommonFlags& flags) {
  noiseless::IngestResult in = load_config_or_exit(flags);
  noiseless::MomentTotals totals = noiseless::moment_totals(in.data);

  if (flags.format == "structured") {
    nlohmann::ordered_json doc;
    doc["groups"] = nlohmann::ordered_json::array();
    for (const auto& group : in.data.records) {
      noiseless::MomentSummary m = noiseless::central_moments(group);
      nlohmann::ordered_json g;
      g["family"] = family_label(group.family);
      g["count"] = group.count;
      g["mean"] = round12(m.mean);
      g["variance"] = round12(m.variance);
      if (m.abs_third.has_value()) g["abs_third"] = round12(*m.abs_third);
      if (m.fourth.has_value()) g["fourth"] = round12(*m.fourth);
      doc["groups"].push_back(g);
    }
    nlohmann::ordered_json t;
    t["n"] = totals.n;
    t["sum_variance"] = round12(totals.sum_variance);
    if (totals.sum_abs_third.has_value()) t["sum_abs_third"] = round12(*totals.sum_abs_third);
    if (totals.sum_fourth.has_value()) t["sum_fourth"] = round12(*totals.sum_fourth);
    doc["totals"] = t;
    doc["notes"] = in.notes;
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  for (std::size_t i = 0; i < in.data.records.size(); ++i) {
    const auto& group = in.data.records[i];
    noiseless::MomentSummary m = noiseless::central_moments(group);
    std::cout << "group " << i << ": family " << family_label(group.family) << ", count "
              << group.count << "\n";
    std::cout << "  mean = " << format12(m.mean) << "\n";
    std::cout << "  variance = " << format12(m.variance) << "\n";
    std::cout << "  abs_third = "
              << (m.abs_third.has_value() ? format12(*m.abs_third) : "(not available)")
              << "\n";
    std::cout << "  fourth = "
              << (m.fourth.has_value() ? format12(*m.fourth) : "(not available)") << "\n";
  }
  std::cout << "totals: n = " << totals.n << "\n";
  std::cout << "  sum_variance = " << format12(totals.sum_variance) << "\n";
  std::cout << "  sum_abs_third = "
            << (totals.sum_abs_third.has_value() ? format12(*totals.sum_abs_third)
                                                 : "(not available)")
            << "\n";
  std::cout << "  sum_fourth = "
            << (totals.sum_fourth.has_value() ? format12(*totals.sum_fourth)
                                              : "(not available)")
            << "\n";
  for (const std::string& note : in.notes) std::cout << "note: " << note << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bound

struct BoundFlags {
  std::string model = "auto";
  std::optional<double> epsilon;
  std::optional<double> delta;
  std::optional<double> gamma;
  std::vector<std::int64_t> compromised;
  std::optional<double> total_variance;
  std::optional<std::int64_t> dependency_bound;
  std::optional<double> remaining_total_variance;
  bool delta_adversarial = false;
};

// Applies CLI overrides on top of the config and resolves "auto".
struct ResolvedInstance {
  noiseless::DataVectorSpec data;
  noiseless::AdversaryModel adversary;
  std::optional<double> remaining_total_variance;
  std::string model;
};

ResolvedInstance resolve_instance(const noiseless::IngestResult& in, const BoundFlags& bf) {
  ResolvedInstance r;
  r.data = in.data;
  r.adversary = in.adversary;
  r.remaining_total_variance = in.remaining_total_variance;

  if (bf.total_variance.has_value()) r.data.total_variance = *bf.total_variance;
  if (bf.dependency_bound.has_value()) {
    r.data.dependency_bound = *bf.dependency_bound;
    r.adversary.dependency_bound = *bf.dependency_bound;
  }
  if (bf.remaining_total_variance.has_value()) {
    r.remaining_total_variance = *bf.remaining_total_variance;
  }
  if (bf.gamma.has_value()) r.adversary.gamma = *bf.gamma;
  if (!bf.compromised.empty()) {
    r.adversary.compromised = bf.compromised;
    if (!bf.gamma.has_value()) {
      r.adversary.gamma = static_cast<double>(bf.compromised.size()) /
                          static_cast<double>(r.data.n());
    }
  }
  r.data.validate();
  r.adversary.validate(r.data.n());

  r.model = bf.model;
  if (r.model == "auto") {
    r.model = r.data.dependency_bound == 1 ? "independent" : "dependent";
  }
  return r;
}

noiseless::CompromisePlan compromise_plan(const ResolvedInstance& r) {
  if (r.adversary.compromised.has_value()) {
    return noiseless::compromise_from_indices(r.data, r.adversary.gamma,
                                              *r.adversary.compromised);
  }
  return noiseless::worst_case_compromise(r.data, r.adversary.gamma);
}

noiseless::PrivacyBound computed_bound(const ResolvedInstance& r,
                                       const noiseless::CompromisePlan& plan,
                                       const noiseless::BoundOptions& opts) {
  if (r.model == "independent") {
    if (r.data.dependency_bound != 1) {
      throw std::domain_error(
          "records are dependent (dependency_bound > 1); use --model dependent");
    }
    return noiseless::independent_bound_compromised(r.data, plan, opts);
  }
  if (r.model == "dependent") {
    double remaining_total = r.data.total_variance_value();
    if (plan.compromised_count > 0) {
      if (!r.remaining_total_variance.has_value()) {
        throw std::domain_error(
            "remaining_total_variance is required when records are dependent and some "
            "are compromised");
      }
      remaining_total = *r.remaining_total_variance;
    }
    return noiseless::dependent_bound_compromised(r.data, plan, remaining_total, opts);
  }
  throw std::domain_error("unknown model \"" + r.model + "\"");
}

noiseless::BinomialCase binomial_case_from(const noiseless::DataVectorSpec& data) {
  double p = 0.0;
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    const auto& g = data.records[i];
    if (g.family != noiseless::DistributionSpec::Family::kBernoulli) {
      throw std::domain_error(
          "the binomial model needs every record group to be bernoulli");
    }
    if (i == 0) {
      p = g.p;
    } else if (g.p != p) {
      throw std::domain_error(
          "the binomial model needs all records to share one success probability");
    }
  }
  return {data.n(), p};
}

int run_bound(const CommonFlags& flags, const BoundFlags& bf) {
  noiseless::IngestResult in = load_config_or_exit(flags);
  const noiseless::BoundOptions opts = bound_options(flags);

  noiseless::PrivacyBound bound;
  std::optional<noiseless::PrivacyBound> supplementary;

  if (bf.model == "binomial") {
    if (bf.gamma.has_value() || !bf.compromised.empty() || in.adversary.gamma > 0.0) {
      throw std::domain_error(
          "compromised records are not supported by the binomial model; use --model "
          "independent");
    }
    noiseless::BinomialCase c = binomial_case_from(in.data);
    if (bf.epsilon.has_value() == bf.delta.has_value()) {
      std::cerr << "error: the binomial model needs exactly one of --epsilon or --delta\n";
      return kExitUsage;
    }
    bound = bf.epsilon.has_value() ? noiseless::binomial_delta_given_eps(c, *bf.epsilon)
                                   : noiseless::binomial_eps_given_delta(c, *bf.delta);
  } else {
    ResolvedInstance r = resolve_instance(in, bf);
    noiseless::CompromisePlan plan = compromise_plan(r);
    bound = computed_bound(r, plan, opts);
    if (bf.delta_adversarial && plan.compromised_count > 0 &&
        r.data.dependency_bound == 1) {
      noiseless::CompromisePlan worst_delta =
          noiseless::delta_adversarial_compromise(r.data, r.adversary.gamma, opts);
      supplementary =
          noiseless::independent_bound_compromised(r.data, worst_delta, opts);
    }
  }

  if (flags.format == "structured") {
    nlohmann::ordered_json doc = bound_json(bound);
    if (supplementary.has_value()) {
      doc["delta_adversarial"] = bound_json(*supplementary);
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    print_bound_text(bound, std::cout);
    if (supplementary.has_value()) {
      std::cout << "delta-adversarial selection (supplementary):\n";
      print_bound_text(*supplementary, std::cout);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// plan

struct PlanFlags {
  std::optional<double> target_epsilon;
  std::optional<double> target_delta;
  bool no_assumptions = false;
  std::optional<double> sensitivity;
  std::string noise_family = "laplace";
  std::optional<double> remaining_total_variance;
};

int run_plan(const CommonFlags& flags, const PlanFlags& pf) {
  noiseless::PlanOptions options;
  options.bounds = bound_options(flags);
  options.noise_family = pf.noise_family == "laplace"
                             ? noiseless::NoisePlan::Family::kLaplace
                             : noiseless::NoisePlan::Family::kGenericUnbiased;

  noiseless::PlanTarget target{pf.target_epsilon, pf.target_delta};
  noiseless::PlanReport report;

  if (pf.no_assumptions) {
    double sens = 0.0;
    if (pf.sensitivity.has_value()) {
      sens = *pf.sensitivity;
    } else if (!flags.config_path.empty()) {
      sens = noiseless::ingest_config(flags.config_path).data.sensitivity;
    } else {
      std::cerr << "error: plan --no-assumptions needs --sensitivity (or a --config to "
                   "take it from)\n";
      return kExitUsage;
    }
    report = noiseless::plan_no_assumptions(sens, target, options);
  } else {
    noiseless::IngestResult in = load_config_or_exit(flags);
    if (!options.remaining_total_variance.has_value()) {
      options.remaining_total_variance = in.remaining_total_variance;
    }
    if (pf.remaining_total_variance.has_value()) {
      options.remaining_total_variance = pf.remaining_total_variance;
    }
    report = noiseless::plan(in.data, in.adversary, target, options);
  }

  if (flags.format == "structured") {
    std::cout << noiseless::render_plan_structured(report);
  } else {
    std::cout << noiseless::render_plan_text(report);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyFlags {
  std::string model = "auto";
  std::optional<double> epsilon;
  bool exact = false;
  bool mc = false;
  std::int64_t samples = 100000;
};

// Claimed bound plus the data vector the oracle should measure. Compromised records
// have known values, so the oracle conditions on them by leaving them out of
// the sum; only independent records support that reduction here.
struct VerifyInstance {
  noiseless::PrivacyBound claimed;
  noiseless::DataVectorSpec oracle_spec;
};

VerifyInstance verify_instance(const noiseless::IngestResult& in, const std::string& model,
                               const std::optional<double>& remaining_total_variance,
                               const noiseless::BoundOptions& opts) {
  BoundFlags bf;
  bf.model = model;
  ResolvedInstance r = resolve_instance(in, bf);
  noiseless::CompromisePlan plan = compromise_plan(r);

  VerifyInstance v;
  if (remaining_total_variance.has_value()) {
    r.remaining_total_variance = remaining_total_variance;
  }
  v.claimed = computed_bound(r, plan, opts);

  v.oracle_spec = r.data;
  if (plan.compromised_count > 0) {
    if (!r.data.blocks.empty()) {
      throw std::domain_error(
          "verification with compromised records is only supported for independent "
          "records (no dependency blocks)");
    }
    v.oracle_spec.records.clear();
    for (std::size_t i = 0; i < r.data.records.size(); ++i) {
      noiseless::DistributionSpec g = r.data.records[i];
      g.count -= plan.taken_per_group[i];
      if (g.count > 0) v.oracle_spec.records.push_back(g);
    }
    v.oracle_spec.total_variance.reset();
    v.oracle_spec.validate();
  }
  return v;
}

int run_verify(const CommonFlags& flags, const VerifyFlags& vf,
               const std::optional<double>& remaining_total_variance) {
  noiseless::IngestResult in = load_config_or_exit(flags);
  const noiseless::BoundOptions opts = bound_options(flags);

  if (vf.exact && vf.mc) {
    std::cerr << "error: choose one of --exact or --mc\n";
    return kExitUsage;
  }
  const bool use_mc = vf.mc;

  noiseless::PrivacyBound claimed;
  noiseless::DataVectorSpec oracle_spec;
  double epsilon = 0.0;

  if (vf.model == "binomial") {
    if (!vf.epsilon.has_value()) {
      std::cerr << "error: verify --model binomial needs --epsilon\n";
      return kExitUsage;
    }
    if (in.adversary.gamma > 0.0) {
      throw std::domain_error(
          "compromised records are not supported by the binomial model; use --model "
          "independent");
    }
    noiseless::BinomialCase c = binomial_case_from(in.data);
    claimed = noiseless::binomial_delta_given_eps(c, *vf.epsilon);
    oracle_spec = in.data;
    epsilon = *vf.epsilon;
  } else {
    VerifyInstance v = verify_instance(in, vf.model, remaining_total_variance, opts);
    if (vf.epsilon.has_value()) {
      // Re-evaluate the claim at the caller's epsilon: the closed forms fix
      // epsilon from the data, so a custom epsilon is only checked against
      // the oracle, with the claimed delta taken at the formula epsilon.
      epsilon = *vf.epsilon;
    } else {
      epsilon = v.claimed.epsilon;
    }
    claimed = v.claimed;
    oracle_spec = v.oracle_spec;
  }

  double measured = 0.0;
  double ci95 = 0.0;
  if (use_mc) {
    noiseless::McOptions mc;
    mc.samples = vf.samples;
    mc.seed = flags.seed;
    noiseless::McResult res = noiseless::mc_estimate_delta(oracle_spec, epsilon,
                                                           std::nullopt, mc);
    measured = res.estimate;
    ci95 = res.ci95;
  } else {
    measured = noiseless::exact_np_delta(oracle_spec, epsilon);
  }

  const bool pass = measured <= claimed.delta + 1e-12;

  if (flags.format == "structured") {
    nlohmann::ordered_json doc;
    doc["epsilon"] = round12(epsilon);
    doc["claimed_delta"] = round12(claimed.delta);
    doc["claimed_source"] = claimed.source;
    doc["measured_delta"] = round12(measured);
    doc["method"] = use_mc ? "mc" : "exact";
    if (use_mc) doc["ci95"] = round12(ci95);
    doc["pass"] = pass;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "epsilon = " << format12(epsilon) << "\n";
    std::cout << "claimed delta = " << format12(claimed.delta) << " (source "
              << claimed.source << ")\n";
    if (use_mc) {
      std::cout << "measured delta = " << format12(measured) << " +/- " << format12(ci95)
                << " (sampling estimate, 95% bootstrap interval; not a certification)\n";
    } else {
      std::cout << "measured delta = " << format12(measured) << " (exact)\n";
    }
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// curves

struct CurveFlags {
  int figure = 0;
  std::int64_t n_min = 100;
  std::int64_t n_max = 1000000;
  int points = 120;
  std::optional<double> epsilon;
  std::optional<double> p;
  std::optional<double> sensitivity;
  std::optional<double> mean_variance;
  std::optional<double> rho_per_record;
  std::optional<double> variance_slope;
  std::string output;
};

int run_curves(const CommonFlags& flags, const CurveFlags& cf) {
  noiseless::CurveRequest req;
  req.figure_id = cf.figure;
  req.n_min = cf.n_min;
  req.n_max = cf.n_max;
  req.points = cf.points;
  req.epsilon = cf.epsilon;
  req.p = cf.p;
  req.sensitivity = cf.sensitivity;
  req.mean_variance = cf.mean_variance;
  req.rho_per_record = cf.rho_per_record;
  req.variance_slope = cf.variance_slope;

  if (!cf.output.empty()) {
    std::ofstream out(cf.output);
    if (!out) throw std::runtime_error("cannot open output file \"" + cf.output + "\"");
    noiseless::emit_curves(req, out, bound_options(flags));
  } else {
    noiseless::emit_curves(req, std::cout, bound_options(flags));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "npriv: explicit (epsilon, delta) guarantees for sums of randomized records,\n"
      "with an exact ground-truth verifier"};
  app.require_subcommand(1);

  CommonFlags flags;
  add_common_flags(&app, &flags);

  // moments
  CLI::App* moments = app.add_subcommand(
      "moments", "Per-group central moments and their totals for a data description");
  add_common_flags(moments, &flags);

  // bound
  BoundFlags bf;
  CLI::App* bound = app.add_subcommand(
      "bound", "Closed-form (epsilon, delta) guarantee for the configured data");
  add_common_flags(bound, &flags);
  bound->add_option("--model", bf.model, "binomial | independent | dependent | auto")
      ->check(CLI::IsMember({"binomial", "independent", "dependent", "auto"}));
  double bound_eps = 0.0, bound_delta = 0.0, bound_gamma = 0.0;
  double bound_tv = 0.0, bound_rtv = 0.0;
  std::int64_t bound_D = 0;
  CLI::Option* o_eps = bound->add_option("--epsilon", bound_eps,
                                         "Fix epsilon; report the certified delta");
  CLI::Option* o_delta = bound->add_option("--delta", bound_delta,
                                           "Fix delta; report the certified epsilon");
  CLI::Option* o_gamma =
      bound->add_option("--gamma", bound_gamma, "Compromised fraction in [0, 1)");
  bound->add_option("--compromised", bf.compromised,
                    "Explicit compromised record indices (comma separated)")
      ->delimiter(',');
  CLI::Option* o_tv = bound->add_option("--total-variance", bound_tv,
                                        "Override the variance of the whole sum");
  CLI::Option* o_D = bound->add_option("--dependency-bound", bound_D,
                                       "Override the dependency bound D");
  CLI::Option* o_rtv = bound->add_option(
      "--remaining-total-variance", bound_rtv,
      "Variance of the uncompromised sum (dependent records with compromise)");
  bound->add_flag("--delta-adversarial", bf.delta_adversarial,
                  "Also report the supplementary delta-worst compromised selection");

  // plan
  PlanFlags pf;
  CLI::App* plan = app.add_subcommand(
      "plan", "Recommend a release strategy for a privacy target");
  add_common_flags(plan, &flags);
  double plan_te = 0.0, plan_td = 0.0, plan_sens = 0.0, plan_rtv = 0.0;
  CLI::Option* p_te = plan->add_option("--target-epsilon", plan_te, "Epsilon to reach");
  CLI::Option* p_td = plan->add_option("--target-delta", plan_td, "Delta to stay under");
  plan->add_flag("--no-assumptions", pf.no_assumptions,
                 "Plan without any distributional assumptions about the data");
  CLI::Option* p_sens = plan->add_option("--sensitivity", plan_sens,
                                         "Sensitivity for --no-assumptions");
  plan->add_option("--noise-family", pf.noise_family, "laplace | generic")
      ->check(CLI::IsMember({"laplace", "generic"}));
  CLI::Option* p_rtv = plan->add_option(
      "--remaining-total-variance", plan_rtv,
      "Variance of the uncompromised sum (dependent records with compromise)");

  // verify
  VerifyFlags vf;
  CLI::App* verify = app.add_subcommand(
      "verify", "Measure the true delta with the ground-truth oracle and compare");
  add_common_flags(verify, &flags);
  verify->add_option("--model", vf.model, "binomial | independent | dependent | auto")
      ->check(CLI::IsMember({"binomial", "independent", "dependent", "auto"}));
  double verify_eps = 0.0, verify_rtv = 0.0;
  CLI::Option* v_eps = verify->add_option(
      "--epsilon", verify_eps, "Epsilon to measure at (default: the claimed epsilon)");
  verify->add_flag("--exact", vf.exact, "Use the exact oracle (default)");
  verify->add_flag("--mc", vf.mc, "Use the sampling estimator instead");
  verify->add_option("--samples", vf.samples, "Samples per distribution for --mc");
  CLI::Option* v_rtv = verify->add_option(
      "--remaining-total-variance", verify_rtv,
      "Variance of the uncompromised sum (dependent records with compromise)");

  // curves
  CurveFlags cf;
  CLI::App* curves = app.add_subcommand(
      "curves", "Emit a CSV parameter sweep for one of the built-in figures");
  add_common_flags(curves, &flags);
  curves->add_option("--figure", cf.figure, "1, 2, 3, 4 or 6")->required();
  curves->add_option("--n-min", cf.n_min, "Smallest record count (default 100)");
  curves->add_option("--n-max", cf.n_max, "Largest record count (default 1000000)");
  curves->add_option("--points", cf.points, "Grid size (default 120)");
  double c_eps = 0.0, c_p = 0.0, c_sens = 0.0, c_mv = 0.0, c_rho = 0.0, c_slope = 0.0;
  CLI::Option* c_o_eps = curves->add_option("--epsilon", c_eps, "Epsilon override");
  CLI::Option* c_o_p = curves->add_option("--p", c_p, "Success probability override");
  CLI::Option* c_o_sens = curves->add_option("--sensitivity", c_sens, "Sensitivity override");
  CLI::Option* c_o_mv =
      curves->add_option("--mean-variance", c_mv, "Per-record variance override");
  CLI::Option* c_o_rho =
      curves->add_option("--rho-per-record", c_rho, "Per-record E|X-mu|^3 override");
  CLI::Option* c_o_slope = curves->add_option(
      "--variance-slope", c_slope, "Sum variance per record for the noise sweep");
  curves->add_option("--output", cf.output, "Write the CSV to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (flags.be_constant != 1.12 && flags.be_constant != 1.1182) {
    std::cerr << "error: --be-constant must be 1.12 or 1.1182\n";
    return kExitUsage;
  }
  if (flags.stein_k != 26 && flags.stein_k != 28) {
    std::cerr << "error: --stein-k must be 26 or 28\n";
    return kExitUsage;
  }

  if (o_eps->count() > 0) bf.epsilon = bound_eps;
  if (o_delta->count() > 0) bf.delta = bound_delta;
  if (o_gamma->count() > 0) bf.gamma = bound_gamma;
  if (o_tv->count() > 0) bf.total_variance = bound_tv;
  if (o_D->count() > 0) bf.dependency_bound = bound_D;
  if (o_rtv->count() > 0) bf.remaining_total_variance = bound_rtv;
  if (p_te->count() > 0) pf.target_epsilon = plan_te;
  if (p_td->count() > 0) pf.target_delta = plan_td;
  if (p_sens->count() > 0) pf.sensitivity = plan_sens;
  if (p_rtv->count() > 0) pf.remaining_total_variance = plan_rtv;
  if (v_eps->count() > 0) vf.epsilon = verify_eps;
  std::optional<double> verify_remaining;
  if (v_rtv->count() > 0) verify_remaining = verify_rtv;
  if (c_o_eps->count() > 0) cf.epsilon = c_eps;
  if (c_o_p->count() > 0) cf.p = c_p;
  if (c_o_sens->count() > 0) cf.sensitivity = c_sens;
  if (c_o_mv->count() > 0) cf.mean_variance = c_mv;
  if (c_o_rho->count() > 0) cf.rho_per_record = c_rho;
  if (c_o_slope->count() > 0) cf.variance_slope = c_slope;

  try {
    if (moments->parsed()) return run_moments(flags);
    if (bound->parsed()) return run_bound(flags, bf);
    if (plan->parsed()) return run_plan(flags, pf);
    if (verify->parsed()) return run_verify(flags, vf, verify_remaining);
    if (curves->parsed()) return run_curves(flags, cf);
  } catch (const noiseless::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return kExitUsage;
}
