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
//
// Acceptance gate. Nine end-to-end criteria, each printed as one PASS/FAIL
// line with its measured numbers and runtime. The binary exits nonzero if
// any criterion fails, so this is the single switch a release hangs on.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "noiseless/adversary.hpp"
#include "noiseless/bounds_binomial.hpp"
#include "noiseless/bounds_dependent.hpp"
#include "noiseless/bounds_independent.hpp"
#include "noiseless/detail/math.hpp"
#include "noiseless/model.hpp"
#include "noiseless/oracle.hpp"
#include "noiseless/planner.hpp"
#include "noiseless/synergy.hpp"

namespace fs = std::filesystem;

using noiseless::BinomialCase;
using noiseless::BoundOptions;
using noiseless::CompromisePlan;
using noiseless::CurveRequest;
using noiseless::DataVectorSpec;
using noiseless::DependencyBlock;
using noiseless::DependentAggregate;
using noiseless::DistributionSpec;
using noiseless::IndependentAggregate;
using noiseless::PostprocessMap;
using noiseless::PrivacyBound;
using noiseless::detail::format12;

namespace {

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string secs(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << "s";
  return out.str();
}

// --------------------------------------------------------------------------
// small helpers

DataVectorSpec coins(std::int64_t n, double p, double sensitivity = 1.0) {
  DataVectorSpec spec;
  spec.records = {DistributionSpec::bernoulli(p, n)};
  spec.sensitivity = sensitivity;
  return spec;
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const fs::path& dir) {
  const char* bin = std::getenv("NPRIV_BIN");
  if (bin == nullptr) return {};
  const fs::path out_path = dir / "stdout.txt";
  const std::string cmd =
      std::string(bin) + " " + args + " > " + out_path.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult r;
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.out = buf.str();
  return r;
}

// Value following "<prefix>" on its own report line, e.g. "epsilon = 0.45".
std::optional<double> value_after(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  }
  return std::nullopt;
}

struct CsvRow {
  std::int64_t n = 0;
  double value = 0.0;
  std::optional<double> baseline;
};

std::vector<CsvRow> parse_csv(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error("unexpected CSV header: \"" + line + "\"");
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    CsvRow r;
    if (!std::getline(row, cell, ',')) throw std::runtime_error("short CSV row");
    r.n = std::stoll(cell);
    if (!std::getline(row, cell, ',')) throw std::runtime_error("short CSV row");
    // strtod, not stod: tail deltas underflow into the subnormal range, which
    // stod reports as out_of_range instead of returning the value.
    r.value = std::strtod(cell.c_str(), nullptr);
    if (std::getline(row, cell, ',')) r.baseline = std::strtod(cell.c_str(), nullptr);
    rows.push_back(r);
  }
  return rows;
}

// Visits every k-subset of {0, ..., n-1}.
void for_each_subset(std::int64_t n, std::int64_t k,
                     const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    std::int64_t i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

// --------------------------------------------------------------------------
// criterion 1: the worked example end to end through the CLI

CriterionResult criterion1() {
  const char* bin = std::getenv("NPRIV_BIN");
  if (bin == nullptr) return {false, "NPRIV_BIN is not set; cannot drive the CLI"};

  fs::path dir = fs::temp_directory_path() / ("npriv-accept-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path config = dir / "worked_example.json";
  {
    std::ofstream out(config);
    out << R"({
      "records": [{"family": "moments", "mean": 0.0, "variance": 4.0,
                   "abs_third": 3.0, "count": 10000}],
      "sensitivity": 30.0
    })";
  }

  const auto start = std::chrono::steady_clock::now();
  CliResult r = run_cli("bound --config " + config.string() + " --model independent", dir);
  const double elapsed = seconds_since(start);

  if (r.code != 0) return {false, "CLI exited with code " + std::to_string(r.code)};
  std::optional<double> eps = value_after(r.out, "epsilon = ");
  std::optional<double> delta = value_after(r.out, "delta = ");
  if (!eps || !delta) return {false, "CLI output lacked epsilon/delta lines"};

  const bool ranges = *eps > 0.45 && *eps < 0.46 && *delta > 0.018 && *delta < 0.020;
  const bool in_time = elapsed < 1.0;
  std::string detail = "10^4 records, spread 4, contribution bound 30 -> epsilon " +
                       format12(*eps) + ", delta " + format12(*delta) + ", " +
                       secs(elapsed) + " (budget 1s)";
  if (!ranges) detail += "; outside the expected windows (0.45,0.46)/(0.018,0.020)";
  if (!in_time) detail += "; over the time budget";
  return {ranges && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 2: binomial closed form certified on an 80-point grid

CriterionResult criterion2() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::int64_t> ns = {50, 200, 500, 2000};
  const std::vector<double> ps = {0.1, 0.2, 0.5, 0.8, 0.95};
  const std::vector<double> epss = {0.25, 0.5, 1.0, 2.0};

  int checked = 0;
  for (std::int64_t n : ns) {
    for (double p : ps) {
      DataVectorSpec spec = coins(n, p);
      for (double eps : epss) {
        const double closed = noiseless::binomial_delta_given_eps({n, p}, eps).delta;
        const double exact = noiseless::exact_np_delta(spec, eps);
        if (!(exact <= closed + 1e-12)) {
          return {false, "oracle exceeded the closed form at n=" + std::to_string(n) +
                             " p=" + format12(p) + " eps=" + format12(eps) + ": " +
                             format12(exact) + " > " + format12(closed)};
        }
        ++checked;
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 30.0;
  std::string detail = std::to_string(checked) +
                       " (n, p, epsilon) combinations certified against the exact "
                       "oracle, " +
                       secs(elapsed) + " (budget 30s)";
  if (!in_time) detail += "; over the time budget";
  return {checked == 80 && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 3: heterogeneous instances stay sound and are not all vacuous

CriterionResult criterion3() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> group_count(1, 3);
  std::uniform_int_distribution<int> lattice(1, 4);  // value = k * 0.25
  std::uniform_int_distribution<int> support_size(2, 5);
  std::uniform_real_distribution<double> unit(0.05, 0.95);

  int non_vacuous = 0;
  for (int instance = 0; instance < 20; ++instance) {
    DataVectorSpec spec;
    spec.sensitivity = 1.0;
    const int groups = group_count(rng);
    std::uniform_int_distribution<std::int64_t> per_group(50 / groups, 200 / groups);
    for (int g = 0; g < groups; ++g) {
      const std::int64_t count = per_group(rng);
      if (rng() % 2 == 0) {
        spec.records.push_back(DistributionSpec::bernoulli(unit(rng), count));
      } else {
        // Every support contains 0 so that dropping a record keeps the
        // neighboring sum inside the original sum's support; a support living
        // on a strict lattice coset would make removal perfectly detectable
        // (true delta 1), which the closed-form route does not claim to cover.
        const int k = support_size(rng);
        std::vector<int> vals = {0};
        while (static_cast<int>(vals.size()) < k) {
          int v = lattice(rng);
          if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
        }
        std::sort(vals.begin(), vals.end());
        std::vector<std::pair<double, double>> pts;
        double total = 0.0;
        std::vector<double> w(static_cast<std::size_t>(k));
        for (double& x : w) {
          x = unit(rng);
          total += x;
        }
        for (int i = 0; i < k; ++i) {
          pts.emplace_back(0.25 * vals[static_cast<std::size_t>(i)],
                           w[static_cast<std::size_t>(i)] / total);
        }
        spec.records.push_back(DistributionSpec::discrete(std::move(pts), count));
      }
    }
    spec.validate();

    const PrivacyBound claimed = noiseless::independent_bound(spec);
    const double exact = noiseless::exact_np_delta(spec, claimed.epsilon);
    if (!(exact <= claimed.delta + 1e-12)) {
      return {false, "instance " + std::to_string(instance) +
                         " broke soundness: exact " + format12(exact) + " > claimed " +
                         format12(claimed.delta)};
    }
    if (claimed.delta < 1.0) ++non_vacuous;
  }
  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 60.0;
  std::string detail = "20 seeded mixed-family instances sound; " +
                       std::to_string(non_vacuous) + " carried a non-vacuous delta, " +
                       secs(elapsed) + " (budget 60s)";
  if (non_vacuous < 5) detail += "; fewer than 5 non-vacuous claims";
  if (!in_time) detail += "; over the time budget";
  return {non_vacuous >= 5 && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 4: dependent-records goldens and block-case soundness

CriterionResult criterion4() {
  const auto start = std::chrono::steady_clock::now();

  const PrivacyBound b400 = noiseless::dependent_bound({400, 100.0, 50.0, 25.0, 1, 1.0});
  const bool goldens = format12(b400.epsilon) == "0.244774683068" &&
                       format12(b400.delta) == "1.85613529157";

  // 24 records in eight fully synchronized triples: the bound sees only the
  // marginals plus the declared total variance; the oracle sees the joint law.
  DataVectorSpec blocked = coins(24, 0.5);
  blocked.dependency_bound = 3;
  blocked.total_variance = 18.0;
  for (std::int64_t t = 0; t < 8; ++t) {
    DependencyBlock blk;
    blk.indices = {3 * t, 3 * t + 1, 3 * t + 2};
    blk.joint = {{{0.0, 0.0, 0.0}, 0.5}, {{1.0, 1.0, 1.0}, 0.5}};
    blocked.blocks.push_back(std::move(blk));
  }
  blocked.validate();

  const PrivacyBound claimed = noiseless::dependent_bound(blocked);
  const double exact = noiseless::exact_np_delta(blocked, claimed.epsilon);
  const bool sound = exact <= claimed.delta + 1e-12;

  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 10.0;
  std::string detail = "400-record goldens " + std::string(goldens ? "held" : "BROKE") +
                       " (epsilon " + format12(b400.epsilon) + ", delta " +
                       format12(b400.delta) + "); 24-record block case: oracle delta " +
                       format12(exact) + " <= claimed " + format12(claimed.delta) + ", " +
                       secs(elapsed) + " (budget 10s)";
  if (!sound) detail += "; block case UNSOUND";
  if (!in_time) detail += "; over the time budget";
  return {goldens && sound && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 5: reduction identities (no adversary, zero noise, laplace form)

CriterionResult criterion5() {
  // gamma = 0 must route through the very same arithmetic as no adversary.
  DataVectorSpec spec = coins(500, 0.2);
  const PrivacyBound plain = noiseless::independent_bound(spec);
  const CompromisePlan none = noiseless::worst_case_compromise(spec, 0.0);
  const PrivacyBound with_zero = noiseless::independent_bound_compromised(spec, none);
  const bool gamma_identity = plain.epsilon == with_zero.epsilon &&
                              plain.delta == with_zero.delta &&
                              plain.source == with_zero.source &&
                              plain.diagnostics == with_zero.diagnostics;

  // Zero added noise must be bit-identical to never having added noise.
  IndependentAggregate agg{10000, 4.0, 3.0 * 10000, 30.0};
  const double eps_plain = noiseless::independent_bound(agg).epsilon;
  const double eps_zero_noise = noiseless::eps_with_noise(30.0, 10000, 4.0 * 10000, 0.0);
  const bool noise_identity = eps_plain == eps_zero_noise;

  // The closed combined-epsilon form must agree with recomputing through the
  // equivalent-noise route on a 100-point grid.
  std::mt19937 rng(20260819u);
  std::uniform_real_distribution<double> sens_d(0.5, 50.0);
  std::uniform_real_distribution<double> var_d(1.0, 1.0e6);
  std::uniform_real_distribution<double> eps2_d(0.05, 20.0);
  std::uniform_int_distribution<std::int64_t> n_d(10, 1000000);
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const double sens = sens_d(rng);
    const double var = var_d(rng);
    const double eps2 = eps2_d(rng);
    const std::int64_t n = n_d(rng);
    const double eps1 = noiseless::eps_with_noise(sens, n, var, 0.0);
    const double direct = noiseless::eps_with_laplace(eps1, eps2, n);
    const double via_variance = noiseless::eps_with_noise(
        sens, n, var, noiseless::laplace_baseline_variance(sens, eps2));
    if (std::abs(direct - via_variance) <= 1e-12 * std::max(1.0, std::abs(direct))) {
      ++agree;
    }
  }
  const bool laplace_identity = agree == 100;

  std::string detail = std::string("no-adversary identity ") +
                       (gamma_identity ? "bitwise" : "BROKEN") + ", zero-noise identity " +
                       (noise_identity ? "bitwise" : "BROKEN") + ", laplace form " +
                       std::to_string(agree) + "/100 within 1e-12";
  return {gamma_identity && noise_identity && laplace_identity, detail};
}

// --------------------------------------------------------------------------
// criterion 6: property battery (>= 200 cases)

CriterionResult criterion6() {
  const auto start = std::chrono::steady_clock::now();
  int cases = 0;

  // More records can only shrink the binomial delta at fixed p and epsilon.
  for (double p : {0.1, 0.3, 0.5}) {
    for (double eps : {0.5, 1.0}) {
      double prev = 2.0;
      for (std::int64_t n = 100; n <= 100000; n *= 2) {
        const double d = noiseless::binomial_delta_given_eps({n, p}, eps).delta;
        if (!(d <= prev)) {
          return {false, "delta rose with n at p=" + format12(p) +
                             " eps=" + format12(eps) + " n=" + std::to_string(n)};
        }
        prev = d;
        ++cases;
      }
    }
  }

  // p and 1-p describe the same coin up to relabeling.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> p_d(0.02, 0.98);
  std::uniform_real_distribution<double> eps_d(0.1, 3.0);
  std::uniform_int_distribution<std::int64_t> n_d(20, 20000);
  for (int i = 0; i < 50; ++i) {
    const double p = p_d(rng);
    const double eps = eps_d(rng);
    const std::int64_t n = n_d(rng);
    const double a = noiseless::binomial_delta_given_eps({n, p}, eps).delta;
    const double b = noiseless::binomial_delta_given_eps({n, 1.0 - p}, eps).delta;
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      return {false, "p <-> 1-p symmetry broke at p=" + format12(p)};
    }
    ++cases;
  }

  // The exact divergence can only fall as epsilon grows.
  for (auto [n, p] : std::vector<std::pair<std::int64_t, double>>{
           {40, 0.3}, {60, 0.5}, {30, 0.8}}) {
    DataVectorSpec spec = coins(n, p);
    double prev = 2.0;
    for (int k = 0; k < 10; ++k) {
      const double eps = 0.25 * k;
      const double d = noiseless::exact_np_delta(spec, eps);
      if (!(d <= prev + 1e-15)) {
        return {false, "exact delta rose with epsilon at n=" + std::to_string(n)};
      }
      prev = d;
      ++cases;
    }
  }

  // The required-noise formula must return exactly zero once the data's own
  // randomness reaches the target, with no residual dust.
  std::uniform_real_distribution<double> sens_d(0.5, 20.0);
  std::uniform_real_distribution<double> var_d(10.0, 1.0e5);
  for (int i = 0; i < 60; ++i) {
    const double sens = sens_d(rng);
    const double var = var_d(rng);
    const std::int64_t n = n_d(rng);
    const double achieved = noiseless::eps_with_noise(sens, n, var, 0.0);
    if (noiseless::required_noise_variance(sens, n, var, achieved) != 0.0) {
      return {false, "clamp missed at the achieved epsilon (case " + std::to_string(i) + ")"};
    }
    ++cases;
    if (noiseless::required_noise_variance(sens, n, var, achieved * 1.0001) != 0.0) {
      return {false, "clamp missed just above the achieved epsilon (case " +
                         std::to_string(i) + ")"};
    }
    ++cases;
  }

  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 30.0;
  std::string detail = std::to_string(cases) + " property cases held, " + secs(elapsed) +
                       " (budget 30s)";
  if (cases < 200) detail += "; fewer than 200 cases";
  if (!in_time) detail += "; over the time budget";
  return {cases >= 200 && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 7: post-processing cannot worsen the exact guarantee

CriterionResult criterion7() {
  const std::vector<std::pair<DataVectorSpec, double>> instances = {
      {coins(30, 0.3), 0.3}, {coins(25, 0.6), 0.4}};
  const std::vector<PostprocessMap> maps = {
      PostprocessMap::identity(), PostprocessMap::round_to_multiple(10.0),
      PostprocessMap::bucket_floor(5.0), PostprocessMap::threshold(12.0),
      PostprocessMap::constant(3.0)};
  int held = 0;
  for (const auto& [spec, eps] : instances) {
    for (const PostprocessMap& map : maps) {
      if (noiseless::postprocess_check(spec, eps, map)) ++held;
    }
  }
  return {held == 10,
          std::to_string(held) + "/10 (instance, map) pairs kept delta non-increasing"};
}

// --------------------------------------------------------------------------
// criterion 8: worst-case compromise dominates every explicit subset

CriterionResult criterion8() {
  const auto start = std::chrono::steady_clock::now();

  DataVectorSpec spec;
  spec.sensitivity = 1.0;
  for (int i = 1; i <= 12; ++i) {
    spec.records.push_back(DistributionSpec::bernoulli(0.04 * i, 1));
  }
  spec.validate();

  const BoundOptions opts;
  std::int64_t checked = 0;
  for (double gamma : {0.25, 0.5}) {
    const CompromisePlan worst = noiseless::worst_case_compromise(spec, gamma);
    const double eps_worst =
        noiseless::independent_bound_compromised(spec, worst, opts).epsilon;
    const CompromisePlan delta_worst =
        noiseless::delta_adversarial_compromise(spec, gamma, opts);
    const double delta_cap =
        noiseless::independent_bound_compromised(spec, delta_worst, opts).delta;

    bool ok = true;
    std::string failure;
    for_each_subset(12, worst.compromised_count,
                    [&](const std::vector<std::int64_t>& subset) {
                      if (!ok) return;
                      const CompromisePlan plan =
                          noiseless::compromise_from_indices(spec, gamma, subset);
                      const PrivacyBound b =
                          noiseless::independent_bound_compromised(spec, plan, opts);
                      if (b.epsilon > eps_worst || b.delta > delta_cap) {
                        ok = false;
                        failure = "subset beat the worst-case pick at gamma " +
                                  format12(gamma) + " (epsilon " + format12(b.epsilon) +
                                  " vs " + format12(eps_worst) + ", delta " +
                                  format12(b.delta) + " vs " + format12(delta_cap) + ")";
                      }
                      ++checked;
                    });
    if (!ok) return {false, failure};
  }

  const double elapsed = seconds_since(start);
  const bool in_time = elapsed < 20.0;
  std::string detail = std::to_string(checked) +
                       " subsets enumerated (sizes 3 and 6 of 12); none beat the "
                       "worst-case selection in epsilon or delta, " +
                       secs(elapsed) + " (budget 20s)";
  if (checked != 220 + 924) detail += "; unexpected subset count";
  if (!in_time) detail += "; over the time budget";
  return {checked == 220 + 924 && in_time, detail};
}

// --------------------------------------------------------------------------
// criterion 9: figure sweeps have the right shape

CriterionResult criterion9() {
  const BoundOptions opts;

  // Figures 1-4: guarantees strengthen monotonically with more records.
  for (int fig : {1, 2, 3, 4}) {
    CurveRequest req;
    req.figure_id = fig;
    std::ostringstream out;
    noiseless::emit_curves(req, out, opts);
    const std::vector<CsvRow> rows = parse_csv(out.str(), "n,value");
    if (rows.size() < 100) {
      return {false, "figure " + std::to_string(fig) + " grid came back too small"};
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      // Strictly decreasing until the value underflows to exactly zero; the
      // zero tail must then stay at zero.
      const bool decreasing = rows[i].value < rows[i - 1].value;
      const bool at_floor = rows[i - 1].value == 0.0 && rows[i].value == 0.0;
      if (!(rows[i].n > rows[i - 1].n) || !(decreasing || at_floor)) {
        return {false, "figure " + std::to_string(fig) + " is not strictly decreasing at n=" +
                           std::to_string(rows[i].n)};
      }
    }
  }

  // Noise-requirement sweep: three regimes in order (needs more noise than a
  // pure-noise design, needs some, needs none), with the regime boundaries
  // recovered by bisection from the formula itself. The boundary numbers are
  // derived from this implementation, not fixed targets.
  const double sens = 10.0, eps = 0.2, slope = 0.1;
  const double baseline = noiseless::laplace_baseline_variance(sens, eps);
  auto needed = [&](std::int64_t n) {
    return noiseless::required_noise_variance(sens, n, slope * static_cast<double>(n), eps);
  };

  // needed(n) is decreasing past its single interior peak; bisect on that side.
  auto first_n_below = [&](double level) {
    std::int64_t lo = 25000, hi = 1000000;  // needed(lo) > level >= needed(hi)
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (needed(mid) < level) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };
  const std::int64_t cross_baseline = first_n_below(baseline);
  const std::int64_t cross_zero = [&] {
    std::int64_t lo = 25000, hi = 1000000;
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (needed(mid) == 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  }();

  CurveRequest req;
  req.figure_id = 6;
  req.points = 200;
  std::ostringstream out;
  noiseless::emit_curves(req, out, opts);
  const std::vector<CsvRow> rows = parse_csv(out.str(), "n,value,baseline");

  auto regime = [&](const CsvRow& r) { return r.value >= baseline ? 2 : (r.value > 0.0 ? 1 : 0); };
  int counts[3] = {0, 0, 0};
  int prev = 2;
  std::int64_t last_n_regime2 = 0, first_n_regime1 = 0, last_n_regime1 = 0,
               first_n_regime0 = 0;
  for (const CsvRow& r : rows) {
    if (!r.baseline || std::abs(*r.baseline - baseline) > 1e-9 * baseline) {
      return {false, "baseline column disagrees with the pure-noise variance"};
    }
    const int reg = regime(r);
    if (reg > prev) {
      return {false, "noise regimes ran out of order at n=" + std::to_string(r.n)};
    }
    ++counts[reg];
    if (reg == 2) last_n_regime2 = r.n;
    if (reg == 1 && first_n_regime1 == 0) first_n_regime1 = r.n;
    if (reg == 1) last_n_regime1 = r.n;
    if (reg == 0 && first_n_regime0 == 0) first_n_regime0 = r.n;
    prev = reg;
  }
  if (counts[0] == 0 || counts[1] == 0 || counts[2] == 0) {
    return {false, "a noise regime is missing from the sweep"};
  }
  if (!(last_n_regime2 < cross_baseline && cross_baseline <= first_n_regime1)) {
    return {false, "the baseline crossover does not sit between the regime-2 and "
                   "regime-1 grid rows"};
  }
  if (!(last_n_regime1 < cross_zero && cross_zero <= first_n_regime0)) {
    return {false, "the zero-noise crossover does not sit between the regime-1 and "
                   "regime-0 grid rows"};
  }

  return {true, "figures 1-4 strictly decreasing; noise sweep shows all three regimes "
                "with bisected crossovers n=" +
                    std::to_string(cross_baseline) + " (below pure-noise variance) and n=" +
                    std::to_string(cross_zero) +
                    " (no noise needed), both measured from this implementation"};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    CriterionResult (*fn)();
  };
  const std::vector<Entry> entries = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    CriterionResult r;
    try {
      r = e.fn();
    } catch (const std::exception& ex) {
      r = {false, std::string("threw: ") + ex.what()};
    }
    std::cout << "criterion " << e.id << ": " << (r.pass ? "PASS" : "FAIL") << " — "
              << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " of " << entries.size() << " acceptance criteria failed\n";
    return 1;
  }
  std::cout << "all " << entries.size() << " acceptance criteria passed\n";
  return 0;
}
