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

#include "noiseless/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "noiseless/detail/math.hpp"

namespace noiseless {

namespace {

constexpr char kTooLarge[] = "instance too large for exact oracle, use mc_estimate";

std::int64_t quantize(double value, double resolution) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("oracle: non-finite value in a support");
  }
  const double scaled = value / resolution;
  if (std::abs(scaled) > 4.6e18) {
    throw std::invalid_argument(
        "oracle: value magnitude exceeds the quantization grid range");
  }
  return static_cast<std::int64_t>(std::llround(scaled));
}

// Sorts an accumulated key -> prob map into a pmf, dropping zero-mass points.
DiscretePmf pmf_from_map(const std::unordered_map<std::int64_t, double>& acc,
                         double resolution) {
  std::vector<std::pair<std::int64_t, double>> entries;
  entries.reserve(acc.size());
  for (const auto& [k, p] : acc) {
    if (p > 0.0) entries.emplace_back(k, p);
  }
  std::sort(entries.begin(), entries.end());
  std::vector<std::int64_t> keys;
  std::vector<double> probs;
  keys.reserve(entries.size());
  probs.reserve(entries.size());
  for (const auto& [k, p] : entries) {
    keys.push_back(k);
    probs.push_back(p);
  }
  return DiscretePmf::from_keys(std::move(keys), std::move(probs), resolution);
}

DiscretePmf point_mass_zero(double resolution) {
  return DiscretePmf::from_keys({0}, {1.0}, resolution);
}

DiscretePmf convolve(const DiscretePmf& a, const DiscretePmf& b,
                     const OracleOptions& options) {
  std::unordered_map<std::int64_t, double> acc;
  acc.reserve(a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t ka = a.keys()[i];
    const double pa = a.probs()[i];
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[ka + b.keys()[j]] += pa * b.probs()[j];
      if (acc.size() > options.support_cap) throw std::runtime_error(kTooLarge);
    }
  }
  return pmf_from_map(acc, options.resolution);
}

// Finite pmf of one record drawn from a group's distribution.
DiscretePmf record_pmf(const DistributionSpec& g, const OracleOptions& options) {
  switch (g.family) {
    case DistributionSpec::Family::kBernoulli:
      return DiscretePmf::from_points({{0.0, 1.0 - g.p}, {1.0, g.p}}, options.resolution);
    case DistributionSpec::Family::kDiscrete:
      return DiscretePmf::from_points(g.support, options.resolution);
    case DistributionSpec::Family::kMomentsOnly:
      throw std::invalid_argument(
          "exact oracle requires discrete record families (moments-only group given)");
  }
  throw std::invalid_argument("exact oracle: unknown record family");
}

// Pmf of a dependency block's sum, optionally with one coordinate left out.
DiscretePmf block_sum_pmf(const DependencyBlock& block, std::int64_t skip_coord,
                          const OracleOptions& options) {
  std::unordered_map<std::int64_t, double> acc;
  for (const auto& [tuple, pr] : block.joint) {
    std::int64_t key = 0;
    for (std::size_t c = 0; c < tuple.size(); ++c) {
      if (static_cast<std::int64_t>(c) == skip_coord) continue;
      key += quantize(tuple[c], options.resolution);
    }
    acc[key] += pr;
  }
  return pmf_from_map(acc, options.resolution);
}

// Where each group sits in the expanded index space, and how many of its
// records are free (not claimed by an explicit dependency block).
struct Layout {
  std::vector<std::int64_t> group_start;
  std::vector<std::int64_t> free_count;
  // For every block-covered expanded index: (block, coordinate).
  std::unordered_map<std::int64_t, std::pair<std::int64_t, std::int64_t>> block_coord;
};

Layout analyze(const DataVectorSpec& spec) {
  Layout lay;
  lay.group_start.reserve(spec.records.size());
  std::int64_t at = 0;
  for (const auto& g : spec.records) {
    lay.group_start.push_back(at);
    lay.free_count.push_back(g.count);
    at += g.count;
  }
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const auto& blk = spec.blocks[b];
    for (std::size_t c = 0; c < blk.indices.size(); ++c) {
      const std::int64_t idx = blk.indices[c];
      lay.block_coord[idx] = {static_cast<std::int64_t>(b), static_cast<std::int64_t>(c)};
      // Group owning this index.
      auto it = std::upper_bound(lay.group_start.begin(), lay.group_start.end(), idx);
      const std::size_t gi = static_cast<std::size_t>(it - lay.group_start.begin()) - 1;
      --lay.free_count[gi];
      if (lay.free_count[gi] < 0) {
        throw std::invalid_argument(
            "oracle: dependency blocks claim more records than a group holds");
      }
    }
  }
  return lay;
}

// Sum pmf with per-group free counts and per-block coordinate skips spelled
// out; the adjacency variants all reduce to tweaks of these arguments.
DiscretePmf assemble_sum_pmf(const DataVectorSpec& spec,
                             const std::vector<std::int64_t>& free_count,
                             std::int64_t skip_block, std::int64_t skip_coord,
                             const DistributionSpec* insert,
                             const OracleOptions& options) {
  DiscretePmf sum = point_mass_zero(options.resolution);
  for (std::size_t gi = 0; gi < spec.records.size(); ++gi) {
    if (free_count[gi] == 0) continue;
    const DiscretePmf one = record_pmf(spec.records[gi], options);
    for (std::int64_t k = 0; k < free_count[gi]; ++k) sum = convolve(sum, one, options);
  }
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const std::int64_t skip =
        (static_cast<std::int64_t>(b) == skip_block) ? skip_coord : -1;
    sum = convolve(sum, block_sum_pmf(spec.blocks[b], skip, options), options);
  }
  if (insert != nullptr) sum = convolve(sum, record_pmf(*insert, options), options);
  return sum;
}

const DistributionSpec& resolve_insert(const DataVectorSpec& spec,
                                       const std::optional<DistributionSpec>& insert_spec) {
  if (insert_spec) {
    insert_spec->validate();
    return *insert_spec;
  }
  return spec.records.front();
}

struct CaseLaws {
  DiscretePmf base;
  std::vector<AdjacencyCase> cases;
  std::vector<DiscretePmf> variants;
};

CaseLaws build_case_laws(const DataVectorSpec& spec,
                         const std::optional<DistributionSpec>& insert_spec,
                         const OracleOptions& options) {
  spec.validate();
  const Layout lay = analyze(spec);
  CaseLaws out;
  out.base = assemble_sum_pmf(spec, lay.free_count, -1, -1, nullptr, options);
  out.cases = adjacency_cases(spec);
  const DistributionSpec& ins = resolve_insert(spec, insert_spec);
  out.variants.reserve(out.cases.size());
  for (const auto& adj : out.cases) {
    if (adj.action == AdjacencyCase::Action::kInsert) {
      out.variants.push_back(assemble_sum_pmf(spec, lay.free_count, -1, -1, &ins, options));
      continue;
    }
    auto it = lay.block_coord.find(adj.index);
    if (it != lay.block_coord.end()) {
      out.variants.push_back(assemble_sum_pmf(spec, lay.free_count, it->second.first,
                                              it->second.second, nullptr, options));
    } else {
      auto gt = std::upper_bound(lay.group_start.begin(), lay.group_start.end(), adj.index);
      const std::size_t gi = static_cast<std::size_t>(gt - lay.group_start.begin()) - 1;
      std::vector<std::int64_t> fc = lay.free_count;
      --fc[gi];
      out.variants.push_back(assemble_sum_pmf(spec, fc, -1, -1, nullptr, options));
    }
  }
  return out;
}

double case_pair_delta(const DiscretePmf& p, const DiscretePmf& q, double epsilon) {
  return std::max(hockey_stick_delta(p, q, epsilon), hockey_stick_delta(q, p, epsilon));
}

}  // namespace

DiscretePmf DiscretePmf::from_points(const std::vector<std::pair<double, double>>& points,
                                     double resolution) {
  if (resolution <= 0.0 || !std::isfinite(resolution)) {
    throw std::invalid_argument("pmf: resolution must be positive and finite");
  }
  std::unordered_map<std::int64_t, double> acc;
  acc.reserve(points.size());
  detail::NeumaierSum mass;
  for (const auto& [v, p] : points) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument("pmf: probabilities must be finite and >= 0");
    }
    acc[quantize(v, resolution)] += p;
    mass.add(p);
  }
  if (std::abs(mass.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("pmf: probabilities must sum to 1 within 1e-12");
  }
  return pmf_from_map(acc, resolution);
}

DiscretePmf DiscretePmf::from_keys(std::vector<std::int64_t> keys, std::vector<double> probs,
                                   double resolution) {
  DiscretePmf pmf;
  pmf.keys_ = std::move(keys);
  pmf.probs_ = std::move(probs);
  pmf.resolution_ = resolution;
  return pmf;
}

std::vector<std::pair<double, double>> DiscretePmf::points() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(keys_.size());
  for (std::size_t i = 0; i < keys_.size(); ++i) out.emplace_back(value(i), probs_[i]);
  return out;
}

double DiscretePmf::total_mass() const {
  detail::NeumaierSum s;
  for (double p : probs_) s.add(p);
  return s.value();
}

DiscretePmf DiscretePmf::shifted(double offset) const {
  const std::int64_t dk = quantize(offset, resolution_);
  std::vector<std::int64_t> keys = keys_;
  for (auto& k : keys) k += dk;
  return from_keys(std::move(keys), probs_, resolution_);
}

std::vector<AdjacencyCase> adjacency_cases(const DataVectorSpec& spec) {
  const Layout lay = analyze(spec);
  std::vector<AdjacencyCase> cases;
  // One removal per group of exchangeable free records.
  for (std::size_t gi = 0; gi < spec.records.size(); ++gi) {
    if (lay.free_count[gi] == 0) continue;
    std::int64_t idx = lay.group_start[gi];
    while (lay.block_coord.count(idx) > 0) ++idx;
    cases.push_back({AdjacencyCase::Action::kRemove, idx});
  }
  // Every coordinate of every block is its own removal case.
  for (const auto& blk : spec.blocks) {
    for (std::int64_t idx : blk.indices) {
      cases.push_back({AdjacencyCase::Action::kRemove, idx});
    }
  }
  cases.push_back({AdjacencyCase::Action::kInsert, -1});
  return cases;
}

DiscretePmf exact_sum_pmf(const DataVectorSpec& spec, const OracleOptions& options) {
  spec.validate();
  const Layout lay = analyze(spec);
  return assemble_sum_pmf(spec, lay.free_count, -1, -1, nullptr, options);
}

DiscretePmf adjacent_sum_pmf(const DataVectorSpec& spec, const AdjacencyCase& adj,
                             const DistributionSpec& insert_spec,
                             const OracleOptions& options) {
  spec.validate();
  const Layout lay = analyze(spec);
  if (adj.action == AdjacencyCase::Action::kInsert) {
    insert_spec.validate();
    return assemble_sum_pmf(spec, lay.free_count, -1, -1, &insert_spec, options);
  }
  auto it = lay.block_coord.find(adj.index);
  if (it != lay.block_coord.end()) {
    return assemble_sum_pmf(spec, lay.free_count, it->second.first, it->second.second,
                            nullptr, options);
  }
  auto gt = std::upper_bound(lay.group_start.begin(), lay.group_start.end(), adj.index);
  const std::size_t gi = static_cast<std::size_t>(gt - lay.group_start.begin()) - 1;
  if (gi >= spec.records.size() || lay.free_count[gi] <= 0) {
    throw std::invalid_argument("oracle: removal index does not name a free record");
  }
  std::vector<std::int64_t> fc = lay.free_count;
  --fc[gi];
  return assemble_sum_pmf(spec, fc, -1, -1, nullptr, options);
}

double hockey_stick_delta(const DiscretePmf& p, const DiscretePmf& q, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("hockey-stick divergence: epsilon must be >= 0");
  }
  if (p.resolution() != q.resolution()) {
    throw std::invalid_argument(
        "hockey-stick divergence: pmfs use different quantization grids");
  }
  const double ee = std::exp(epsilon);
  detail::NeumaierSum acc;
  std::size_t i = 0, j = 0;
  while (i < p.size()) {
    while (j < q.size() && q.keys()[j] < p.keys()[i]) ++j;
    double mass_q = 0.0;
    if (j < q.size() && q.keys()[j] == p.keys()[i]) mass_q = q.probs()[j];
    const double term = p.probs()[i] - ee * mass_q;
    if (term > 0.0) acc.add(term);
    ++i;
  }
  return acc.value();
}

double exact_np_delta(const DataVectorSpec& spec, double epsilon,
                      const std::optional<DistributionSpec>& insert_spec,
                      const OracleOptions& options) {
  const CaseLaws laws = build_case_laws(spec, insert_spec, options);
  double worst = 0.0;
  for (const auto& v : laws.variants) {
    worst = std::max(worst, case_pair_delta(laws.base, v, epsilon));
  }
  return worst;
}

double PostprocessMap::apply(double value) const {
  switch (kind) {
    case Kind::kIdentity:
      return value;
    case Kind::kRoundToMultiple:
      return std::round(value / param) * param;
    case Kind::kBucketFloor:
      return std::floor(value / param) * param;
    case Kind::kThreshold:
      return value >= param ? 1.0 : 0.0;
    case Kind::kConstant:
      return param;
  }
  return value;
}

namespace {

DiscretePmf pushforward(const DiscretePmf& pmf, const PostprocessMap& map) {
  std::unordered_map<std::int64_t, double> acc;
  acc.reserve(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    acc[quantize(map.apply(pmf.value(i)), pmf.resolution())] += pmf.probs()[i];
  }
  return pmf_from_map(acc, pmf.resolution());
}

}  // namespace

bool postprocess_check(const DataVectorSpec& spec, double epsilon, const PostprocessMap& map,
                       const std::optional<DistributionSpec>& insert_spec,
                       const OracleOptions& options) {
  if ((map.kind == PostprocessMap::Kind::kRoundToMultiple ||
       map.kind == PostprocessMap::Kind::kBucketFloor) &&
      !(map.param > 0.0)) {
    throw std::invalid_argument("post-processing map: width must be > 0");
  }
  const CaseLaws laws = build_case_laws(spec, insert_spec, options);
  const DiscretePmf mapped_base = pushforward(laws.base, map);
  double before = 0.0;
  double after = 0.0;
  for (const auto& v : laws.variants) {
    before = std::max(before, case_pair_delta(laws.base, v, epsilon));
    after = std::max(after, case_pair_delta(mapped_base, pushforward(v, map), epsilon));
  }
  return after <= before + 1e-12;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimator.
// ---------------------------------------------------------------------------

namespace {

constexpr std::int64_t kChunk = 16384;

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t dist_id, std::uint64_t chunk) {
  const std::uint64_t mixed =
      detail::splitmix64(seed ^ detail::splitmix64((dist_id << 32) ^ chunk));
  return std::mt19937_64(mixed);
}

// Sampling plan for the sum under one (possibly adjusted) vector law. Group
// draws use a conditional-binomial multinomial split so cost does not scale
// with the group count.
struct SumSampler {
  struct GroupDraw {
    std::vector<std::int64_t> keys;
    std::vector<double> probs;
    std::int64_t count = 0;
  };
  struct BlockDraw {
    std::vector<double> cum;
    std::vector<std::int64_t> keys;  // per-entry sum of kept coordinates
  };
  std::vector<GroupDraw> groups;
  std::vector<BlockDraw> blocks;

  std::int64_t sample_key(std::mt19937_64& rng) const {
    std::int64_t key = 0;
    for (const auto& g : groups) {
      std::int64_t remaining = g.count;
      double mass_left = 1.0;
      for (std::size_t j = 0; j + 1 < g.keys.size() && remaining > 0; ++j) {
        double share = g.probs[j] / mass_left;
        share = std::min(std::max(share, 0.0), 1.0);
        std::binomial_distribution<std::int64_t> bin(remaining, share);
        const std::int64_t c = bin(rng);
        key += c * g.keys[j];
        remaining -= c;
        mass_left -= g.probs[j];
      }
      if (!g.keys.empty() && remaining > 0) key += remaining * g.keys.back();
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& b : blocks) {
      const double u = unif(rng);
      const auto it = std::lower_bound(b.cum.begin(), b.cum.end(), u);
      const std::size_t e = std::min(static_cast<std::size_t>(it - b.cum.begin()),
                                     b.keys.size() - 1);
      key += b.keys[e];
    }
    return key;
  }
};

SumSampler::GroupDraw group_draw(const DistributionSpec& g, std::int64_t count,
                                 const OracleOptions& options) {
  const DiscretePmf pmf = record_pmf(g, options);
  SumSampler::GroupDraw d;
  d.keys = pmf.keys();
  d.probs = pmf.probs();
  d.count = count;
  return d;
}

SumSampler::BlockDraw block_draw(const DependencyBlock& blk, std::int64_t skip_coord,
                                 const OracleOptions& options) {
  SumSampler::BlockDraw d;
  double cum = 0.0;
  for (const auto& [tuple, pr] : blk.joint) {
    std::int64_t key = 0;
    for (std::size_t c = 0; c < tuple.size(); ++c) {
      if (static_cast<std::int64_t>(c) == skip_coord) continue;
      key += quantize(tuple[c], options.resolution);
    }
    cum += pr;
    d.cum.push_back(cum);
    d.keys.push_back(key);
  }
  return d;
}

SumSampler build_sampler(const DataVectorSpec& spec,
                         const std::vector<std::int64_t>& free_count,
                         std::int64_t skip_block, std::int64_t skip_coord,
                         const DistributionSpec* insert, const OracleOptions& options) {
  SumSampler s;
  for (std::size_t gi = 0; gi < spec.records.size(); ++gi) {
    if (free_count[gi] > 0) {
      s.groups.push_back(group_draw(spec.records[gi], free_count[gi], options));
    }
  }
  if (insert != nullptr) s.groups.push_back(group_draw(*insert, 1, options));
  for (std::size_t b = 0; b < spec.blocks.size(); ++b) {
    const std::int64_t skip =
        (static_cast<std::int64_t>(b) == skip_block) ? skip_coord : -1;
    s.blocks.push_back(block_draw(spec.blocks[b], skip, options));
  }
  return s;
}

double laplace_draw(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  double u = unif(rng);
  if (u == 0.5 || u == -0.5) u = 0.0;
  const double sgn = (u < 0.0) ? -1.0 : 1.0;
  return -scale * sgn * std::log(1.0 - 2.0 * std::abs(u));
}

// A sampled distribution reduced to bucket counts.
struct Histogram {
  std::vector<std::int64_t> buckets;  // bucket ids, sorted
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

Histogram histogram_from_counts(std::unordered_map<std::int64_t, std::int64_t>&& acc) {
  std::vector<std::pair<std::int64_t, std::int64_t>> entries(acc.begin(), acc.end());
  std::sort(entries.begin(), entries.end());
  Histogram h;
  for (const auto& [k, c] : entries) {
    h.buckets.push_back(k);
    h.counts.push_back(c);
    h.total += c;
  }
  return h;
}

double histogram_delta(const Histogram& p, const Histogram& q, double epsilon) {
  const double ee = std::exp(epsilon);
  const double mp = static_cast<double>(p.total);
  const double mq = static_cast<double>(q.total);
  detail::NeumaierSum acc;
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.buckets.size(); ++i) {
    while (j < q.buckets.size() && q.buckets[j] < p.buckets[i]) ++j;
    double qc = 0.0;
    if (j < q.buckets.size() && q.buckets[j] == p.buckets[i]) {
      qc = static_cast<double>(q.counts[j]);
    }
    const double term = static_cast<double>(p.counts[i]) / mp - ee * qc / mq;
    if (term > 0.0) acc.add(term);
  }
  return acc.value();
}

double histogram_pair_delta(const Histogram& p, const Histogram& q, double epsilon) {
  return std::max(histogram_delta(p, q, epsilon), histogram_delta(q, p, epsilon));
}

Histogram bootstrap_resample(const Histogram& h, std::mt19937_64& rng) {
  Histogram out;
  out.buckets = h.buckets;
  out.counts.resize(h.counts.size());
  std::int64_t remaining = h.total;
  double mass_left = 1.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    if (i + 1 == h.counts.size()) {
      out.counts[i] = remaining;
      remaining = 0;
      break;
    }
    if (remaining <= 0 || mass_left <= 0.0) {
      out.counts[i] = 0;
      continue;
    }
    const double p = static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
    const double share = std::min(std::max(p / mass_left, 0.0), 1.0);
    std::binomial_distribution<std::int64_t> bin(remaining, share);
    const std::int64_t c = bin(rng);
    out.counts[i] = c;
    remaining -= c;
    mass_left -= p;
  }
  out.total = h.total;
  return out;
}

}  // namespace

McResult mc_estimate_delta(const DataVectorSpec& spec, double epsilon,
                           const std::optional<DistributionSpec>& insert_spec,
                           const McOptions& mc, const OracleOptions& options) {
  spec.validate();
  if (mc.samples < 10000) {
    throw std::invalid_argument("mc_estimate: at least 10000 samples are required");
  }
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("mc_estimate: epsilon must be >= 0");
  }
  const Layout lay = analyze(spec);
  const DistributionSpec& ins = resolve_insert(spec, insert_spec);
  const std::vector<AdjacencyCase> cases = adjacency_cases(spec);

  // Distribution 0 is the base law; distribution 1+i is adjacency case i.
  std::vector<SumSampler> samplers;
  samplers.push_back(build_sampler(spec, lay.free_count, -1, -1, nullptr, options));
  for (const auto& adj : cases) {
    if (adj.action == AdjacencyCase::Action::kInsert) {
      samplers.push_back(build_sampler(spec, lay.free_count, -1, -1, &ins, options));
      continue;
    }
    auto it = lay.block_coord.find(adj.index);
    if (it != lay.block_coord.end()) {
      samplers.push_back(build_sampler(spec, lay.free_count, it->second.first,
                                       it->second.second, nullptr, options));
    } else {
      auto gt = std::upper_bound(lay.group_start.begin(), lay.group_start.end(), adj.index);
      const std::size_t gi = static_cast<std::size_t>(gt - lay.group_start.begin()) - 1;
      std::vector<std::int64_t> fc = lay.free_count;
      --fc[gi];
      samplers.push_back(build_sampler(spec, fc, -1, -1, nullptr, options));
    }
  }

  const bool continuous = mc.laplace_scale.has_value();
  std::vector<Histogram> hists(samplers.size());
  std::vector<std::vector<double>> raw;  // continuous path keeps raw sums
  if (continuous) raw.resize(samplers.size());

  for (std::size_t d = 0; d < samplers.size(); ++d) {
    std::unordered_map<std::int64_t, std::int64_t> acc;
    if (continuous) raw[d].reserve(static_cast<std::size_t>(mc.samples));
    std::int64_t produced = 0;
    std::uint64_t chunk = 0;
    while (produced < mc.samples) {
      std::mt19937_64 rng = substream(mc.seed, d, chunk++);
      const std::int64_t batch = std::min<std::int64_t>(kChunk, mc.samples - produced);
      for (std::int64_t s = 0; s < batch; ++s) {
        const std::int64_t key = samplers[d].sample_key(rng);
        if (continuous) {
          raw[d].push_back(static_cast<double>(key) * options.resolution +
                           laplace_draw(rng, *mc.laplace_scale));
        } else {
          ++acc[key];
        }
      }
      produced += batch;
    }
    if (!continuous) hists[d] = histogram_from_counts(std::move(acc));
  }

  if (continuous) {
    // Freedman-Diaconis bin width from the base sample, shared by all laws.
    std::vector<double> sorted = raw[0];
    std::sort(sorted.begin(), sorted.end());
    const auto quant = [&sorted](double q) {
      const double pos = q * static_cast<double>(sorted.size() - 1);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
      return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    const double iqr = quant(0.75) - quant(0.25);
    double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (!(width > 0.0)) width = options.resolution;
    double origin = sorted.front();
    for (const auto& r : raw) {
      for (double v : r) origin = std::min(origin, v);
    }
    for (std::size_t d = 0; d < raw.size(); ++d) {
      std::unordered_map<std::int64_t, std::int64_t> acc;
      for (double v : raw[d]) {
        ++acc[static_cast<std::int64_t>(std::floor((v - origin) / width))];
      }
      hists[d] = histogram_from_counts(std::move(acc));
    }
  }

  double estimate = 0.0;
  for (std::size_t c = 1; c < hists.size(); ++c) {
    estimate = std::max(estimate, histogram_pair_delta(hists[0], hists[c], epsilon));
  }

  std::vector<double> boot(static_cast<std::size_t>(mc.bootstrap_rounds));
  for (int b = 0; b < mc.bootstrap_rounds; ++b) {
    std::mt19937_64 rng = substream(mc.seed, 0xB007u, static_cast<std::uint64_t>(b));
    std::vector<Histogram> res;
    res.reserve(hists.size());
    for (const auto& h : hists) res.push_back(bootstrap_resample(h, rng));
    double d = 0.0;
    for (std::size_t c = 1; c < res.size(); ++c) {
      d = std::max(d, histogram_pair_delta(res[0], res[c], epsilon));
    }
    boot[static_cast<std::size_t>(b)] = d;
  }
  std::sort(boot.begin(), boot.end());
  const auto pick = [&boot](double q) {
    const double pos = q * static_cast<double>(boot.size() - 1);
    return boot[static_cast<std::size_t>(std::llround(pos))];
  };
  McResult out;
  out.estimate = estimate;
  out.ci95 = (pick(0.975) - pick(0.025)) / 2.0;
  return out;
}

}  // namespace noiseless
