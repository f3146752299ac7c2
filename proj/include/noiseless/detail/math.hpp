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

#ifndef NOISELESS_DETAIL_MATH_HPP_
#define NOISELESS_DETAIL_MATH_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace noiseless {
namespace detail {

// Compensated (Neumaier) accumulator. The certification oracle sums many
// small terms against a 1e-12 slack budget, so plain summation is not enough
// headroom on large supports.
class NeumaierSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Epsilon shared by every sum-aggregate bound: sqrt(sens^2 * ln(n) / var).
// All call sites route through this one expression so that reductions that
// must agree bit-for-bit (e.g. zero added noise vs. no noise) actually do.
inline double sum_epsilon(double sensitivity, std::int64_t n, double variance) {
  return std::sqrt(sensitivity * sensitivity * std::log(static_cast<double>(n)) / variance);
}

// ceil(gamma * n) with a snap window so that products like 0.3 * 10 that land
// one ulp away from an integer still count as that integer.
inline std::int64_t snapped_ceil(double gamma, std::int64_t n) {
  double x = gamma * static_cast<double>(n);
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

// splitmix64, used to derive independent RNG substreams from one user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Formats with 12 significant digits, the precision all reports print at.
inline std::string format12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// Rounds a value to 12 significant digits so structured and text output agree.
inline double round12(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format12(v).c_str(), nullptr);
}

}  // namespace detail
}  // namespace noiseless

#endif  // NOISELESS_DETAIL_MATH_HPP_
