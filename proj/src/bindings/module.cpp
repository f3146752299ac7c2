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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noiseless/adversary.hpp"
#include "noiseless/bounds_binomial.hpp"
#include "noiseless/bounds_dependent.hpp"
#include "noiseless/bounds_independent.hpp"
#include "noiseless/model.hpp"
#include "noiseless/oracle.hpp"
#include "noiseless/synergy.hpp"

namespace py = pybind11;

namespace {

noiseless::BoundOptions make_options(double be_factor, int stein_k) {
  noiseless::BoundOptions options;
  options.be_factor = be_factor;
  options.stein_k = stein_k;
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Explicit (epsilon, delta) guarantees for sums of randomized records, "
      "with an exact ground-truth verifier.";

  py::class_<noiseless::MomentSummary>(m, "MomentSummary")
      .def_readonly("mean", &noiseless::MomentSummary::mean)
      .def_readonly("variance", &noiseless::MomentSummary::variance)
      .def_readonly("abs_third", &noiseless::MomentSummary::abs_third)
      .def_readonly("fourth", &noiseless::MomentSummary::fourth);

  py::class_<noiseless::DistributionSpec>(m, "DistributionSpec")
      .def_static("bernoulli", &noiseless::DistributionSpec::bernoulli, py::arg("p"),
                  py::arg("count") = 1)
      .def_static("discrete", &noiseless::DistributionSpec::discrete, py::arg("support"),
                  py::arg("count") = 1)
      .def_static("from_moments", &noiseless::DistributionSpec::from_moments,
                  py::arg("mean"), py::arg("variance"), py::arg("abs_third") = py::none(),
                  py::arg("fourth") = py::none(), py::arg("count") = 1)
      .def_static("from_data", &noiseless::DistributionSpec::from_data, py::arg("values"),
                  py::arg("count") = 1)
      .def_readonly("count", &noiseless::DistributionSpec::count);

  py::class_<noiseless::DependencyBlock>(m, "DependencyBlock")
      .def(py::init([](std::vector<std::int64_t> indices,
                       std::vector<std::pair<std::vector<double>, double>> joint) {
             noiseless::DependencyBlock b;
             b.indices = std::move(indices);
             b.joint = std::move(joint);
             return b;
           }),
           py::arg("indices"), py::arg("joint"));

  py::class_<noiseless::DataVectorSpec>(m, "DataVectorSpec")
      .def(py::init([](std::vector<noiseless::DistributionSpec> records, double sensitivity,
                       std::int64_t dependency_bound, std::optional<double> total_variance,
                       std::vector<noiseless::DependencyBlock> blocks) {
             noiseless::DataVectorSpec spec;
             spec.records = std::move(records);
             spec.sensitivity = sensitivity;
             spec.dependency_bound = dependency_bound;
             spec.total_variance = total_variance;
             spec.blocks = std::move(blocks);
             spec.validate();
             return spec;
           }),
           py::arg("records"), py::arg("sensitivity"), py::arg("dependency_bound") = 1,
           py::arg("total_variance") = py::none(),
           py::arg("blocks") = std::vector<noiseless::DependencyBlock>{})
      .def_property_readonly("n", &noiseless::DataVectorSpec::n)
      .def_readonly("sensitivity", &noiseless::DataVectorSpec::sensitivity)
      .def_readonly("dependency_bound", &noiseless::DataVectorSpec::dependency_bound)
      .def_property_readonly("total_variance",
                             &noiseless::DataVectorSpec::total_variance_value);

  py::class_<noiseless::PrivacyBound>(m, "PrivacyBound")
      .def_readonly("epsilon", &noiseless::PrivacyBound::epsilon)
      .def_readonly("delta", &noiseless::PrivacyBound::delta)
      .def_readonly("source", &noiseless::PrivacyBound::source)
      .def_readonly("preconditions_ok", &noiseless::PrivacyBound::preconditions_ok)
      .def_readonly("diagnostics", &noiseless::PrivacyBound::diagnostics)
      .def_property_readonly("vacuous", &noiseless::PrivacyBound::vacuous)
      .def("__repr__", [](const noiseless::PrivacyBound& b) {
        return "PrivacyBound(epsilon=" + std::to_string(b.epsilon) +
               ", delta=" + std::to_string(b.delta) + ", source='" + b.source + "')";
      });

  py::class_<noiseless::CompromisePlan>(m, "CompromisePlan")
      .def_readonly("gamma", &noiseless::CompromisePlan::gamma)
      .def_readonly("compromised_count", &noiseless::CompromisePlan::compromised_count)
      .def_readonly("remaining_n", &noiseless::CompromisePlan::remaining_n)
      .def_readonly("remaining_variance", &noiseless::CompromisePlan::remaining_variance);

  m.def("central_moments", &noiseless::central_moments, py::arg("spec"),
        "Mean, variance, E|X-mu|^3 and E(X-mu)^4 of one record group.");

  m.def(
      "binomial_eps_given_delta",
      [](std::int64_t n, double p, double delta) {
        return noiseless::binomial_eps_given_delta({n, p}, delta);
      },
      py::arg("n"), py::arg("p"), py::arg("delta"),
      "Certified epsilon at a chosen delta for a sum of n i.i.d. bernoulli(p).");
  m.def(
      "binomial_delta_given_eps",
      [](std::int64_t n, double p, double epsilon) {
        return noiseless::binomial_delta_given_eps({n, p}, epsilon);
      },
      py::arg("n"), py::arg("p"), py::arg("epsilon"),
      "Certified delta at a chosen epsilon for a sum of n i.i.d. bernoulli(p).");

  m.def(
      "independent_bound",
      [](const noiseless::DataVectorSpec& spec, double be_factor, int stein_k) {
        return noiseless::independent_bound(spec, make_options(be_factor, stein_k));
      },
      py::arg("spec"), py::arg("be_factor") = 1.12, py::arg("stein_k") = 28,
      "Guarantee for a sum of independent records via the central-limit route.");
  m.def(
      "dependent_bound",
      [](const noiseless::DataVectorSpec& spec, double be_factor, int stein_k) {
        return noiseless::dependent_bound(spec, make_options(be_factor, stein_k));
      },
      py::arg("spec"), py::arg("be_factor") = 1.12, py::arg("stein_k") = 28,
      "Guarantee for a sum of locally dependent records via the normal-approximation "
      "route.");

  m.def("worst_case_compromise", &noiseless::worst_case_compromise, py::arg("spec"),
        py::arg("gamma"),
        "The epsilon-worst selection of ceil(gamma * n) compromised records.");
  m.def(
      "independent_bound_compromised",
      [](const noiseless::DataVectorSpec& spec, const noiseless::CompromisePlan& plan,
         double be_factor, int stein_k) {
        return noiseless::independent_bound_compromised(spec, plan,
                                                        make_options(be_factor, stein_k));
      },
      py::arg("spec"), py::arg("plan"), py::arg("be_factor") = 1.12,
      py::arg("stein_k") = 28);
  m.def(
      "dependent_bound_compromised",
      [](const noiseless::DataVectorSpec& spec, const noiseless::CompromisePlan& plan,
         double remaining_total_variance, double be_factor, int stein_k) {
        return noiseless::dependent_bound_compromised(spec, plan, remaining_total_variance,
                                                      make_options(be_factor, stein_k));
      },
      py::arg("spec"), py::arg("plan"), py::arg("remaining_total_variance"),
      py::arg("be_factor") = 1.12, py::arg("stein_k") = 28);

  m.def("eps_with_noise", &noiseless::eps_with_noise, py::arg("sensitivity"), py::arg("n"),
        py::arg("data_variance"), py::arg("noise_variance"),
        "Epsilon when independent zero-mean noise rides on the data's randomness.");
  m.def("required_noise_variance", &noiseless::required_noise_variance,
        py::arg("sensitivity"), py::arg("n"), py::arg("data_variance"),
        py::arg("target_epsilon"),
        "Smallest added noise variance that reaches the target epsilon.");
  m.def("eps_with_laplace", &noiseless::eps_with_laplace, py::arg("eps1"), py::arg("eps2"),
        py::arg("n"), "Combined epsilon for laplace noise calibrated to eps2.");
  m.def("laplace_baseline_variance", &noiseless::laplace_baseline_variance,
        py::arg("sensitivity"), py::arg("epsilon"),
        "Noise variance a pure-noise release needs at the same epsilon.");

  m.def(
      "exact_np_delta",
      [](const noiseless::DataVectorSpec& spec, double epsilon) {
        return noiseless::exact_np_delta(spec, epsilon);
      },
      py::arg("spec"), py::arg("epsilon"),
      "Exact worst-case delta over all adjacent vectors and both orderings.");
  m.def(
      "mc_estimate_delta",
      [](const noiseless::DataVectorSpec& spec, double epsilon, std::int64_t samples,
         std::uint64_t seed) {
        noiseless::McOptions mc;
        mc.samples = samples;
        mc.seed = seed;
        noiseless::McResult r = noiseless::mc_estimate_delta(spec, epsilon, std::nullopt, mc);
        return py::make_tuple(r.estimate, r.ci95);
      },
      py::arg("spec"), py::arg("epsilon"), py::arg("samples") = 100000,
      py::arg("seed") = 12345,
      "Sampling estimate of the worst-case delta, with a 95% bootstrap half-width.");
  m.def(
      "hockey_stick_delta",
      [](const std::vector<std::pair<double, double>>& p,
         const std::vector<std::pair<double, double>>& q, double epsilon) {
        return noiseless::hockey_stick_delta(noiseless::DiscretePmf::from_points(p),
                                             noiseless::DiscretePmf::from_points(q),
                                             epsilon);
      },
      py::arg("p"), py::arg("q"), py::arg("epsilon"),
      "sum_x max(p(x) - e^eps q(x), 0) for two finite distributions.");
}
