# Copyright 2026 The noiseless-privacy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end smoke coverage for the python bindings."""

import pytest

import noiseless_privacy as npv


def bernoulli_spec(n, p, sensitivity=1.0):
    return npv.DataVectorSpec(
        records=[npv.DistributionSpec.bernoulli(p, n)], sensitivity=sensitivity
    )


def test_package_surface_is_importable():
    for name in npv.__all__:
        assert getattr(npv, name) is not None


def test_central_moments_of_a_biased_coin():
    m = npv.central_moments(npv.DistributionSpec.bernoulli(0.2, 1))
    assert m.mean == pytest.approx(0.2, rel=1e-15)
    assert m.variance == pytest.approx(0.16, rel=1e-15)
    assert m.abs_third == pytest.approx(0.1088, rel=1e-12)
    assert m.fourth == pytest.approx(0.0832, rel=1e-12)


def test_worked_example_guarantee():
    spec = npv.DataVectorSpec(
        records=[npv.DistributionSpec.from_moments(0.0, 4.0, 3.0, None, 10000)],
        sensitivity=30.0,
    )
    bound = npv.independent_bound(spec)
    assert bound.epsilon == pytest.approx(0.455228138816, rel=1e-11)
    assert bound.delta == pytest.approx(0.0188214386436, rel=1e-11)
    assert bound.source == "independent-clt"
    assert not bound.vacuous


def test_binomial_bounds_both_directions():
    from_delta = npv.binomial_eps_given_delta(10000, 0.5, 0.05)
    assert from_delta.epsilon == pytest.approx(0.0550824355223, rel=1e-11)
    assert from_delta.delta == 0.05

    from_eps = npv.binomial_delta_given_eps(1000, 0.2, 1.0)
    assert from_eps.delta == pytest.approx(4.55358672714e-12, rel=1e-9)
    assert from_eps.source == "binomial-window-ratio"


def test_exact_oracle_certifies_the_closed_form():
    spec = bernoulli_spec(60, 0.3)
    claimed = npv.independent_bound(spec)
    exact = npv.exact_np_delta(spec, claimed.epsilon)
    assert exact <= claimed.delta + 1e-12
    # The exact divergence can only shrink as epsilon grows.
    assert npv.exact_np_delta(spec, 1.0) <= npv.exact_np_delta(spec, 0.25) + 1e-15


def test_hockey_stick_matches_hand_computation():
    coin = [(0.0, 0.5), (1.0, 0.5)]
    point = [(0.0, 1.0)]
    assert npv.hockey_stick_delta(coin, coin, 0.0) == 0.0
    assert npv.hockey_stick_delta(coin, point, 0.0) == pytest.approx(0.5, abs=1e-15)


def test_sampling_estimator_is_seed_deterministic():
    spec = bernoulli_spec(40, 0.55)
    first = npv.mc_estimate_delta(spec, 0.3, samples=20000, seed=777)
    second = npv.mc_estimate_delta(spec, 0.3, samples=20000, seed=777)
    other = npv.mc_estimate_delta(spec, 0.3, samples=20000, seed=778)
    assert first == second
    assert first[0] != other[0]


def test_noise_planning_round_trip_and_clamp():
    sens, n, var = 10.0, 10000, 1000.0
    needed = npv.required_noise_variance(sens, n, var, 0.5)
    assert needed > 0.0
    assert npv.eps_with_noise(sens, n, var, needed) == pytest.approx(0.5, rel=1e-12)

    achieved = npv.eps_with_noise(sens, n, var, 0.0)
    assert npv.required_noise_variance(sens, n, var, achieved) == 0.0

    eps1, eps2 = achieved, 0.8
    combined = npv.eps_with_laplace(eps1, eps2, n)
    via_variance = npv.eps_with_noise(
        sens, n, var, npv.laplace_baseline_variance(sens, eps2)
    )
    assert combined == pytest.approx(via_variance, rel=1e-12)


def test_worst_case_compromise_takes_the_most_variable_records():
    spec = npv.DataVectorSpec(
        records=[
            npv.DistributionSpec.bernoulli(0.5, 10),
            npv.DistributionSpec.bernoulli(0.1, 10),
        ],
        sensitivity=1.0,
    )
    plan = npv.worst_case_compromise(spec, 0.3)
    assert plan.compromised_count == 6
    assert plan.remaining_n == 14
    assert plan.remaining_variance == pytest.approx(4 * 0.25 + 10 * 0.09, rel=1e-12)

    bound = npv.independent_bound_compromised(spec, plan)
    assert bound.source == "independent-clt-compromised"
    assert bound.epsilon > npv.independent_bound(spec).epsilon


def test_dependent_bound_on_the_block_profile():
    spec = npv.DataVectorSpec(
        records=[npv.DistributionSpec.bernoulli(0.5, 24)],
        sensitivity=1.0,
        dependency_bound=3,
        total_variance=18.0,
    )
    bound = npv.dependent_bound(spec)
    assert bound.epsilon == pytest.approx(0.420188703002, rel=1e-11)
    assert bound.vacuous


def test_validation_errors_surface_as_value_errors():
    # Record factories are lazy; validation runs when the data vector is built.
    with pytest.raises(ValueError):
        npv.DataVectorSpec(
            records=[npv.DistributionSpec.bernoulli(1.5, 10)], sensitivity=1.0
        )
    with pytest.raises(ValueError):
        npv.DataVectorSpec(records=[], sensitivity=1.0)
    with pytest.raises(ValueError):
        bernoulli_spec(10, 0.5, sensitivity=0.5)  # below the record magnitude
