import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tss.powerlaw import (
    BIAS_RANGE,
    ELITE_RANGE,
    MUTANT_RANGE,
    ParameterSampler,
    PowerLaw,
    bias_from_rank,
    elite_fraction_from_rank,
    mutant_fraction_from_rank,
    powerlaw_new,
    powerlaw_sample,
    sample_parameters,
)


def test_pmf_exact_small_case():
    # beta = 1: masses 1, 1/2, 1/3 with normalizer 11/6
    d = PowerLaw(3, beta=1.0)
    c = 1 + 0.5 + 1 / 3
    assert d.pmf == pytest.approx([1 / c, 0.5 / c, (1 / 3) / c])
    assert d.cdf[-1] == 1.0


def test_pmf_sums_to_one():
    for r, beta in [(1, 1.5), (15, 1.5), (20, 1.5), (30, 1.5), (100, 2.5), (7, 0.0)]:
        d = PowerLaw(r, beta)
        assert math.fsum(d.pmf.tolist()) == pytest.approx(1.0, abs=1e-12)


def test_pmf_decreasing_for_positive_beta():
    d = PowerLaw(30, 1.5)
    assert all(a > b for a, b in zip(d.pmf, d.pmf[1:]))


def test_beta_zero_is_uniform():
    d = PowerLaw(4, beta=0.0)
    assert d.pmf == pytest.approx([0.25] * 4)


def test_support_bounds():
    rng = np.random.default_rng(0)
    d = PowerLaw(15, 1.5)
    draws = d.sample_n(rng, 20_000)
    assert draws.min() >= 1 and draws.max() <= 15
    assert set(np.unique(draws)) <= set(range(1, 16))


def test_r_one_always_one():
    rng = np.random.default_rng(1)
    d = PowerLaw(1, 1.5)
    assert all(d.sample(rng) == 1 for _ in range(100))


def test_invalid_parameters():
    with pytest.raises(ValueError, match=">= 1"):
        PowerLaw(0)
    with pytest.raises(ValueError, match="finite"):
        PowerLaw(5, float("nan"))


def test_sample_matches_sample_n_draw_for_draw():
    d = PowerLaw(20, 1.5)
    a = np.random.default_rng(7)
    b = np.random.default_rng(7)
    singles = [d.sample(a) for _ in range(50)]
    assert singles == d.sample_n(b, 50).tolist()


def test_sample_determinism():
    d = powerlaw_new(30)
    x = powerlaw_sample(d, np.random.default_rng(9))
    y = powerlaw_sample(d, np.random.default_rng(9))
    assert x == y


def test_sample_frequency_tracks_pmf():
    d = PowerLaw(15, 1.5)
    rng = np.random.default_rng(11)
    draws = d.sample_n(rng, 200_000)
    freq = np.bincount(draws, minlength=16)[1:] / len(draws)
    np.testing.assert_allclose(freq, d.pmf, atol=5e-3)


def test_grid_endpoints():
    assert elite_fraction_from_rank(1) == pytest.approx(0.24)
    assert elite_fraction_from_rank(ELITE_RANGE) == pytest.approx(0.10)
    assert mutant_fraction_from_rank(1) == pytest.approx(0.11)
    assert mutant_fraction_from_rank(MUTANT_RANGE) == pytest.approx(0.30)
    assert bias_from_rank(1) == pytest.approx(0.51)
    assert bias_from_rank(BIAS_RANGE) == pytest.approx(0.80)


def test_sampler_ranges_and_sum_bound():
    sampler = ParameterSampler()
    rng = np.random.default_rng(3)
    for _ in range(2000):
        t = sampler.sample(rng)
        assert 0.10 - 1e-12 <= t.elite_fraction <= 0.24 + 1e-12
        assert 0.11 - 1e-12 <= t.mutant_fraction <= 0.30 + 1e-12
        assert 0.51 - 1e-12 <= t.bias <= 0.80 + 1e-12
        assert t.elite_fraction + t.mutant_fraction <= 0.54 + 1e-12


def test_sampler_consumes_exactly_three_uniforms():
    sampler = ParameterSampler()
    a = np.random.default_rng(5)
    b = np.random.default_rng(5)
    sampler.sample(a)
    b.random(3)
    assert a.random() == b.random()  # generators stay in lockstep


def test_sampler_draw_order_is_elite_mutant_bias():
    sampler = ParameterSampler()
    seed = 17
    t = sampler.sample(np.random.default_rng(seed))
    rng = np.random.default_rng(seed)
    e = sampler.elite_dist.sample(rng)
    m = sampler.mutant_dist.sample(rng)
    b = sampler.bias_dist.sample(rng)
    assert t.elite_fraction == pytest.approx(elite_fraction_from_rank(e))
    assert t.mutant_fraction == pytest.approx(mutant_fraction_from_rank(m))
    assert t.bias == pytest.approx(bias_from_rank(b))


def test_sample_parameters_matches_sampler():
    a = sample_parameters(np.random.default_rng(23))
    b = ParameterSampler().sample(np.random.default_rng(23))
    assert a == b


@given(st.integers(1, 200), st.floats(-2.0, 5.0, allow_nan=False))
@settings(deadline=None, max_examples=60)
def test_distribution_well_formed(r, beta):
    d = PowerLaw(r, beta)
    assert len(d.pmf) == r
    assert (d.pmf >= 0).all()
    assert d.cdf[-1] == 1.0
    assert (np.diff(d.cdf) >= -1e-15).all()
