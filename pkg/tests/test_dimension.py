"""Shadows, drift along typical rays, and the dimension estimate."""

import math
from fractions import Fraction

import pytest

from geoshift import (
    components,
    drift,
    drift_two_sided,
    growth_rate,
    maximal_components,
    parry_gibbs_measure,
    ps_coding_check,
    ps_dimension_estimate,
    regular_growth_check,
    shadow_mass,
    sft_from_automaton,
    word_length_potential,
)


@pytest.fixture(scope="module")
def f2_measure(f2_aut):
    dec = components(sft_from_automaton(f2_aut))
    psi = word_length_potential(math.log(3.0))
    C = dec.components[maximal_components(dec, psi).maximal[0]]
    return parry_gibbs_measure(C, psi)


@pytest.mark.parametrize("word,n", [
    (["a"], 5), (["a", "b"], 6), (["a", "b", "a"], 7), (["b", "b"], 8),
])
def test_shadow_mass_in_the_free_group(f2, f2_aut, f2_measure, word, n):
    # the sphere-n mass sitting behind x is exactly (3/4) * 3^{-|x|}
    x = f2.element(word)
    mass = shadow_mass(f2_aut, x, 0, n)
    assert isinstance(mass, Fraction)
    assert mass == Fraction(3, 4) / Fraction(3) ** len(word)


def test_fatter_shadows_carry_more_mass(f2, f2_aut):
    x = f2.element(["a", "b"])
    thin = shadow_mass(f2_aut, x, 0, 6)
    fat = shadow_mass(f2_aut, x, 2, 6)
    assert fat > thin
    assert fat <= 1


def test_shadow_of_the_identity_is_everything(f2, f2_aut):
    assert shadow_mass(f2_aut, f2.identity(), 0, 5) == 1


def test_drift_of_the_native_metric_is_one(f2, f2_measure):
    est = drift(f2_measure, f2.resolve(None), 20, samples=50, seed=0)
    assert est.mean == 1.0
    assert est.stderr == 0.0


def test_drift_seeded_and_concentrated(f2_measure, f2_star_ab):
    a = drift(f2_measure, f2_star_ab, 24, samples=200, seed=3)
    b = drift(f2_measure, f2_star_ab, 24, samples=200, seed=3)
    assert (a.mean, a.stderr) == (b.mean, b.stderr)
    assert 0.75 < a.mean < 0.95
    assert a.stderr < 0.01


def test_two_sided_drift_agrees(f2_measure, f2_star_ab):
    one = drift(f2_measure, f2_star_ab, 20, samples=300, seed=0)
    two = drift_two_sided(f2_measure, f2_star_ab, 20, samples=300, seed=0)
    assert abs(one.mean - two.mean) <= 4 * math.hypot(one.stderr, two.stderr)


def test_regular_growth_constants(f2_aut):
    rep = regular_growth_check(f2_aut, 20)
    assert rep.rate == pytest.approx(math.log(3.0), abs=1e-12)
    # |S_n| = (4/3) 3^n exactly, for every n >= 1
    assert rep.c1 == pytest.approx(4.0 / 3.0, abs=1e-9)
    assert rep.c2 == pytest.approx(4.0 / 3.0, abs=1e-9)
    assert len(rep.values) == 20


def test_regular_growth_modular(psl_aut):
    rep = regular_growth_check(psl_aut, 25)
    assert rep.c2 / rep.c1 < 10


def test_dimension_estimate_native_metric(f2, f2_aut, f2_measure):
    est = ps_dimension_estimate(f2_aut, f2.resolve(None), f2_measure,
                                n=24, samples=100, seed=0, diag_rays=2)
    # measuring with the automaton's own metric: dimension = growth rate
    assert est.drift.mean == 1.0
    assert est.dim_hat == pytest.approx(math.log(3.0), abs=1e-12)
    assert est.width < 1e-9


def test_dimension_estimate_composite_metric(f2_aut, f2_star_ab, f2_measure):
    est = ps_dimension_estimate(f2_aut, f2_star_ab, f2_measure,
                                n=24, samples=150, seed=0, diag_rays=3)
    # growth log 3 over drift ~0.84 lands near log 4 = growth of the
    # composite set, since the pair is roughly similar
    assert 1.2 < est.dim_hat < 1.4
    assert est.width > 0
    assert est.dim_hat - est.width <= math.log(3.0) / est.drift.mean <= est.dim_hat + est.width
    # diagnostic rows: (ray, checkpoint, composite length, local exponent)
    assert {row[0] for row in est.diagnostics} == {0, 1, 2}
    for _, k, length, local in est.diagnostics:
        assert 0 < k <= 24
        assert 1 <= length <= k
        assert 0.9 < local < 1.7


def test_shadow_ratios_code_the_measure(f2_aut, f2_measure):
    rep = ps_coding_check(f2_aut, [f2_measure], math.log(3.0), radius=0,
                          n=6, x_count=4, y_count=4, seed=0)
    # mu(shadow) / e^{-rate * d} is the same constant 3/4 for every pair
    assert rep.ratio_min == pytest.approx(0.75, abs=1e-9)
    assert rep.ratio_max == pytest.approx(0.75, abs=1e-9)
    assert rep.zero_pairs == 2
    assert len(rep.pairs) == 16


def test_shadow_ratios_stable_across_spheres(f2_aut, f2_measure):
    r4 = ps_coding_check(f2_aut, [f2_measure], math.log(3.0), n=4, seed=0)
    r6 = ps_coding_check(f2_aut, [f2_measure], math.log(3.0), n=6, seed=0)
    assert r4.ratio_max == pytest.approx(r6.ratio_max, abs=1e-9)
