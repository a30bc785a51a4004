"""Pressure, equilibrium Markov measures, and cylinder-ratio bounds.

The free-group machine makes everything exactly computable by hand: the
recurrent part is a 12-symbol shift where every symbol has three followers,
so the equilibrium chain is uniform and each cylinder ratio collapses to a
single constant.
"""

import math

import numpy as np
import pytest

from geoshift import (
    Potential,
    Sft,
    check_variational,
    components,
    cylinder_measure,
    entropy,
    gibbs_ratio_scan,
    growth_rate,
    maximal_components,
    mean_potential,
    parry_gibbs_measure,
    pressure,
    sample_ray,
    sft_from_automaton,
    word_length_potential,
)

LOG3 = math.log(3.0)


@pytest.fixture(scope="module")
def f2_measure(f2_aut):
    dec = components(sft_from_automaton(f2_aut))
    psi = word_length_potential(LOG3)
    mp = maximal_components(dec, psi)
    C = dec.components[mp.maximal[0]]
    return parry_gibbs_measure(C, psi)


@pytest.fixture(scope="module")
def psl_measure(psl_aut):
    dec = components(sft_from_automaton(psl_aut))
    v = growth_rate(psl_aut, dec)
    psi = word_length_potential(v)
    C = dec.components[maximal_components(dec, psi).maximal[0]]
    return parry_gibbs_measure(C, psi)


def test_growth_rates(f2_aut, psl_aut):
    assert growth_rate(f2_aut) == pytest.approx(LOG3, abs=1e-12)
    assert growth_rate(psl_aut) == pytest.approx(0.5 * math.log(2.0), abs=1e-12)


def test_free_group_chain_is_uniform(f2_measure):
    m = f2_measure
    assert len(m.nodes) == 12
    assert np.allclose(m.pi, 1.0 / 12.0, atol=1e-12)
    assert ((m.P > 0).sum(axis=1) == 3).all()
    assert np.allclose(m.P[m.P > 0], 1.0 / 3.0, atol=1e-12)


def test_pressure_vanishes_at_the_growth_rate(f2_measure):
    assert abs(f2_measure.pressure) < 1e-12


def test_entropy_equals_growth(f2_measure, psl_measure):
    assert entropy(f2_measure) == pytest.approx(LOG3, abs=1e-12)
    assert entropy(psl_measure) == pytest.approx(0.5 * math.log(2.0), abs=1e-12)


def test_mean_potential(f2_measure):
    # the potential is the constant -log 3, so its mean is -log 3
    assert mean_potential(f2_measure) == pytest.approx(-LOG3, abs=1e-12)


def test_variational_identity(f2_measure):
    h = entropy(f2_measure)
    assert h + mean_potential(f2_measure) == pytest.approx(
        f2_measure.pressure, abs=1e-12)


def test_modular_chain_alternates(psl_measure):
    C = psl_measure.component
    assert C.period == 2
    assert sorted(len(p) for p in C.cyclic_parts()) == [1, 2]
    assert np.allclose(psl_measure.pi, 0.25, atol=1e-12)
    assert set(np.round(psl_measure.P[psl_measure.P > 0], 12)) == {0.5, 1.0}


# --- cylinder sets ---

def test_single_symbol_cylinders(f2_measure):
    for node in f2_measure.nodes:
        assert cylinder_measure(f2_measure, node) == pytest.approx(
            1.0 / 12.0, abs=1e-12)


def test_cylinder_additivity(f2_measure):
    m = f2_measure
    sft = m.component.sft
    e0 = m.nodes[0][0]
    followers = [f for f in m.component.edge_ids if sft.follows(e0, f)]
    total = sum(cylinder_measure(m, (e0, f)) for f in followers)
    assert total == pytest.approx(cylinder_measure(m, (e0,)), abs=1e-12)


def test_empty_cylinder_is_everything(f2_measure):
    assert cylinder_measure(f2_measure, ()) == pytest.approx(1.0, abs=1e-12)


def test_forbidden_block_has_measure_zero(f2_measure):
    m = f2_measure
    sft = m.component.sft
    e0 = m.nodes[0][0]
    blocked = next(f for f in m.component.edge_ids if not sft.follows(e0, f))
    assert cylinder_measure(m, (e0, blocked)) == 0.0


# --- Gibbs ratios ---

def test_free_group_cylinder_ratios_are_constant(f2_measure):
    # mu[w] = (1/12) 3^{1-k} against weight 3^{-k}: the ratio is 1/4 always
    rep = gibbs_ratio_scan(f2_measure, n_max=8)
    assert rep.c_lower == pytest.approx(0.25, abs=1e-9)
    assert rep.c_upper == pytest.approx(0.25, abs=1e-9)
    assert not rep.truncated
    assert rep.n_cylinders == 12 * (3 ** 8 - 1) // 2


def test_modular_cylinder_ratios(psl_measure):
    # forced steps double the conditional weight, so the band is [1/4, 1/2]
    rep = gibbs_ratio_scan(psl_measure, n_max=8)
    assert rep.c_lower == pytest.approx(0.25, abs=1e-9)
    assert rep.c_upper == pytest.approx(0.50, abs=1e-9)
    assert rep.c_upper / rep.c_lower < 100


def test_scan_budget_truncates():
    sft = Sft([(0, 0, 0), (0, 1, 0)], 1)
    C = components(sft).components[0]
    m = parry_gibbs_measure(C, word_length_potential(math.log(2.0)))
    rep = gibbs_ratio_scan(m, n_max=20, budget=100)
    assert rep.truncated
    assert rep.n_cylinders <= 100


# --- a weighted full shift, solvable in closed form ---

@pytest.mark.parametrize("beta", [0.0, 0.7, -1.3])
def test_bernoulli_pressure(beta):
    sft = Sft([(0, 0, 0), (0, 1, 0)], 1)
    C = components(sft).components[0]
    psi = Potential.on_edges({0: 0.0, 1: beta})
    assert pressure(C, psi) == pytest.approx(math.log(1 + math.exp(beta)),
                                             abs=1e-10)


def test_bernoulli_equilibrium_weights():
    beta = 0.7
    sft = Sft([(0, 0, 0), (0, 1, 0)], 1)
    C = components(sft).components[0]
    m = parry_gibbs_measure(C, Potential.on_edges({0: 0.0, 1: beta}))
    p = math.exp(beta) / (1 + math.exp(beta))
    assert cylinder_measure(m, (1,)) == pytest.approx(p, abs=1e-10)
    assert cylinder_measure(m, (1, 1, 0)) == pytest.approx(p * p * (1 - p),
                                                           abs=1e-10)
    # entropy + mean potential = pressure, and nothing does better
    rep = check_variational(C, Potential.on_edges({0: 0.0, 1: beta}),
                            trials=300, seed=1)
    assert rep.ok
    assert rep.parry_gap < 1e-9
    assert rep.max_violation <= 1e-9


def test_random_markov_measures_never_beat_the_pressure(f2_measure):
    rep = check_variational(f2_measure.component, f2_measure.potential,
                            trials=200, seed=0)
    assert rep.ok
    assert rep.n_trials == 200
    assert rep.max_violation <= 1e-9
    assert rep.parry_gap < 1e-9


def test_sampled_rays_are_geodesics(f2, f2_aut, f2_measure):
    ray = sample_ray(f2_measure, 30, seed=5)
    assert ray.n == 30
    word = [f2_aut.genset.letters[i] for i in ray.letters]
    x = f2.element(word)
    assert x.length() == 30
    assert x == ray.trail[-1]
    # the trail really is a geodesic: every prefix sits one step further out
    assert [y.length() for y in ray.trail] == list(range(31))
    again = sample_ray(f2_measure, 30, seed=5)
    assert again.letters == ray.letters
    other = sample_ray(f2_measure, 30, seed=6)
    assert other.letters != ray.letters
