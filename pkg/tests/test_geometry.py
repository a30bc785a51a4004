"""Balls, word metrics for alternative generating sets, hyperbolicity."""

from fractions import Fraction

import pytest

from geoshift import ball_tree, cross_lipschitz, gromov_product, word_length
from geoshift.errors import CapExceeded, ResourceLimit
from geoshift.geometry import estimate_delta


def test_ball_layers_match_sphere_sizes(f2):
    t = ball_tree(f2.resolve(None), 4)
    layers = [t.layer_bounds[i + 1] - t.layer_bounds[i] for i in range(5)]
    assert layers == [1, 4, 12, 36, 108]


def test_tree_words_spell_their_elements(f2):
    S = f2.resolve(None)
    t = ball_tree(S, 3)
    for i in range(len(t.keys)):
        word = [S.letters[li] for li in t.tree_word(i)]
        x = f2.element(word)
        assert x.key == t.keys[i]
        assert t.dist[x.key] == len(word) == x.length()


def test_ball_budget_enforced(f2):
    with pytest.raises(ResourceLimit):
        ball_tree(f2.resolve(None), 20, budget=1000)


@pytest.mark.parametrize("word,expected", [
    (["a"], 1),
    (["a", "b"], 1),          # one composite letter
    (["b", "a"], 2),          # composite letters do not help here
    (["a", "b", "a"], 2),
    (["a", "b", "a", "b"], 2),
    (["a", "a", "b"], 2),
])
def test_foreign_word_length(f2, f2_star_ab, word, expected):
    assert word_length(f2.element(word), f2_star_ab) == expected


def test_foreign_length_symmetry(f2, f2_star_ab):
    x = f2.element(["a", "b", "b", "a"])
    assert word_length(x, f2_star_ab) == word_length(x.inverse(), f2_star_ab)


def test_length_cap(f2, f2_star_a2):
    long = f2.element(["a", "b"] * 40)
    with pytest.raises(CapExceeded):
        word_length(long, f2_star_a2, cap=3)


def test_cross_lipschitz(f2, f2_star_ab):
    S = f2.resolve(None)
    assert cross_lipschitz(S, f2_star_ab) == 2
    assert cross_lipschitz(f2_star_ab, S) == 2


def test_gromov_product_is_shared_prefix_in_a_tree(f2):
    S = f2.resolve(None)
    x = f2.element(["a", "b"])
    y = f2.element(["a", "b", "b"])
    assert gromov_product(x, y, S) == Fraction(2)
    assert gromov_product(x, x, S) == Fraction(2)
    assert gromov_product(x, y.inverse(), S) == 0


def test_free_group_is_zero_hyperbolic(f2):
    est = estimate_delta(f2, f2.resolve(None), 4)
    assert est.delta == 0
    assert est.radius == 4


def test_modular_group_delta_is_small(psl2z):
    est = estimate_delta(psl2z, psl2z.resolve(None), 5)
    assert isinstance(est.delta, Fraction)
    assert 0 <= est.delta <= 1
