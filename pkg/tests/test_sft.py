"""Component structure of edge shifts on small hand-built graphs."""

import pytest

from geoshift import (
    Potential,
    Sft,
    components,
    digraph_period,
    maximal_components,
    sft_from_automaton,
    strongly_connected,
)

# edges are (source state, symbol, target state)
FULL2 = Sft([(0, 0, 0), (0, 1, 0)], 1)
CYCLE3 = Sft([(0, 0, 1), (1, 1, 2), (2, 2, 0)], 3)
GOLDEN = Sft([(0, 0, 0), (0, 1, 1), (1, 2, 0)], 2)


def test_tarjan_on_a_line():
    # 0 -> 1 -> 2, no cycles: three singleton components
    sccs = strongly_connected(3, [[1], [2], []])
    assert sccs == [[0], [1], [2]]


def test_tarjan_finds_a_big_component():
    # 0 <-> 1, 2 hangs off
    sccs = strongly_connected(3, [[1], [0, 2], []])
    assert [0, 1] in sccs and [2] in sccs


def test_period_of_cycles():
    assert digraph_period([0, 1, 2], [(0, 1), (1, 2), (2, 0)])[0] == 3
    per, phase = digraph_period([0, 1], [(0, 1), (1, 0)])
    assert per == 2
    assert phase[0] != phase[1]
    # a chord of coprime length kills the period
    assert digraph_period([0, 1, 2], [(0, 1), (1, 2), (2, 0), (0, 0)])[0] == 1


def test_full_shift_on_two_symbols():
    dec = components(FULL2)
    assert len(dec.components) == 1
    C = dec.components[0]
    assert C.period == 1
    assert len(C.edge_ids) == 2
    mp = maximal_components(dec)
    assert mp.maximal == (0,)
    assert mp.semisimple
    assert mp.max_pressure == pytest.approx(0.6931471805599453, abs=1e-12)


def test_golden_mean_entropy():
    import math

    dec = components(GOLDEN)
    mp = maximal_components(dec)
    phi = (1 + math.sqrt(5)) / 2
    assert mp.max_pressure == pytest.approx(math.log(phi), abs=1e-10)


def test_pure_cycle_has_period_three_and_zero_entropy():
    dec = components(CYCLE3)
    C = dec.components[0]
    assert C.period == 3
    assert C.cyclic_parts() == [[0], [1], [2]]
    mp = maximal_components(dec)
    assert mp.max_pressure == pytest.approx(0.0, abs=1e-12)


def test_bridge_between_equal_loops_is_not_semisimple():
    # two unit loops, one feeding the other: equal pressures in a chain
    sft = Sft([(0, 0, 0), (0, 1, 1), (1, 2, 1)], 2)
    dec = components(sft)
    assert len(dec.components) == 2
    mp = maximal_components(dec)
    assert mp.pressures == (0.0, 0.0)
    assert mp.maximal == (0, 1)
    assert not mp.semisimple
    assert dec.reaches(0, 1)
    assert not dec.reaches(1, 0)


def test_dominant_component_is_semisimple():
    # a two-loop state feeding a one-loop state: only the first is maximal
    sft = Sft([(0, 0, 0), (0, 1, 0), (0, 2, 1), (1, 3, 1)], 2)
    mp = maximal_components(components(sft))
    assert mp.maximal == (0,)
    assert mp.semisimple
    assert mp.pressures[0] > mp.pressures[1]


def test_disjoint_equal_loops_are_semisimple():
    mp = maximal_components(components(Sft([(0, 0, 0), (1, 1, 1)], 2)))
    assert mp.maximal == (0, 1)
    assert mp.semisimple


def test_weights_can_reorder_maximality():
    # with a potential favouring the single loop, it wins despite lower entropy
    sft = Sft([(0, 0, 0), (0, 1, 0), (0, 2, 1), (1, 3, 1)], 2)
    dec = components(sft)
    favour = Potential.on_edges({0: 0.0, 1: 0.0, 2: 0.0, 3: 2.0})
    mp = maximal_components(dec, favour)
    assert mp.maximal == (1,)


def test_transient_edges_belong_to_no_component(f2_aut):
    sft = sft_from_automaton(f2_aut)
    dec = components(sft)
    assert len(dec.components) == 1
    recurrent = set(dec.components[0].edge_ids)
    assert len(sft) == 16
    assert len(recurrent) == 12
    # the four transient edges all leave the initial state
    for e in set(range(len(sft))) - recurrent:
        assert sft.edges[e][0] == f2_aut.initial
