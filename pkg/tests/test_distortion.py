"""Comparing word metrics: exact sphere averages, sampling, LLN, scans."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geoshift import (
    build_geodesic_automaton,
    check_growth_inequality,
    distortion_report,
    lln_check,
    mean_distortion_exact,
    mean_distortion_mc,
    rough_similarity_scan,
    word_length,
)

# per-sphere averages of the composite-letter length, small enough to check
# against a full enumeration by hand
EXACT_AB = [Fraction(0), Fraction(1), Fraction(11, 6), Fraction(8, 3),
            Fraction(7, 2), Fraction(13, 3), Fraction(31, 6)]


def test_exact_sphere_averages(f2_aut, f2_star_ab):
    assert mean_distortion_exact(f2_aut, f2_star_ab, 6) == EXACT_AB


def test_exact_averages_by_brute_force(f2, f2_aut, f2_star_ab):
    from geoshift import enumerate_sphere

    for n in (1, 2, 3):
        total = sum(word_length(x, f2_star_ab) for x in enumerate_sphere(f2_aut, n))
        count = 4 * 3 ** (n - 1)
        assert Fraction(total, count) == EXACT_AB[n]


def test_identity_pair_has_no_distortion(f2, f2_aut):
    S = f2.resolve(None)
    est = mean_distortion_mc(f2_aut, S, (5, 10), samples=200, seed=0)
    assert est.tau_hat == 1.0
    assert est.half_width == 0.0
    for row in est.rows:
        assert row.mean == 1.0
        assert row.stderr == 0.0


def test_mc_is_seeded(f2_aut, f2_star_ab):
    a = mean_distortion_mc(f2_aut, f2_star_ab, (6, 12), samples=150, seed=9)
    b = mean_distortion_mc(f2_aut, f2_star_ab, (6, 12), samples=150, seed=9)
    assert a.tau_hat == b.tau_hat
    assert [(r.mean, r.stderr) for r in a.rows] == [(r.mean, r.stderr) for r in b.rows]
    c = mean_distortion_mc(f2_aut, f2_star_ab, (6, 12), samples=150, seed=10)
    assert c.tau_hat != a.tau_hat


def test_mc_agrees_with_exact_on_small_spheres(f2_aut, f2_star_ab):
    est = mean_distortion_mc(f2_aut, f2_star_ab, (4, 6), samples=2000, seed=0)
    for row in est.rows:
        exact = float(EXACT_AB[row.n]) / row.n
        assert abs(row.mean - exact) <= 4 * row.stderr + 1e-12


def test_growth_inequality_verdict(f2_aut, f2_star_ab):
    import math

    est = mean_distortion_mc(f2_aut, f2_star_ab, (8, 16), samples=1000, seed=0)
    verdict = check_growth_inequality(est, math.log(3.0), math.log(4.0))
    assert verdict.ratio == pytest.approx(math.log(3.0) / math.log(4.0), abs=1e-12)
    assert verdict.passed
    assert verdict.margin == pytest.approx(est.tau_hat - verdict.ratio, abs=1e-15)
    assert verdict.tau_hat + verdict.half_width >= verdict.ratio - 1e-6


def test_lln_outliers_thin_out(f2_aut, f2_star_ab):
    est = mean_distortion_mc(f2_aut, f2_star_ab, (8, 16), samples=800, seed=0)
    rep = lln_check(f2_aut, f2_star_ab, est.tau_hat, n_list=(10, 20, 40),
                    eps_list=(0.05, 0.1), samples=1500, seed=0)
    assert set(rep.monotone) == {0.05, 0.1}
    assert rep.monotone[0.1]
    for eps in (0.05, 0.1):
        fr = [rep.fractions[(n, eps)] for n in (10, 20, 40)]
        assert all(0.0 <= f <= 1.0 for f in fr)
        # wider tolerance catches fewer outliers at every radius
        assert rep.fractions[(40, 0.1)] <= rep.fractions[(40, 0.05)]


def test_scan_is_flat_for_the_same_metric(f2):
    S = f2.resolve(None)
    scan = rough_similarity_scan(S, S, 1.0, 6)
    assert scan.deviations == [0.0] * len(scan.deviations)
    assert scan.verdict == "BOUNDED-LOOKING"


def test_scan_detects_genuine_distortion(f2, f2_star_a2):
    # against tau < 1, powers of a single letter drift away linearly
    S = f2.resolve(None)
    tau = 0.8775
    scan = rough_similarity_scan(S, f2_star_a2, tau, 8)
    assert scan.verdict == "GROWING"
    assert scan.deviations[-1] > scan.tolerance
    # the worst offender at radius r is a^r (length ceil(r/2)) or b^r
    # (length r); the maximum deviation therefore zigzags but its even
    # subsequence climbs linearly
    for r, dev in zip(scan.radii, scan.deviations):
        if r == 0:
            continue
        expected = max(abs(-(r // 2) - (r % 2) + tau * r), r * abs(1 - tau))
        assert dev == pytest.approx(expected, abs=1e-12)
    assert all(w for w in scan.witnesses[1:])


def test_full_report_wiring(f2, f2_aut, f2_star_ab):
    aut_star = build_geodesic_automaton(f2, f2_star_ab, n_check=6)
    rep = distortion_report(f2_aut, aut_star, exact_n_max=4, mc_n_list=(4, 8),
                            samples=300, seed=0, lln_n_list=(6, 10),
                            lln_samples=200, scan_radius=5)
    assert rep.exact == EXACT_AB[:5]
    assert rep.gr_s == pytest.approx(1.0986122886681098, abs=1e-12)
    assert rep.gr_sstar == pytest.approx(1.3862943611198906, abs=1e-9)
    assert rep.lip == 2
    assert rep.inequality.passed
    assert rep.lln is not None and rep.scan is not None
    assert rep.seed == 0


# --- structural facts the estimates rely on ---

F2_WORDS = st.lists(st.sampled_from(("a", "a^-1", "b", "b^-1")), max_size=10)


@given(F2_WORDS)
@settings(max_examples=60, deadline=None)
def test_composite_letters_only_help(f2_cached, word):
    f2, star = f2_cached
    x = f2.element(word)
    ls = x.length()
    lstar = word_length(x, star)
    # S is contained in S*, and each S*-letter costs at most two S-letters
    assert lstar <= ls <= 2 * lstar or ls == 0


@given(F2_WORDS, F2_WORDS)
@settings(max_examples=60, deadline=None)
def test_foreign_length_is_subadditive(f2_cached, u, v):
    f2, star = f2_cached
    x, y = f2.element(u), f2.element(v)
    assert word_length(x * y, star) <= word_length(x, star) + word_length(y, star)


@pytest.fixture(scope="module")
def f2_cached():
    from geoshift import parse_group_file

    f2 = parse_group_file("groups/f2.grp")
    return f2, f2.resolve("Sstar_ab")
