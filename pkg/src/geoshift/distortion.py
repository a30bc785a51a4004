"""Mean distortion of one word metric against another.

Given a validated automaton for the metric d_S and a second generating set
S*, the average of |x|_{S*}/n over the uniform sphere of radius n settles,
as n grows, to the mean distortion tau(S*/S).  This module computes exact
small-sphere expectations, Monte Carlo estimates with a finite-size bias
guard, the growth-ratio inequality tau >= gr(S)/gr(S*), an empirical law
of large numbers, and a heuristic scan for rough similarity between the
two metrics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .automaton import GeodesicAutomaton, enumerate_sphere, sample_uniform_sphere
from .errors import ResourceLimit
from .geometry import (DEFAULT_BALL_BUDGET, ForeignMetric,
                       _bidirectional_length, ball_tree, word_length)
from .groups import GroupElement, ResolvedGenSet
from .randomness import make_rng

__all__ = [
    "cross_lipschitz",
    "mean_distortion_exact",
    "mean_distortion_mc",
    "McRow",
    "TauEstimate",
    "check_growth_inequality",
    "InequalityVerdict",
    "lln_check",
    "LlnReport",
    "rough_similarity_scan",
    "SimilarityScan",
    "DistortionReport",
    "distortion_report",
]

TABLE_RADIUS_LIMIT = 12


def cross_lipschitz(S: ResolvedGenSet, Sstar: ResolvedGenSet,
                    cap: int = 64) -> int:
    """max over letters, in both directions, of the word length in the
    other generating set; a bi-Lipschitz constant between the two metrics."""
    lip = 1
    for x in S.elements:
        lip = max(lip, word_length(x, Sstar, cap))
    for x in Sstar.elements:
        lip = max(lip, word_length(x, S, cap))
    return lip


def _is_sub_genset(S: ResolvedGenSet, Sstar: ResolvedGenSet) -> bool:
    star = {x.key for x in Sstar.elements}
    return all(x.key in star for x in S.elements)


class _ForeignLength:
    """Length in S*, by the fastest exact method available.

    Free groups whose S* consists of words of base length at most two,
    including every base letter, admit a linear factorization scan: some
    geodesic S*-word multiplies out with no cancellation between pieces
    (any cancelling pair of two-letter pieces can be rewritten as at most
    two shorter pieces), so the length is a minimum over tilings of the
    reduced word.  Otherwise a lookup table covers small radii and a
    bidirectional meet-in-the-middle search handles the rest.
    """

    def __init__(self, S: ResolvedGenSet, Sstar: ResolvedGenSet, n_max: int,
                 budget: int = DEFAULT_BALL_BUDGET):
        self.Sstar = Sstar
        self.lip = cross_lipschitz(S, Sstar)
        self.cap = self.lip * n_max + 4
        self.budget = budget
        self.mode = "search"
        self.pieces = None
        self.metric = None
        spec = Sstar.group
        base_keys = {x.key for x in spec.resolve(None).elements}
        star_keys = {x.key for x in Sstar.elements}
        if (spec.family == "free" and S.is_base
                and base_keys <= star_keys
                and all(x.length() <= 2 for x in Sstar.elements)):
            self.pieces = star_keys  # keys are reduced words as bytes
            self.mode = "tiling"
            return
        reach = n_max if _is_sub_genset(S, Sstar) else self.lip * n_max
        if reach <= TABLE_RADIUS_LIMIT:
            try:
                self.metric = ForeignMetric(Sstar, budget=budget)
                self.metric.ensure_radius(reach)
                self.mode = "table"
            except ResourceLimit:
                self.metric = None

    def _tiling_length(self, x: GroupElement) -> int:
        seq = x.key
        m = len(seq)
        dp = [0] + [m + 1] * m
        pieces = self.pieces
        for i in range(1, m + 1):
            if seq[i - 1: i] in pieces:
                dp[i] = dp[i - 1] + 1
            if i >= 2 and seq[i - 2: i] in pieces:
                dp[i] = min(dp[i], dp[i - 2] + 1)
        return dp[m]

    def __call__(self, x: GroupElement) -> int:
        if self.mode == "tiling":
            return self._tiling_length(x)
        if self.mode == "table":
            return self.metric.length(x, cap=self.cap)
        if self.Sstar.is_base:
            return word_length(x, self.Sstar, cap=self.cap)
        return _bidirectional_length(self.Sstar, x, self.cap, self.budget)


# ---------------------------------------------------------------------------
# Exact and Monte Carlo expectations
# ---------------------------------------------------------------------------

def mean_distortion_exact(aut: GeodesicAutomaton, Sstar: ResolvedGenSet,
                          n_max: int, budget: int = 2_000_000) -> list[Fraction]:
    """Exact expectation of |x|_{S*} over the uniform sphere of each radius
    n <= n_max, as exact rationals; entry 0 is 0."""
    length = _ForeignLength(aut.genset, Sstar, n_max, budget)
    out = [Fraction(0)]
    for n in range(1, n_max + 1):
        total = 0
        count = 0
        for x in enumerate_sphere(aut, n, budget=budget):
            total += length(x)
            count += 1
        out.append(Fraction(total, count))
    return out


@dataclass
class McRow:
    n: int
    mean: float      # of |x|_{S*} / n
    stderr: float
    samples: int


@dataclass
class TauEstimate:
    rows: list
    tau_hat: float
    half_width: float
    seed: int

    def row(self, n: int) -> McRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def mean_distortion_mc(aut: GeodesicAutomaton, Sstar: ResolvedGenSet,
                       n_list: Sequence[int], samples: int,
                       seed: int = 0) -> TauEstimate:
    """Sample means of |x|_{S*}/n over uniform spheres.

    tau_hat is the mean at the largest n; its half-width adds three standard
    errors to the spread between the two largest radii, a guard against the
    finite-n bias that no variance estimate can see.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples per radius")
    n_list = sorted(set(int(n) for n in n_list))
    if not n_list or n_list[0] < 1:
        raise ValueError("sphere radii must be positive")
    length = _ForeignLength(aut.genset, Sstar, n_list[-1])
    rows = []
    for i, n in enumerate(n_list):
        rng = make_rng(seed, stream=1000 + i)
        xs = sample_uniform_sphere(aut, n, rng, count=samples)
        vals = [length(x) / n for x in xs]
        mean = sum(vals) / samples
        var = sum((v - mean) ** 2 for v in vals) / (samples - 1)
        rows.append(McRow(n, mean, math.sqrt(var / samples), samples))
    tau_hat = rows[-1].mean
    spread = abs(rows[-1].mean - rows[-2].mean) if len(rows) >= 2 else 0.0
    return TauEstimate(rows, tau_hat, 3.0 * rows[-1].stderr + spread, seed)


# ---------------------------------------------------------------------------
# Growth inequality
# ---------------------------------------------------------------------------

@dataclass
class InequalityVerdict:
    tau_hat: float
    half_width: float
    gr_s: float
    gr_sstar: float
    ratio: float
    margin: float
    passed: bool

    def summary(self) -> str:
        word = "PASS" if self.passed else "FAIL"
        return (f"tau_hat {self.tau_hat:.6f} (±{self.half_width:.6f}) vs "
                f"gr ratio {self.ratio:.6f}: margin {self.margin:+.6f} [{word}]")


def check_growth_inequality(tau: TauEstimate, gr_s: float,
                            gr_sstar: float) -> InequalityVerdict:
    """tau(S*/S) can never fall below gr(S)/gr(S*); PASS when the estimate
    plus its half-width clears that bar (tolerance 1e-6)."""
    ratio = gr_s / gr_sstar
    margin = tau.tau_hat - ratio
    passed = tau.tau_hat + tau.half_width >= ratio - 1e-6
    return InequalityVerdict(tau.tau_hat, tau.half_width, gr_s, gr_sstar,
                             ratio, margin, passed)


# ---------------------------------------------------------------------------
# Law of large numbers
# ---------------------------------------------------------------------------

@dataclass
class LlnReport:
    n_list: list
    eps_list: list
    samples: int
    fractions: dict            # (n, eps) -> outlier fraction
    monotone: dict             # eps -> bool, nonincreasing within noise
    seed: int

    def summary(self) -> str:
        lines = []
        for eps in self.eps_list:
            row = ", ".join(f"n={n}: {self.fractions[(n, eps)]:.4f}"
                            for n in self.n_list)
            tag = "nonincreasing" if self.monotone[eps] else "NOT nonincreasing"
            lines.append(f"eps={eps:g}: {row}  [{tag}]")
        return "\n".join(lines)


def lln_check(aut: GeodesicAutomaton, Sstar: ResolvedGenSet, tau_hat: float,
              n_list: Sequence[int] = (10, 20, 40),
              eps_list: Sequence[float] = (0.02, 0.05, 0.1),
              samples: int = 10_000, seed: int = 0) -> LlnReport:
    """Fraction of uniform sphere samples with | |x|_{S*} - n tau_hat | > eps n,
    per radius and epsilon, with a per-epsilon trend verdict: nonincreasing
    from each n to the next within twice the combined binomial deviation."""
    n_list = sorted(set(int(n) for n in n_list))
    eps_list = list(eps_list)
    length = _ForeignLength(aut.genset, Sstar, n_list[-1])
    fractions = {}
    for i, n in enumerate(n_list):
        rng = make_rng(seed, stream=2000 + i)
        xs = sample_uniform_sphere(aut, n, rng, count=samples)
        devs = [abs(length(x) - n * tau_hat) / n for x in xs]
        for eps in eps_list:
            outliers = sum(1 for d in devs if d > eps)
            fractions[(n, eps)] = outliers / samples
    monotone = {}
    for eps in eps_list:
        ok = True
        for a, b in zip(n_list, n_list[1:]):
            fa, fb = fractions[(a, eps)], fractions[(b, eps)]
            sa = math.sqrt(fa * (1 - fa) / samples)
            sb = math.sqrt(fb * (1 - fb) / samples)
            if fb > fa + 2.0 * math.hypot(sa, sb):
                ok = False
        monotone[eps] = ok
    return LlnReport(list(n_list), eps_list, samples, fractions, monotone, seed)


# ---------------------------------------------------------------------------
# Rough-similarity scan
# ---------------------------------------------------------------------------

@dataclass
class SimilarityScan:
    tau: float
    radii: list
    deviations: list           # max over the sphere of | |x|_{S*} - tau r |
    witnesses: list            # a word attaining each maximum
    verdict: str               # BOUNDED-LOOKING or GROWING
    tolerance: float

    def summary(self) -> str:
        dev = ", ".join(f"{d:.3f}" for d in self.deviations)
        return (f"max | |x|_Sstar - tau r | for r=1..{self.radii[-1]}: "
                f"[{dev}] -> {self.verdict}")


def rough_similarity_scan(S: ResolvedGenSet, Sstar: ResolvedGenSet,
                          tau: float, R: int, tolerance: float = 0.5,
                          budget: int = DEFAULT_BALL_BUDGET) -> SimilarityScan:
    """Scan all spheres up to radius R for the worst additive deviation
    from |x|_{S*} = tau |x|_S.

    Rough similarity of the metrics would keep the deviations bounded; the
    verdict is BOUNDED-LOOKING when the last third of the sequence gains no
    more than the tolerance per step, GROWING otherwise.  A heuristic read
    on finite data, not a proof either way.
    """
    if R < 1:
        raise ValueError("scan radius must be at least 1")
    length = _ForeignLength(S, Sstar, R, budget)
    tree = ball_tree(S, R, budget)
    R = min(R, tree.radius())  # a finite group may run out of spheres
    deviations = [0.0] * (R + 1)
    witnesses = [""] * (R + 1)
    for r in range(1, R + 1):
        for i in range(tree.layer_bounds[r], tree.layer_bounds[r + 1]):
            dev = abs(length(GroupElement(S.group, tree.keys[i])) - tau * r)
            if dev > deviations[r]:
                deviations[r] = dev
                witnesses[r] = " ".join(S.letters[li]
                                        for li in tree.tree_word(i))
    deviations = deviations[1:]
    witnesses = witnesses[1:]
    start = max(1, (2 * R) // 3)
    worst_step = 0.0
    for i in range(start, R):
        worst_step = max(worst_step, deviations[i] - deviations[i - 1])
    verdict = "BOUNDED-LOOKING" if worst_step <= tolerance else "GROWING"
    return SimilarityScan(tau, list(range(1, R + 1)), deviations, witnesses,
                          verdict, tolerance)


# ---------------------------------------------------------------------------
# Combined report
# ---------------------------------------------------------------------------

@dataclass
class DistortionReport:
    group: str
    from_genset: str
    to_genset: str
    n_values: list
    exact: list                # Fractions up to exact_n_max (may be empty)
    mc: TauEstimate
    lip: int
    gr_s: float
    gr_sstar: float
    inequality: InequalityVerdict
    lln: Optional[LlnReport]
    scan: Optional[SimilarityScan]
    seed: int


def distortion_report(aut_s: GeodesicAutomaton, aut_sstar: GeodesicAutomaton,
                      exact_n_max: int = 6,
                      mc_n_list: Sequence[int] = (4, 8, 12, 16),
                      samples: int = 2000, seed: int = 0,
                      lln_n_list: Optional[Sequence[int]] = None,
                      lln_samples: int = 2000,
                      scan_radius: int = 0) -> DistortionReport:
    """Run the full distortion pipeline for a pair of validated automata
    over the same group."""
    from .thermo import growth_rate

    S = aut_s.genset
    Sstar = aut_sstar.genset
    if aut_s.group is not aut_sstar.group:
        raise ValueError("the two automata must describe the same group")
    exact = (mean_distortion_exact(aut_s, Sstar, exact_n_max)
             if exact_n_max >= 1 else [])
    mc = mean_distortion_mc(aut_s, Sstar, mc_n_list, samples, seed)
    gr_s = growth_rate(aut_s)
    gr_sstar = growth_rate(aut_sstar)
    verdict = check_growth_inequality(mc, gr_s, gr_sstar)
    lln = None
    if lln_n_list:
        lln = lln_check(aut_s, Sstar, mc.tau_hat, lln_n_list,
                        samples=lln_samples, seed=seed)
    scan = None
    if scan_radius >= 1:
        scan = rough_similarity_scan(S, Sstar, mc.tau_hat, scan_radius)
    return DistortionReport(
        aut_s.group.name, S.name, Sstar.name, sorted(set(mc_n_list)),
        exact, mc, cross_lipschitz(S, Sstar), gr_s, gr_sstar, verdict,
        lln, scan, seed,
    )
