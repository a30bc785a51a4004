"""Metric computations in Cayley graphs: spheres, lengths, Gromov products.

Distances are exact integers throughout.  Gromov products are half-integers
and are returned as :class:`fractions.Fraction`; internal scans keep them
doubled so all comparisons stay in integer arithmetic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from heapq import heappush, heappop
from typing import Iterator, Optional

import numpy as np

from .errors import CapExceeded, EmptySphere, ResourceLimit
from .groups import GroupElement, GroupSpec, ResolvedGenSet

__all__ = [
    "sphere",
    "sphere_layers",
    "ball_tree",
    "BallTree",
    "word_length",
    "ForeignMetric",
    "gromov_product",
    "estimate_delta",
    "busemann_finite",
    "HyperbolicityEstimate",
]

DEFAULT_LENGTH_CAP = 64
DEFAULT_BALL_BUDGET = 5_000_000


def sphere_layers(T: ResolvedGenSet, n_max: int,
                  budget: int = DEFAULT_BALL_BUDGET) -> Iterator[list]:
    """Yield the keys of each sphere 0..n_max in breadth-first order.

    Only two trailing layers are kept for deduplication, which is sound
    because a neighbour of an element at distance n sits at distance
    n-1, n, or n+1.
    """
    eng = T.group.engine
    tkeys = [e.key for e in T.elements]
    layer = [eng.identity]
    prev: set = set()
    seen = 1
    yield layer
    for _ in range(n_max):
        cur = set(layer)
        nxt: list = []
        nxt_set: set = set()
        for g in layer:
            for tk in tkeys:
                h = eng.mult(g, tk)
                if h in prev or h in cur or h in nxt_set:
                    continue
                nxt_set.add(h)
                nxt.append(h)
        seen += len(nxt)
        if seen > budget:
            raise ResourceLimit(f"sphere enumeration exceeded budget {budget}")
        prev = cur
        layer = nxt
        yield layer
        if not layer:
            return


def sphere(spec: GroupSpec, T: ResolvedGenSet, n: int,
           budget: int = DEFAULT_BALL_BUDGET) -> list[GroupElement]:
    """All elements at distance exactly n from the identity in Cay(G, T)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    for depth, layer in enumerate(sphere_layers(T, n, budget)):
        if depth == n:
            return [GroupElement(spec, k) for k in layer]
    return []


@dataclass
class BallTree:
    """Breadth-first spanning tree of a ball, in discovery order.

    ``keys[i]`` was first reached from ``keys[parent[i]]`` by the letter with
    index ``letter[i]``; letters are tried in index order, so the tree word of
    each element is its shortlex-least geodesic word.
    """

    keys: list
    dist: dict
    parent: list[int]
    letter: list[int]
    index: dict
    layer_bounds: list[int]  # keys[layer_bounds[n]:layer_bounds[n+1]] is sphere n

    def tree_word(self, i: int) -> tuple[int, ...]:
        out = []
        while i > 0:
            out.append(self.letter[i])
            i = self.parent[i]
        return tuple(reversed(out))

    def radius(self) -> int:
        return len(self.layer_bounds) - 2

    def sphere_size(self, n: int) -> int:
        return self.layer_bounds[n + 1] - self.layer_bounds[n]


def ball_tree(T: ResolvedGenSet, radius: int,
              budget: int = DEFAULT_BALL_BUDGET) -> BallTree:
    """Breadth-first tree of the ball of the given radius around the identity."""
    eng = T.group.engine
    tkeys = [e.key for e in T.elements]
    keys = [eng.identity]
    dist = {eng.identity: 0}
    parent = [-1]
    letter = [-1]
    index = {eng.identity: 0}
    layer_bounds = [0, 1]
    lo, hi = 0, 1
    for depth in range(radius):
        for i in range(lo, hi):
            g = keys[i]
            for li, tk in enumerate(tkeys):
                h = eng.mult(g, tk)
                if h in dist:
                    continue
                dist[h] = depth + 1
                index[h] = len(keys)
                keys.append(h)
                parent.append(i)
                letter.append(li)
        if len(keys) > budget:
            raise ResourceLimit(f"ball enumeration exceeded budget {budget}")
        lo, hi = hi, len(keys)
        layer_bounds.append(hi)
        if lo == hi:
            break
    return BallTree(keys, dist, parent, letter, index, layer_bounds)


def _bidirectional_length(T: ResolvedGenSet, x: GroupElement, cap: int,
                          budget: int) -> int:
    eng = T.group.engine
    tkeys = [e.key for e in T.elements]
    if x.is_identity():
        return 0
    da = {eng.identity: 0}
    db = {x.key: 0}
    fa = [eng.identity]
    fb = [x.key]
    ra = rb = 0
    visited = 2
    while fa and fb:
        if ra + rb >= cap:
            raise CapExceeded(f"word length exceeds cap {cap}")
        # expand the smaller frontier
        if len(fa) <= len(fb):
            frontier, dist, other, r = fa, da, db, ra + 1
            ra = r
        else:
            frontier, dist, other, r = fb, db, da, rb + 1
            rb = r
        nxt = []
        for g in frontier:
            for tk in tkeys:
                h = eng.mult(g, tk)
                if h in dist:
                    continue
                if h in other:
                    return r + other[h]
                dist[h] = r
                nxt.append(h)
        visited += len(nxt)
        if visited > budget:
            raise ResourceLimit(f"bidirectional search exceeded budget {budget}")
        if dist is da:
            fa = nxt
        else:
            fb = nxt
    raise CapExceeded(f"word length exceeds cap {cap}")


def _astar_length(T: ResolvedGenSet, x: GroupElement, cap: int,
                  budget: int) -> int:
    """Exact foreign length by A* over left quotients.

    The state is g = z^-1 x where z is the partial product; the remaining
    distance is at least ceil(|g|_S / L) with L the largest base length of a
    letter, which is an admissible and consistent heuristic.
    """
    eng = T.group.engine
    lip = T.max_letter_length
    inv_keys = [T.elements[T.inverse_index[i]].key for i in range(len(T))]
    start = x.key
    if start == eng.identity:
        return 0
    h0 = -(-eng.length(start) // lip)
    heap = [(h0, 0, start)]
    best = {start: 0}
    popped = 0
    while heap:
        f, g_cost, gk = heappop(heap)
        if g_cost > best.get(gk, -1):
            continue
        if gk == eng.identity:
            return g_cost
        popped += 1
        if popped > budget:
            raise ResourceLimit(f"length search exceeded budget {budget}")
        if g_cost >= cap:
            continue
        for ik in inv_keys:
            nk = eng.mult(ik, gk)
            nc = g_cost + 1
            if nc < best.get(nk, nc + 1):
                best[nk] = nc
                h = -(-eng.length(nk) // lip)
                if nc + h <= cap:
                    heappush(heap, (nc + h, nc, nk))
    raise CapExceeded(f"word length exceeds cap {cap}")


def word_length(x: GroupElement, T: ResolvedGenSet,
                cap: int = DEFAULT_LENGTH_CAP,
                budget: int = DEFAULT_BALL_BUDGET) -> int:
    """Geodesic length of x with respect to the generating set T.

    Short queries run a bidirectional breadth-first search meeting in the
    middle; long ones switch to an A* search with an admissible base-length
    heuristic.  Both are exact.  Raises CapExceeded when the length is
    provably above ``cap``.
    """
    if T.is_base:
        n = x.length()
        if n > cap:
            raise CapExceeded(f"word length {n} exceeds cap {cap}")
        return n
    # Lower bound from the Lipschitz comparison of the two metrics.
    if -(-x.length() // T.max_letter_length) > cap:
        raise CapExceeded(f"word length exceeds cap {cap}")
    branching = max(2, len(T) - 1)
    # Estimated bidirectional frontier size; beyond ~1e5 A* wins.
    depth_guess = min(cap, x.length())
    if branching ** ((depth_guess + 1) // 2) <= 100_000:
        return _bidirectional_length(T, x, cap, budget)
    return _astar_length(T, x, cap, budget)


class ForeignMetric:
    """Length oracle for one generating set, with an optional lookup table.

    ``ensure_radius`` precomputes a ball so that later queries inside it are
    dictionary lookups; anything outside falls back to exact search.
    """

    def __init__(self, T: ResolvedGenSet, cap: int = DEFAULT_LENGTH_CAP,
                 budget: int = DEFAULT_BALL_BUDGET):
        self.T = T
        self.cap = cap
        self.budget = budget
        self._table: dict = {T.group.engine.identity: 0}
        self._radius = 0

    def ensure_radius(self, radius: int):
        if radius <= self._radius:
            return
        eng = self.T.group.engine
        tkeys = [e.key for e in self.T.elements]
        layer = [k for k, d in self._table.items() if d == self._radius]
        for depth in range(self._radius, radius):
            nxt = []
            for g in layer:
                for tk in tkeys:
                    h = eng.mult(g, tk)
                    if h not in self._table:
                        self._table[h] = depth + 1
                        nxt.append(h)
            if len(self._table) > self.budget:
                raise ResourceLimit(f"length table exceeded budget {self.budget}")
            layer = nxt
            self._radius = depth + 1
            if not layer:
                break

    def length(self, x: GroupElement, cap: Optional[int] = None) -> int:
        if self.T.is_base:
            return x.length()
        n = self._table.get(x.key)
        if n is not None:
            return n
        return word_length(x, self.T, cap if cap is not None else self.cap,
                           self.budget)


def gromov_product(x: GroupElement, y: GroupElement, T: ResolvedGenSet,
                   cap: int = DEFAULT_LENGTH_CAP) -> Fraction:
    """Gromov product (x|y) at the identity: (|x| + |y| - |x^-1 y|) / 2."""
    lx = word_length(x, T, cap)
    ly = word_length(y, T, cap)
    lxy = word_length(x.inverse() * y, T, cap)
    return Fraction(lx + ly - lxy, 2)


@dataclass(frozen=True)
class HyperbolicityEstimate:
    """Smallest half-integer delta passing the four-point condition on a ball."""

    delta: Fraction
    radius: int
    basepoint: GroupElement

    def __post_init__(self):
        if self.delta < 0 or self.delta.denominator not in (1, 2):
            raise ValueError("delta must be a nonnegative half-integer")


def estimate_delta(spec: GroupSpec, T: ResolvedGenSet, radius: int,
                   budget: int = 700, ball_budget: int = DEFAULT_BALL_BUDGET
                   ) -> HyperbolicityEstimate:
    """Exhaustive four-point scan over the ball of the given radius.

    Returns the least half-integer delta with
    (x|y) >= min((x|z), (z|y)) - delta for all triples in the ball, the
    Gromov products being taken at the identity.  The scan is quadratic in
    the ball size for distances and cubic (vectorized) for the triple test;
    ``budget`` caps the number of ball elements.
    """
    tree = ball_tree(T, radius, ball_budget)
    n = len(tree.keys)
    if n > budget:
        raise ResourceLimit(
            f"ball has {n} elements, above the pairwise budget {budget}")
    eng = spec.engine
    tkeys = [e.key for e in T.elements]
    lengths = np.array([tree.dist[k] for k in tree.keys], dtype=np.int64)
    # Pairwise distances d(x, y) = |x^-1 y|: walk the tree once per row so
    # each entry costs one letter multiplication.
    dmat = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        xinv = eng.invert(tree.keys[i])
        row_keys = [None] * n
        row_keys[0] = xinv
        dmat[i, 0] = eng.length(xinv)
        for j in range(1, n):
            z = eng.mult(row_keys[tree.parent[j]], tkeys[tree.letter[j]])
            row_keys[j] = z
            dmat[i, j] = eng.length(z)
    # Doubled Gromov products stay integral.
    g2 = lengths[:, None] + lengths[None, :] - dmat
    worst = 0
    for z in range(n):
        defect = np.minimum.outer(g2[:, z], g2[z, :]) - g2
        m = int(defect.max())
        if m > worst:
            worst = m
    return HyperbolicityEstimate(Fraction(max(worst, 0), 2), radius, spec.identity())


def busemann_finite(x: GroupElement, z: GroupElement, T: ResolvedGenSet,
                    cap: int = DEFAULT_LENGTH_CAP) -> int:
    """Finite-stage horofunction value d(x, z) - d(o, z)."""
    return word_length(x.inverse() * z, T, cap) - word_length(z, T, cap)
