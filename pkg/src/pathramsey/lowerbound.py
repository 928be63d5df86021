"""Greedy forest decomposition, the acyclic-red adversary coloring, and the
exact constants behind the lower bound.

All constants are :class:`Fraction`; nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graphs import SmallGraph


def gamma(delta: int) -> Fraction:
    """Guaranteed ``(|A0| + |A1|/2) / n`` for connected graphs of max degree ``delta``."""
    if delta < 1:
        raise ValueError("max degree must be at least 1")
    return Fraction(1, delta * delta + delta + 2) + Fraction(3, 2 * (delta * delta + 2 * delta + 3))


def f_coefficients(d: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(constant, beta coefficient, alpha coefficient)`` of the linear form ``f``."""
    if d < 4:
        raise ValueError("degree cutoff d must be at least 4 (2/(d-3) is undefined at d=3)")
    g = gamma(d)
    t = Fraction(2, d - 3)
    return 1 - g, 1 - g - t * (1 + g), t * (1 + g)


def f(alpha, beta, d: int) -> Fraction:
    const, cb, ca = f_coefficients(d)
    return const + cb * Fraction(beta) + ca * Fraction(alpha)


def threshold(d: int) -> Fraction:
    """Supremum of ``alpha`` with ``max_{0 <= beta <= alpha} f(alpha, beta, d) < 1``.

    ``f`` is linear in ``beta`` so the maximum sits at ``beta = 0`` when the
    ``beta`` coefficient is negative and at ``beta = alpha`` otherwise.
    """
    const, cb, ca = f_coefficients(d)
    slope = ca if cb < 0 else ca + cb
    return (1 - const) / slope


# ------------------------------------------------------ forest decomposition

@dataclass
class ForestDecomposition:
    forest: set = field(default_factory=set)
    A0: set = field(default_factory=set)
    A1: set = field(default_factory=set)
    X: set = field(default_factory=set)
    Y: set = field(default_factory=set)
    # minimum number of X-neighbors over Y at the end of each phase (None if Y empty)
    phase1_min_x: Optional[int] = None
    phase2_min_x: Optional[int] = None

    @property
    def weight(self) -> Fraction:
        return len(self.A0) + Fraction(len(self.A1), 2)


def greedy_forest(g: SmallGraph, delta: Optional[int] = None,
                  vertices: Optional[list[int]] = None) -> ForestDecomposition:
    """Two-phase greedy decomposition of a connected graph.

    ``vertices`` restricts the work to an induced connected subgraph (used
    per component of ``G - B``). Candidates are always taken lowest index
    first, and in phase 2 the kept X-edge goes to the lower-indexed
    X-neighbor, so the output is deterministic.
    """
    full_adj = g.adjacency()
    vs = sorted(range(g.n) if vertices is None else vertices)
    inside = set(vs)
    adj = {v: sorted(w for w in full_adj[v] if w in inside) for v in vs}
    if delta is not None and any(len(a) > delta for a in adj.values()):
        raise ValueError(f"graph has a vertex of degree above {delta}")
    if not _connected(vs, adj):
        raise ValueError("greedy_forest needs a connected graph; split into components first")

    dec = ForestDecomposition(Y=set(vs))
    nx_count = {v: 0 for v in vs}  # |N(v) & X| for v in Y

    def to_x(w):
        dec.Y.discard(w)
        dec.X.add(w)
        for z in adj[w]:
            nx_count[z] += 1

    def take(v, into, kept_x_edge=None):
        dec.Y.discard(v)
        into.add(v)
        for w in adj[v]:
            if w in dec.X:
                if kept_x_edge is None or w == kept_x_edge:
                    dec.forest.add((min(v, w), max(v, w)))
            else:
                dec.forest.add((min(v, w), max(v, w)))
        for w in adj[v]:
            if w in dec.Y:
                to_x(w)

    def pick(limit):
        for v in vs:
            if v in dec.Y and nx_count[v] <= limit:
                return v
        return None

    if not vs:
        return dec
    take(vs[0], dec.A0)
    while (v := pick(1)) is not None:
        take(v, dec.A0)
    dec.phase1_min_x = min((nx_count[y] for y in dec.Y), default=None)
    while True:
        v = pick(1)
        if v is not None:
            take(v, dec.A0)
            continue
        v = next((y for y in vs if y in dec.Y and nx_count[y] == 2), None)
        if v is None:
            break
        keep = min(w for w in adj[v] if w in dec.X)
        take(v, dec.A1, kept_x_edge=keep)
    dec.phase2_min_x = min((nx_count[y] for y in dec.Y), default=None)
    return dec


def _connected(vs, adj) -> bool:
    if not vs:
        return True
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


# ------------------------------------------------------- adversary coloring

@dataclass
class AdversaryColoring:
    red: set
    blue: set
    A0: set
    A1: set
    B: set
    d: int
    slack: int = 2  # path-order loss from reducing to minimum degree 3

    def counting_bound(self, n_vertices: int) -> Fraction:
        """Upper bound on the order of any blue path: ``N - |A0| - |A1|/2 + |B| + 1``."""
        return n_vertices - len(self.A0) - Fraction(len(self.A1), 2) + len(self.B) + 1

    def to_json(self) -> dict:
        return {
            "red": sorted(map(list, self.red)),
            "blue": sorted(map(list, self.blue)),
            "A0": sorted(self.A0),
            "A1": sorted(self.A1),
            "B": sorted(self.B),
            "d": self.d,
            "slack": self.slack,
        }


def adversary_coloring(g: SmallGraph, d: int = 5) -> AdversaryColoring:
    """Red = greedy forests of the components of ``G - B`` completed to a
    spanning forest of ``G``; blue = everything else.

    ``B`` is the set of vertices of degree at least ``d + 1``.
    """
    if min(g.degrees(), default=3) < 3:
        raise ValueError("adversary coloring expects minimum degree at least 3")
    deg = g.degrees()
    B = {v for v in range(g.n) if deg[v] >= d + 1}
    sub = SmallGraph.from_edges(g.n, [(u, v) for u, v in g.edges if u not in B and v not in B])
    forest: set = set()
    A0: set = set()
    A1: set = set()
    for comp in sub.components():
        if comp[0] in B:
            continue
        dec = greedy_forest(sub, d, comp)
        forest |= dec.forest
        A0 |= dec.A0
        A1 |= dec.A1

    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sorted(forest):
        ru, rv = find(u), find(v)
        if ru == rv:
            raise AssertionError("greedy forest contains a cycle")
        parent[ru] = rv
    red = set(forest)
    for u, v in g.sorted_edges():
        if (u, v) in red:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            red.add((u, v))
    blue = set(g.edges) - red
    return AdversaryColoring(red, blue, A0, A1, B, d)
