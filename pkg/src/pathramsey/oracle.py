"""Brute-force ground truth at desk scale.

Exact longest paths, arrowing checks ``G -> (C_<=L, P_n)`` by enumerating
maximal admissible red edge sets, and exhaustive enumeration of window
colorings for segment statements. None of this shares code with the search
engine; it exists to cross-check it.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np
from numba import njit

from .config import SearchConfig
from .core import Color, PowerPathGraph, UpColoring, edge_color
from .graphs import SmallGraph

DP_CAP = 22


class OracleLimitError(ValueError):
    """Instance too large for the exhaustive method."""


@njit(cache=True)
def _longest_path_dp(adj, n):
    # ends[mask]: bitset of v such that some path covers exactly mask and ends at v
    ends = np.zeros(1 << n, dtype=np.uint32)
    best = 0
    for v in range(n):
        ends[1 << v] = 1 << v
    for mask in range(1, 1 << n):
        e = ends[mask]
        if e == 0:
            continue
        cnt = 0
        m = mask
        while m:
            m &= m - 1
            cnt += 1
        if cnt > best:
            best = cnt
        reach = 0
        x = e
        v = 0
        while x:
            if x & 1:
                reach |= adj[v]
            x >>= 1
            v += 1
        reach &= ~mask
        u = 0
        while reach:
            if reach & 1:
                ends[mask | (1 << u)] |= np.uint32(1 << u)
            reach >>= 1
            u += 1
    return best


def _longest_path_bnb(g: SmallGraph, deadline: float) -> int:
    adj = [sorted(a) for a in g.adjacency()]
    best = 1 if g.n else 0

    def reach_bound(v, seen):
        stack, count, mark = [v], 0, set(seen)
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in mark:
                    mark.add(w)
                    count += 1
                    stack.append(w)
        return count

    def dfs(v, seen, length):
        nonlocal best
        if time.monotonic() > deadline:
            raise TimeoutError("longest path search exceeded its time budget")
        if length > best:
            best = length
        if length + reach_bound(v, seen) <= best:
            return
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                dfs(w, seen, length + 1)
                seen.discard(w)

    # low-degree starts first: endpoints of long paths tend to have small degree
    for s in sorted(range(g.n), key=lambda x: len(adj[x])):
        if best == g.n:
            break
        dfs(s, {s}, 1)
    return best


def longest_path_exact(g: SmallGraph, cap: int = DP_CAP, time_budget: float = 60.0) -> int:
    """Order (vertex count) of a longest simple path.

    Subset DP up to ``cap`` vertices; above that an exact branch-and-bound
    with a hard time budget. Raises :class:`OracleLimitError` above 64
    vertices.
    """
    if g.n == 0:
        return 0
    if g.n <= cap:
        adj = np.zeros(g.n, dtype=np.uint32)
        for u, v in g.edges:
            adj[u] |= np.uint32(1 << v)
            adj[v] |= np.uint32(1 << u)
        return int(_longest_path_dp(adj, g.n))
    if g.n > 64:
        raise OracleLimitError(f"{g.n} vertices is beyond the exact oracle; use the "
                               "lower-bound counting bound instead")
    return _longest_path_bnb(g, time.monotonic() + time_budget)


# --------------------------------------------------------------- arrowing

@dataclass(frozen=True)
class ArrowResult:
    arrows: bool
    witness: Optional[frozenset] = None  # red edge set when arrows is False
    red_sets_checked: int = 0


def _has_short_cycle(red_adj, u, v, cap) -> bool:
    """Would adding u-v close a cycle of length <= cap (``None`` = any length)?"""
    limit = None if cap is None else cap - 1
    seen = {u}
    layer = [u]
    depth = 0
    while layer and (limit is None or depth < limit):
        depth += 1
        nxt = []
        for x in layer:
            for y in red_adj[x]:
                if y == v:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        layer = nxt
    return False


def maximal_red_sets(g: SmallGraph, cycle_cap: Optional[int]):
    """Yield every maximal edge set with no cycle of length <= ``cycle_cap``.

    ``cycle_cap=None`` means no cycles at all, i.e. spanning forests.
    """
    edges = g.sorted_edges()
    red_adj = [set() for _ in range(g.n)]
    chosen: list[tuple[int, int]] = []
    excluded: list[tuple[int, int]] = []

    def rec(i):
        if i == len(edges):
            for (a, b) in excluded:
                if not _has_short_cycle(red_adj, a, b, cycle_cap):
                    return
            yield frozenset(chosen)
            return
        u, v = edges[i]
        if not _has_short_cycle(red_adj, u, v, cycle_cap):
            red_adj[u].add(v)
            red_adj[v].add(u)
            chosen.append((u, v))
            yield from rec(i + 1)
            chosen.pop()
            red_adj[u].discard(v)
            red_adj[v].discard(u)
        excluded.append((u, v))
        yield from rec(i + 1)
        excluded.pop()

    yield from rec(0)


def arrow_check(g: SmallGraph, cycle_cap: Optional[int], n: int, edge_cap: int = 30) -> ArrowResult:
    """Does every red set without a cycle of length <= ``cycle_cap`` leave a blue P_n?

    Only maximal red sets are tried: shrinking the red set only adds blue
    edges. The first failing set in enumeration order is the witness.
    """
    if len(g.edges) > edge_cap:
        raise OracleLimitError(f"{len(g.edges)} edges exceeds the enumeration cap {edge_cap}")
    if n < 1:
        raise ValueError("path order must be positive")
    checked = 0
    for red in maximal_red_sets(g, cycle_cap):
        checked += 1
        blue = g.subgraph_edges(g.edges - red)
        if longest_path_exact(blue) < n:
            return ArrowResult(False, red, checked)
    return ArrowResult(True, None, checked)


def replay_witness(g: SmallGraph, cycle_cap: Optional[int], n: int, red: frozenset) -> bool:
    """Independently confirm a failure witness with networkx."""
    if not red <= g.edges:
        return False
    rg = nx.Graph()
    rg.add_nodes_from(range(g.n))
    rg.add_edges_from(red)
    if cycle_cap is None:
        if not nx.is_forest(rg):
            return False
    elif any(True for _ in nx.simple_cycles(rg, length_bound=cycle_cap)):
        return False
    blue = g.subgraph_edges(g.edges - red)
    return longest_path_exact(blue) < n


# ------------------------------------------------------- window colorings

def _window_graphs(col: UpColoring):
    red, blue = nx.Graph(), nx.Graph()
    for u in range(col.frontier + 1):
        for d in range(1, col.graph.up_length(u) + 1):
            (red if edge_color(col, u, u + d) is Color.RED else blue).add_edge(u, u + d)
    return red, blue


def _qualifying_path(blue: nx.Graph, col: UpColoring, cfg: SearchConfig, jmax: int):
    for j in range(1, jmax + 1):
        if not cfg.end_pred(col.up(j)):
            continue
        sub = blue.subgraph(range(j + 1))
        if 0 not in sub or j not in sub:
            continue
        for path in nx.all_simple_paths(sub, 0, j):
            if (len(path) - 1) * cfg.target.denominator >= cfg.target.numerator * j:
                return path
    return None


def _closed(col: UpColoring, cfg: SearchConfig) -> bool:
    red, blue = _window_graphs(col)
    if any(True for _ in nx.simple_cycles(red, length_bound=cfg.cycle_cap)):
        return True
    return _qualifying_path(blue, col, cfg, min(col.frontier, cfg.max_depth)) is not None


def lemma_oracle(cfg: SearchConfig, window: int, budget: int = 8 ** 7,
                 prune: bool = True) -> tuple[bool, Optional[UpColoring]]:
    """Check the segment statement over every up-coloring of ``0..window-1``.

    A coloring is excused if it has a red cycle of length <= L among its
    determined edges; otherwise it needs a qualifying blue path with
    endpoint <= ``max_depth``. With ``prune`` a prefix that already has a
    short red cycle or a qualifying path is not extended, since every
    extension inherits it. Returns the verdict and the first counterexample
    in canonical order.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if (1 << cfg.power) ** window > budget:
        raise OracleLimitError(f"{1 << cfg.power}^{window} colorings exceeds the budget {budget}")
    graph = PowerPathGraph(window + cfg.power, cfg.power)
    starts = cfg.start_pred.codes(cfg.power)
    codes = range(1 << cfg.power)

    if not prune:
        for combo in itertools.product(starts, *([codes] * (window - 1))):
            col = UpColoring(graph, tuple(combo))
            if not _closed(col, cfg):
                return False, col
        return True, None

    def rec(col: UpColoring):
        if _closed(col, cfg):
            return None
        if col.frontier == window - 1:
            return col
        for s in codes:
            bad = rec(col.extend(s))
            if bad is not None:
                return bad
        return None

    for s in starts:
        bad = rec(UpColoring(graph, (s,)))
        if bad is not None:
            return False, bad
    return True, None


def lemma_leaves(cfg: SearchConfig, window: int, budget: int = 8 ** 7) -> list[tuple[str, ...]]:
    """Minimal closed prefixes of the window enumeration, in canonical order.

    For a true statement these are exactly the leaves a complete case
    analysis needs. Raises ``ValueError`` if some full window coloring
    stays open.
    """
    if (1 << cfg.power) ** window > budget:
        raise OracleLimitError(f"{1 << cfg.power}^{window} colorings exceeds the budget {budget}")
    graph = PowerPathGraph(window + cfg.power, cfg.power)
    leaves: list[tuple[str, ...]] = []

    def rec(col: UpColoring):
        if _closed(col, cfg):
            leaves.append(tuple(col.up_strings()))
            return
        if col.frontier == window - 1:
            raise ValueError(f"open coloring {col.serialize()}")
        for s in range(1 << cfg.power):
            rec(col.extend(s))

    for s in cfg.start_pred.codes(cfg.power):
        rec(UpColoring(graph, (s,)))
    return leaves
