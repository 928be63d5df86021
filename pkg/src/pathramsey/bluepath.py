"""Maximum blue path from 0 to k inside {0..k} by frontier dynamic programming.

Vertices are processed in index order. Because every edge of a path power
joins vertices at distance at most ``p``, a partial path restricted to
``{0..i}`` only has loose ends among the last ``p`` vertices; the DP state
records, for each of those vertices, whether it is unused (U), finished
(D), a fresh vertex still needing two edges (S), or a loose end (E) of a
fragment. Loose ends carry a fragment label so that two ends of the same
fragment are never joined. Label 0 is the fragment containing vertex 0.

A table maps state -> (vertex count, edge bitmask); ties on count keep the
smaller bitmask so results are deterministic.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

U, D, S = 0, 1, 2
ROOT = 3  # E entries are 3 + label; the root fragment has label 0

Table = dict


def initial_table() -> Table:
    return {(ROOT,): (1, 0)}


def edge_bit(u: int, d: int, power: int) -> int:
    return 1 << (power * u + d - 1)


def _relabel(entries: list[int]) -> tuple[int, ...]:
    mapping = {ROOT: ROOT}
    nxt = ROOT + 1
    out = []
    for e in entries:
        if e > S:
            if e not in mapping:
                mapping[e] = nxt
                nxt += 1
            out.append(mapping[e])
        else:
            out.append(e)
    return tuple(out)


@lru_cache(maxsize=None)
def _step_options(state: tuple[int, ...], blue: tuple[bool, ...], power: int):
    """All ways to place a new interior vertex after ``state``.

    ``blue[d-1]`` says whether the edge to the vertex ``d`` below is blue.
    Returns ``(new_state, used, ds)`` triples.
    """
    n = len(state)
    opens = [d for d in range(1, power + 1)
             if d <= n and blue[d - 1] and state[n - d] >= S]
    fresh = 100
    choices: list[tuple[int, ...]] = [(), ()]  # unused, used-with-no-edges
    choices += [(d,) for d in opens]
    choices += [(d1, d2) for i, d1 in enumerate(opens) for d2 in opens[i + 1:]]
    out = []
    for idx, ds in enumerate(choices):
        s = list(state)
        if idx == 0:
            v = U
        elif not ds:
            v = S
        elif len(ds) == 1:
            bi = n - ds[0]
            if s[bi] == S:
                s[bi] = v = fresh
            else:
                v = s[bi]
                s[bi] = D
        else:
            b1, b2 = n - ds[0], n - ds[1]
            e1, e2 = s[b1], s[b2]
            if e1 > S and e1 == e2:
                continue  # would close a cycle
            labels = []
            for bi, e, f in ((b1, e1, fresh), (b2, e2, fresh + 1)):
                if e == S:
                    s[bi] = f
                    labels.append(f)
                else:
                    s[bi] = D
                    labels.append(e)
            merged = ROOT if ROOT in labels else labels[0]
            s = [merged if x in labels else x for x in s]
            v = D
        if n == power:
            if s[0] not in (U, D):
                continue
            s = s[1:]
        s.append(v)
        out.append((_relabel(s), 0 if idx == 0 else 1, ds))
    return tuple(out)


@lru_cache(maxsize=None)
def _finish_option(state: tuple[int, ...], blue: tuple[bool, ...], power: int) -> Optional[int]:
    """The distance ``d`` of the root loose end if ``k`` can close the path."""
    n = len(state)
    root_at = None
    for i, e in enumerate(state):
        if e == ROOT:
            root_at = i
        elif e not in (U, D):
            return None
    if root_at is None:
        return None
    d = n - root_at
    if d > power or not blue[d - 1]:
        return None
    return d


def step(table: Table, i: int, blue: tuple[bool, ...], power: int) -> Table:
    """Advance a table over vertices ``0..i-1`` to cover ``0..i``."""
    new: Table = {}
    for state, (cnt, mask) in table.items():
        for ns, used, ds in _step_options(state, blue, power):
            c2 = cnt + used
            m2 = mask
            for d in ds:
                m2 |= edge_bit(i - d, d, power)
            old = new.get(ns)
            if old is None or c2 > old[0] or (c2 == old[0] and m2 < old[1]):
                new[ns] = (c2, m2)
    return new


def finish(table: Table, k: int, blue: tuple[bool, ...], power: int) -> Optional[tuple[int, int]]:
    """Best ``(vertex count, edge mask)`` of a path from 0 ending at ``k``."""
    best = None
    for state, (cnt, mask) in table.items():
        d = _finish_option(state, blue, power)
        if d is None:
            continue
        cand = (cnt + 1, mask | edge_bit(k - d, d, power))
        if best is None or cand[0] > best[0] or (cand[0] == best[0] and cand[1] < best[1]):
            best = cand
    return best


def mask_to_path(mask: int, power: int) -> list[int]:
    """Walk the path encoded by ``mask`` starting from vertex 0."""
    adj: dict[int, list[int]] = {}
    bit = 0
    m = mask
    while m:
        if m & 1:
            u, d = divmod(bit, power)
            v = u + d + 1
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        m >>= 1
        bit += 1
    path = [0]
    prev = None
    while True:
        nxt = [w for w in adj.get(path[-1], []) if w != prev]
        if not nxt:
            break
        prev = path[-1]
        path.append(nxt[0])
    return path


def blue_flags(is_blue, v: int, power: int) -> tuple[bool, ...]:
    """``is_blue(u, d)`` for the edges from ``v`` down to ``v-d``."""
    return tuple(v - d >= 0 and is_blue(v - d, d) for d in range(1, power + 1))


def best_paths(is_blue, k_max: int, power: int) -> list[Optional[tuple[int, int]]]:
    """Best path to every endpoint ``1..k_max``; index 0 is ``None``."""
    out: list[Optional[tuple[int, int]]] = [None]
    table = initial_table()
    for k in range(1, k_max + 1):
        out.append(finish(table, k, blue_flags(is_blue, k, power), power))
        table = step(table, k, blue_flags(is_blue, k, power), power)
    return out
