"""Small simple graphs, edge-list text format and named generators."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class SmallGraph:
    n: int
    edges: frozenset

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "SmallGraph":
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} outside 0..{n - 1}")
            es.add((min(u, v), max(u, v)))
        return cls(n, frozenset(es))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [], [s]
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph_edges(self, keep) -> "SmallGraph":
        """Same vertex set, only the edges in ``keep``."""
        return SmallGraph.from_edges(self.n, keep)

    def to_text(self) -> str:
        lines = [f"# n {self.n}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> SmallGraph:
    """``u v`` per line; ``# n N`` fixes the vertex count, other ``#`` lines are comments."""
    n = None
    edges = []
    top = -1
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                n = int(parts[1])
            continue
        parts = line.split()
        if len(parts) == 1:
            top = max(top, int(parts[0]))
            continue
        if len(parts) != 2:
            raise ValueError(f"bad edge line {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    return SmallGraph.from_edges(n if n is not None else top + 1, edges)


def path_power(n: int, p: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(u, u + d) for u in range(n) for d in range(1, p + 1) if u + d < n])


def complete(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path(n: int) -> SmallGraph:
    return path_power(n, 1)


def cycle(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> SmallGraph:
    return SmallGraph.from_edges(n, [(0, i) for i in range(1, n)])


def random_mindeg3(n: int, m: int, seed: int) -> SmallGraph:
    """Connected graph on ``n`` vertices, ``m`` edges, minimum degree >= 3."""
    if n < 4 or 2 * m < 3 * n or m > n * (n - 1) // 2:
        raise ValueError(f"no connected min-degree-3 graph with n={n}, m={m}")
    rng = random.Random(seed)
    for _ in range(20):
        edges: set[tuple[int, int]] = set()
        deg = [0] * n
        order = list(range(n))
        rng.shuffle(order)
        # random spanning tree first so the result is connected
        for i in range(1, n):
            u, v = order[i], order[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        stuck = False
        while min(deg) < 3:
            low = [v for v in range(n) if deg[v] < 3]
            u = low[rng.randrange(len(low))]
            cands = [w for w in low if w != u and (min(u, w), max(u, w)) not in edges]
            if not cands:
                cands = [w for w in range(n) if w != u and (min(u, w), max(u, w)) not in edges]
            w = cands[rng.randrange(len(cands))]
            edges.add((min(u, w), max(u, w)))
            deg[u] += 1
            deg[w] += 1
            if len(edges) > m:
                stuck = True
                break
        if stuck:
            continue
        while len(edges) < m:
            u, w = rng.sample(range(n), 2)
            edges.add((min(u, w), max(u, w)))
        return SmallGraph.from_edges(n, edges)
    # tight edge counts: hamiltonian cycle plus a near-perfect matching of chords
    for _ in range(1000):
        order = list(range(n))
        rng.shuffle(order)
        edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:] + order[:1])}
        rest = order[:]
        rng.shuffle(rest)
        ok = True
        while len(rest) >= 2:
            u, w = rest.pop(), rest.pop()
            e = (min(u, w), max(u, w))
            if e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        if rest:
            u = rest[0]
            cands = [w for w in range(n) if w != u and (min(u, w), max(u, w)) not in edges]
            w = cands[rng.randrange(len(cands))]
            edges.add((min(u, w), max(u, w)))
        if len(edges) > m:
            continue
        while len(edges) < m:
            u, w = rng.sample(range(n), 2)
            edges.add((min(u, w), max(u, w)))
        return SmallGraph.from_edges(n, edges)
    raise ValueError(f"could not build a min-degree-3 graph with n={n}, m={m}")


def random_connected(n: int, m: int, max_deg: int, seed: int) -> SmallGraph:
    """Connected graph with up to ``m`` edges and maximum degree <= ``max_deg``."""
    if max_deg < 2 and n > 2:
        raise ValueError("max degree below 2 cannot connect more than 2 vertices")
    rng = random.Random(seed)
    deg = [0] * n
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        v = order[i]
        cands = [order[j] for j in range(i) if deg[order[j]] < max_deg]
        u = cands[rng.randrange(len(cands))]
        edges.add((min(u, v), max(u, v)))
        deg[u] += 1
        deg[v] += 1
    tries = 0
    while len(edges) < m and tries < 20 * m + 100:
        tries += 1
        u, v = rng.sample(range(n), 2) if n > 1 else (0, 0)
        e = (min(u, v), max(u, v))
        if u == v or e in edges or deg[u] >= max_deg or deg[v] >= max_deg:
            continue
        edges.add(e)
        deg[u] += 1
        deg[v] += 1
    return SmallGraph.from_edges(n, edges)


def generate(spec: str) -> SmallGraph:
    """Named families: ``path_power:N:p``, ``complete:N``, ``path:N``, ``cycle:N``,
    ``star:N``, ``random_mindeg3:N:m:seed``, ``random_connected:N:m:Delta:seed``."""
    name, *args = spec.split(":")
    try:
        vals = [int(a) for a in args]
    except ValueError:
        raise ValueError(f"bad generator arguments in {spec!r}") from None
    table = {
        "path_power": (path_power, 2),
        "complete": (complete, 1),
        "path": (path, 1),
        "cycle": (cycle, 1),
        "star": (star, 1),
        "random_mindeg3": (random_mindeg3, 3),
        "random_connected": (random_connected, 4),
    }
    if name not in table:
        raise ValueError(f"unknown graph family {name!r}")
    fn, arity = table[name]
    if len(vals) != arity:
        raise ValueError(f"{name} takes {arity} integer arguments")
    return fn(*vals)


def load_graph(arg: str) -> SmallGraph:
    """A generator spec if it parses as one, else a path to an edge-list file."""
    name = arg.split(":")[0]
    if ":" in arg and name.isidentifier():
        return generate(arg)
    with open(arg) as fh:
        return parse_edge_list(fh.read())
