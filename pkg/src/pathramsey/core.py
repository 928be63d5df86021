"""Path powers, up-string colorings and edge-color lookup.

Vertices are 0-based. An up-string for vertex ``v`` lists the colors of the
edges ``{v, v+1}, ..., {v, v+p}``; it is stored packed as an int whose
binary digits (most significant first) are those colors with B=0, R=1, so
that integer order and string order agree (``BBB < BBR < ... < RRR``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional


class Color(enum.Enum):
    RED = "R"
    BLUE = "B"

    def __str__(self) -> str:
        return self.value


#: Returned by :func:`edge_color` for edges not yet determined.
UNASSIGNED = None


@dataclass(frozen=True)
class PowerPathGraph:
    n_vertices: int
    power: int = 3

    def __post_init__(self):
        if self.n_vertices < 1 or self.power < 1:
            raise ValueError(f"invalid path power P_{self.n_vertices}^{self.power}")

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n_vertices):
            raise ValueError(f"vertex {v} outside 0..{self.n_vertices - 1}")

    def up_length(self, v: int) -> int:
        """Number of up-neighbors of ``v`` (``power`` except near the top end)."""
        self.check_vertex(v)
        return min(self.power, self.n_vertices - 1 - v)

    def edges(self):
        for u in range(self.n_vertices):
            for d in range(1, self.power + 1):
                if u + d < self.n_vertices:
                    yield (u, u + d)

    def neighbors(self, v: int) -> list[int]:
        self.check_vertex(v)
        return [u for u in range(v - self.power, v + self.power + 1)
                if u != v and 0 <= u < self.n_vertices]


def adjacency(g: PowerPathGraph, u: int, v: int) -> bool:
    g.check_vertex(u)
    g.check_vertex(v)
    return 1 <= abs(u - v) <= g.power


def edge_count(g: PowerPathGraph) -> int:
    """``p*N - p(p+1)/2``; equals ``3N - 6`` for the cube of a path."""
    p, n = g.power, g.n_vertices
    if n < p + 1:
        raise ValueError(f"edge_count needs N >= p+1, got N={n}, p={p}")
    return p * n - p * (p + 1) // 2


# ---------------------------------------------------------------- up-strings

def encode_up(s: str) -> int:
    """``"BRR"`` -> 3. Raises on anything but R/B letters."""
    code = 0
    for ch in s:
        if ch == "R":
            code = (code << 1) | 1
        elif ch == "B":
            code <<= 1
        else:
            raise ValueError(f"bad up-string {s!r}")
    return code


def decode_up(code: int, length: int = 3) -> str:
    if not (0 <= code < (1 << length)):
        raise ValueError(f"up-string code {code} does not fit length {length}")
    return "".join("R" if (code >> (length - 1 - i)) & 1 else "B" for i in range(length))


def all_up_strings(power: int = 3) -> list[str]:
    """Every full-length up-string in canonical (ascending) order."""
    return [decode_up(c, power) for c in range(1 << power)]


def up_is_red(code: int, d: int, length: int) -> bool:
    """Color bit of position ``d`` (1-based) of a packed up-string."""
    return bool((code >> (length - d)) & 1)


@dataclass(frozen=True)
class UpColoring:
    """Up-strings assigned to vertices ``0..frontier``.

    Immutable; :meth:`extend` returns a new coloring so search branches
    never share state.
    """

    graph: PowerPathGraph
    ups: tuple[int, ...] = ()
    _lengths: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if len(self.ups) > self.graph.n_vertices:
            raise ValueError("more up-strings than vertices")
        lengths = tuple(self.graph.up_length(v) for v in range(len(self.ups)))
        for v, (code, ln) in enumerate(zip(self.ups, lengths)):
            if not (0 <= code < (1 << ln)):
                raise ValueError(f"up-string code {code} invalid for vertex {v}")
        object.__setattr__(self, "_lengths", lengths)

    @classmethod
    def from_strings(cls, graph: PowerPathGraph, strings) -> "UpColoring":
        codes = []
        for v, s in enumerate(strings):
            if len(s) != graph.up_length(v):
                raise ValueError(f"up({v})={s!r} has wrong length, expected {graph.up_length(v)}")
            codes.append(encode_up(s))
        return cls(graph, tuple(codes))

    @property
    def frontier(self) -> int:
        return len(self.ups) - 1

    def up(self, v: int) -> str:
        if not (0 <= v <= self.frontier):
            raise ValueError(f"up({v}) is not assigned (frontier {self.frontier})")
        return decode_up(self.ups[v], self._lengths[v])

    def up_strings(self) -> list[str]:
        return [self.up(v) for v in range(len(self.ups))]

    def extend(self, s) -> "UpColoring":
        v = len(self.ups)
        if v >= self.graph.n_vertices:
            raise ValueError("cannot extend beyond the last vertex")
        ln = self.graph.up_length(v)
        if isinstance(s, str):
            if len(s) != ln:
                raise ValueError(f"up({v}) needs length {ln}, got {s!r}")
            code = encode_up(s)
        else:
            code = int(s)
        return UpColoring(self.graph, self.ups + (code,))

    def color(self, u: int, v: int) -> Optional[Color]:
        return edge_color(self, u, v)

    def serialize(self) -> str:
        return ",".join(self.up_strings())

    @classmethod
    def deserialize(cls, graph: PowerPathGraph, text: str) -> "UpColoring":
        return cls.from_strings(graph, [t for t in text.split(",") if t])


def edge_color(c: UpColoring, u: int, v: int) -> Optional[Color]:
    if not adjacency(c.graph, u, v):
        raise ValueError(f"{{{u},{v}}} is not an edge of P_{c.graph.n_vertices}^{c.graph.power}")
    lo, hi = (u, v) if u < v else (v, u)
    if lo > c.frontier:
        return UNASSIGNED
    red = up_is_red(c.ups[lo], hi - lo, c._lengths[lo])
    return Color.RED if red else Color.BLUE


def extend(c: UpColoring, s) -> UpColoring:
    return c.extend(s)
