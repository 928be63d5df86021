"""Blue-path and red-cycle certificates with exact densities.

A blue path certificate starts at vertex 0 and ends at its largest vertex
``k``; its density is ``(len(vertices) - 1) / k`` as a :class:`Fraction`.
No floating point is used anywhere a density is compared.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import Color, UpColoring, adjacency, edge_color


class CertificateError(ValueError):
    """Certificate is malformed or cannot be checked against this coloring."""


def parse_fraction(text: str) -> Fraction:
    """Strict ``"p/q"`` (or integer) parser; rejects decimals and floats."""
    if not isinstance(text, str):
        raise CertificateError(f"density must be a 'p/q' string, got {text!r}")
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise CertificateError(f"malformed rational {text!r}") from None
    if q <= 0:
        raise CertificateError(f"non-positive denominator in {text!r}")
    return Fraction(p, q)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def path_density(vertices: Sequence[int]) -> Fraction:
    if len(vertices) < 2 or vertices[0] != 0:
        raise CertificateError(f"path must start at 0 and have an edge: {list(vertices)}")
    if len(set(vertices)) != len(vertices):
        raise CertificateError(f"repeated vertex in {list(vertices)}")
    if min(vertices) < 0:
        raise CertificateError("negative vertex")
    return Fraction(len(vertices) - 1, max(vertices))


@dataclass(frozen=True)
class BluePathCert:
    vertices: tuple[int, ...]
    density: Fraction

    @classmethod
    def of(cls, vertices: Sequence[int]) -> "BluePathCert":
        vs = tuple(vertices)
        return cls(vs, path_density(vs))

    @property
    def endpoint(self) -> int:
        return self.vertices[-1]

    def to_json(self) -> dict:
        return {"blue_path": list(self.vertices), "density": format_fraction(self.density)}


@dataclass(frozen=True)
class RedCycleCert:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {"red_cycle": list(self.vertices)}


def _color(c: UpColoring, u: int, v: int) -> Optional[Color]:
    if not (0 <= u < c.graph.n_vertices and 0 <= v < c.graph.n_vertices):
        raise CertificateError(f"vertex out of range in edge {u}-{v}")
    if not adjacency(c.graph, u, v):
        return None
    return edge_color(c, u, v)


def check_blue_path(c: UpColoring, cert: BluePathCert,
                    end_predicate: Callable[[str], bool]) -> bool:
    """True iff ``cert`` is a blue path 0..k under ``c`` whose stored density
    is exact and whose endpoint up-string satisfies ``end_predicate``.

    Raises :class:`CertificateError` when a vertex lies above the frontier
    (the certificate is not checkable yet) or the vertex list is malformed.
    """
    vs = cert.vertices
    if any(not isinstance(v, int) or v < 0 for v in vs):
        raise CertificateError(f"bad vertex list {list(vs)}")
    if len(set(vs)) != len(vs):
        raise CertificateError(f"repeated vertex in {list(vs)}")
    if vs and max(vs) > c.frontier:
        raise CertificateError(f"vertex {max(vs)} above frontier {c.frontier}")
    if len(vs) < 2 or vs[0] != 0 or vs[-1] != max(vs):
        return False
    for a, b in zip(vs, vs[1:]):
        if _color(c, a, b) is not Color.BLUE:
            return False
    if cert.density != Fraction(len(vs) - 1, vs[-1]):
        return False
    return bool(end_predicate(c.up(vs[-1])))


def check_red_cycle(c: UpColoring, cert: RedCycleCert, cap: int) -> bool:
    vs = cert.vertices
    if any(not isinstance(v, int) for v in vs):
        raise CertificateError(f"bad vertex list {list(vs)}")
    if len(vs) < 3 or len(vs) > cap or len(set(vs)) != len(vs):
        return False
    for a, b in zip(vs, vs[1:] + vs[:1]):
        col = _color(c, a, b)
        if col is None and adjacency(c.graph, a, b):
            raise CertificateError(f"edge {a}-{b} is not determined yet")
        if col is not Color.RED:
            return False
    return True


def stitch(a: BluePathCert, b: BluePathCert) -> BluePathCert:
    """Join ``a`` on ``[0..k]`` with ``b`` on ``[0..l]`` shifted to ``[k..k+l]``.

    ``b`` is given in its own 0-anchored coordinates. The returned density is
    the exact ``(d1*k + d2*l)/(k+l)``, never the min bound.
    """
    k, l = a.endpoint, b.endpoint
    if a.vertices[-1] != max(a.vertices) or b.vertices[0] != 0 or b.vertices[-1] != max(b.vertices):
        raise CertificateError("both segments must run from their anchor to their maximum")
    shifted = tuple(v + k for v in b.vertices)
    if set(a.vertices) & set(shifted[1:]):
        raise CertificateError("segments overlap")
    vertices = a.vertices + shifted[1:]
    density = (a.density * k + b.density * l) / (k + l)
    if density != Fraction(len(vertices) - 1, k + l):
        raise CertificateError("stored densities disagree with vertex counts")
    return BluePathCert(vertices, density)


def cert_from_json(obj: dict):
    """Parse a transcript leaf body into a certificate (no validity check)."""
    if not isinstance(obj, dict) or len(obj) == 0:
        raise CertificateError(f"bad leaf {obj!r}")
    if set(obj) == {"red_cycle"}:
        vs = obj["red_cycle"]
        if not isinstance(vs, list) or not all(type(v) is int for v in vs):
            raise CertificateError("red_cycle must be a list of ints")
        return RedCycleCert(tuple(vs))
    if set(obj) == {"blue_path", "density"}:
        vs = obj["blue_path"]
        if not isinstance(vs, list) or not all(type(v) is int for v in vs):
            raise CertificateError("blue_path must be a list of ints")
        return BluePathCert(tuple(vs), parse_fraction(obj["density"]))
    raise CertificateError(f"unknown leaf keys {sorted(obj)}")
