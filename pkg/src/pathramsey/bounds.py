"""Turn a verified segment lemma into an upper bound, and tabulate constants."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .config import SearchConfig
from .core import PowerPathGraph, UpColoring, edge_count
from .lowerbound import threshold
from .search import find_red_cycle
from .verify import VerificationReport

# segment densities worth tabulating: warm-up, hand lemma, 3/4 run, computer lemma, ceiling
DENSITIES = (Fraction(1, 3), Fraction(4, 7), Fraction(3, 4), Fraction(19, 25), Fraction(7, 9))


def coefficient(density: Fraction, power: int = 3) -> Fraction:
    """Asymptotic edges-per-path-vertex: ``p / density``."""
    return Fraction(power) / Fraction(density)


@dataclass(frozen=True)
class BoundReport:
    density: Fraction
    power: int
    window_loss: int
    n: int
    min_vertices: int
    edges: int
    coefficient: Fraction
    additive_constant: Fraction
    start_fallback: bool
    note: str

    def to_json(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v
        return out


def start_fallback_holds(cfg: SearchConfig) -> bool:
    """No two consecutive start-failing up-strings avoid a short red cycle.

    This is what lets the stitching start at one of the first two vertices.
    """
    graph = PowerPathGraph(cfg.power + 3, cfg.power)
    bad = [c for c in range(1 << cfg.power) if not cfg.start_pred.holds_code(c, cfg.power)]
    for a, b in itertools.product(bad, repeat=2):
        if find_red_cycle(UpColoring(graph, (a, b)), cfg.cycle_cap) is None:
            return False
    return True


def theorem_assemble(cfg: SearchConfig, report: VerificationReport, n: int) -> BoundReport:
    """Path order ``n`` is forced in ``P_N^p`` for the returned ``N``.

    Stitching segments of density ``>= d`` from a start vertex among the
    first two gives ``|V(P)| >= d * (N - max_depth - 2) + 1``.
    """
    if not report.valid:
        raise ValueError(f"transcript did not verify: {report.verdict} {report.reason}")
    if report.config is not None and report.config != cfg:
        raise ValueError("verification report is for a different configuration")
    if n < 2:
        raise ValueError("path order must be at least 2")
    d = cfg.target
    loss = cfg.max_depth + 2
    N = loss + ceil(Fraction(n - 1) / d)
    edges = edge_count(PowerPathGraph(N, cfg.power))
    coef = coefficient(d, cfg.power)
    # ceil((n-1)/d) <= (n-1)/d + (a-1)/a for d = a/b
    a = d.numerator
    const = cfg.power * loss - coef + Fraction(cfg.power * (a - 1), a) - cfg.power * (cfg.power + 1) // 2
    fallback = start_fallback_holds(cfg)
    note = ("one of the first two vertices satisfies the start predicate in every coloring "
            "without a short red cycle" if fallback else
            "WARNING: start predicate can fail at two consecutive vertices; the first-two-vertex "
            "start argument does not apply")
    return BoundReport(d, cfg.power, loss, n, N, edges, coef, const, fallback, note)


def density_table(power: int = 3) -> list[tuple[Fraction, Fraction]]:
    return [(d, coefficient(d, power)) for d in DENSITIES]


def lower_table(ds=range(4, 13)) -> list[tuple[int, Fraction]]:
    return [(d, threshold(d)) for d in ds]


def render_rational(x: Fraction, digits: int = 4) -> str:
    """``p/q`` plus an advisory decimal (truncated, never fed back)."""
    scaled = x.numerator * 10 ** digits // x.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{x.numerator}/{x.denominator} (~{whole}.{frac:0{digits}d})"
