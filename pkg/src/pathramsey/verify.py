"""Streaming replay checker for search transcripts.

Deliberately independent of the search engine: it only uses the coloring
substrate and the certificate checks, keeps an explicit stack of open
nodes, and re-derives every certificate from the reconstructed coloring.
Memory use is proportional to the tree depth, not the transcript size.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .certificates import (CertificateError, RedCycleCert, check_blue_path,
                           check_red_cycle, cert_from_json, format_fraction)
from .config import SearchConfig
from .core import Color, PowerPathGraph, UpColoring, decode_up, edge_color, encode_up

VALID = "VALID"
INVALID = "INVALID"
PARSE_ERROR = "PARSE_ERROR"


@dataclass
class VerificationReport:
    verdict: str
    reason: str = ""
    location: tuple[str, ...] = ()
    line: int = 0
    stats: dict = field(default_factory=dict)
    config: Optional[SearchConfig] = None

    @property
    def valid(self) -> bool:
        return self.verdict == VALID

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "location": list(self.location),
            "line": self.line,
            "stats": self.stats,
            "config": None if self.config is None else self.config.to_json(),
        }

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        if self.reason:
            lines.append(f"reason: {self.reason} (line {self.line})")
            lines.append("at: " + ("/".join(self.location) or "<root>"))
        for k, v in self.stats.items():
            lines.append(f"{k}: {v}")
        return "\n".join(lines)


class _Bad(Exception):
    def __init__(self, verdict, reason):
        super().__init__(reason)
        self.verdict = verdict
        self.reason = reason


class _Node:
    __slots__ = ("label", "expected", "seen", "leaf")

    def __init__(self, label, expected):
        self.label = label
        self.expected = expected
        self.seen = 0
        self.leaf = False

    def closed(self) -> bool:
        return self.leaf or (self.seen == len(self.expected) and self.seen > 0)


def verify(lines: Iterable[str], cfg: Optional[SearchConfig] = None) -> VerificationReport:
    """Check a transcript given as an iterable of lines (a file object works).

    If ``cfg`` is given the header must match it exactly; otherwise the
    header's config is trusted as the claim being checked.
    """
    stats = {"branches": 0, "red_leaves": 0, "blue_leaves": 0, "max_depth": 0,
             "max_blue_endpoint": 0}
    stack: list[_Node] = []
    lineno = 0
    header_cfg = None

    def location():
        return tuple(n.label for n in stack[1:])

    it = iter(lines)
    try:
        try:
            first = next(it)
        except StopIteration:
            raise _Bad(PARSE_ERROR, "empty transcript")
        lineno = 1
        header = _parse(first)
        if set(header) != {"config", "format_version"} or header["format_version"] != 1:
            raise _Bad(PARSE_ERROR, "bad header")
        try:
            header_cfg = SearchConfig.from_json(header["config"])
        except (ValueError, CertificateError) as e:
            raise _Bad(PARSE_ERROR, f"bad config: {e}")
        if cfg is not None and header_cfg != cfg:
            raise _Bad(INVALID, "transcript header does not match the requested config")
        c = header_cfg
        p = c.power
        graph = PowerPathGraph(c.n_vertices, p)
        full = [decode_up(x, p) for x in range(1 << p)]
        stack.append(_Node("", [s for s in full if c.start_pred(s)]))
        ups: list[int] = []
        finished = False

        for raw in it:
            lineno += 1
            if finished:
                raise _Bad(INVALID, "content after the root was closed")
            obj = _parse(raw)
            if not isinstance(obj, dict) or len(obj) != 1:
                raise _Bad(PARSE_ERROR, "each line must be a one-key object")
            (key, val), = obj.items()
            if key == "branch":
                if not isinstance(val, str) or len(val) != p or set(val) - {"R", "B"}:
                    raise _Bad(PARSE_ERROR, f"bad branch label {val!r}")
                top = stack[-1]
                if top.leaf:
                    raise _Bad(INVALID, "branch below a leaf")
                if top.seen >= len(top.expected) or top.expected[top.seen] != val:
                    raise _Bad(INVALID, f"child {val} out of canonical order or not allowed")
                top.seen += 1
                if len(ups) >= c.max_depth + 1:
                    raise _Bad(INVALID, "branch deeper than max_depth")
                ups.append(encode_up(val))
                stack.append(_Node(val, full))
                stats["branches"] += 1
                stats["max_depth"] = max(stats["max_depth"], len(ups) - 1)
            elif key == "leaf":
                top = stack[-1]
                if len(stack) == 1 or top.leaf or top.seen:
                    raise _Bad(INVALID, "leaf in a node that already has content")
                try:
                    cert = cert_from_json(val)
                except CertificateError as e:
                    raise _Bad(PARSE_ERROR, str(e))
                col = UpColoring(graph, tuple(ups))
                problem = _check_leaf(col, cert, c)
                if problem:
                    raise _Bad(INVALID, problem)
                if isinstance(cert, RedCycleCert):
                    stats["red_leaves"] += 1
                else:
                    stats["blue_leaves"] += 1
                    stats["max_blue_endpoint"] = max(stats["max_blue_endpoint"], cert.vertices[-1])
                top.leaf = True
            elif key == "pop":
                if type(val) is not int or val < 1:
                    raise _Bad(PARSE_ERROR, f"bad pop count {val!r}")
                for _ in range(val):
                    if len(stack) == 1:
                        raise _Bad(INVALID, "pop above the root")
                    top = stack[-1]
                    if not top.closed():
                        raise _Bad(INVALID, f"node closed with {top.seen}/{len(top.expected)} children"
                                   if top.seen else "node has neither children nor a leaf")
                    stack.pop()
                    ups.pop()
                if len(stack) == 1 and stack[0].closed():
                    finished = True
            elif key == "counterexample":
                raise _Bad(INVALID, "file holds a counterexample, not a proof")
            else:
                raise _Bad(PARSE_ERROR, f"unknown record {key!r}")

        if len(stack) != 1:
            raise _Bad(PARSE_ERROR, "truncated transcript: open nodes at end of input")
        if not stack[0].closed():
            raise _Bad(INVALID if stack[0].seen else PARSE_ERROR,
                       f"root covers {stack[0].seen}/{len(stack[0].expected)} start cases")
    except _Bad as bad:
        return VerificationReport(bad.verdict, bad.reason, location(), lineno, stats, header_cfg)
    return VerificationReport(VALID, "", (), lineno, stats, header_cfg)


def verify_file(path, cfg: Optional[SearchConfig] = None) -> VerificationReport:
    try:
        with open(path) as fh:
            return verify(fh, cfg)
    except UnicodeDecodeError:
        return VerificationReport(PARSE_ERROR, "not a text file")


def _parse(raw: str):
    if not raw.endswith("\n"):
        raise _Bad(PARSE_ERROR, "unterminated line")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        raise _Bad(PARSE_ERROR, f"malformed JSON: {e.msg}")


def _check_leaf(col: UpColoring, cert, c: SearchConfig) -> Optional[str]:
    try:
        if isinstance(cert, RedCycleCert):
            if not check_red_cycle(col, cert, c.cycle_cap):
                return f"red_cycle {list(cert.vertices)} is not a red cycle of length <= {c.cycle_cap}"
            return None
        vs = cert.vertices
        if not vs or max(vs) > c.max_depth:
            return "blue path endpoint beyond max_depth"
        if not check_blue_path(col, cert, c.end_pred):
            return f"blue_path {list(vs)} fails (color, adjacency, density or endpoint predicate)"
        if cert.density < c.target:
            return f"density {format_fraction(cert.density)} below target {format_fraction(c.target)}"
        return None
    except CertificateError as e:
        return str(e)


# ---------------------------------------------------------- counterexamples

def _red_cycle_brute(col: UpColoring, cap: int) -> Optional[list[int]]:
    """Enumerate simple cycles up to ``cap`` rooted at their smallest vertex."""
    n = col.graph.n_vertices

    def red(a, b):
        if not (0 <= b < n) or a == b or abs(a - b) > col.graph.power:
            return False
        return edge_color(col, a, b) is Color.RED

    for s in range(n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in range(v - col.graph.power, v + col.graph.power + 1):
                if w < s or not red(v, w):
                    continue
                if w == s and len(path) >= 3:
                    return path
                if w != s and w not in path and len(path) < cap:
                    stack.append((w, path + [w]))
    return None


def _blue_path_brute(col: UpColoring, j: int, need: int) -> Optional[list[int]]:
    """A blue path 0..j inside {0..j} with at least ``need`` vertices."""
    p = col.graph.power
    found = None

    def dfs(path, seen):
        nonlocal found
        v = path[-1]
        if v == j:
            if len(path) >= need:
                found = list(path)
            return
        if len(path) + (j + 1 - len(seen)) < need:
            return
        for w in range(max(0, v - p), min(j, v + p) + 1):
            if w not in seen and w != v and edge_color(col, v, w) is Color.BLUE:
                seen.add(w)
                path.append(w)
                dfs(path, seen)
                path.pop()
                seen.discard(w)
                if found:
                    return

    dfs([0], {0})
    return found


def check_counterexample(cfg: SearchConfig, col: UpColoring) -> Optional[str]:
    """``None`` if ``col`` refutes ``cfg``; otherwise what is wrong with it."""
    if col.frontier != cfg.max_depth:
        return f"counterexample must assign up(0..{cfg.max_depth})"
    if not cfg.start_pred(col.up(0)):
        return "up(0) violates the start predicate"
    cyc = _red_cycle_brute(col, cfg.cycle_cap)
    if cyc is not None:
        return f"contains red cycle {cyc}"
    for j in range(1, cfg.max_depth + 1):
        if not cfg.end_pred(col.up(j)):
            continue
        need = -(-cfg.target.numerator * j // cfg.target.denominator) + 1
        path = _blue_path_brute(col, j, need)
        if path is not None:
            return f"contains qualifying blue path {path} (density {Fraction(len(path) - 1, j)})"
    return None


def read_counterexample(path) -> tuple[SearchConfig, UpColoring]:
    with open(path) as fh:
        header = json.loads(fh.readline())
        body = json.loads(fh.readline())
    cfg = SearchConfig.from_json(header["config"])
    col = UpColoring.from_strings(PowerPathGraph(cfg.n_vertices, cfg.power), body["counterexample"])
    return cfg, col

