"""Exhaustive segment search over up-string colorings.

The engine walks the tree of up-string assignments ``up(0), up(1), ...``
depth first. A branch is closed as soon as the determined edges contain a
red cycle of length at most ``L`` or a blue path ``0 .. k`` (inside
``{0..k}``) of density at least the target whose endpoint satisfies the
end predicate. A node at ``max_depth`` that closes neither way is a
counterexample.

The transcript is written as JSON lines in depth-first preorder. The tree is
split at ``split_depth``: nodes at that depth are independent work units,
searched sequentially or in a process pool, and spliced back in canonical
order, so output is byte-identical for any number of workers.
"""
from __future__ import annotations

import io
import json
import logging
import multiprocessing
import os
import shutil
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import bluepath
from .certificates import BluePathCert, RedCycleCert, format_fraction
from .config import SearchConfig
from .core import PowerPathGraph, UpColoring, decode_up

log = logging.getLogger(__name__)

FORMAT_VERSION = 1


class SearchBudgetExceeded(RuntimeError):
    """The node or time budget ran out; the search is inconclusive."""


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def header_line(cfg: SearchConfig) -> str:
    return dumps({"config": cfg.to_json(), "format_version": FORMAT_VERSION})


# ------------------------------------------------------------- red cycles

def short_red_path(red: list[int], src: int, dst: int, max_edges: int) -> Optional[list[int]]:
    """Shortest path ``src .. dst`` in the red graph with at most ``max_edges`` edges.

    ``red[v]`` is a bitmask of red neighbors. Neighbors are scanned in
    ascending order, so the answer is deterministic.
    """
    if src == dst:
        return [src]
    parent = {src: -1}
    layer = [src]
    for _ in range(max_edges):
        nxt = []
        for x in layer:
            m = red[x]
            while m:
                low = m & -m
                y = low.bit_length() - 1
                m ^= low
                if y in parent:
                    continue
                parent[y] = x
                if y == dst:
                    path = [y]
                    while parent[path[-1]] != -1:
                        path.append(parent[path[-1]])
                    return path[::-1]
                nxt.append(y)
        if not nxt:
            break
        layer = nxt
    return None


def find_red_cycle(c: UpColoring, cap: int) -> Optional[RedCycleCert]:
    """A red cycle of length <= ``cap`` among the determined edges, if any.

    Edges are inserted in canonical order; the first insertion that closes
    a short cycle yields it.
    """
    red = [0] * c.graph.n_vertices
    for u in range(c.frontier + 1):
        ln = c.graph.up_length(u)
        for d in range(1, ln + 1):
            if (c.ups[u] >> (ln - d)) & 1:
                v = u + d
                path = short_red_path(red, u, v, cap - 1)
                if path is not None:
                    return RedCycleCert(tuple(path))
                red[u] |= 1 << v
                red[v] |= 1 << u
    return None


# ------------------------------------------------------- closing certificates

def _qualifies(count: int, k: int, cfg: SearchConfig) -> bool:
    return (count - 1) * cfg.target.denominator >= cfg.target.numerator * k


def find_closing_certificate(c: UpColoring, cfg: SearchConfig):
    """Red cycle first; else the qualifying blue path with the largest endpoint."""
    cyc = find_red_cycle(c, cfg.cycle_cap)
    if cyc is not None:
        return cyc
    p = c.graph.power
    kmax = min(c.frontier, cfg.max_depth)
    if kmax < 1:
        return None

    def is_blue(u, d):
        ln = c.graph.up_length(u)
        return not (c.ups[u] >> (ln - d)) & 1

    best = bluepath.best_paths(is_blue, kmax, p)
    for j in range(kmax, 0, -1):
        r = best[j]
        if r is None or not _qualifies(r[0], j, cfg) or not cfg.end_pred(c.up(j)):
            continue
        return BluePathCert.of(bluepath.mask_to_path(r[1], p))
    return None


# ----------------------------------------------------------------- outcome

@dataclass
class SearchStats:
    nodes: int = 0
    red_leaves: int = 0
    blue_leaves: int = 0
    max_leaf_frontier: int = -1
    max_blue_endpoint: int = 0
    units: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.red_leaves += other.red_leaves
        self.blue_leaves += other.blue_leaves
        self.max_leaf_frontier = max(self.max_leaf_frontier, other.max_leaf_frontier)
        self.max_blue_endpoint = max(self.max_blue_endpoint, other.max_blue_endpoint)

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SearchOutcome:
    status: str  # "SUCCESS" or "FAILURE"
    config: SearchConfig
    stats: SearchStats = field(default_factory=SearchStats)
    transcript: Optional[str] = None
    transcript_path: Optional[str] = None
    counterexample: Optional[UpColoring] = None

    @property
    def success(self) -> bool:
        return self.status == "SUCCESS"


# ---------------------------------------------------------------- explorer

class _Frame:
    __slots__ = ("k", "children", "best", "cursor")

    def __init__(self, k, children, best, cursor=0):
        self.k = k
        self.children = children
        self.best = best
        self.cursor = cursor


class _Unit:
    __slots__ = ("index", "prefix")

    def __init__(self, index, prefix):
        self.index = index
        self.prefix = prefix


class _Failure(Exception):
    def __init__(self, ups):
        super().__init__("counterexample")
        self.ups = tuple(ups)


class _Explorer:
    """Mutable depth-first state; one instance per worker."""

    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.p = cfg.power
        self.n = cfg.n_vertices
        self.ups: list[int] = []
        self.added: list[tuple[int, ...]] = []
        self.red = [0] * self.n
        self.tables: list = []
        self.all_codes = tuple(range(1 << self.p))
        self.start_codes = tuple(cfg.start_pred.codes(self.p))
        self.end_ok = tuple(cfg.end_pred.holds_code(c, self.p) for c in self.all_codes)

    # -- coloring state
    def push_up(self, s: int) -> Optional[list[int]]:
        """Assign the next up-string; on a short red cycle return it and roll back."""
        v = len(self.ups)
        p, red, cap = self.p, self.red, self.cfg.cycle_cap
        added = []
        for d in range(1, p + 1):
            if (s >> (p - d)) & 1:
                w = v + d
                path = short_red_path(red, v, w, cap - 1)
                if path is not None:
                    for x in added:
                        red[v] &= ~(1 << x)
                        red[x] &= ~(1 << v)
                    return path
                red[v] |= 1 << w
                red[w] |= 1 << v
                added.append(w)
        self.ups.append(s)
        self.added.append(tuple(added))
        return None

    def pop_up(self) -> None:
        v = len(self.ups) - 1
        for w in self.added.pop():
            self.red[v] &= ~(1 << w)
            self.red[w] &= ~(1 << v)
        self.ups.pop()

    def _blue(self, v: int) -> tuple[bool, ...]:
        ups, p = self.ups, self.p
        return tuple(v - d >= 0 and not (ups[v - d] >> (p - d)) & 1 for d in range(1, p + 1))

    def open_frame(self, k: int, children) -> _Frame:
        """Frame for the node whose frontier is ``k`` (``ups`` has ``k+1`` entries)."""
        if k < 0:
            return _Frame(k, children, None)
        if k == 0:
            table = bluepath.initial_table()
        else:
            table = bluepath.step(self.tables[-1], k, self._blue(k), self.p)
        self.tables.append(table)
        best = bluepath.finish(table, k + 1, self._blue(k + 1), self.p)
        return _Frame(k, children, best)

    def close_frame(self, f: _Frame) -> None:
        if f.k >= 0:
            self.tables.pop()

    def enter_prefix(self, prefix) -> list[_Frame]:
        """Replay a node prefix and return the single frame for that node."""
        assert not self.ups
        for i, s in enumerate(prefix):
            if i > 0:
                self.open_frame(i - 1, ())  # ancestor tables feed the step recurrence
            if self.push_up(s) is not None:
                raise ValueError("prefix contains a short red cycle")
        root_children = self.all_codes if prefix else self.start_codes
        return [self.open_frame(len(prefix) - 1, root_children)]

    # -- depth first search
    def dfs(self, frames: list[_Frame], out, stats: SearchStats, split_depth: Optional[int] = None,
            tokens: Optional[list] = None, pending: int = 0, max_nodes: Optional[int] = None,
            deadline: Optional[float] = None, checkpoint=None):
        """Run until ``frames`` is exhausted; returns trailing pops.

        With ``tokens`` set (coordinator mode) single tokens are appended and
        nodes at ``split_depth`` become work units instead of being explored.
        """
        cfg, p = self.cfg, self.p
        tq, tp = cfg.target.denominator, cfg.target.numerator
        max_depth = cfg.max_depth
        write = out.write if out is not None else None
        since_ckpt = 0

        def emit(obj):
            nonlocal pending
            if tokens is not None:
                tokens.append(obj)
                return
            if pending:
                write(dumps({"pop": pending}) + "\n")
                pending = 0
            write(dumps(obj) + "\n")

        def popped(m=1):
            nonlocal pending
            if tokens is not None:
                for _ in range(m):
                    tokens.append({"pop": 1})
            else:
                pending += m

        while frames:
            if checkpoint is not None and since_ckpt >= checkpoint.every:
                checkpoint.save(frames, pending, stats)
                since_ckpt = 0
            f = frames[-1]
            if f.cursor == len(f.children):
                frames.pop()
                self.close_frame(f)
                if frames:
                    self.pop_up()
                    popped()
                continue
            # budget checks come before any output so a saved checkpoint is consistent
            reason = None
            if max_nodes is not None and stats.nodes >= max_nodes:
                reason = f"node budget {max_nodes} exhausted"
            elif deadline is not None and (stats.nodes & 1023) == 0 and time.monotonic() > deadline:
                reason = "time budget exhausted"
            if reason is not None:
                if checkpoint is not None:
                    checkpoint.save(frames, pending, stats)
                raise SearchBudgetExceeded(reason)
            s = f.children[f.cursor]
            f.cursor += 1
            j = f.k + 1
            emit({"branch": decode_up(s, p)})
            stats.nodes += 1
            since_ckpt += 1
            cyc = self.push_up(s)
            if cyc is not None:
                emit({"leaf": {"red_cycle": cyc}})
                stats.red_leaves += 1
                stats.max_leaf_frontier = max(stats.max_leaf_frontier, j)
                popped()
                continue
            best = f.best
            if j >= 1 and best is not None and self.end_ok[s] and (best[0] - 1) * tq >= tp * j:
                path = bluepath.mask_to_path(best[1], p)
                emit({"leaf": {"blue_path": path,
                               "density": format_fraction(Fraction(len(path) - 1, j))}})
                stats.blue_leaves += 1
                stats.max_leaf_frontier = max(stats.max_leaf_frontier, j)
                stats.max_blue_endpoint = max(stats.max_blue_endpoint, j)
                self.pop_up()
                popped()
                continue
            if j >= max_depth:
                raise _Failure(self.ups)
            if tokens is not None and split_depth is not None and j + 1 >= split_depth:
                tokens.append(_Unit(stats.units, tuple(self.ups)))
                stats.units += 1
                self.pop_up()
                popped()
                continue
            frames.append(self.open_frame(j, self.all_codes))
        return pending


# ------------------------------------------------------------ checkpoints

class _UnitCheckpoint:
    """Periodic snapshot of one unit's branch stack next to its partial output."""

    def __init__(self, path: str, out, every: int):
        self.path = path
        self.out = out
        self.every = every

    def save(self, frames, pending, stats) -> None:
        self.out.flush()
        state = {
            "cursors": [f.cursor for f in frames],
            "pending": pending,
            "offset": self.out.tell(),
            "stats": stats.to_json(),
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(state, fh)
        os.replace(tmp, self.path)


def _rebuild(ex: _Explorer, prefix, cursors) -> list[_Frame]:
    frames = ex.enter_prefix(prefix)
    frames[0].cursor = cursors[0]
    for depth in range(1, len(cursors)):
        parent = frames[-1]
        s = parent.children[parent.cursor - 1]
        if ex.push_up(s) is not None:
            raise ValueError("corrupt checkpoint: replay hits a red cycle")
        fr = ex.open_frame(parent.k + 1, ex.all_codes)
        fr.cursor = cursors[depth]
        frames.append(fr)
    return frames


def _run_unit(args):
    """Search one work unit into ``<workdir>/unit_NNNNN.part``; picklable entry point."""
    cfg_json, index, prefix, workdir, max_nodes, deadline, ckpt_every = args
    cfg = SearchConfig.from_json(cfg_json)
    stem = os.path.join(workdir, f"unit_{index:05d}")
    done_path = stem + ".json"
    if os.path.exists(done_path):
        with open(done_path) as fh:
            rec = json.load(fh)
        return index, rec["pending"], SearchStats(**rec["stats"]), None
    ex = _Explorer(cfg)
    stats = SearchStats()
    pending = 0
    ckpt_path = stem + ".ckpt"
    partial = stem + ".partial"
    if os.path.exists(ckpt_path) and os.path.exists(partial):
        with open(ckpt_path) as fh:
            state = json.load(fh)
        frames = _rebuild(ex, prefix, state["cursors"])
        pending = state["pending"]
        stats = SearchStats(**state["stats"])
        out = open(partial, "r+")
        out.truncate(state["offset"])
        out.seek(state["offset"])
        log.info("unit %d resumed at node %d", index, stats.nodes)
    else:
        frames = ex.enter_prefix(prefix)
        out = open(partial, "w")
    ckpt = _UnitCheckpoint(ckpt_path, out, ckpt_every) if ckpt_every else None
    try:
        pending = ex.dfs(frames, out, stats, pending=pending, max_nodes=max_nodes,
                         deadline=deadline, checkpoint=ckpt)
    except _Failure as fail:
        out.close()
        return index, 0, stats, fail.ups
    except SearchBudgetExceeded:
        out.close()
        raise
    out.close()
    os.replace(partial, stem + ".part")
    with open(done_path + ".tmp", "w") as fh:
        json.dump({"pending": pending, "stats": stats.to_json()}, fh)
    os.replace(done_path + ".tmp", done_path)
    if os.path.exists(ckpt_path):
        os.remove(ckpt_path)
    return index, pending, stats, None


# -------------------------------------------------------------- top level

def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PATHRAMSEY_JOBS", "1")))
    except ValueError:
        return 1


def segment_search(cfg: SearchConfig, out: Union[str, os.PathLike, None] = None, jobs: int = 1,
                   checkpoint_dir: Optional[str] = None, resume: bool = False,
                   max_nodes: Optional[int] = None, time_budget: Optional[float] = None,
                   split_depth: int = 2, checkpoint_every: int = 200_000) -> SearchOutcome:
    """Prove or refute the segment statement described by ``cfg``.

    On SUCCESS the transcript is written to ``out`` (or kept in memory as
    ``outcome.transcript`` when ``out`` is None). On FAILURE ``out`` holds the
    header and a single counterexample line. Raises
    :class:`SearchBudgetExceeded` when ``max_nodes``/``time_budget`` run out.
    """
    deadline = None if time_budget is None else time.monotonic() + time_budget
    ex = _Explorer(cfg)
    stats = SearchStats()
    tokens: list = []
    frames = ex.enter_prefix(())
    try:
        ex.dfs(frames, None, stats, split_depth=split_depth, tokens=tokens,
               max_nodes=max_nodes, deadline=deadline)
    except _Failure as fail:
        return _failure(cfg, fail.ups, stats, out)

    units = [t for t in tokens if isinstance(t, _Unit)]
    own_tmp = checkpoint_dir is None
    workdir = tempfile.mkdtemp(prefix="pathramsey-") if own_tmp else str(checkpoint_dir)
    if not own_tmp:
        if os.path.isdir(workdir) and not resume:
            for name in os.listdir(workdir):
                if name.startswith("unit_"):
                    os.remove(os.path.join(workdir, name))
        os.makedirs(workdir, exist_ok=True)
        with open(os.path.join(workdir, "config.json"), "w") as fh:
            json.dump(cfg.to_json(), fh)
    try:
        args = [(cfg.to_json(), u.index, u.prefix, workdir, max_nodes, deadline,
                 checkpoint_every if not own_tmp else 0) for u in units]
        results = {}
        failure = None
        if jobs > 1 and len(args) > 1:
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(jobs) as pool:
                for index, pend, st, fail_ups in pool.imap(_run_unit, args, chunksize=1):
                    if fail_ups is not None:
                        failure = fail_ups
                        pool.terminate()
                        break
                    results[index] = (pend, st)
        else:
            for a in args:
                index, pend, st, fail_ups = _run_unit(a)
                if fail_ups is not None:
                    failure = fail_ups
                    break
                results[index] = (pend, st)
        if failure is not None:
            for st in (r[1] for r in results.values()):
                stats.merge(st)
            return _failure(cfg, failure, stats, out)
        for index in sorted(results):
            stats.merge(results[index][1])
        if max_nodes is not None and stats.nodes > max_nodes:
            raise SearchBudgetExceeded(f"node budget {max_nodes} exhausted")

        sink = io.StringIO() if out is None else open(out, "w")
        try:
            sink.write(header_line(cfg) + "\n")
            pending = 0
            for t in tokens:
                if isinstance(t, _Unit):
                    if pending:
                        sink.write(dumps({"pop": pending}) + "\n")
                        pending = 0
                    with open(os.path.join(workdir, f"unit_{t.index:05d}.part")) as fh:
                        shutil.copyfileobj(fh, sink)
                    pending += results[t.index][0]
                elif "pop" in t:
                    pending += 1
                else:
                    if pending:
                        sink.write(dumps({"pop": pending}) + "\n")
                        pending = 0
                    sink.write(dumps(t) + "\n")
            if pending:
                sink.write(dumps({"pop": pending}) + "\n")
            text = sink.getvalue() if out is None else None
        finally:
            if out is not None:
                sink.close()
    finally:
        if own_tmp:
            shutil.rmtree(workdir, ignore_errors=True)
    return SearchOutcome("SUCCESS", cfg, stats, transcript=text,
                         transcript_path=None if out is None else str(out))


def _failure(cfg: SearchConfig, ups, stats: SearchStats, out) -> SearchOutcome:
    from .verify import check_counterexample

    graph = PowerPathGraph(cfg.n_vertices, cfg.power)
    cex = UpColoring(graph, tuple(ups))
    problem = check_counterexample(cfg, cex)
    if problem is not None:
        raise AssertionError(f"engine produced a bogus counterexample: {problem}")
    text = header_line(cfg) + "\n" + dumps({"counterexample": cex.up_strings()}) + "\n"
    if out is not None:
        with open(out, "w") as fh:
            fh.write(text)
    return SearchOutcome("FAILURE", cfg, stats, transcript=text if out is None else None,
                         transcript_path=None if out is None else str(out), counterexample=cex)
