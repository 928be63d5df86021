"""Command-line front end: ``pathramsey <subcommand> ...``.

Exit codes: 0 success, 2 usage error, 3 transcript parse error, 1 invalid
transcript, 10 refutation found, 20 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from importlib import metadata

from . import bounds, lowerbound, oracle, verify
from .certificates import format_fraction
from .config import EndpointPredicate, SearchConfig
from .graphs import generate, load_graph
from .search import SearchBudgetExceeded, default_jobs, segment_search

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_FAILURE = 10
EXIT_BUDGET = 20

log = logging.getLogger("pathramsey")


def version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0+unknown"


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    """``p/q`` or an integer; floats are rejected on purpose."""
    if not re.fullmatch(r"\s*\d+\s*(/\s*\d+\s*)?", text):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}") from None


def predicate(text: str) -> EndpointPredicate:
    try:
        return EndpointPredicate.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def cycle_cap(text: str):
    if text.lower() in ("inf", "none", "all"):
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cycle cap must be an integer or 'inf': {text!r}") from None


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(args.cycle_cap, args.target, args.start_pred, args.end_pred,
                            args.max_depth, args.power)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _graph(spec: str):
    try:
        return load_graph(spec)
    except (ValueError, OSError) as e:
        raise UsageError(f"cannot load graph {spec!r}: {e}") from None


def _write_json(path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ------------------------------------------------------------ subcommands

def cmd_search(args, run: dict) -> int:
    cfg = _config(args)
    run["config"] = cfg.to_json()
    jobs = args.jobs if args.jobs is not None else default_jobs()
    # with the transcript on stdout, status lines go to stderr
    say = sys.stdout if args.out else sys.stderr
    try:
        outcome = segment_search(cfg, out=args.out, jobs=jobs, checkpoint_dir=args.checkpoint,
                                 resume=args.resume, max_nodes=args.max_nodes,
                                 time_budget=args.time_budget)
    except SearchBudgetExceeded as e:
        print(f"BUDGET EXHAUSTED: {e}", file=say)
        run["outcome"] = {"status": "BUDGET_EXHAUSTED", "reason": str(e)}
        return EXIT_BUDGET
    st = outcome.stats
    run["outcome"] = {"status": outcome.status, "stats": st.to_json()}
    if args.out:
        run["artifacts"].append(str(args.out))
    if outcome.success:
        print(f"SUCCESS: every coloring closes by depth {st.max_leaf_frontier} "
              f"({st.nodes} nodes, {st.red_leaves} red / {st.blue_leaves} blue leaves)", file=say)
        if not args.out:
            sys.stdout.write(outcome.transcript)
        return EXIT_OK
    cex = ",".join(outcome.counterexample.up_strings())
    run["outcome"]["counterexample"] = cex
    print(f"FAILURE: counterexample up-strings {cex}", file=say)
    if not args.out:
        sys.stdout.write(outcome.transcript)
    return EXIT_FAILURE


def cmd_verify(args, run: dict) -> int:
    run["artifacts"].append(str(args.transcript))
    if args.counterexample:
        try:
            cfg, col = verify.read_counterexample(args.transcript)
        except (OSError, ValueError, KeyError, json.JSONDecodeError) as e:
            print(f"PARSE_ERROR: {e}")
            run["outcome"] = {"verdict": verify.PARSE_ERROR}
            return EXIT_PARSE
        problem = verify.check_counterexample(cfg, col)
        run["config"] = cfg.to_json()
        run["outcome"] = {"verdict": "REFUTES" if problem is None else verify.INVALID,
                          "reason": problem or ""}
        print("counterexample confirmed" if problem is None else f"INVALID: {problem}")
        return EXIT_OK if problem is None else EXIT_INVALID
    try:
        report = verify.verify_file(args.transcript)
    except OSError as e:
        raise UsageError(f"cannot read {args.transcript}: {e}") from None
    run["config"] = None if report.config is None else report.config.to_json()
    run["outcome"] = report.to_json()
    print(json.dumps(report.to_json(), sort_keys=True) if args.json else report.render())
    if report.valid:
        return EXIT_OK
    return EXIT_PARSE if report.verdict == verify.PARSE_ERROR else EXIT_INVALID


def cmd_bounds(args, run: dict) -> int:
    r = bounds.render_rational
    print("segment density -> edge coefficient")
    for d, coef in bounds.density_table(args.power):
        print(f"  {format_fraction(d):>6} -> {r(coef)}")
    print("lower bound: d -> threshold alpha, size Ramsey constant 2 + alpha")
    rows = bounds.lower_table(range(4, args.d_max + 1))
    best = max(rows, key=lambda row: row[1])
    for d, t in rows:
        mark = "  <- max" if d == best[0] else ""
        print(f"  d={d:<3} {r(t):<22} 2 + alpha = {r(2 + t)}{mark}")
    out = {
        "densities": [[format_fraction(d), format_fraction(c)] for d, c in bounds.density_table(args.power)],
        "thresholds": [[d, format_fraction(t)] for d, t in rows],
        "best_d": best[0],
    }
    if args.transcript:
        if args.n is None:
            raise UsageError("--transcript needs --n")
        report = verify.verify_file(args.transcript)
        if not report.valid:
            print(f"transcript does not verify: {report.verdict} {report.reason}")
            run["outcome"] = {"assembled": False, "verdict": report.verdict}
            return EXIT_PARSE if report.verdict == verify.PARSE_ERROR else EXIT_INVALID
        b = bounds.theorem_assemble(report.config, report, args.n)
        run["config"] = report.config.to_json()
        run["artifacts"].append(str(args.transcript))
        out["theorem"] = b.to_json()
        print(f"P_n forced in P_N^{b.power} for N = {b.min_vertices} "
              f"({b.edges} edges); asymptotically {r(b.coefficient)} n + {r(b.additive_constant)}")
        print(f"  {b.note}")
    run["outcome"] = out
    if args.out:
        _write_json(args.out, out)
        run["artifacts"].append(str(args.out))
    return EXIT_OK


def cmd_oracle(args, run: dict) -> int:
    if args.what == "lemma":
        cfg = _config(args)
        run["config"] = cfg.to_json()
        window = args.window if args.window is not None else cfg.max_depth + 1
        try:
            ok, cex = oracle.lemma_oracle(cfg, window, prune=not args.no_prune)
        except oracle.OracleLimitError as e:
            raise UsageError(str(e)) from None
        run["outcome"] = {"holds": ok, "window": window,
                          "counterexample": None if cex is None else cex.up_strings()}
        print(f"holds={str(ok).lower()} window={window}"
              + ("" if cex is None else f" counterexample={','.join(cex.up_strings())}"))
        return EXIT_OK if ok else EXIT_FAILURE
    g = _graph(args.graph)
    run["config"] = {"graph": args.graph}
    try:
        if args.what == "longest":
            n = oracle.longest_path_exact(g)
            run["outcome"] = {"longest_path_order": n}
            print(f"longest path order: {n}")
            return EXIT_OK
        res = oracle.arrow_check(g, args.cycle_cap, args.n, edge_cap=args.edge_cap)
    except (oracle.OracleLimitError, TimeoutError) as e:
        raise UsageError(str(e)) from None
    out = {"arrows": res.arrows, "red_sets_checked": res.red_sets_checked,
           "witness": None if res.witness is None else sorted(map(list, res.witness))}
    run["config"].update(n=args.n, cycle_cap=args.cycle_cap)
    run["outcome"] = out
    print(f"arrows={str(res.arrows).lower()} ({res.red_sets_checked} maximal red sets)")
    if res.witness is not None:
        print("witness red edges: " + " ".join(f"{u}-{v}" for u, v in sorted(res.witness)))
    if args.out:
        _write_json(args.out, out)
        run["artifacts"].append(str(args.out))
    return EXIT_OK


def cmd_lowerbound(args, run: dict) -> int:
    g = _graph(args.graph)
    run["config"] = {"graph": args.graph, "d": args.d}
    try:
        if args.what == "decompose":
            dec = lowerbound.greedy_forest(g, args.delta)
            out = {"forest": sorted(map(list, dec.forest)), "A0": sorted(dec.A0),
                   "A1": sorted(dec.A1), "X": sorted(dec.X), "Y": sorted(dec.Y),
                   "weight": format_fraction(Fraction(dec.weight))}
            print(f"|A0|={len(dec.A0)} |A1|={len(dec.A1)} weight={out['weight']} "
                  f"forest edges={len(dec.forest)}")
        else:
            col = lowerbound.adversary_coloring(g, args.d)
            out = col.to_json()
            cb = col.counting_bound(g.n)
            out["counting_bound"] = format_fraction(Fraction(cb))
            print(f"red={len(col.red)} blue={len(col.blue)} |A0|={len(col.A0)} |A1|={len(col.A1)} "
                  f"|B|={len(col.B)} blue path order <= {out['counting_bound']}")
    except ValueError as e:
        raise UsageError(str(e)) from None
    run["outcome"] = {k: v for k, v in out.items() if k in ("weight", "counting_bound")}
    if args.out:
        _write_json(args.out, out)
        run["artifacts"].append(str(args.out))
    return EXIT_OK


def cmd_gen(args, run: dict) -> int:
    try:
        g = generate(args.spec)
    except ValueError as e:
        raise UsageError(str(e)) from None
    run["config"] = {"spec": args.spec}
    run["outcome"] = {"vertices": g.n, "edges": len(g.edges)}
    text = g.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        run["artifacts"].append(str(args.out))
        print(f"{g.n} vertices, {len(g.edges)} edges -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_rerun(args, run: dict) -> int:
    try:
        with open(args.manifest) as fh:
            prior = json.load(fh)
        argv = prior["argv"]
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"bad manifest {args.manifest}: {e}") from None
    if argv and argv[0] == "rerun":
        raise UsageError("manifest records a rerun; point at the original manifest")
    run["skip_manifest"] = True
    return main(argv)


# ----------------------------------------------------------------- parser

def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cycle-cap", type=int, required=True, help="forbid red cycles of length <= L")
    p.add_argument("--target", type=rational, required=True, help="density p/q")
    p.add_argument("--start-pred", type=predicate, default=EndpointPredicate("has-blue"),
                   help="has-blue | not-rrr | not-rrr-rrb | set:S1,S2,...")
    p.add_argument("--end-pred", type=predicate, default=EndpointPredicate("has-blue"))
    p.add_argument("--max-depth", type=int, default=9)
    p.add_argument("--power", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=version())
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(func=fn)
        p.add_argument("--manifest", help="where to write the run manifest "
                       "(default: <out>.manifest.json when --out is given)")
        return p

    p = add("search", cmd_search, help="exhaustive segment search with proof transcript")
    _search_flags(p)
    p.add_argument("--out", help="transcript path (stdout if omitted)")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (env PATHRAMSEY_JOBS)")
    p.add_argument("--checkpoint", help="checkpoint directory")
    p.add_argument("--resume", action="store_true", help="resume from --checkpoint")
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")

    p = add("verify", cmd_verify, help="replay-check a transcript")
    p.add_argument("--transcript", required=True)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--counterexample", action="store_true",
                   help="the file holds a counterexample; confirm it refutes its config")

    p = add("bounds", cmd_bounds, help="exact coefficient and threshold tables")
    p.add_argument("--power", type=int, default=3)
    p.add_argument("--d-max", type=int, default=12)
    p.add_argument("--transcript", help="assemble a bound from this verified transcript")
    p.add_argument("--n", type=int, help="path order for --transcript")
    p.add_argument("--out")

    p = add("oracle", cmd_oracle, help="brute-force ground truth")
    osub = p.add_subparsers(dest="what", required=True)
    for name in ("arrow", "longest"):
        q = osub.add_parser(name)
        q.add_argument("--graph", required=True, help="generator spec or edge-list file")
        q.add_argument("--out")
        if name == "arrow":
            q.add_argument("--n", type=int, required=True)
            q.add_argument("--cycle-cap", type=cycle_cap, default=None,
                           help="forbid red cycles of length <= L (default: all cycles)")
            q.add_argument("--edge-cap", type=int, default=30)
    q = osub.add_parser("lemma")
    _search_flags(q)
    q.add_argument("--window", type=int, default=None, help="default max_depth + 1")
    q.add_argument("--no-prune", action="store_true")

    p = add("lowerbound", cmd_lowerbound, help="forest decomposition and adversary coloring")
    lsub = p.add_subparsers(dest="what", required=True)
    for name in ("color", "decompose"):
        q = lsub.add_parser(name)
        q.add_argument("--graph", required=True)
        q.add_argument("--d", type=int, default=5)
        q.add_argument("--delta", type=int, default=None)
        q.add_argument("--out")

    p = add("gen", cmd_gen, help="write a named or random graph as an edge list")
    p.add_argument("spec")
    p.add_argument("--out")

    add("rerun", cmd_rerun, help="repeat the run recorded in a manifest (pass it as --manifest)")
    return parser


def _manifest_path(args):
    if getattr(args, "manifest", None) and args.command != "rerun":
        return args.manifest
    out = getattr(args, "out", None)
    return f"{out}.manifest.json" if out else None


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    run = {"subcommand": args.command, "argv": argv, "config": None, "outcome": None,
           "artifacts": [], "version": version(),
           "started": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    t0 = time.monotonic()
    try:
        code = args.func(args, run)
    except UsageError as e:
        print(f"pathramsey: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if run.pop("skip_manifest", False):
        return code
    run["finished"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    run["elapsed_seconds"] = round(time.monotonic() - t0, 3)
    run["exit_code"] = code
    path = _manifest_path(args)
    if path:
        _write_json(path, run)
    return code


if __name__ == "__main__":
    sys.exit(main())
