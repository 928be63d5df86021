"""Run the segment lemmas end to end: search, verify, assemble the bound.

    python3 scripts/run_ladder.py --out runs/ --jobs 4
"""
import argparse
import os
import time
from fractions import Fraction

from pathramsey.bounds import render_rational, theorem_assemble
from pathramsey.config import HAS_BLUE, NOT_RRR_RRB, SearchConfig
from pathramsey.search import segment_search
from pathramsey.verify import verify_file

LADDER = {
    "warmup": SearchConfig(5, Fraction(1, 3), HAS_BLUE, HAS_BLUE, 6),
    "lemma47": SearchConfig(5, Fraction(4, 7), HAS_BLUE, HAS_BLUE, 9),
    "cap8_3_4": SearchConfig(8, Fraction(3, 4), NOT_RRR_RRB, NOT_RRR_RRB, 39),
    "cap8_19_25": SearchConfig(8, Fraction(19, 25), NOT_RRR_RRB, NOT_RRR_RRB, 39),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--only", nargs="*", choices=sorted(LADDER), default=None)
    ap.add_argument("--n", type=int, default=10 ** 6, help="path order for the assembled bound")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    print(f"{'run':<12} {'status':<8} {'nodes':>9} {'k':>3} {'MB':>7} {'search':>7} {'verify':>7}  bound")
    for name, cfg in LADDER.items():
        if args.only and name not in args.only:
            continue
        path = os.path.join(args.out, f"{name}.jsonl")
        t0 = time.perf_counter()
        out = segment_search(cfg, out=path, jobs=args.jobs)
        t_search = time.perf_counter() - t0
        t0 = time.perf_counter()
        rep = verify_file(path, cfg)
        t_verify = time.perf_counter() - t0
        bound = ""
        if rep.valid:
            b = theorem_assemble(cfg, rep, args.n)
            bound = f"{render_rational(b.coefficient)} n + {render_rational(b.additive_constant)}"
        mb = os.path.getsize(path) / 1e6
        print(f"{name:<12} {out.status:<8} {out.stats.nodes:>9} {out.stats.max_leaf_frontier:>3} "
              f"{mb:>7.2f} {t_search:>6.1f}s {t_verify:>6.1f}s  {rep.verdict} {bound}")


if __name__ == "__main__":
    main()
