"""Cross-check segment_search against the brute-force window oracle on a grid."""
import argparse
import itertools
from fractions import Fraction

from pathramsey.config import EndpointPredicate, SearchConfig
from pathramsey.oracle import lemma_oracle
from pathramsey.search import segment_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--caps", type=int, nargs="+", default=[3, 4, 5, 6])
    ap.add_argument("--targets", nargs="+", default=["1/4", "1/3", "1/2", "2/3", "1"])
    ap.add_argument("--preds", nargs="+", default=["has-blue", "not-rrr-rrb"])
    ap.add_argument("--depths", type=int, nargs="+", default=[3, 4, 5])
    args = ap.parse_args()

    bad = 0
    grid = itertools.product(args.caps, args.targets, args.preds, args.depths)
    for L, t, pred, depth in grid:
        p = EndpointPredicate.parse(pred)
        cfg = SearchConfig(L, Fraction(t), p, p, depth)
        out = segment_search(cfg)
        ok, cex = lemma_oracle(cfg, depth + 1)
        agree = out.success == ok and (ok or out.counterexample.ups == cex.ups)
        bad += not agree
        print(f"L={L} target={t:<4} pred={pred:<12} depth={depth} search={out.status:<7} "
              f"oracle={'holds' if ok else 'fails'} {'ok' if agree else 'MISMATCH'}")
    print("all agree" if not bad else f"{bad} mismatches")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
