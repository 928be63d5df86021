"""Random min-degree-3 graphs under the acyclic-red adversary coloring.

For each graph prints n, e, |A0|, |A1|, |B|, the exact blue longest path and
the counting bound; summarises how often the blue path reaches n.
"""
import argparse
import math
import random
from fractions import Fraction

from pathramsey.graphs import SmallGraph, random_mindeg3
from pathramsey.lowerbound import adversary_coloring, threshold
from pathramsey.oracle import longest_path_exact


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--n-min", type=int, default=8)
    ap.add_argument("--n-max", type=int, default=20)
    ap.add_argument("--d", type=int, default=5)
    ap.add_argument("--slack", type=int, default=2, help="c in e <= floor((2+alpha)n) - c")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    alpha = threshold(args.d)
    rng = random.Random(args.seed)
    done = reached = tight = 0
    while done < args.count:
        n = rng.randint(args.n_min, args.n_max)
        e_max = math.floor((2 + alpha) * n) - args.slack
        e_min = -(-3 * n // 2)
        if e_max < e_min:
            continue
        e = rng.randint(e_min, e_max)
        g = random_mindeg3(n, e, rng.randrange(10 ** 9))
        col = adversary_coloring(g, args.d)
        lp = longest_path_exact(SmallGraph.from_edges(n, col.blue))
        cb = col.counting_bound(n)
        assert lp <= cb, "counting bound violated"
        reached += lp >= n
        tight += lp == cb
        done += 1
        if not args.quiet:
            print(f"n={n:<3} e={e:<3} A0={len(col.A0):<2} A1={len(col.A1):<2} B={len(col.B):<2} "
                  f"blue_longest={lp:<3} bound={Fraction(cb)}")
    print(f"{done} graphs, alpha={alpha}: blue path of order n in {reached}, bound attained in {tight}")


if __name__ == "__main__":
    main()
