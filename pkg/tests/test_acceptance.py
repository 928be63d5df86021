"""Acceptance gate: one test per primary criterion, each recorded as a
PASS/FAIL line in the terminal summary."""
import itertools
import json
import math
import os
import random
import time
from fractions import Fraction

import pytest

from pathramsey.bounds import coefficient, lower_table, theorem_assemble
from pathramsey.config import HAS_BLUE, NOT_RRR_RRB, EndpointPredicate, SearchConfig
from pathramsey.graphs import SmallGraph, complete, path, random_connected, random_mindeg3
from pathramsey.lowerbound import adversary_coloring, f, gamma, greedy_forest, threshold
from pathramsey.oracle import arrow_check, lemma_leaves, lemma_oracle, longest_path_exact, replay_witness
from pathramsey.search import segment_search
from pathramsey.verify import verify, verify_file

from conftest import record
from invariants import decomposition_problems, is_forest
from mutations import changed_leaf_is_sound, mutants

JOBS = max(1, os.cpu_count() or 1)


def transcript_leaves(text):
    stack, leaves = [], []
    for line in text.splitlines()[1:]:
        obj = json.loads(line)
        if "branch" in obj:
            stack.append(obj["branch"])
        elif "leaf" in obj:
            leaves.append(tuple(stack))
        else:
            del stack[len(stack) - obj["pop"]:]
    return leaves


def test_density_4_7_segment(tmp_path):
    cfg = SearchConfig(5, Fraction(4, 7), HAS_BLUE, HAS_BLUE, 9)
    t0 = time.perf_counter()
    out = segment_search(cfg, out=tmp_path / "t.jsonl", jobs=1)
    elapsed = time.perf_counter() - t0
    rep = verify_file(tmp_path / "t.jsonl", cfg)
    k = rep.stats.get("max_depth", -1)
    ok = out.success and rep.valid and k <= 9 and elapsed < 10
    record("density 4/7 segment lemma", ok,
           f"{out.status}, verify {rep.verdict}, max leaf k={k} (<= 9), {elapsed:.2f}s (< 10s)")
    assert ok


def test_warmup_1_3():
    cfg = SearchConfig(5, Fraction(1, 3), EndpointPredicate.parse("not-rrr"),
                       EndpointPredicate.parse("not-rrr"), 6)
    out = segment_search(cfg)
    leaves = transcript_leaves(out.transcript)
    k = max(len(leaf) - 1 for leaf in leaves)
    oracle_ok, _ = lemma_oracle(cfg, 7)
    same = leaves == lemma_leaves(cfg, 7)
    coef = coefficient(cfg.target)
    ok = out.success and oracle_ok and k <= 4 and same and coef == 9
    record("warm-up density 1/3", ok,
           f"{out.status}, max k={k} (<= 4), oracle window 7 holds={oracle_ok}, "
           f"{len(leaves)} leaves identical to oracle={same}, coefficient {coef}")
    assert ok


def test_ladder_3_4_then_19_25(tmp_path):
    lines = []
    ok = True
    for target, reference_mb in ((Fraction(3, 4), 1.7), (Fraction(19, 25), 34.0)):
        cfg = SearchConfig(8, target, NOT_RRR_RRB, NOT_RRR_RRB, 39)
        path_ = tmp_path / f"ladder_{target.numerator}_{target.denominator}.jsonl"
        t0 = time.perf_counter()
        out = segment_search(cfg, out=path_, jobs=JOBS)
        t_search = time.perf_counter() - t0
        t0 = time.perf_counter()
        rep = verify_file(path_, cfg)
        t_verify = time.perf_counter() - t0
        mb = path_.stat().st_size / 1e6
        same_order = abs(math.log10(mb / reference_mb)) < 1
        k = rep.stats.get("max_depth", -1)
        step_ok = out.success and rep.valid and k <= 39 and same_order
        ok = ok and step_ok
        lines.append(f"{target}: {out.status} verify {rep.verdict} k={k} {mb:.1f}MB "
                     f"(reference {reference_mb}MB) search {t_search:.0f}s verify {t_verify:.0f}s")
        if not step_ok:
            break
    record("cycle cap 8 ladder", ok, "; ".join(lines))
    assert ok


def test_bound_arithmetic():
    checks = {
        "4/7 -> 21/4": coefficient(Fraction(4, 7)) == Fraction(21, 4),
        "19/25 -> 75/19": coefficient(Fraction(19, 25)) == Fraction(75, 19),
        "7/9 -> 27/7": coefficient(Fraction(7, 9)) == Fraction(27, 7),
        "gamma_5 = 43/608": gamma(5) == Fraction(43, 608),
        "f(a,0,5) = (651a+565)/608": all(f(a, 0, 5) == (651 * a + 565) / 608
                                         for a in (Fraction(0), Fraction(1, 7), Fraction(43, 651), Fraction(1))),
        "thresholds 4,5,6": [threshold(d) for d in (4, 5, 6)] == [Fraction(5, 109), Fraction(43, 651), Fraction(39, 709)],
        "max at d=5": max(lower_table(range(4, 60)), key=lambda r: r[1])[0] == 5,
    }
    ok = all(checks.values())
    record("exact bound arithmetic", ok, ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in checks.items()))
    assert ok


def test_forest_decomposition_suite():
    rng = random.Random(2024)
    failures, count = 0, 0
    while count < 500:
        n = rng.randint(2, 200)
        delta = rng.randint(2, 8)
        m = rng.randint(n - 1, min(n * delta // 2, n * (n - 1) // 2))
        g = random_connected(n, m, delta, rng.randrange(10 ** 9))
        dec = greedy_forest(g, delta)
        count += 1
        if decomposition_problems(g, dec.forest, dec.A0, dec.A1):
            failures += 1
    ok = failures == 0
    record("forest decomposition property suite", ok,
           f"{count} random connected graphs (n <= 200, max degree <= 8), {failures} failures")
    assert ok


def test_adversary_replay():
    alpha = Fraction(43, 651)
    c = 2
    rng = random.Random(7)
    count = failures = 0
    while count < 120:
        n = rng.randint(8, 20)
        e_max = math.floor((2 + alpha) * n) - c
        e_min = -(-3 * n // 2)
        if e_max < e_min:
            continue
        g = random_mindeg3(n, rng.randint(e_min, e_max), rng.randrange(10 ** 9))
        col = adversary_coloring(g, 5)
        blue_lp = longest_path_exact(SmallGraph.from_edges(g.n, col.blue))
        good = (is_forest(g.n, col.red) and blue_lp < n and blue_lp <= col.counting_bound(g.n)
                and col.red | col.blue == set(g.edges))
        failures += not good
        count += 1
    ok = failures == 0
    record("adversary coloring replay", ok,
           f"{count} min-degree-3 graphs, n <= 20, e <= floor((2+43/651)n)-{c}, {failures} failures")
    assert ok


def test_oracle_ground_truth():
    k4 = arrow_check(complete(4), None, 3).arrows
    p4 = arrow_check(path(4), None, 2)
    rng = random.Random(3)
    sparse_total = sparse_fail = 0
    for _ in range(40):
        n = rng.randint(3, 6)
        m = 2 * (n - 1) - 1
        g = random_connected(rng.randint(n, m + 1), m, 6, rng.randrange(10 ** 6))
        if len(g.edges) != m:
            continue
        res = arrow_check(g, None, n)
        sparse_total += 1
        sparse_fail += (not res.arrows) and replay_witness(g, None, n, res.witness)
    grid = list(itertools.product([3, 4, 5, 6], [Fraction(1, 3), Fraction(1, 2), Fraction(1)],
                                  [HAS_BLUE, NOT_RRR_RRB], [4, 5]))
    agree = 0
    for L, target, pred, depth in grid:
        cfg = SearchConfig(L, target, pred, pred, depth)
        out = segment_search(cfg)
        verdict, cex = lemma_oracle(cfg, depth + 1)
        agree += out.success == verdict and (verdict or out.counterexample.ups == cex.ups)
    ok = (k4 and not p4.arrows and sparse_total > 0 and sparse_fail == sparse_total
          and agree == len(grid) >= 20)
    record("oracle ground truth", ok,
           f"K4 arrows={k4}, P4 arrows={p4.arrows}, {sparse_fail}/{sparse_total} graphs with 2(n-1)-1 "
           f"edges fail to arrow, search/oracle agree on {agree}/{len(grid)} configs")
    assert ok


def test_verifier_robustness(transcript47):
    cfg = SearchConfig(5, Fraction(4, 7), HAS_BLUE, HAS_BLUE, 9)
    lines = transcript47.splitlines(keepends=True)
    total = rejected = equivalent = false_valid = 0
    for _, m in mutants(lines, 1000, seed=11):
        total += 1
        if not verify(m, cfg).valid:
            rejected += 1
        elif changed_leaf_is_sound(lines, m, cfg):
            # e.g. a red triangle swapped for another red triangle at the same node
            equivalent += 1
        else:
            false_valid += 1
    ok = total >= 1000 and false_valid == 0
    record("verifier robustness", ok,
           f"{total} single-token mutations: {rejected} rejected, {equivalent} accepted but "
           f"independently confirmed as equally valid proofs, {false_valid} false VALID")
    assert ok


def test_determinism_jobs(tmp_path):
    cfg = SearchConfig(5, Fraction(4, 7), HAS_BLUE, HAS_BLUE, 9)
    a, b = tmp_path / "j1.jsonl", tmp_path / "j8.jsonl"
    segment_search(cfg, out=a, jobs=1)
    segment_search(cfg, out=b, jobs=8)
    ok = a.read_bytes() == b.read_bytes()
    record("determinism across job counts", ok, f"--jobs 1 vs --jobs 8 byte-identical={ok}")
    assert ok
