import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from pathramsey.config import HAS_BLUE, SearchConfig
from pathramsey.graphs import SmallGraph, complete, cycle, path, path_power, random_connected, star
from pathramsey.oracle import (OracleLimitError, arrow_check, lemma_oracle, longest_path_exact,
                               maximal_red_sets, replay_witness)


def nx_longest(g):
    """Longest path order by brute force over all simple paths."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    best = 1 if g.n else 0
    for s, t in itertools.combinations(range(g.n), 2):
        for p in nx.all_simple_paths(G, s, t):
            best = max(best, len(p))
    return best


def test_longest_known():
    assert longest_path_exact(path_power(5, 3)) == 5
    assert longest_path_exact(complete(4)) == 4
    assert longest_path_exact(star(5)) == 3
    assert longest_path_exact(SmallGraph.from_edges(4, [])) == 1
    assert longest_path_exact(SmallGraph(0, frozenset())) == 0


def test_longest_matches_networkx():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 9)
        g = random_connected(n, rng.randint(n - 1, 2 * n), 4, rng.randrange(10 ** 6))
        assert longest_path_exact(g) == nx_longest(g)


def test_branch_and_bound_agrees_with_dp():
    rng = random.Random(9)
    for _ in range(10):
        n = rng.randint(10, 18)
        g = random_connected(n, rng.randint(n, 2 * n), 4, rng.randrange(10 ** 6))
        assert longest_path_exact(g, cap=0) == longest_path_exact(g)


def test_longest_limits():
    with pytest.raises(OracleLimitError):
        longest_path_exact(path(70))
    assert longest_path_exact(path(30)) == 30


def test_arrow_known():
    assert arrow_check(complete(4), None, 3).arrows
    res = arrow_check(path(4), None, 2)
    assert not res.arrows and res.witness == frozenset(path(4).edges)
    assert replay_witness(path(4), None, 2, res.witness)


def test_arrow_cycle_cap_monotone():
    # forbidding only short red cycles lets red do more, so arrowing the
    # short-cycle family implies arrowing the all-cycles family
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randint(4, 7)
        g = random_connected(n, rng.randint(n, min(n * (n - 1) // 2, 11)), 4, rng.randrange(10 ** 6))
        for target in (3, 4):
            short = arrow_check(g, 3, target).arrows
            full = arrow_check(g, None, target).arrows
            assert not short or full


def test_maximal_red_sets_are_maximal():
    g = complete(5)
    for red in maximal_red_sets(g, 3):
        G = nx.Graph(list(red))
        assert not any(True for _ in nx.simple_cycles(G, length_bound=3))
        for e in g.edges - red:
            H = nx.Graph(list(red) + [e])
            assert any(True for _ in nx.simple_cycles(H, length_bound=3))


def test_sparse_graphs_never_arrow():
    # 2(n-1)-1 edges: a red spanning forest leaves fewer than n-1 blue edges
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(3, 6)
        m = 2 * (n - 1) - 1
        N = rng.randint(n, m + 1)
        g = random_connected(N, m, 6, rng.randrange(10 ** 6))
        if len(g.edges) != m:
            continue
        res = arrow_check(g, None, n)
        assert not res.arrows and replay_witness(g, None, n, res.witness)


def test_arrow_edge_cap():
    with pytest.raises(OracleLimitError):
        arrow_check(complete(9), None, 3)


def test_lemma_oracle_warmup():
    cfg = SearchConfig(5, Fraction(1, 3), HAS_BLUE, HAS_BLUE, 4)
    assert lemma_oracle(cfg, 7) == (True, None)


def test_lemma_oracle_prune_matches_product():
    for target in (Fraction(1, 2), Fraction(1)):
        cfg = SearchConfig(4, target, HAS_BLUE, HAS_BLUE, 3)
        ok1, c1 = lemma_oracle(cfg, 4, prune=True)
        ok2, c2 = lemma_oracle(cfg, 4, prune=False)
        assert ok1 == ok2
        assert (c1 is None) == (c2 is None)


def test_lemma_oracle_budget():
    with pytest.raises(OracleLimitError):
        lemma_oracle(SearchConfig(5, Fraction(1, 2)), 10)


def test_arrow_monotone_in_n():
    rng = random.Random(8)
    for _ in range(15):
        n = rng.randint(4, 7)
        g = random_connected(n, rng.randint(n, min(11, n * (n - 1) // 2)), 4, rng.randrange(10 ** 6))
        verdicts = [arrow_check(g, None, k).arrows for k in range(2, n + 1)]
        # once it stops arrowing it never starts again
        assert verdicts == sorted(verdicts, reverse=True)
