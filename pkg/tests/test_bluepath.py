import random

import pytest
from hypothesis import given, settings, strategies as st

from pathramsey import bluepath


def brute_best(blue_edges, k, power):
    """Longest path 0..k inside {0..k} by plain DFS; returns vertex count or None."""
    best = None

    def dfs(v, seen):
        nonlocal best
        if v == k:
            best = max(best or 0, len(seen))
            return
        for w in range(max(0, v - power), min(k, v + power) + 1):
            if w not in seen and (min(v, w), max(v, w)) in blue_edges:
                seen.add(w)
                dfs(w, seen)
                seen.discard(w)

    dfs(0, {0})
    return best


def random_instance(rng, n, power, p_blue):
    return {(u, u + d) for u in range(n) for d in range(1, power + 1) if u + d < n and rng.random() < p_blue}


@pytest.mark.parametrize("power", [2, 3, 4])
def test_matches_brute_force(power):
    rng = random.Random(power)
    for _ in range(300):
        n = rng.randint(2, 13)
        blue = random_instance(rng, n, power, rng.choice([0.5, 0.7, 0.9]))
        got = bluepath.best_paths(lambda u, d: (u, u + d) in blue, n - 1, power)
        for k in range(1, n):
            want = brute_best(blue, k, power)
            if want is None:
                assert got[k] is None
                continue
            count, mask = got[k]
            assert count == want
            path = bluepath.mask_to_path(mask, power)
            assert path[0] == 0 and path[-1] == k and len(path) == count
            assert len(set(path)) == count and max(path) == k
            assert all((min(a, b), max(a, b)) in blue for a, b in zip(path, path[1:]))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 10), st.randoms(use_true_random=False))
def test_deterministic(n, rng):
    blue = random_instance(rng, n, 3, 0.8)
    f = lambda u, d: (u, u + d) in blue
    assert bluepath.best_paths(f, n - 1, 3) == bluepath.best_paths(f, n - 1, 3)


def test_all_blue_uses_everything():
    got = bluepath.best_paths(lambda u, d: True, 12, 3)
    assert [g[0] for g in got[1:]] == list(range(2, 14))


def test_edge_bit_layout():
    assert bluepath.edge_bit(0, 1, 3) == 1
    assert bluepath.edge_bit(2, 3, 3) == 1 << 8
