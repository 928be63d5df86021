import itertools
import json
from fractions import Fraction

import pytest

from pathramsey.certificates import check_blue_path, check_red_cycle, BluePathCert
from pathramsey.config import HAS_BLUE, NOT_RRR_RRB, EndpointPredicate, SearchConfig
from pathramsey.core import PowerPathGraph, UpColoring
from pathramsey.oracle import lemma_oracle
from pathramsey.search import (SearchBudgetExceeded, find_closing_certificate, find_red_cycle,
                               header_line, segment_search, short_red_path)
from pathramsey.verify import check_counterexample, verify

from conftest import CFG_13, CFG_47


def test_short_red_path():
    red = [0] * 6
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        red[a] |= 1 << b
        red[b] |= 1 << a
    assert short_red_path(red, 0, 3, 3) == [0, 1, 2, 3]
    assert short_red_path(red, 0, 3, 2) is None
    assert short_red_path(red, 0, 5, 5) is None


def test_find_red_cycle_respects_cap():
    g = PowerPathGraph(10, 3)
    c = UpColoring.from_strings(g, ["RBB", "BBB", "RBB", "BBB", "RBB"])
    assert find_red_cycle(c, 5) is None
    c = UpColoring.from_strings(g, ["RRB", "RBB"])
    cyc = find_red_cycle(c, 3)
    assert cyc is not None and check_red_cycle(c, cyc, 3)
    assert sorted(cyc.vertices) == [0, 1, 2]


def test_find_closing_certificate_blue():
    cfg = SearchConfig(5, Fraction(1, 2), max_depth=5)
    c = UpColoring.from_strings(PowerPathGraph(cfg.n_vertices, 3), ["BBB", "BBB", "BBB"])
    cert = find_closing_certificate(c, cfg)
    assert isinstance(cert, BluePathCert) and cert.endpoint == 2
    assert check_blue_path(c, cert, cfg.end_pred)


def test_warmup_success():
    out = segment_search(CFG_13)
    assert out.success and out.stats.max_leaf_frontier <= 4
    assert verify(out.transcript.splitlines(keepends=True), CFG_13).valid


def test_lemma47_success(transcript47):
    rep = verify(transcript47.splitlines(keepends=True), CFG_47)
    assert rep.valid
    assert rep.stats["max_blue_endpoint"] <= 9
    assert transcript47.splitlines()[0] == header_line(CFG_47)


def test_transcript_lines_are_compact_json(transcript47):
    for line in transcript47.splitlines()[:200]:
        obj = json.loads(line)
        assert json.dumps(obj, separators=(",", ":")) == line


def test_density_one_fails_with_checked_counterexample(tmp_path):
    cfg = SearchConfig(5, Fraction(1), max_depth=9)
    out = segment_search(cfg, out=tmp_path / "cex.jsonl")
    assert out.status == "FAILURE"
    assert check_counterexample(cfg, out.counterexample) is None
    lines = (tmp_path / "cex.jsonl").read_text().splitlines()
    assert json.loads(lines[1])["counterexample"] == out.counterexample.up_strings()


def test_budget_is_not_failure():
    cfg = SearchConfig(8, Fraction(3, 4), NOT_RRR_RRB, NOT_RRR_RRB, 39)
    with pytest.raises(SearchBudgetExceeded):
        segment_search(cfg, max_nodes=500)
    with pytest.raises(SearchBudgetExceeded):
        segment_search(cfg, time_budget=0.0)


GRID = list(itertools.product([3, 4, 5, 6], [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)],
                              [HAS_BLUE, NOT_RRR_RRB], [3, 5]))


@pytest.mark.parametrize("L,target,pred,depth", GRID)
def test_agrees_with_oracle(L, target, pred, depth):
    cfg = SearchConfig(L, target, pred, pred, depth)
    out = segment_search(cfg)
    ok, cex = lemma_oracle(cfg, depth + 1)
    assert out.success == ok
    if not ok:
        assert out.counterexample.ups == cex.ups
    else:
        assert verify(out.transcript.splitlines(keepends=True), cfg).valid


@pytest.mark.parametrize("end", ["set:BBB,BBR,BRB", "set:RBB"])
def test_set_predicates_agree(end):
    cfg = SearchConfig(5, Fraction(1, 3), HAS_BLUE, EndpointPredicate.parse(end), 5)
    out = segment_search(cfg)
    ok, _ = lemma_oracle(cfg, 6)
    assert out.success == ok


def test_power_two():
    cfg = SearchConfig(4, Fraction(1, 3), EndpointPredicate.parse("set:BB,BR,RB"),
                       EndpointPredicate.parse("set:BB,BR,RB"), 5, power=2)
    out = segment_search(cfg)
    ok, cex = lemma_oracle(cfg, 6)
    assert out.success == ok
    if out.success:
        assert verify(out.transcript.splitlines(keepends=True), cfg).valid
