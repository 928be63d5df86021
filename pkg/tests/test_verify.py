import json
import random
from fractions import Fraction

import pytest

from pathramsey.config import SearchConfig
from pathramsey.core import PowerPathGraph, UpColoring
from pathramsey.search import header_line
from pathramsey.verify import (INVALID, PARSE_ERROR, VALID, check_counterexample, verify,
                               verify_file)

from conftest import CFG_13, CFG_47
from mutations import KINDS, changed_leaf_is_sound, mutants, mutate


def lines_of(text):
    return text.splitlines(keepends=True)


def test_valid_roundtrip(transcript47_file):
    rep = verify_file(transcript47_file, CFG_47)
    assert rep.verdict == VALID
    assert rep.stats["branches"] > 0 and rep.stats["max_depth"] <= 9
    assert json.loads(json.dumps(rep.to_json()))["verdict"] == VALID


def test_header_mismatch(transcript47):
    rep = verify(lines_of(transcript47), CFG_13)
    assert rep.verdict == INVALID and "header" in rep.reason


def test_truncation_is_parse_error(transcript47):
    ls = lines_of(transcript47)
    assert verify(ls[: len(ls) // 2]).verdict == PARSE_ERROR
    text = transcript47[: len(transcript47) // 3]
    assert verify(lines_of(text)).verdict == PARSE_ERROR
    assert verify([]).verdict == PARSE_ERROR
    assert verify(ls[:1]).verdict == PARSE_ERROR


def test_malformed_json(transcript47):
    ls = lines_of(transcript47)
    ls[5] = ls[5][:-3] + "\n"
    assert verify(ls).verdict == PARSE_ERROR


def test_trailing_content(transcript47):
    ls = lines_of(transcript47) + ['{"branch":"BBB"}\n']
    assert verify(ls).verdict == INVALID


def test_missing_start_case(transcript47):
    # cut the file just before the last root child: the root covers 6/7 start cases
    ls = lines_of(transcript47)
    depth, last_root_child = 0, None
    for i, line in enumerate(ls[1:], 1):
        obj = json.loads(line)
        if "branch" in obj:
            if depth == 0:
                last_root_child = i
            depth += 1
        elif "pop" in obj:
            depth -= obj["pop"]
    rep = verify(ls[:last_root_child])
    assert rep.verdict == INVALID and "6/7" in rep.reason


@pytest.mark.parametrize("kind", KINDS)
def test_each_mutation_kind_rejected(transcript47, kind):
    ls = lines_of(transcript47)
    rng = random.Random(KINDS.index(kind))
    done = 0
    while done < 15:
        m = mutate(ls, rng, kind)
        if m is None:
            continue
        done += 1
        rep = verify(m, CFG_47)
        # swapping one red cycle for another genuine one is still a proof
        assert rep.verdict in (INVALID, PARSE_ERROR) or changed_leaf_is_sound(ls, m, CFG_47), kind


def test_invalid_report_is_located(transcript47):
    ls = lines_of(transcript47)
    ls[3] = '{"leaf":{"blue_path":[0,1],"density":"1/2"}}\n'
    rep = verify(ls)
    assert rep.verdict == INVALID and rep.line == 4
    assert "verdict: INVALID" in rep.render()


def test_forged_certificates_rejected():
    cfg = SearchConfig(5, Fraction(1, 2), max_depth=3)
    head = header_line(cfg) + "\n"
    # density claims 1 but the path uses a red edge
    body = ['{"branch":"RBB"}\n', '{"leaf":{"blue_path":[0,1],"density":"1/1"}}\n']
    assert verify([head] + body).verdict == INVALID
    # endpoint beyond the assigned frontier
    body = ['{"branch":"BBB"}\n', '{"leaf":{"blue_path":[0,1,2],"density":"1/1"}}\n']
    assert verify([head] + body).verdict == INVALID
    # non-canonical child order
    body = ['{"branch":"BBR"}\n']
    assert verify([head] + body).verdict == INVALID


def test_counterexample_checker():
    cfg = SearchConfig(5, Fraction(1), max_depth=3)
    g = PowerPathGraph(cfg.n_vertices, 3)
    good = UpColoring.from_strings(g, ["BBB", "RRR", "BBB", "BBB"])
    assert check_counterexample(cfg, good) is None
    assert check_counterexample(cfg, UpColoring.from_strings(g, ["BBB"] * 4)) is not None
    assert check_counterexample(cfg, UpColoring.from_strings(g, ["RRR", "BBB", "BBB", "BBB"])) is not None
    assert check_counterexample(cfg, UpColoring.from_strings(g, ["BBB", "RRR"])) is not None


def test_mutant_stream_covers_all_kinds(transcript47):
    kinds = {k for k, _ in mutants(lines_of(transcript47), 40, seed=3)}
    assert kinds == set(KINDS)


def test_equivalence_check_agrees_with_verifier(transcript47):
    # the independent leaf check used by the acceptance gate must reject
    # whatever the verifier rejects, and accept the untouched leaves
    ls = lines_of(transcript47)
    rng = random.Random(4)
    seen = 0
    for kind in ("density", "path_dup_vertex", "path_del_vertex", "cycle_vertex"):
        for _ in range(30):
            m = mutate(ls, rng, kind)
            if m is None:
                continue
            seen += 1
            if not verify(m, CFG_47).valid:
                assert not changed_leaf_is_sound(ls, m, CFG_47)
    assert seen > 20
    i = next(i for i, l in enumerate(ls) if l.startswith('{"leaf"'))
    swapped = list(ls)
    swapped[i] = ls[i].replace("}}", "} }")
    assert changed_leaf_is_sound(ls, swapped, CFG_47)
