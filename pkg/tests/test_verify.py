from __future__ import annotations

from asp_kit import generators as gen
from asp_kit.verify import CHECKS, check_graph, run_verify


def test_clean_run_small():
    rep = run_verify(max_n=6)
    assert rep.ok, rep.mismatches[:3]
    assert rep.graphs == 1 + 1 + 2 + 6 + 21 + 112
    assert rep.checked["classifier"] == rep.graphs
    assert 0 < rep.checked["receptacles"] < rep.graphs
    assert sum(rep.verdicts.values()) == rep.graphs


def test_check_graph_on_named_graphs():
    for g in (gen.petersen(), gen.wheel_mod(6), gen.d_graph(4)):
        label, bad = check_graph(g, CHECKS)
        assert not bad
    assert check_graph(gen.petersen())[0] == "NonASP"


def test_weakened_classifier_is_caught():
    # a rim bound of 5 hands six-vertex skeletons to the structural test
    rep = run_verify(max_n=7, checks=("classifier",), min_rim=5)
    assert not rep.ok
    assert len(rep.mismatches) == 58
    assert all(m["check"] == "classifier" for m in rep.mismatches)


def test_parallel_run_matches_serial():
    a = run_verify(max_n=6, jobs=2, checks=("classifier", "normalization"))
    b = run_verify(max_n=6, jobs=1, checks=("classifier", "normalization"))
    assert a.as_dict()["verdicts"] == b.as_dict()["verdicts"] and a.ok and b.ok
