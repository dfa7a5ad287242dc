from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asp_kit import generators as gen
from asp_kit.classifier import (
    FISHPOND,
    MIN_RIM,
    NON_ASP_TAG,
    SMALL_CASE,
    TRUNCATED_CUBIC,
    FamilyTag,
    classify,
    classify_3connected,
    classify_by_oracle,
    classify_v3c,
    is_fishpond,
    is_truncated_cubic,
    is_wheel,
    match_family_KE3r,
    match_family_SrWr,
)
from asp_kit.errors import NotTriconnected, NotV3C, ParallelThreads
from asp_kit.graph import Graph, is_three_connected, is_two_connected, is_virtually_3connected, skeleton_view
from asp_kit.oracle import ASP_FORBIDDEN, Verdict, oracle_verdict, validate_witness
from conftest import graphs, random_graph


@pytest.mark.parametrize(
    "g,verdict,family",
    [
        (gen.wheel_mod(6), Verdict.ASP_P, FamilyTag("Sr_Wr", 6)),
        (gen.spoked(8), Verdict.ASP_P, FamilyTag("Sr_Wr", 8)),
        (gen.d_mod(4), Verdict.ASP, FamilyTag("KE3r_Dr", 4)),
        (gen.k3r(7), Verdict.ASP, FamilyTag("KE3r_Dr", 7)),
        (gen.total_subdivision(gen.complete_graph(4)), Verdict.ASP_P, FISHPOND),
        (gen.truncate_cubic(gen.complete_bipartite(3, 3)), Verdict.ASP_P, TRUNCATED_CUBIC),
        (gen.truncate_cubic(gen.petersen()), Verdict.ASP_P, TRUNCATED_CUBIC),
        (gen.wheel(5), Verdict.ASP_P, SMALL_CASE),
        (gen.complete_graph(6), Verdict.ASP, SMALL_CASE),
        (gen.cycle(7), Verdict.SP, FamilyTag("SP")),
    ],
)
def test_classify_examples(g, verdict, family):
    res = classify(g)
    assert res.verdict == verdict == oracle_verdict(g)
    assert res.family == family


def test_three_connected_examples():
    assert classify_3connected(gen.wheel(7)).family == FamilyTag("Wheel", 7)
    assert classify_3connected(gen.d_graph(5)).family == FamilyTag("K3r_Dr_3conn", 5)
    assert classify_3connected(gen.prism()).family == TRUNCATED_CUBIC
    t = gen.truncate_cubic(gen.petersen())
    assert is_three_connected(t) and classify_3connected(t).family == TRUNCATED_CUBIC
    pet = classify_3connected(gen.petersen())
    assert pet.verdict == Verdict.NON_ASP and pet.family == NON_ASP_TAG
    validate_witness(gen.petersen(), pet.witness)
    with pytest.raises(NotTriconnected):
        classify_3connected(gen.wheel_mod(6))


def test_petersen_witness_lifted_through_subdivision():
    g = gen.subdivide(gen.petersen(), [(0, 1), (2, 3)], times=2)
    res = classify(g)
    assert res.verdict == Verdict.NON_ASP
    validate_witness(g, res.witness)
    assert res.witness.shape in ASP_FORBIDDEN


def test_matchers():
    assert match_family_KE3r(gen.k3r(5)) == 5
    assert match_family_KE3r(gen.wheel(6)) is None
    assert match_family_SrWr(gen.wheel(9)) == 9
    assert match_family_SrWr(gen.k3r(5)) is None
    assert is_wheel(gen.wheel(4)) == 4 and is_wheel(gen.prism()) is None
    assert is_truncated_cubic(gen.prism())
    assert not is_truncated_cubic(gen.petersen())


def test_fishpond_report_lists_failures():
    rep = is_fishpond(gen.wheel_mod(6))
    assert not rep and "skeleton max degree above 4" in rep.violations
    assert is_fishpond(gen.total_subdivision(gen.wheel(5)))
    with pytest.raises(NotV3C):
        is_fishpond(gen.path_graph(4))


def test_v3c_preconditions():
    with pytest.raises(NotV3C):
        classify_v3c(Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))
    # two parallel threads on one rim pair of a large wheel
    g = gen.wheel(8).with_edges([(1, "a"), ("a", 2), (1, "b"), ("b", 2)], ["a", "b"])
    with pytest.raises(ParallelThreads):
        classify_v3c(g)
    assert classify(g).verdict == oracle_verdict(g)


@given(st.integers(6, 10), st.data())
def test_wheel_sandwiches_are_aspp(r, data):
    links = data.draw(st.lists(st.sampled_from(["edge", "thread", "both"]), min_size=r, max_size=r))
    lengths = data.draw(st.lists(st.integers(1, 3), min_size=r, max_size=r))
    g = gen.wheel_sandwich(r, links, lengths)
    res = classify(g)
    assert res.verdict == Verdict.ASP_P == oracle_verdict(g)
    assert res.family == FamilyTag("Sr_Wr", r)


@given(st.integers(4, 8), st.sets(st.integers(0, 2)), st.sets(st.integers(0, 2)))
def test_k3r_sandwiches_are_asp(r, tri_e, tri_t):
    g = gen.ke3r_sandwich(r, tri_e, tri_t)
    res = classify(g)
    assert res.verdict == Verdict.ASP == oracle_verdict(g)
    assert res.family == FamilyTag("KE3r_Dr", r)


@given(graphs(min_n=4, max_n=9, connected=True))
def test_classify_matches_oracle(g):
    res = classify(g)
    assert res.verdict == oracle_verdict(g) == classify_by_oracle(g).verdict
    if res.verdict == Verdict.NON_ASP:
        validate_witness(g, res.witness)


def test_random_v3c_graphs_against_oracle():
    rng = random.Random(5)
    checked = 0
    while checked < 120:
        g = random_graph(rng, rng.randint(7, 12), rng.uniform(0.25, 0.5))
        if not is_two_connected(g) or not is_virtually_3connected(g):
            continue
        checked += 1
        truth = oracle_verdict(g)
        assert classify(g).verdict == truth
        view = skeleton_view(g)
        if view.parallel_windows() and len(view.skeleton_vertices) > MIN_RIM:
            with pytest.raises(ParallelThreads):
                classify_v3c(g)
            continue
        res = classify_v3c(g)
        assert res.verdict == truth
        if is_three_connected(g):
            assert classify_3connected(g).verdict == res.verdict
        if res.verdict == Verdict.NON_ASP:
            validate_witness(g, res.witness)


def test_receptacle_breakdown_in_output():
    g = gen.replace_edges(gen.cycle(3), gen.k5_minus(), skip=(0, 1))
    res = classify(g)
    assert res.verdict == Verdict.ASP
    d = res.as_dict()
    assert len(d["receptacles"]) == len(res.per_receptacle) >= 2
    assert all(r["extreme"] for r in d["receptacles"] if r["family"] != "SP")


def test_w5_goes_through_small_case():
    assert is_wheel(gen.wheel(5)) == 5
    assert classify_3connected(gen.wheel(5)).family == SMALL_CASE


def test_thousand_random_graphs_up_to_fourteen_vertices():
    rng = random.Random(1000)
    for _ in range(1000):
        g = random_graph(rng, rng.randint(4, 14), rng.uniform(0.15, 0.6))
        res = classify(g)
        assert res.verdict == oracle_verdict(g)
        if res.verdict == Verdict.NON_ASP:
            validate_witness(g, res.witness)
