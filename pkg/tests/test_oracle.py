from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asp_kit import generators as gen
from asp_kit.errors import GraphError, NotASPInput, SizeLimitExceeded
from asp_kit.graph import Graph, normalize_threads
from asp_kit.oracle import (
    ALL_SHAPES,
    ASP_FORBIDDEN,
    ASPP_FORBIDDEN,
    SLOTS,
    ForbiddenWitness,
    Shape,
    Verdict,
    achievable_shapes,
    enumerate_k4_subdivisions,
    find_forbidden,
    find_forbidden_local,
    is_red_link,
    is_sp,
    oracle_classify,
    oracle_verdict,
    shape_of_slots,
    validate_witness,
)
from conftest import graphs, random_graph, to_nx

K4 = gen.complete_graph(4)


def independent_check(g: Graph, w: ForbiddenWitness) -> Shape:
    """Validate a witness from scratch and recompute its shape with networkx."""
    bv = w.branch_vertices
    assert len(set(bv)) == 4 and len(w.branch_paths) == 6
    seen = set(bv)
    bare = []
    for (i, j), p in zip(SLOTS, w.branch_paths):
        assert {p[0], p[-1]} == {bv[i], bv[j]}
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))
        inner = set(p[1:-1])
        assert len(inner) == len(p) - 2 and not (inner & seen)
        seen |= inner
        if len(p) == 2:
            bare.append((bv[i], bv[j]))
    sk = nx.Graph(bare)
    for shape, model in _MODELS.items():
        if nx.is_isomorphic(sk, model):
            return shape
    raise AssertionError(f"no shape for {bare}")


def _models() -> dict:
    out = {}
    k4_edges = list(combinations(range(4), 2))
    for r in range(7):
        for sub in combinations(k4_edges, r):
            h = nx.Graph(sub)
            if not any(nx.is_isomorphic(h, m) for m in out.values()):
                out[len(out)] = h
    names = {
        (0, ()): Shape.EMPTY, (1, (1, 1)): Shape.ONE_EDGE, (2, (1, 1, 1, 1)): Shape.TWO_MATCHING,
        (2, (1, 1, 2)): Shape.P3, (3, (1, 1, 2, 2)): Shape.P4, (3, (2, 2, 2)): Shape.TRIANGLE,
        (3, (1, 1, 1, 3)): Shape.CLAW, (4, (2, 2, 2, 2)): Shape.C4, (4, (1, 2, 2, 3)): Shape.PAW,
        (5, (2, 2, 3, 3)): Shape.DIAMOND, (6, (3, 3, 3, 3)): Shape.K4,
    }
    return {names[(h.number_of_edges(), tuple(sorted(d for _, d in h.degree())))]: h for h in out.values()}


_MODELS = _models()


def test_eleven_shape_classes():
    assert len(_MODELS) == 11 == len(ALL_SHAPES)


def test_slot_table_matches_isomorphism_classes():
    for mask in range(64):
        edges = [SLOTS[i] for i in range(6) if mask >> i & 1]
        h = nx.Graph(edges)
        assert nx.is_isomorphic(h, _MODELS[shape_of_slots(mask)])


# --- enumeration -----------------------------------------------------------------


def test_k4_has_one_subdivision():
    ws = list(enumerate_k4_subdivisions(K4))
    assert len(ws) == 1 and ws[0].shape == Shape.K4


def test_c4_has_none():
    assert list(enumerate_k4_subdivisions(gen.cycle(4))) == []


def test_k5_shapes():
    shapes = {w.shape for w in enumerate_k4_subdivisions(gen.complete_graph(5))}
    assert shapes == {Shape.K4, Shape.DIAMOND}


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        list(enumerate_k4_subdivisions(gen.cycle(41)))
    with pytest.raises(SizeLimitExceeded):
        find_forbidden(gen.petersen(), limit=5)


def test_size_limit_applies_after_normalization():
    g = gen.subdivide(K4, times=20)
    assert g.n > 40
    assert find_forbidden(g, ALL_SHAPES) is not None


def test_env_override(monkeypatch):
    monkeypatch.setenv("ASP_KIT_ORACLE_LIMIT", "8")
    with pytest.raises(SizeLimitExceeded):
        oracle_verdict(gen.petersen())


@given(graphs(min_n=4, max_n=7))
def test_streamed_witnesses_validate(g):
    for w in enumerate_k4_subdivisions(g):
        assert independent_check(g, w) == w.shape
        validate_witness(g, w)


def test_validator_rejects_broken_witness():
    w = ForbiddenWitness((0, 1, 2, 3), ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 0)))
    with pytest.raises(GraphError):
        validate_witness(K4, w)


@given(graphs(min_n=4, max_n=8))
def test_dp_engine_matches_naive_enumeration(g):
    naive = {w.shape for w in enumerate_k4_subdivisions(g)}
    assert achievable_shapes(g) == naive
    for forbidden in (ASP_FORBIDDEN, ASPP_FORBIDDEN, ALL_SHAPES):
        w = find_forbidden(g, forbidden)
        assert (w is None) == (not naive & forbidden)
        if w is not None:
            assert independent_check(g, w) in forbidden


# --- find_forbidden examples -----------------------------------------------------------


def test_k6_is_asp():
    assert find_forbidden(gen.complete_graph(6), ASP_FORBIDDEN) is None


def test_k6_has_c4_witness():
    g = gen.complete_graph(6)
    w = find_forbidden(g, ASPP_FORBIDDEN)
    assert w is not None and w.shape == Shape.C4
    assert independent_check(g, w) == Shape.C4
    assert sorted(len(p) for p in w.branch_paths) == [2, 2, 2, 2, 3, 3]


def test_petersen_is_not_asp():
    pet = gen.petersen()
    w = find_forbidden(pet, ASP_FORBIDDEN)
    assert w is not None and independent_check(pet, w) in ASP_FORBIDDEN


def test_local_search_finds_witness_in_large_graph():
    g = gen.wheel(60).disjoint_union(gen.petersen().relabel({i: ("p", i) for i in range(10)}))
    w = find_forbidden_local(g)
    assert w is not None and independent_check(g, w) in ASP_FORBIDDEN


# --- verdicts ----------------------------------------------------------------------------


def test_verdict_labels_and_order():
    assert Verdict.SP < Verdict.ASP_P < Verdict.ASP < Verdict.NON_ASP
    assert [v.label for v in Verdict] == ["SP", "ASP-P", "ASP", "NonASP"]


@pytest.mark.parametrize(
    "g,verdict",
    [
        (gen.cycle(5), Verdict.SP),
        (K4, Verdict.ASP_P),
        (gen.complete_graph(5), Verdict.ASP_P),
        (gen.complete_graph(6), Verdict.ASP),
        (gen.complete_bipartite(3, 3), Verdict.ASP),
        (gen.petersen(), Verdict.NON_ASP),
        (gen.wheel(6), Verdict.ASP_P),
        (gen.d_graph(4), Verdict.ASP),
    ],
)
def test_oracle_verdicts(g, verdict):
    res = oracle_classify(g)
    assert res.verdict == verdict
    if res.witness is not None:
        independent_check(g, res.witness)


# --- series-parallel ------------------------------------------------------------------------


def test_sp_examples():
    assert is_sp(gen.path_graph(5))
    assert not is_sp(K4)
    assert not is_sp(gen.wheel(4))


@given(graphs(max_n=8))
def test_sp_matches_enumerator(g):
    assert is_sp(g) == (next(enumerate_k4_subdivisions(g), None) is None)


@given(graphs(min_n=3, max_n=8), st.data())
def test_subdividing_keeps_sp(g, data):
    if not is_sp(g) or not g.m:
        return
    e = data.draw(st.sampled_from(g.edges))
    assert is_sp(gen.subdivide(g, [e]))


def test_sp_against_treewidth_on_random_graphs():
    # no topological K4 is the same as treewidth at most 2; the heuristic is an
    # upper bound, so each one-way implication below is sound
    rng = random.Random(11)
    for _ in range(150):
        g = random_graph(rng, rng.randint(4, 9), rng.uniform(0.2, 0.6))
        tw, _ = nx.algorithms.approximation.treewidth_min_degree(to_nx(g))
        if tw <= 2:
            assert is_sp(g)
        if not is_sp(g):
            assert tw >= 3


# --- normalization ------------------------------------------------------------------------


@given(graphs(min_n=4, max_n=8), st.data())
def test_normalization_soundness(g, data):
    if g.m:
        picks = data.draw(st.lists(st.sampled_from(g.edges), unique=True, max_size=3))
        g = gen.subdivide(g, picks, times=data.draw(st.integers(1, 3)))
    if g.n > 14:
        return
    for forbidden in (ASP_FORBIDDEN, ASPP_FORBIDDEN, ALL_SHAPES):
        a = find_forbidden(g, forbidden, normalize=False) is None
        b = find_forbidden(normalize_threads(g), forbidden) is None
        assert a == b


# --- red links ----------------------------------------------------------------------------


def test_spokes_of_subdivided_wheel_are_red():
    s5 = gen.spoked(5)
    assert all(is_red_link(s5, (0, i)) for i in range(1, 6))


def test_k4_edges_are_not_red():
    assert not any(is_red_link(K4, e) for e in K4.edges)


def test_theta_window_is_not_red():
    th = gen.theta(2)
    assert not is_red_link(th, (0, 1), kind="window")


def test_red_link_rejects_non_asp_input():
    with pytest.raises(NotASPInput):
        is_red_link(gen.petersen(), (0, 1))


# --- K3,3 -------------------------------------------------------------------------------------


def test_k33_realises_only_c4():
    k33 = gen.complete_bipartite(3, 3)
    assert achievable_shapes(k33) == {Shape.C4}
    assert find_forbidden(k33, ASP_FORBIDDEN) is None
    assert find_forbidden(k33, ASPP_FORBIDDEN) is not None


@given(st.data())
def test_k33_subdivision_with_two_bare_adjacent_edges_is_not_aspp(data):
    k33 = gen.complete_bipartite(3, 3)
    bare = {(0, 3), (0, 4)}
    rest = [e for e in k33.edges if e not in bare]
    picks = data.draw(st.lists(st.sampled_from(rest), unique=True, max_size=len(rest)))
    g = gen.subdivide(k33, picks, times=data.draw(st.integers(1, 2)))
    w = find_forbidden(g, ASPP_FORBIDDEN)
    assert w is not None
    independent_check(g, w)
