from __future__ import annotations

import random
from itertools import combinations

from hypothesis import given

from asp_kit import generators as gen
from asp_kit.graph import Graph, is_isomorphic_small, is_three_connected, is_two_connected, is_virtually_3connected
from asp_kit.oracle import ASP_FORBIDDEN, ASPP_FORBIDDEN, find_forbidden, validate_witness
from asp_kit.receptacles import (
    BOND,
    blocks,
    is_asp_via_receptacles,
    lift_receptacle_witness,
    receptacles,
    triconnected_pieces,
)
from conftest import graphs, random_graph

BOWTIE = Graph(range(5), [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def _two_connected_sample(seed: int, count: int, lo: int = 5, hi: int = 10) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = random_graph(rng, rng.randint(lo, hi), rng.uniform(0.3, 0.6))
        if is_two_connected(g):
            out.append(g)
    return out


def _oracle_rule(forbidden):
    return lambda r: find_forbidden(r.graph, forbidden) is None


# --- blocks ---------------------------------------------------------------------------


def test_bowtie_blocks():
    bs = blocks(BOWTIE)
    assert len(bs) == 2
    assert {v for b in bs for v in b.cut_vertices} == {2}


def test_two_connected_graph_is_one_block():
    assert len(blocks(gen.petersen())) == 1


def test_path_blocks_are_edges():
    bs = blocks(gen.path_graph(5))
    assert len(bs) == 4 and all(b.graph.m == 1 for b in bs)


# --- receptacles ----------------------------------------------------------------------


def test_three_connected_graph_is_its_own_receptacle():
    pet = gen.petersen()
    dec = receptacles(pet)
    assert len(dec.receptacles) == 1
    r = dec.receptacles[0]
    assert r.graph == pet and not r.windows and not r.extreme


def test_theta_graph_receptacle():
    th = gen.theta(2)
    dec = receptacles(th)
    assert len(dec.receptacles) == 1
    r = dec.receptacles[0]
    assert r.graph == th and r.windows == frozenset({(0, 1)}) and r.extreme


def test_k5_minus_construction_has_extreme_k5_minus_receptacles():
    k5m = gen.k5_minus()
    g = gen.replace_edges(gen.cycle(3), k5m, skip=(0, 1))
    recs = receptacles(g).receptacles
    assert len(recs) == 2
    for r in recs:
        assert r.extreme
        assert is_isomorphic_small(r.graph.subgraph(r.core_vertices), k5m.graph)
        (window,) = r.windows
        assert not g.has_edge(*window)  # the missing K5 edge
        assert len(r.threads) == 1


def test_receptacles_with_shared_window():
    # three K4s glued on the pair (0, 1): that window lies in three receptacles
    edges = [(0, 1)]
    for k in range(3):
        a, b = ("a", k), ("b", k)
        edges += [(0, a), (0, b), (1, a), (1, b), (a, b)]
    g = Graph.from_edges(edges)
    dec = receptacles(g)
    rigid = [r for r in dec.receptacles if not r.degenerate]
    assert len(rigid) == 3
    assert all(r.shared_windows == frozenset({(0, 1)}) for r in rigid)
    assert len(dec.window_adjacency[(0, 1)]) == 3


@given(graphs(min_n=3, max_n=9, connected=True))
def test_receptacle_invariants(g):
    dec = receptacles(g)
    for r in dec.receptacles:
        assert r.extreme == (len(r.windows) == 1)
        if not r.degenerate:
            assert is_virtually_3connected(r.graph)
    by_block: dict = {}
    for r in dec.receptacles:
        by_block.setdefault(r.block, []).append(r.core_vertices)
    for cores in by_block.values():
        for a, b in combinations(cores, 2):
            assert len(a & b) <= 2


@given(graphs(min_n=3, max_n=9, connected=True))
def test_pieces_partition_block_edges(g):
    for blk in blocks(g):
        if blk.graph.n < 3:
            continue
        seen = []
        for p in triconnected_pieces(blk.graph):
            seen.extend(p.real_edges)
            if p.kind == BOND:
                assert len(p.vertices) == 2
        assert sorted(seen) == sorted(blk.graph.edges)


@given(graphs(min_n=3, max_n=9, connected=True))
def test_recomposition_covers_each_block(g):
    dec = receptacles(g)
    for bi, blk in enumerate(dec.blocks):
        covered = set()
        for r in dec.receptacles_of_block(bi):
            core = r.graph.subgraph(r.core_vertices)
            covered |= set(core.edges)
        covered |= {e for b, p in dec.remainder if b == bi for e in p.real_edges}
        assert covered == set(blk.graph.edges)


def test_extreme_receptacles_when_two_connected_with_min_degree_three():
    seen = 0
    for g in gen.enumerate_small_graphs(8):
        if g.min_degree() < 3 or not is_two_connected(g) or is_three_connected(g):
            continue
        seen += 1
        extreme = [r for r in receptacles(g).receptacles if r.extreme]
        assert len(extreme) >= 2
    assert seen >= 20


# --- receptacle rule -----------------------------------------------------------------


def test_rule_examples():
    assert is_asp_via_receptacles(gen.replace_edges(gen.cycle(3), gen.y_gadget())).ok
    k6p = gen.complete_graph(6).with_edges([(5, 6)], [6])
    assert is_asp_via_receptacles(k6p).ok
    assert not is_asp_via_receptacles(gen.subdivide(gen.petersen(), [(0, 1)])).ok


def test_rule_on_random_two_connected_graphs():
    for g in _two_connected_sample(7, 150):
        for forbidden in (ASP_FORBIDDEN, ASPP_FORBIDDEN):
            whole = find_forbidden(g, forbidden) is None
            assert is_asp_via_receptacles(g, forbidden, decide=_oracle_rule(forbidden)).ok == whole
            assert is_asp_via_receptacles(g, forbidden).ok == whole


def test_receptacle_witness_lifts_to_host():
    # Petersen 2-summed with a K4 along an edge: the Petersen receptacle holds a
    # thread where the K4 side was cut off
    pet = gen.petersen()
    extra = [(0, "x"), (0, "y"), (1, "x"), (1, "y"), ("x", "y")]
    g = pet.with_edges(extra, ["x", "y"]).without_edges([(0, 1)])
    dec = receptacles(g)
    lifted = 0
    for r in dec.receptacles:
        w = find_forbidden(r.graph, ASP_FORBIDDEN)
        if w is None:
            continue
        lw = lift_receptacle_witness(dec, r, w)
        validate_witness(g, lw)
        assert not set(lw.vertices()) & set(r.threads)
        lifted += 1
    assert lifted == 1
