"""Named graph families, hardness gadgets, and test corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import GraphError, NotCubic, NotTwoConnected, SizeLimitExceeded
from .graph import Graph, canonical_form, edge_key, is_three_connected, is_two_connected, vkey
from .oracle import Verdict

# ---------------------------------------------------------------------------
# Wheels and their relatives.  Hub is 0, rim vertices are 1..r in cyclic
# order, rim edge i joins rim vertex i+1 and rim vertex (i+1) % r + 1.
# ---------------------------------------------------------------------------


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def _rim_pairs(r: int) -> list[tuple[int, int]]:
    return [(i + 1, (i + 1) % r + 1) for i in range(r)]


def wheel(r: int) -> Graph:
    _need(r >= 3, "a wheel needs r >= 3")
    return Graph(range(r + 1), [(0, i) for i in range(1, r + 1)] + _rim_pairs(r))


def wheel_sandwich(r: int, links: Sequence[str], thread_lengths: Sequence[int] | None = None) -> Graph:
    """Hub, spokes, and for rim position i an ``"edge"``, ``"thread"`` or ``"both"``.

    Any such graph lies between S_r and W~_r (up to thread lengths).
    """
    _need(r >= 3, "needs r >= 3")
    _need(len(links) == r, "one link kind per rim edge")
    lengths = [1] * r if thread_lengths is None else list(thread_lengths)
    _need(len(lengths) == r and all(x >= 1 for x in lengths), "thread lengths must be >= 1")
    edges = [(0, i) for i in range(1, r + 1)]
    nxt = r + 1
    for (a, b), kind, ln in zip(_rim_pairs(r), links, lengths):
        _need(kind in ("edge", "thread", "both"), f"unknown link kind {kind!r}")
        if kind in ("edge", "both"):
            edges.append((a, b))
        if kind in ("thread", "both"):
            path = [a] + list(range(nxt, nxt + ln)) + [b]
            nxt += ln
            edges += list(zip(path, path[1:]))
    return Graph(range(nxt), edges)


def wheel_mod(r: int, thread_subset: Iterable[int] | None = None) -> Graph:
    """W_r plus a one-vertex thread parallel to each selected rim edge (all by default)."""
    chosen = set(range(r)) if thread_subset is None else set(thread_subset)
    _need(chosen <= set(range(r)), "thread subset must index rim edges 0..r-1")
    return wheel_sandwich(r, ["both" if i in chosen else "edge" for i in range(r)])


def spoked(r: int, rim_subdivision_lengths: Sequence[int] | None = None) -> Graph:
    """S_r: a wheel whose rim edges are subdivided, spokes kept (default: once each)."""
    lengths = [1] * r if rim_subdivision_lengths is None else list(rim_subdivision_lengths)
    _need(len(lengths) == r and all(x >= 0 for x in lengths), "one length >= 0 per rim edge")
    links = ["thread" if x > 0 else "edge" for x in lengths]
    return wheel_sandwich(r, links, [max(x, 1) for x in lengths])


# ---------------------------------------------------------------------------
# K_{3,r} family.  3-part is 0,1,2; r-part is 3..r+2.
# ---------------------------------------------------------------------------

TRIANGLE = ((0, 1), (0, 2), (1, 2))


def k3r(r: int) -> Graph:
    _need(r >= 1, "needs r >= 1")
    return Graph(range(r + 3), [(a, b) for a in range(3) for b in range(3, r + 3)])


def ke3r_sandwich(r: int, triangle_edges: Iterable[int] = (), triangle_threads: Iterable[int] = (),
                  thread_lengths: Sequence[int] | None = None) -> Graph:
    """K_{3,r} plus chosen triangle edges and threads parallel to chosen triangle edges."""
    base = k3r(r)
    tri_e = sorted(set(triangle_edges))
    tri_t = sorted(set(triangle_threads))
    _need(set(tri_e) | set(tri_t) <= {0, 1, 2}, "triangle positions are 0, 1, 2")
    lengths = [1, 1, 1] if thread_lengths is None else list(thread_lengths)
    edges = list(base.edges) + [TRIANGLE[i] for i in tri_e]
    nxt = r + 3
    for i in tri_t:
        a, b = TRIANGLE[i]
        path = [a] + list(range(nxt, nxt + lengths[i])) + [b]
        nxt += lengths[i]
        edges += list(zip(path, path[1:]))
    return Graph(range(nxt), edges)


def d_graph(r: int) -> Graph:
    """D_r: K_{3,r} plus a triangle on the 3-part."""
    return ke3r_sandwich(r, (0, 1, 2))


def d_mod(r: int, thread_subset: Iterable[int] | None = None) -> Graph:
    """D~_r: D_r plus one-vertex threads parallel to the triangle edges."""
    return ke3r_sandwich(r, (0, 1, 2), (0, 1, 2) if thread_subset is None else thread_subset)


# ---------------------------------------------------------------------------
# Other named graphs
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "a cycle needs n >= 3")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def prism() -> Graph:
    return Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(range(10), outer + spokes + inner)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])


def theta(length: int = 2) -> Graph:
    """Two vertices joined by three internally disjoint paths of ``length`` edges."""
    edges = []
    nxt = 2
    for _ in range(3):
        path = [0] + list(range(nxt, nxt + length - 1)) + [1]
        nxt += length - 1
        edges += list(zip(path, path[1:]))
    return Graph(range(nxt), edges)


def subdivide(g: Graph, edges: Iterable[Sequence] | None = None, times: int = 1) -> Graph:
    """Subdivide the given edges (all by default) ``times`` times each; ints relabeled."""
    h, _ = g.relabeled_ints()
    mapping = {v: i for i, v in enumerate(g.vertices)}
    chosen = set(h.edges) if edges is None else {edge_key(mapping[u], mapping[v]) for u, v in edges}
    nxt = h.n
    out = []
    for u, v in h.edges:
        if (u, v) in chosen:
            path = [u] + list(range(nxt, nxt + times)) + [v]
            nxt += times
            out += list(zip(path, path[1:]))
        else:
            out.append((u, v))
    return Graph(range(nxt), out)


def total_subdivision(g: Graph) -> Graph:
    return subdivide(g)


def truncate_cubic(g: Graph) -> Graph:
    """Replace each vertex of a cubic graph by a triangle; vertices relabeled 0..3n-1."""
    if any(g.degree(v) != 3 for v in g):
        raise NotCubic("truncation needs a cubic graph")
    corner = {}
    for v in g.vertices:
        for u in sorted(g.neighbors(v), key=vkey):
            corner[(v, u)] = len(corner)
    edges = []
    for v in g.vertices:
        a, b, c = (corner[(v, u)] for u in sorted(g.neighbors(v), key=vkey))
        edges += [(a, b), (a, c), (b, c)]
    for u, v in g.edges:
        edges.append((corner[(u, v)], corner[(v, u)]))
    return Graph(range(len(corner)), edges)


# ---------------------------------------------------------------------------
# Gadgets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Gadget:
    name: str
    graph: Graph
    terminals: tuple

    @property
    def inner_count(self) -> int:
        return self.graph.n - 2


def k5_minus() -> Gadget:
    """K5 minus the edge t0-t1; terminals are the nonadjacent pair."""
    verts = ["t0", "t1", "a", "b", "c"]
    edges = [(x, y) for i, x in enumerate(verts) for y in verts[i + 1:] if {x, y} != {"t0", "t1"}]
    return Gadget("K5minus", Graph(verts, edges), ("t0", "t1"))


def y_gadget() -> Gadget:
    """Two K5-minus copies X1, X2 plus the edge x1-x2; terminals y1, y2."""
    edges = []
    verts = []
    for i in (1, 2):
        part = [f"y{i}", f"x{i}", f"a{i}", f"b{i}", f"c{i}"]
        verts += part
        edges += [(p, q) for k, p in enumerate(part) for q in part[k + 1:] if {p, q} != {f"y{i}", f"x{i}"}]
    edges.append(("x1", "x2"))
    return Gadget("Y", Graph(verts, edges), ("y1", "y2"))


def wheel_minus(r: int) -> Gadget:
    """W_r with rim edge 1-2 removed; terminals are its ends."""
    w = wheel(r)
    g = w.without_edges([(1, 2)])
    return Gadget(f"WheelMinus({r})", g, (1, 2))


def gadget_by_name(name) -> Gadget:
    if isinstance(name, Gadget):
        return name
    if name in ("K5minus", "k5minus", "K5-"):
        return k5_minus()
    if name in ("Y", "y"):
        return y_gadget()
    if isinstance(name, tuple) and name[0] == "WheelMinus":
        return wheel_minus(int(name[1]))
    if isinstance(name, str) and name.lower().startswith("wheelminus"):
        digits = "".join(ch for ch in name if ch.isdigit())
        return wheel_minus(int(digits))
    raise GraphError(f"unknown gadget {name!r}")


def replace_edges(j: Graph, gadget, skip: Sequence | None = None) -> Graph:
    """Replace every edge of ``j`` except ``skip`` by a fresh copy of the gadget.

    Copy vertices are named ``(u, v, name)`` after the replaced edge ``(u, v)``.
    """
    if not is_two_connected(j):
        raise NotTwoConnected("the seed graph must be 2-connected")
    gad = gadget_by_name(gadget)
    skip_key = None if skip is None else edge_key(*skip)
    if skip_key is not None and not j.has_edge(*skip_key):
        raise GraphError(f"skip edge {skip!r} is not an edge of the seed")
    t0, t1 = gad.terminals
    verts = list(j.vertices)
    edges = []
    for u, v in j.edges:
        if (u, v) == skip_key:
            edges.append((u, v))
            continue
        name = {t0: u, t1: v}
        for x in gad.graph.vertices:
            if x not in name:
                name[x] = (u, v, x)
                verts.append(name[x])
        edges += [(name[a], name[b]) for a, b in gad.graph.edges]
    return Graph(verts, edges)


# ---------------------------------------------------------------------------
# Exhaustive small graphs
# ---------------------------------------------------------------------------

MAX_ENUM_N = 8


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple:
    """Canonical edge tuples of all connected graphs on vertices 0..n-1."""
    if n == 1:
        return ((),)
    out = {}
    for parent in _connected_graphs(n - 1):
        base = Graph(range(n - 1), parent)
        for sub in range(1, 1 << (n - 1)):
            nb = [i for i in range(n - 1) if sub >> i & 1]
            child = Graph(range(n), list(parent) + [(i, n - 1) for i in nb])
            if not _min_noncut_degree_ok(child, len(nb)):
                continue
            key = canonical_form(child)
            if key not in out:
                out[key] = _from_code(n, key[1])
    return tuple(out[k] for k in sorted(out))


def _min_noncut_degree_ok(g: Graph, d: int) -> bool:
    from .graph import articulation_points

    cuts = articulation_points(g)
    return all(g.degree(v) >= d for v in g if v not in cuts)


def _from_code(n: int, code: int) -> tuple:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n) if code >> (i * n + j) & 1)


def enumerate_small_graphs(n: int) -> Iterator[Graph]:
    """All connected graphs on n vertices up to isomorphism (n <= 8)."""
    if n > MAX_ENUM_N:
        raise SizeLimitExceeded(n, MAX_ENUM_N, "enumeration order")
    if n < 1:
        return iter(())
    return (Graph(range(n), e) for e in _connected_graphs(n))


def enumerate_connected_up_to(max_n: int) -> Iterator[Graph]:
    for n in range(1, max_n + 1):
        yield from enumerate_small_graphs(n)


# ---------------------------------------------------------------------------
# Random corpora
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    label: Verdict
    family: str


def random_cubic(rng: random.Random, n: int, three_connected: bool = True, attempts: int = 200) -> Graph:
    """Uniform-ish simple cubic graph on n vertices by the pairing model with restarts."""
    _need(n >= 4 and n % 2 == 0, "cubic graphs need an even n >= 4")
    for _ in range(attempts):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = set()
        ok = True
        for a, b in zip(points[::2], points[1::2]):
            e = edge_key(a, b)
            if a == b or e in pairs:
                ok = False
                break
            pairs.add(e)
        if not ok:
            continue
        g = Graph(range(n), sorted(pairs))
        if three_connected and not is_three_connected(g):
            continue
        return g
    raise GraphError("could not sample a cubic graph")


def _threaded(base: Graph, rng: random.Random, replace: Iterable, parallel: Iterable, max_len: int = 1) -> Graph:
    """Replace edges in ``replace`` by threads and add threads parallel to ``parallel``."""
    rep = {edge_key(*e) for e in replace}
    par = {edge_key(*e) for e in parallel}
    nxt = max(base.vertices) + 1 if base.n else 0
    edges = []
    for u, v in base.edges:
        if (u, v) not in rep:
            edges.append((u, v))
        if (u, v) in rep or (u, v) in par:
            ln = rng.randint(1, max_len)
            path = [u] + list(range(nxt, nxt + ln)) + [v]
            nxt += ln
            edges += list(zip(path, path[1:]))
    return Graph(range(nxt), edges)


def _sample_wheel(rng, lo, hi) -> LabeledGraph:
    r = rng.randint(6, max(6, min(hi // 2, 60)))
    links = [rng.choice(("edge", "thread", "both")) for _ in range(r)]
    lengths = [rng.randint(1, 3) for _ in range(r)]
    return LabeledGraph(wheel_sandwich(r, links, lengths), Verdict.ASP_P, f"Sr_Wr({r})")


def _sample_ke3r(rng, lo, hi) -> LabeledGraph:
    r = rng.randint(4, max(4, min(hi - 6, 200)))
    tri_e = [i for i in range(3) if rng.random() < 0.5]
    tri_t = [i for i in range(3) if rng.random() < 0.5]
    g = ke3r_sandwich(r, tri_e, tri_t, [rng.randint(1, 3) for _ in range(3)])
    return LabeledGraph(g, Verdict.ASP, f"KE3r_Dr({r})")


def _sample_truncated(rng, lo, hi) -> LabeledGraph:
    n = rng.randint(2, max(2, hi // 6)) * 2
    g = truncate_cubic(random_cubic(rng, n))
    return LabeledGraph(g, Verdict.ASP_P, "TruncatedCubic")


def _sample_fishpond(rng, lo, hi) -> LabeledGraph:
    if rng.random() < 0.5:
        # total subdivision of a 3-connected graph
        kind = rng.random()
        if kind < 0.4:
            base = random_cubic(rng, rng.randint(2, max(2, hi // 5)) * 2)
        elif kind < 0.7:
            base = wheel(rng.randint(3, max(3, min(hi // 3, 80))))
        else:
            base = complete_graph(rng.randint(4, 7))
        return LabeledGraph(total_subdivision(base), Verdict.ASP_P, "Fishpond")
    # truncated cubic graph with some inter-triangle edges turned into threads
    c = random_cubic(rng, rng.randint(2, max(2, hi // 8)) * 2)
    t = truncate_cubic(c)
    bridges = [e for e in t.edges if not _in_triangle(t, e)]
    rep = [e for e in bridges if rng.random() < 0.5]
    par = [e for e in bridges if e not in rep and rng.random() < 0.2]
    return LabeledGraph(_threaded(t, rng, rep, par, 2), Verdict.ASP_P, "Fishpond")


def _in_triangle(g: Graph, e) -> bool:
    u, v = e
    return bool(g.neighbors(u) & g.neighbors(v))


_SAMPLERS = (_sample_wheel, _sample_ke3r, _sample_truncated, _sample_fishpond)


def _glue(rng, a: LabeledGraph, b: LabeledGraph) -> LabeledGraph | None:
    """2-sum along one thread of each graph (edge presence on the pair must agree)."""
    from .graph import skeleton_view

    ta = skeleton_view(a.graph).threads
    tb = skeleton_view(b.graph).threads
    if not ta or not tb:
        return None
    t1 = rng.choice(ta)
    t2 = rng.choice(tb)
    if a.graph.has_edge(*t1.endpoints) != b.graph.has_edge(*t2.endpoints):
        return None
    ga = a.graph.without(t1.interior)
    gb = b.graph.without(t2.interior)
    if a.graph.has_edge(*t1.endpoints):
        gb = gb.without_edges([t2.endpoints])
    u1, v1 = t1.endpoints
    u2, v2 = t2.endpoints
    if rng.random() < 0.5:
        u2, v2 = v2, u2
    ga, _ = ga.relabeled_ints()
    ma = {v: i for i, v in enumerate(a.graph.without(t1.interior).vertices)}
    off = ga.n
    mb = {}
    nxt = off
    for v in gb.vertices:
        if v == u2:
            mb[v] = ma[u1]
        elif v == v2:
            mb[v] = ma[v1]
        else:
            mb[v] = nxt
            nxt += 1
    edges = list(ga.edges) + [(mb[x], mb[y]) for x, y in gb.edges]
    g = Graph(range(nxt), edges)
    label = max(a.label, b.label)
    return LabeledGraph(g, label, f"glue[{a.family}+{b.family}]")


def random_asp_corpus(seed: int, count: int, size_range: tuple[int, int] = (7, 500),
                      aspp_only: bool = False) -> list[LabeledGraph]:
    """Deterministic sample of ASP graphs labelled by construction.

    With ``aspp_only`` the K_{3,r} sandwiches (ASP but not ASP-P) are left out.
    """
    lo, hi = size_range
    rng = random.Random(seed)
    samplers = [s for s in _SAMPLERS if not (aspp_only and s is _sample_ke3r)]
    out: list[LabeledGraph] = []
    while len(out) < count:
        if out and rng.random() < 0.2:
            first = _pick(rng, samplers, lo, hi)
            second = _pick(rng, samplers, lo, hi)
            item = _glue(rng, first, second) if first and second else None
        else:
            item = _pick(rng, samplers, lo, hi)
        if item is not None and lo <= item.graph.n <= hi:
            out.append(item)
    return out


def _pick(rng, samplers, lo, hi) -> LabeledGraph | None:
    for _ in range(20):
        item = rng.choice(samplers)(rng, lo, hi)
        if item.graph.n <= hi:
            return item
    return None
