"""Brute-force detection of K4 subdivisions, sorted by the shape of their skeleton.

Two engines are provided.  :func:`enumerate_k4_subdivisions` is the naive
search: every 4-set of branch vertices, then backtracking over all simple
connecting paths.  :func:`find_forbidden` uses a reduction that keeps the
search exact but much smaller: a subdivided branch path can always be swapped
for an induced one whose interior is contained in the original, so only
inclusion-minimal interiors need to be tried, and the six slots are filled
by a dynamic program over the set of used interior vertices.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import GraphError, NotASPInput, SizeLimitExceeded, oracle_limit
from .graph import Graph, edge_key, lift_path, normalize_threads_with_map, vkey


class Shape(str, enum.Enum):
    EMPTY = "Empty"
    ONE_EDGE = "OneEdge"
    TWO_MATCHING = "TwoMatching"
    P3 = "P3"
    P4 = "P4"
    TRIANGLE = "Triangle"
    CLAW = "Claw"
    C4 = "C4"
    PAW = "Paw"
    DIAMOND = "Diamond"
    K4 = "K4"

    def __str__(self) -> str:
        return self.value


class Verdict(enum.IntEnum):
    """Membership, ordered so that a larger value means a larger class."""

    SP = 0
    ASP_P = 1
    ASP = 2
    NON_ASP = 3

    @property
    def label(self) -> str:
        return {0: "SP", 1: "ASP-P", 2: "ASP", 3: "NonASP"}[self.value]

    def is_asp(self) -> bool:
        return self <= Verdict.ASP

    def is_aspp(self) -> bool:
        return self <= Verdict.ASP_P


ALL_SHAPES = frozenset(Shape)
ASP_FORBIDDEN = frozenset({Shape.P3, Shape.P4})
ASPP_FORBIDDEN = frozenset({Shape.P3, Shape.P4, Shape.C4})

# the six K4 edge slots over branch positions 0..3, in fixed order
SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def shape_of_slots(mask: int) -> Shape:
    """Shape of the K4-edge subset given as a 6-bit mask over :data:`SLOTS`."""
    return _SHAPE_TABLE[mask]


def _build_shape_table() -> tuple:
    table = []
    for mask in range(64):
        deg = [0, 0, 0, 0]
        count = 0
        for s, (i, j) in enumerate(SLOTS):
            if mask >> s & 1:
                deg[i] += 1
                deg[j] += 1
                count += 1
        seq = tuple(sorted(deg))
        if count == 0:
            shape = Shape.EMPTY
        elif count == 1:
            shape = Shape.ONE_EDGE
        elif count == 2:
            shape = Shape.TWO_MATCHING if seq == (1, 1, 1, 1) else Shape.P3
        elif count == 3:
            shape = {(1, 1, 2, 2): Shape.P4, (0, 2, 2, 2): Shape.TRIANGLE, (1, 1, 1, 3): Shape.CLAW}[seq]
        elif count == 4:
            shape = Shape.C4 if seq == (2, 2, 2, 2) else Shape.PAW
        elif count == 5:
            shape = Shape.DIAMOND
        else:
            shape = Shape.K4
        table.append(shape)
    return tuple(table)


_SHAPE_TABLE = _build_shape_table()


@dataclass(frozen=True)
class ForbiddenWitness:
    """An embedded K4 subdivision: branch vertices and six paths in :data:`SLOTS` order."""

    branch_vertices: tuple
    branch_paths: tuple

    @property
    def slot_mask(self) -> int:
        return sum(1 << s for s, p in enumerate(self.branch_paths) if len(p) == 2)

    @property
    def shape(self) -> Shape:
        return shape_of_slots(self.slot_mask)

    @property
    def skeleton_edges(self) -> tuple:
        return tuple(edge_key(*p) for p in self.branch_paths if len(p) == 2)

    def vertices(self) -> frozenset:
        return frozenset(v for p in self.branch_paths for v in p)

    def edges(self) -> frozenset:
        return frozenset(edge_key(a, b) for p in self.branch_paths for a, b in zip(p, p[1:]))

    def as_dict(self) -> dict:
        return {
            "branch_vertices": list(self.branch_vertices),
            "branch_paths": [list(p) for p in self.branch_paths],
            "shape": self.shape.value,
        }


def skeleton_shape_of(w: ForbiddenWitness) -> Shape:
    """Shape formed by the unsubdivided branch paths (table lookup)."""
    return w.shape


def validate_witness(g: Graph, w: ForbiddenWitness) -> None:
    """Raise :class:`GraphError` unless ``w`` is a genuine K4 subdivision in ``g``."""
    bv = w.branch_vertices
    if len(bv) != 4 or len(set(bv)) != 4:
        raise GraphError("witness needs four distinct branch vertices")
    if len(w.branch_paths) != 6:
        raise GraphError("witness needs six branch paths")
    seen: set = set(bv)
    for (i, j), path in zip(SLOTS, w.branch_paths):
        if len(path) < 2 or {path[0], path[-1]} != {bv[i], bv[j]}:
            raise GraphError(f"path {path!r} does not join {bv[i]!r} and {bv[j]!r}")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise GraphError(f"{a!r}-{b!r} is not an edge")
        for v in path[1:-1]:
            if v in seen:
                raise GraphError(f"vertex {v!r} used twice")
            seen.add(v)
    # recompute the shape from the embedded subgraph: skeleton edges are
    # edges of the witness whose ends are both 3-valent inside it
    deg: dict = {}
    for a, b in w.edges():
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    pos = {v: k for k, v in enumerate(bv)}
    mask = 0
    for a, b in w.edges():
        if deg[a] >= 3 and deg[b] >= 3:
            i, j = sorted((pos[a], pos[b]))
            mask |= 1 << SLOTS.index((i, j))
    if shape_of_slots(mask) != w.shape:
        raise GraphError("recorded shape disagrees with the embedded subgraph")


def is_valid_witness(g: Graph, w: ForbiddenWitness) -> bool:
    try:
        validate_witness(g, w)
    except GraphError:
        return False
    return True


# ---------------------------------------------------------------------------
# Naive enumerator
# ---------------------------------------------------------------------------


def _check_size(g: Graph, limit: int | None) -> None:
    bound = oracle_limit() if limit is None else limit
    if g.n > bound:
        raise SizeLimitExceeded(g.n, bound, "oracle input")


def _simple_paths(g: Graph, a, b, blocked: set) -> list[tuple]:
    out = []
    stack = [(a, (a,), {a})]
    while stack:
        v, path, on = stack.pop()
        for w in g.neighbors(v):
            if w == b:
                out.append(path + (b,))
            elif w not in on and w not in blocked:
                stack.append((w, path + (w,), on | {w}))
    out.sort(key=lambda p: (len(p), [vkey(x) for x in p]))
    return out


def enumerate_k4_subdivisions(g: Graph, limit: int | None = None) -> Iterator[ForbiddenWitness]:
    """Stream every K4 subdivision of ``g`` (each branch 4-set in sorted order)."""
    _check_size(g, limit)
    cand = [v for v in g.vertices if g.degree(v) >= 3]
    for bv in combinations(cand, 4):
        bset = set(bv)
        yield from _fill_naive(g, bv, bset, 0, set(), [])


def _fill_naive(g, bv, bset, slot, used, chosen):
    if slot == 6:
        yield ForbiddenWitness(tuple(bv), tuple(chosen))
        return
    i, j = SLOTS[slot]
    a, b = bv[i], bv[j]
    blocked = (bset - {a, b}) | used
    for path in _simple_paths(g, a, b, blocked):
        inner = set(path[1:-1])
        chosen.append(path)
        yield from _fill_naive(g, bv, bset, slot + 1, used | inner, chosen)
        chosen.pop()


# ---------------------------------------------------------------------------
# Exact search over minimal interiors
# ---------------------------------------------------------------------------


class _Engine:
    """Bitmask search for K4 subdivisions on one graph (vertices ``0..n-1``)."""

    def __init__(self, g: Graph):
        self.order, self.index, self.adj = g.indexed()
        self.n = len(self.order)
        self._paths: dict = {}

    def minimal_paths(self, a: int, b: int) -> list[tuple[int, tuple]]:
        """Induced a-b paths with at least one interior vertex, ignoring a chord ab.

        Returns ``(interior mask, path)`` pairs; these interiors are exactly the
        inclusion-minimal ones among all a-b paths of length at least 2.
        """
        key = (a, b) if a < b else (b, a)
        hit = self._paths.get(key)
        if hit is not None:
            return hit
        a, b = key
        adj = self.adj
        out = []
        bbit = 1 << b
        # forbid: closed neighbourhoods of all path vertices before the last one
        stack = [(a, (a,), 1 << a, 0)]
        while stack:
            v, path, closed, imask = stack.pop()
            if v != a and adj[v] & bbit:
                out.append((imask, path + (b,)))
                continue
            nb = adj[v] & ~closed & ~bbit
            forbid = closed | adj[v]
            while nb:
                low = nb & -nb
                nb ^= low
                w = low.bit_length() - 1
                if w == a:
                    continue
                stack.append((w, path + (w,), forbid | (1 << w), imask | low))
        self._paths[key] = out
        return out

    def search(self, bv: Sequence[int], want: frozenset | None, stop: frozenset) -> dict:
        """Achievable skeleton masks for branch set ``bv``.

        Returns ``{slot mask: witness paths}`` restricted to masks whose shape
        is in ``want`` (all when ``want`` is None).  Stops early once a shape
        in ``stop`` is reached.
        """
        adj = self.adj
        bmask = 0
        for v in bv:
            bmask |= 1 << v
        # states: (used mask, slot mask) -> back pointer
        layer: dict = {(0, 0): None}
        history = [layer]
        for s, (i, j) in enumerate(SLOTS):
            a, b = bv[i], bv[j]
            options = [(m, p) for m, p in self.minimal_paths(a, b) if not m & bmask]
            direct = bool(adj[a] >> b & 1)
            if not options and not direct:
                return {}
            nxt: dict = {}
            for state in layer:
                used, u = state
                if direct:
                    key = (used, u | (1 << s))
                    if key not in nxt:
                        nxt[key] = (state, (self.order[a], self.order[b]))
                for m, p in options:
                    if m & used:
                        continue
                    key = (used | m, u)
                    if key not in nxt:
                        nxt[key] = (state, tuple(self.order[x] for x in p))
            if not nxt:
                return {}
            layer = nxt
            history.append(layer)
        found: dict = {}
        for state in layer:
            u = state[1]
            shape = _SHAPE_TABLE[u]
            if (want is None or shape in want) and u not in found:
                found[u] = self._backtrack(history, state)
                if shape in stop:
                    break
        return found

    @staticmethod
    def _backtrack(history: list, state) -> tuple:
        paths = []
        for layer in reversed(history[1:]):
            prev, path = layer[state]
            paths.append(path)
            state = prev
        return tuple(reversed(paths))

    def branch_sets(self) -> Iterator[tuple]:
        cand = [v for v in range(self.n) if bin(self.adj[v]).count("1") >= 3]
        return combinations(cand, 4)


def _prepared(g: Graph, normalize: bool) -> tuple[Graph, dict]:
    return normalize_threads_with_map(g) if normalize else (g, {})


def _lift(w: ForbiddenWitness, lift: dict) -> ForbiddenWitness:
    if not any(len(t.interior) > 1 for t in lift.values()):
        return w
    return ForbiddenWitness(w.branch_vertices, tuple(lift_path(p, lift) for p in w.branch_paths))


def find_forbidden(g: Graph, forbidden: Iterable[Shape] = ASP_FORBIDDEN, limit: int | None = None,
                   normalize: bool = True) -> ForbiddenWitness | None:
    """First K4 subdivision whose skeleton shape lies in ``forbidden``, or None.

    Threads are shortened first (shapes are unaffected); the witness is lifted
    back to ``g``.  The size bound applies to the shortened graph.
    """
    forbidden = frozenset(Shape(s) for s in forbidden)
    h, lift = _prepared(g, normalize)
    _check_size(h, limit)
    engine = _Engine(h)
    for bv in engine.branch_sets():
        found = engine.search(bv, forbidden, forbidden)
        if found:
            u = min(found)
            w = ForbiddenWitness(tuple(engine.order[x] for x in bv), found[u])
            return _lift(w, lift)
    return None


@dataclass(frozen=True)
class OracleResult:
    verdict: Verdict
    witness: ForbiddenWitness | None
    """A P3/P4 witness for NonASP, a C4 witness for ASP, any K4 subdivision for ASP-P."""


def oracle_classify(g: Graph, limit: int | None = None, normalize: bool = True) -> OracleResult:
    """Definitional verdict: SP, ASP-P, ASP or NonASP by exhaustive search.

    ``normalize=False`` searches ``g`` as given (slower on long threads).
    """
    h, lift = _prepared(g, normalize)
    _check_size(h, limit)
    engine = _Engine(h)
    any_w = None
    c4_w = None
    for bv in engine.branch_sets():
        found = engine.search(bv, None, ASP_FORBIDDEN)
        if not found:
            continue
        names = tuple(engine.order[x] for x in bv)
        for u, paths in sorted(found.items()):
            shape = _SHAPE_TABLE[u]
            if shape in ASP_FORBIDDEN:
                return OracleResult(Verdict.NON_ASP, _lift(ForbiddenWitness(names, paths), lift))
            if shape == Shape.C4 and c4_w is None:
                c4_w = ForbiddenWitness(names, paths)
            if any_w is None:
                any_w = ForbiddenWitness(names, paths)
    if c4_w is not None:
        return OracleResult(Verdict.ASP, _lift(c4_w, lift))
    if any_w is not None:
        return OracleResult(Verdict.ASP_P, _lift(any_w, lift))
    return OracleResult(Verdict.SP, None)


def oracle_verdict(g: Graph, limit: int | None = None, normalize: bool = True) -> Verdict:
    return oracle_classify(g, limit, normalize).verdict


def achievable_shapes(g: Graph, limit: int | None = None) -> frozenset:
    """Every skeleton shape realised by some K4 subdivision of ``g``."""
    h, _ = normalize_threads_with_map(g)
    _check_size(h, limit)
    engine = _Engine(h)
    shapes = set()
    for bv in engine.branch_sets():
        shapes.update(_SHAPE_TABLE[u] for u in engine.search(bv, None, frozenset()))
    return frozenset(shapes)


def find_forbidden_local(g: Graph, forbidden: Iterable[Shape] = ASP_FORBIDDEN, limit: int | None = None) -> ForbiddenWitness | None:
    """Like :func:`find_forbidden`, trying growing balls around each vertex first.

    A witness inside an induced subgraph is a witness in ``g``, so this only
    changes how fast a witness is found, never whether one exists.
    """
    forbidden = frozenset(Shape(s) for s in forbidden)
    bound = oracle_limit() if limit is None else limit
    h, lift = normalize_threads_with_map(g)
    if h.n <= bound:
        return find_forbidden(g, forbidden, limit)
    tried = set()
    for radius in (2, 3, 4):
        for v in h.vertices:
            if h.degree(v) < 3:
                continue
            ball = _ball(h, v, radius)
            if len(ball) > bound or ball in tried:
                continue
            tried.add(ball)
            w = find_forbidden(h.subgraph(ball), forbidden, bound)
            if w is not None:
                return _lift(w, lift)
    raise SizeLimitExceeded(h.n, bound, "oracle input")


def _ball(g: Graph, v, radius: int) -> frozenset:
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] == radius:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return frozenset(dist)


# ---------------------------------------------------------------------------
# SP reduction and red links
# ---------------------------------------------------------------------------


def is_sp(g: Graph) -> bool:
    """No topological K4: series-parallel reduction empties the graph.

    Repeatedly delete a vertex with at most two neighbours, joining those two
    neighbours (parallel edges merge automatically in a simple graph).
    """
    adj = {v: set(g.neighbors(v)) for v in g.vertices}
    low = deque(v for v in g.vertices if len(adj[v]) <= 2)
    while low:
        v = low.popleft()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = list(adj.pop(v))
        for u in nb:
            adj[u].discard(v)
        if len(nb) == 2:
            x, y = nb
            adj[x].add(y)
            adj[y].add(x)
        for u in nb:
            if len(adj[u]) <= 2:
                low.append(u)
    return not adj


def is_red_link(g: Graph, link: Sequence, kind: str | None = None) -> bool:
    """Would a parallel link of the opposite kind create a P3/P4 skeleton?

    ``kind`` is ``"edge"`` or ``"window"``; by default an existing edge is
    treated as the link, otherwise the pair must be a window of ``g``.
    """
    u, v = link
    if kind is None:
        kind = "edge" if g.has_edge(u, v) else "window"
    witness = find_forbidden(g, ASP_FORBIDDEN)
    if witness is not None:
        raise NotASPInput("input already contains a forbidden subdivision", witness)
    if kind == "edge":
        if not g.has_edge(u, v):
            raise GraphError(f"{u!r}-{v!r} is not an edge")
        fresh = ("red", u, v)
        while fresh in g:
            fresh = ("red", fresh)
        h = g.with_edges([(u, fresh), (fresh, v)], vertices=[fresh])
    elif kind == "window":
        from .graph import skeleton_view

        if edge_key(u, v) not in skeleton_view(g).windows:
            raise GraphError(f"{u!r}-{v!r} is not a window")
        if g.has_edge(u, v):
            raise GraphError(f"{u!r}-{v!r} already carries an edge")
        h = g.with_edges([(u, v)])
    else:
        raise GraphError(f"unknown link kind {kind!r}")
    return find_forbidden(h, ASP_FORBIDDEN) is not None
