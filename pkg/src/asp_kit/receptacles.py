"""Blocks and receptacles.

Each block is split into triconnected pieces by repeatedly cutting at
separation pairs (a virtual edge marks every cut).  Pieces are bonds (two
vertices, several edges), polygons (cycles) and rigid graphs.  A rigid piece
with every virtual edge replaced by a one-vertex thread is a receptacle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .graph import Graph, articulation_points, biconnected_components, connected_components, edge_key, vkey

BOND, POLYGON, RIGID = "bond", "polygon", "rigid"


@dataclass(frozen=True)
class Block:
    graph: Graph
    cut_vertices: frozenset


@dataclass(frozen=True)
class Piece:
    """A triconnected piece of a block; ``virtual`` maps virtual-edge id to its pair."""

    kind: str
    vertices: frozenset
    real_edges: tuple
    virtual: Mapping

    @property
    def pairs(self) -> frozenset:
        return frozenset(self.virtual.values())


@dataclass(frozen=True)
class Receptacle:
    graph: Graph
    windows: frozenset
    block: int
    threads: Mapping = field(default_factory=dict)
    """Thread vertex -> window pair it stands for."""
    degenerate: bool = False
    shared_windows: frozenset = frozenset()
    """Windows that also belong to another receptacle of the same block."""

    @property
    def extreme(self) -> bool:
        return len(self.windows) == 1

    @property
    def core_vertices(self) -> frozenset:
        return frozenset(v for v in self.graph.vertices if v not in self.threads)


@dataclass(frozen=True)
class Decomposition:
    host: Graph
    blocks: tuple
    receptacles: tuple
    pieces: tuple
    """Per block, the list of triconnected pieces."""
    remainder: tuple
    """Bond and polygon pieces of blocks that also have rigid pieces."""
    window_adjacency: Mapping
    """Window pair -> indices of receptacles containing it."""
    cut_adjacency: Mapping
    """Cut vertex -> indices of receptacles containing it."""

    def receptacles_of_block(self, b: int) -> list:
        return [r for r in self.receptacles if r.block == b]


def blocks(g: Graph) -> list[Block]:
    """Block decomposition; bridges and isolated vertices are degenerate blocks."""
    cuts = articulation_points(g)
    out = []
    for comp in biconnected_components(g):
        out.append(Block(g.subgraph(comp), frozenset(comp & cuts)))
    out.sort(key=lambda b: [vkey(v) for v in b.graph.vertices])
    return out


# ---------------------------------------------------------------------------
# Triconnected splitting of a 2-connected multigraph
# ---------------------------------------------------------------------------


class _Splitter:
    def __init__(self, g: Graph):
        self.real = {i: e for i, e in enumerate(g.edges)}
        self.next_id = len(self.real)
        self.pairs: dict = dict(self.real)  # edge id -> (u, v)

    def new_virtual(self, u, v) -> int:
        k = self.next_id
        self.next_id += 1
        self.pairs[k] = edge_key(u, v)
        return k

    def run(self) -> list[tuple[str, list]]:
        done = []
        work = [list(self.real)]
        while work:
            ids = work.pop()
            verts = {x for k in ids for x in self.pairs[k]}
            if len(verts) == 2:
                done.append((BOND, ids))
                continue
            by_pair: dict = {}
            for k in ids:
                by_pair.setdefault(self.pairs[k], []).append(k)
            multi = [p for p, ks in by_pair.items() if len(ks) > 1]
            if multi:
                rest = list(ids)
                for p in multi:
                    k = self.new_virtual(*p)
                    done.append((BOND, by_pair[p] + [k]))
                    rest = [x for x in rest if self.pairs[x] != p] + [k]
                work.append(rest)
                continue
            if len(verts) == 3:
                done.append((POLYGON, ids))
                continue
            simple = Graph(verts, by_pair.keys())
            sep = self._separation_pair(simple)
            if sep is None:
                kind = POLYGON if all(simple.degree(v) == 2 for v in simple) else RIGID
                done.append((kind, ids))
                continue
            u, v = sep
            comps = sorted(connected_components(simple, removed=(u, v)), key=lambda c: min(vkey(x) for x in c))
            first = comps[0]
            k = self.new_virtual(u, v)
            side1 = [x for x in ids if set(self.pairs[x]) & first]
            side2 = [x for x in ids if not set(self.pairs[x]) & first]
            work.append(side1 + [k])
            work.append(side2 + [k])
        return done

    @staticmethod
    def _separation_pair(g: Graph):
        for u in g.vertices:
            aps = articulation_points(g, removed=(u,))
            if aps:
                return u, min(aps, key=vkey)
        return None


def _merge(pieces: list[tuple[str, list]], real_count: int, pairs: Mapping) -> list[tuple[str, list]]:
    pieces = [(kind, list(ids)) for kind, ids in pieces]
    changed = True
    while changed:
        changed = False
        owner: dict = {}
        for i, (_, ids) in enumerate(pieces):
            for k in ids:
                if k >= real_count:
                    owner.setdefault(k, []).append(i)
        for k in sorted(owner):
            i, j = owner[k]
            if pieces[i][0] == pieces[j][0] and pieces[i][0] in (BOND, POLYGON):
                merged = [x for x in pieces[i][1] + pieces[j][1] if x != k]
                kind = pieces[i][0]
                pieces = [p for t, p in enumerate(pieces) if t not in (i, j)] + [(kind, merged)]
                changed = True
                break
    return pieces


def triconnected_pieces(block: Graph) -> list[Piece]:
    """Bonds, polygons and rigid pieces of a 2-connected graph."""
    if block.n < 3:
        return []
    sp = _Splitter(block)
    raw = _merge(sp.run(), len(sp.real), sp.pairs)
    out = []
    for kind, ids in raw:
        verts = frozenset(x for k in ids for x in sp.pairs[k])
        real = tuple(sorted((sp.pairs[k] for k in ids if k in sp.real), key=lambda e: (vkey(e[0]), vkey(e[1]))))
        virtual = {k: sp.pairs[k] for k in sorted(ids) if k not in sp.real}
        out.append(Piece(kind, verts, real, virtual))
    out.sort(key=lambda p: ({RIGID: 0, POLYGON: 1, BOND: 2}[p.kind], sorted(vkey(v) for v in p.vertices)))
    return out


# ---------------------------------------------------------------------------
# Receptacles
# ---------------------------------------------------------------------------


def _fresh(host: Graph, taken: set, k) -> tuple:
    name = ("w", k)
    while name in host or name in taken:
        name = ("w", name)
    taken.add(name)
    return name


def receptacles(g: Graph) -> Decomposition:
    """Split ``g`` into blocks and each block into receptacles."""
    blist = blocks(g)
    recs: list[Receptacle] = []
    all_pieces = []
    remainder = []
    taken: set = set()
    for bi, blk in enumerate(blist):
        pieces = triconnected_pieces(blk.graph)
        all_pieces.append(tuple(pieces))
        rigid = [p for p in pieces if p.kind == RIGID]
        if not rigid:
            windows = frozenset(tuple(sorted(p.vertices, key=vkey)) for p in pieces if p.kind == BOND)
            recs.append(Receptacle(blk.graph, windows, bi, {}, degenerate=True))
            continue
        remainder.extend((bi, p) for p in pieces if p.kind != RIGID)
        holder: dict = {}
        for p in pieces:
            for k in p.virtual:
                holder.setdefault(k, []).append(p)
        for p in rigid:
            edges = list(p.real_edges)
            extra = []
            threads = {}
            windows = set()
            for k, (u, v) in p.virtual.items():
                other = next(q for q in holder[k] if q is not p)
                windows.add(edge_key(u, v))
                if other.kind == BOND and (u, v) in other.real_edges:
                    edges.append((u, v))
                    if len(other.virtual) == 1:
                        continue
                t = _fresh(g, taken, k)
                threads[t] = edge_key(u, v)
                extra.append(t)
                edges += [(u, t), (t, v)]
            rg = Graph(sorted(p.vertices, key=vkey) + extra, edges)
            recs.append(Receptacle(rg, frozenset(windows), bi, threads))
    win_adj: dict = {}
    cut_adj: dict = {}
    cuts = articulation_points(g)
    for i, r in enumerate(recs):
        for w in r.windows:
            win_adj.setdefault(w, []).append(i)
        for v in r.core_vertices & cuts:
            cut_adj.setdefault(v, []).append(i)
    shared = {w for w, ids in win_adj.items() if len(ids) > 1}
    recs = [
        Receptacle(r.graph, r.windows, r.block, r.threads, r.degenerate, frozenset(r.windows & shared)) for r in recs
    ]
    return Decomposition(
        host=g,
        blocks=tuple(blist),
        receptacles=tuple(recs),
        pieces=tuple(all_pieces),
        remainder=tuple(remainder),
        window_adjacency={w: tuple(ids) for w, ids in win_adj.items()},
        cut_adjacency={v: tuple(ids) for v, ids in cut_adj.items()},
    )


def lift_receptacle_path(block: Graph, rec: Receptacle, path) -> tuple:
    """Replace thread vertices of a receptacle path by real paths of the block."""
    out: list = []
    core = rec.core_vertices
    for i, v in enumerate(path):
        pair = rec.threads.get(v)
        if pair is None:
            out.append(v)
            continue
        u, w = pair
        if i > 0 and path[i - 1] == w:
            u, w = w, u
        route = _route(block, u, w, core - {u, w})
        out.extend(route[1:-1])
    return tuple(out)


def _route(g: Graph, a, b, blocked: frozenset) -> tuple:
    """Shortest a-b path of length at least 2 avoiding ``blocked`` and the edge ab."""
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in sorted(g.neighbors(x), key=vkey):
            if y in parent or y in blocked or (x == a and y == b):
                continue
            parent[y] = x
            if y == b:
                path = [b]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            queue.append(y)
    raise ValueError(f"no route between {a!r} and {b!r} outside the receptacle")


def lift_receptacle_witness(dec: Decomposition, rec: Receptacle, witness):
    from .oracle import ForbiddenWitness

    block = dec.blocks[rec.block].graph
    return ForbiddenWitness(
        witness.branch_vertices,
        tuple(lift_receptacle_path(block, rec, p) for p in witness.branch_paths),
    )


@dataclass(frozen=True)
class RuleResult:
    ok: bool
    per_receptacle: tuple


def is_asp_via_receptacles(
    g: Graph, forbidden: Iterable = None, decide: Callable[[Receptacle], bool] | None = None
) -> RuleResult:
    """AND over receptacles of "contains no subdivision with a shape in ``forbidden``".

    ``decide`` overrides the per-receptacle test; by default the structural
    classifier is used for the ASP and ASP-P shape sets and the oracle otherwise.
    """
    from .oracle import ASP_FORBIDDEN, ASPP_FORBIDDEN, Shape, find_forbidden

    forbidden = ASP_FORBIDDEN if forbidden is None else frozenset(Shape(s) for s in forbidden)
    if decide is None:
        if forbidden in (ASP_FORBIDDEN, ASPP_FORBIDDEN):
            from .classifier import classify_receptacle

            want_aspp = forbidden == ASPP_FORBIDDEN

            def decide(r):
                v = classify_receptacle(r).verdict
                return v.is_aspp() if want_aspp else v.is_asp()

        else:

            def decide(r):
                return r.degenerate or find_forbidden(r.graph, forbidden) is None

    results = tuple((r, bool(decide(r))) for r in receptacles(g).receptacles)
    return RuleResult(all(ok for _, ok in results), results)
