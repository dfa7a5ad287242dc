"""Simple undirected graphs and the connectivity primitives built on them.

Vertices are arbitrary hashable identifiers.  All containers handed out are
immutable and every enumeration follows :func:`vkey` order, so results are
reproducible run to run.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import GraphError, SizeLimitExceeded

Vertex = Hashable
Edge = tuple  # (u, v) with vkey(u) < vkey(v)


def vkey(v):
    """Total order over mixed vertex identifiers (ints, strings, tuples)."""
    if isinstance(v, bool):
        return (3, repr(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(vkey(x) for x in v))
    return (3, repr(v))


def edge_key(u, v) -> Edge:
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_adj", "_order", "_index", "_hash", "_edges")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Sequence[Vertex]] = ()):
        adj: dict = {v: set() for v in vertices}
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            if u not in adj or v not in adj:
                missing = u if u not in adj else v
                raise GraphError(f"edge {u!r}-{v!r} uses undeclared vertex {missing!r}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge {u!r}-{v!r}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._order = tuple(sorted(self._adj, key=vkey))
        self._index = None
        self._hash = None
        self._edges = None

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[Vertex]], vertices: Iterable[Vertex] = (), dedupe: bool = False) -> "Graph":
        edges = [tuple(e) for e in edges]
        if dedupe:
            edges = sorted({edge_key(u, v) for u, v in edges}, key=lambda e: (vkey(e[0]), vkey(e[1])))
        verts = dict.fromkeys(vertices)
        for u, v in edges:
            verts.setdefault(u)
            verts.setdefault(v)
        return cls(verts, edges)

    @classmethod
    def from_adjacency(cls, adj: Mapping[Vertex, Iterable[Vertex]]) -> "Graph":
        edges = {edge_key(u, v) for u, nb in adj.items() for v in nb}
        verts = set(adj)
        for u, v in edges:
            verts.add(u)
            verts.add(v)
        return cls(verts, edges)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._order

    @property
    def edges(self) -> tuple:
        if self._edges is None:
            pos = {v: i for i, v in enumerate(self._order)}
            out = []
            for u in self._order:
                for v in self._adj[u]:
                    if pos[u] < pos[v]:
                        out.append((u, v))
            out.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
            self._edges = tuple(out)
        return self._edges

    @property
    def n(self) -> int:
        return len(self._order)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator:
        return iter(self._order)

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def degree(self, v) -> int:
        return len(self._adj[v])

    def has_edge(self, u, v) -> bool:
        return u in self._adj and v in self._adj[u]

    def max_degree(self) -> int:
        return max((len(nb) for nb in self._adj.values()), default=0)

    def min_degree(self) -> int:
        return min((len(nb) for nb in self._adj.values()), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs -------------------------------------------------

    def subgraph(self, vertices: Iterable[Vertex]) -> "Graph":
        keep = set(vertices)
        edges = [(u, v) for u, v in self.edges if u in keep and v in keep]
        return Graph([v for v in self._order if v in keep], edges)

    def without(self, vertices: Iterable[Vertex]) -> "Graph":
        drop = set(vertices)
        return self.subgraph(v for v in self._order if v not in drop)

    def edge_subgraph(self, edges: Iterable[Sequence[Vertex]]) -> "Graph":
        return Graph.from_edges(edges)

    def with_edges(self, edges: Iterable[Sequence[Vertex]], vertices: Iterable[Vertex] = ()) -> "Graph":
        verts = list(self._order) + [v for v in vertices if v not in self._adj]
        return Graph(verts, list(self.edges) + [tuple(e) for e in edges])

    def without_edges(self, edges: Iterable[Sequence[Vertex]]) -> "Graph":
        drop = {edge_key(*e) for e in edges}
        return Graph(self._order, [e for e in self.edges if e not in drop])

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "Graph":
        verts = [mapping.get(v, v) for v in self._order]
        if len(set(verts)) != len(verts):
            raise GraphError("relabeling is not injective")
        return Graph(verts, [(mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges])

    def relabeled_ints(self) -> tuple["Graph", dict]:
        """Relabel to ``0..n-1`` in :func:`vkey` order; returns the graph and the map."""
        mapping = {v: i for i, v in enumerate(self._order)}
        return self.relabel(mapping), mapping

    def disjoint_union(self, other: "Graph") -> "Graph":
        if set(self._adj) & set(other._adj):
            raise GraphError("vertex sets overlap")
        return Graph(self._order + other._order, self.edges + other.edges)

    # -- bitmask view used by the search engines --------------------------

    def indexed(self) -> tuple[tuple, dict, list]:
        """``(order, index, adjacency bitmasks)`` cached on the instance."""
        if self._index is None:
            index = {v: i for i, v in enumerate(self._order)}
            masks = [0] * len(self._order)
            for v, nb in self._adj.items():
                m = 0
                for u in nb:
                    m |= 1 << index[u]
                masks[index[v]] = m
            self._index = (self._order, index, masks)
        return self._index


# ---------------------------------------------------------------------------
# Skeleton, threads, windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Thread:
    """A maximal chain of 2-valent vertices joining two skeleton vertices.

    ``interior`` is listed starting next to ``endpoints[0]``, the smaller endpoint.
    """

    endpoints: tuple
    interior: tuple

    def __post_init__(self):
        if not self.interior:
            raise GraphError("a thread needs at least one interior vertex")

    @property
    def window(self) -> Edge:
        return self.endpoints

    def path(self) -> tuple:
        return (self.endpoints[0], *self.interior, self.endpoints[1])


@dataclass(frozen=True)
class SkeletonView:
    base: Graph
    skeleton_vertices: frozenset
    skeleton_edges: frozenset
    threads: tuple
    windows: frozenset
    star_degree: Mapping
    n1: Mapping
    n2: Mapping
    bare_circuits: tuple = ()

    def links(self, v) -> frozenset:
        """``N(v)``: neighbours of a skeleton vertex through edges or threads."""
        return self.n1[v] | self.n2[v]

    def skeleton_graph(self) -> Graph:
        return Graph.from_edges(self.skeleton_edges)

    def parallel_windows(self) -> tuple:
        """Windows carried by two or more threads."""
        seen: dict = {}
        for t in self.threads:
            seen[t.window] = seen.get(t.window, 0) + 1
        return tuple(w for w, c in seen.items() if c > 1)


def skeleton_view(g: Graph) -> SkeletonView:
    """Skeleton vertices/edges, threads, windows and the N¹/N² neighbourhoods.

    Degree-2 chains that end in a vertex of degree at most 1, or that return to
    the skeleton vertex they started from, are not threads and are skipped.
    Components that are bare circuits are reported in ``bare_circuits``.
    """
    star = frozenset(v for v in g if g.degree(v) >= 3)
    sk_edges = frozenset(e for e in g.edges if e[0] in star and e[1] in star)
    threads = []
    seen_interior: set = set()
    for s in g.vertices:
        if s not in star:
            continue
        for w in sorted(g.neighbors(s), key=vkey):
            if g.degree(w) != 2 or w in seen_interior:
                continue
            chain = [w]
            prev, cur = s, w
            while g.degree(cur) == 2:
                a, b = g.neighbors(cur)
                nxt = b if a == prev else a
                prev, cur = cur, nxt
                if g.degree(cur) == 2:
                    chain.append(cur)
            end = cur
            seen_interior.update(chain)
            if end == s or end not in star:
                continue
            if vkey(s) <= vkey(end):
                threads.append(Thread((s, end), tuple(chain)))
            else:
                threads.append(Thread((end, s), tuple(reversed(chain))))
    threads.sort(key=lambda t: (vkey(t.endpoints[0]), vkey(t.endpoints[1]), [vkey(x) for x in t.interior]))
    windows = frozenset(t.window for t in threads)
    n1 = {v: frozenset(u for u in g.neighbors(v) if u in star) for v in star}
    n2: dict = {v: set() for v in star}
    for a, b in windows:
        n2[a].add(b)
        n2[b].add(a)
    bare = []
    for comp in connected_components(g):
        if len(comp) >= 3 and all(g.degree(v) == 2 for v in comp):
            bare.append(tuple(sorted(comp, key=vkey)))
    return SkeletonView(
        base=g,
        skeleton_vertices=star,
        skeleton_edges=sk_edges,
        threads=tuple(threads),
        windows=windows,
        star_degree={v: len(n1[v]) for v in star},
        n1=n1,
        n2={v: frozenset(s) for v, s in n2.items()},
        bare_circuits=tuple(bare),
    )


def normalize_threads_with_map(g: Graph) -> tuple[Graph, dict]:
    """Shorten every thread to a single interior vertex.

    Returns the new graph and a map from each kept interior vertex (the one next
    to the thread's smaller endpoint) to its :class:`Thread` in ``g``.
    """
    view = skeleton_view(g)
    drop = set()
    new_edges = []
    lift = {}
    for t in view.threads:
        lift[t.interior[0]] = t
        if len(t.interior) >= 2:
            drop.update(t.interior[1:])
            new_edges.append((t.interior[0], t.endpoints[1]))
    if not drop:
        return g, lift
    keep = [v for v in g.vertices if v not in drop]
    edges = [e for e in g.edges if e[0] not in drop and e[1] not in drop]
    return Graph(keep, edges + new_edges), lift


def normalize_threads(g: Graph) -> Graph:
    return normalize_threads_with_map(g)[0]


def lift_path(path: Sequence[Vertex], lift: Mapping[Vertex, Thread]) -> tuple:
    """Expand kept thread vertices of a path in the normalized graph."""
    out: list = []
    for i, v in enumerate(path):
        t = lift.get(v)
        if t is None or len(t.interior) == 1:
            out.append(v)
            continue
        prev = path[i - 1] if i > 0 else None
        nxt = path[i + 1] if i + 1 < len(path) else None
        forward = prev == t.endpoints[0] or (prev is None and nxt == t.endpoints[1])
        out.extend(t.interior if forward else reversed(t.interior))
    return tuple(out)


# ---------------------------------------------------------------------------
# Connectivity
# ---------------------------------------------------------------------------


def connected_components(g: Graph, removed: Iterable[Vertex] = ()) -> list[frozenset]:
    gone = set(removed)
    seen = set(gone)
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = [s]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def articulation_points(g: Graph, removed: Iterable[Vertex] = ()) -> set:
    """Cut vertices of ``g - removed`` (iterative Hopcroft-Tarjan lowpoint)."""
    gone = set(removed)
    disc: dict = {}
    low: dict = {}
    cuts = set()
    counter = 0
    for root in g.vertices:
        if root in gone or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w in gone:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is not None:
                low[parent] = min(low[parent], low[v])
                if parent != root and low[v] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return cuts


def biconnected_components(g: Graph) -> list[frozenset]:
    """Vertex sets of the blocks: bridges give 2-sets, isolated vertices 1-sets."""
    disc: dict = {}
    low: dict = {}
    out = []
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        if g.degree(root) == 0:
            disc[root] = counter
            counter += 1
            out.append(frozenset([root]))
            continue
        disc[root] = low[root] = counter
        counter += 1
        estack: list = []
        stack = [(root, None, iter(sorted(g.neighbors(root), key=vkey)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(sorted(g.neighbors(w), key=vkey))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    estack.append((v, w))
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                while True:
                    a, b = estack.pop()
                    comp.add(a)
                    comp.add(b)
                    if (a, b) == (parent, v):
                        break
                out.append(frozenset(comp))
    return out


def is_two_connected(g: Graph) -> bool:
    if g.n < 3:
        return g.n == 2 and g.m == 1
    return is_connected(g) and not articulation_points(g)


def is_three_connected(g: Graph) -> bool:
    """Vertex connectivity at least 3 (needs at least 4 vertices)."""
    if g.n < 4 or not is_two_connected(g):
        return False
    return not any(articulation_points(g, removed=(u,)) for u in g.vertices)


# ---------------------------------------------------------------------------
# Menger: vertex-split unit flow
# ---------------------------------------------------------------------------

_BIG = 1 << 30
_SINK = ("__sink__",)


class _SplitFlow:
    """Max-flow on the split digraph ``v_in -> v_out`` with unit vertex capacity."""

    def __init__(self, g: Graph, source, targets, target_capacity: int, skip_edge=None, removed=()):
        self.res: dict = {}
        self.orig: dict = {}
        self.source = (source, 1)
        removed = set(removed)
        targets = set(targets)
        for v in g.vertices:
            if v in removed:
                continue
            if v != source and v not in targets:
                self._arc((v, 0), (v, 1), 1)
        for t in targets:
            self._arc((t, 0), _SINK, target_capacity)
        for u, v in g.edges:
            if u in removed or v in removed:
                continue
            if skip_edge is not None and {u, v} == set(skip_edge):
                continue
            for a, b in ((u, v), (v, u)):
                if a in targets or b == source:
                    continue
                self._arc((a, 1), (b, 0), _BIG)

    def _arc(self, a, b, c):
        self.res.setdefault(a, {})
        self.res.setdefault(b, {})
        self.res[a][b] = self.res[a].get(b, 0) + c
        self.res[b].setdefault(a, 0)
        self.orig.setdefault(a, {})
        self.orig[a][b] = self.orig[a].get(b, 0) + c

    def preload(self, path: Sequence[Vertex]):
        nodes = [self.source]
        for w in path[1:-1]:
            nodes += [(w, 0), (w, 1)]
        nodes += [(path[-1], 0), _SINK]
        for a, b in zip(nodes, nodes[1:]):
            if self.res.get(a, {}).get(b, 0) <= 0:
                raise GraphError(f"hint path {path!r} is not a valid fan path")
            self.res[a][b] -= 1
            self.res[b][a] += 1

    def augment(self) -> bool:
        if self.source not in self.res:
            return False
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            a = queue.popleft()
            if a == _SINK:
                break
            for b, c in self.res[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if _SINK not in parent:
            return False
        b = _SINK
        while parent[b] is not None:
            a = parent[b]
            self.res[a][b] -= 1
            self.res[b][a] += 1
            b = a
        return True

    def run(self, limit: int | None = None) -> int:
        count = self.flow_value()
        while (limit is None or count < limit) and self.augment():
            count += 1
        return count

    def flow_value(self) -> int:
        total = 0
        for a, outs in self.orig.items():
            if _SINK in outs:
                total += outs[_SINK] - self.res[a][_SINK]
        return total

    def paths(self) -> list[tuple]:
        nxt: dict = {}
        starts = []
        for a, outs in self.orig.items():
            for b, c in outs.items():
                used = c - self.res[a][b]
                if used <= 0 or b == _SINK or a[1] == 0:
                    continue
                if a == self.source:
                    starts.extend([b[0]] * used)
                else:
                    nxt[a[0]] = b[0]
        sinks = {a[0] for a, outs in self.orig.items() if _SINK in outs}
        out = []
        for s in sorted(starts, key=vkey):
            path = [self.source[0], s]
            while path[-1] not in sinks:
                path.append(nxt[path[-1]])
            out.append(tuple(path))
        return out

    def cut(self) -> frozenset:
        seen = {self.source}
        queue = [self.source]
        while queue:
            a = queue.pop()
            for b, c in self.res.get(a, {}).items():
                if c > 0 and b not in seen:
                    seen.add(b)
                    queue.append(b)
        cut = set()
        for node in seen:
            if node == _SINK or node == self.source:
                continue
            v, side = node
            if side == 0 and (v, 1) not in seen and (v, 1) in self.res:
                cut.add(v)
            elif side == 0 and _SINK in self.res[node] and self.res[node][_SINK] == 0:
                cut.add(v)
        return frozenset(cut)


def internally_disjoint_path_count(g: Graph, x, y) -> int:
    """Maximum number of internally vertex-disjoint x-y paths; an edge xy counts once."""
    if x == y or x not in g or y not in g:
        raise GraphError("need two distinct vertices of the graph")
    flow = _SplitFlow(g, x, {y}, _BIG, skip_edge=(x, y))
    return flow.run() + (1 if g.has_edge(x, y) else 0)


def disjoint_paths(g: Graph, x, y, limit: int | None = None) -> list[tuple]:
    """A maximum family of internally disjoint x-y paths (edge xy included first)."""
    flow = _SplitFlow(g, x, {y}, _BIG, skip_edge=(x, y))
    direct = [(x, y)] if g.has_edge(x, y) else []
    flow.run(None if limit is None else limit - len(direct))
    return direct + flow.paths()


def min_vertex_cut(g: Graph, x, y) -> frozenset:
    """Smallest vertex set separating non-adjacent x and y."""
    if g.has_edge(x, y):
        raise GraphError("adjacent vertices have no separating vertex set")
    flow = _SplitFlow(g, x, {y}, _BIG)
    flow.run()
    return flow.cut()


def is_virtually_3connected(g: Graph) -> bool:
    """2-connected, with three internally disjoint paths between skeleton vertices."""
    if not is_two_connected(g):
        return False
    star = sorted((v for v in g if g.degree(v) >= 3), key=vkey)
    for x, y in combinations(star, 2):
        flow = _SplitFlow(g, x, {y}, _BIG, skip_edge=(x, y))
        need = 3 - (1 if g.has_edge(x, y) else 0)
        if flow.run(need) < need:
            return False
    return True


@dataclass(frozen=True)
class Fan:
    apex: Vertex
    paths: tuple

    @property
    def ends(self) -> tuple:
        return tuple(p[-1] for p in self.paths)

    @property
    def order(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class Disconnector:
    """Vertices separating the apex from the target; smaller than the requested order."""

    apex: Vertex
    vertices: frozenset


def find_fan(g: Graph, v, target, k: int, hint: Iterable[Sequence[Vertex]] = ()) -> Fan | Disconnector:
    """A (v, target)-fan with ``k`` ends, or a disconnector of size below ``k``.

    ``target`` is a vertex collection or a subgraph.  Paths of ``hint`` (a
    partial fan) are kept as flow, so the returned ends contain the hint's ends.
    """
    tset = set(target.vertices) if isinstance(target, Graph) else set(target)
    if v in tset:
        raise GraphError("apex must lie outside the target")
    if len(tset) < k:
        raise GraphError("target has fewer than k vertices")
    flow = _SplitFlow(g, v, tset, 1)
    for p in hint:
        flow.preload(tuple(p))
    if flow.run(k) >= k:
        paths = flow.paths()
        hinted = {tuple(p)[-1] for p in hint}
        paths.sort(key=lambda p: (p[-1] not in hinted, len(p), [vkey(x) for x in p]))
        return Fan(v, tuple(paths[:k]))
    return Disconnector(v, flow.cut())


# ---------------------------------------------------------------------------
# Circuits through three vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class K32Subdivision:
    """Subdivided K_{3,2}: ``paths[(big, small)]`` joins a larger-part vertex to a smaller-part one."""

    larger: tuple
    smaller: tuple
    paths: Mapping


@dataclass(frozen=True)
class CircuitCheck:
    circuit: tuple | None = None
    k32: K32Subdivision | None = None

    def __bool__(self) -> bool:
        return self.circuit is not None


def exists_circuit_through(g: Graph, x, y, z) -> CircuitCheck:
    """Look for a circuit through x, y and z; otherwise try to certify its absence."""
    if len({x, y, z}) != 3:
        raise GraphError("x, y, z must be distinct")
    host = None
    for comp in biconnected_components(g):
        if {x, y, z} <= comp:
            host = g.subgraph(comp)
            break
    if host is None:
        return CircuitCheck()
    cert = _k32_certificate(host, x, y, z)
    if cert is not None:
        return CircuitCheck(k32=cert)
    circuit = _search_circuit(host, x, y, z)
    if circuit is not None:
        return CircuitCheck(circuit=circuit)
    return CircuitCheck(k32=_k32_search(host, x, y, z))


def _k32_certificate(g: Graph, x, y, z) -> K32Subdivision | None:
    others = [v for v in g.vertices if v not in (x, y, z)]
    for a, b in combinations(others, 2):
        comps = connected_components(g, removed=(a, b))
        owner = {}
        for i, comp in enumerate(comps):
            for v in (x, y, z):
                if v in comp:
                    owner[v] = i
        if len(set(owner.values())) != 3:
            continue
        paths = {}
        for v in (x, y, z):
            side = g.subgraph(comps[owner[v]] | {a, b}).without_edges([(a, b)] if g.has_edge(a, b) else [])
            fan = find_fan(side, v, {a, b}, 2)
            if not isinstance(fan, Fan):
                break
            for p in fan.paths:
                paths[(v, p[-1])] = p
        else:
            return K32Subdivision((x, y, z), (a, b), paths)
    return None


def _paths_via(g: Graph, a, b, via, blocked: set):
    """Simple a-b paths through ``via`` whose interiors avoid ``blocked``."""
    stack = [(a, (a,))]
    while stack:
        v, path = stack.pop()
        for w in sorted(g.neighbors(v), key=vkey, reverse=True):
            if w == b:
                if via in path and len(path) > 1:
                    yield path + (b,)
            elif w not in path and w not in blocked:
                stack.append((w, path + (w,)))


def _k32_search(g: Graph, x, y, z) -> K32Subdivision | None:
    """Three internally disjoint a-b paths through x, y and z respectively."""
    big = (x, y, z)
    others = [v for v in g.vertices if v not in big]

    def extend(a, b, i, used, found):
        if i == 3:
            return found
        rest = set(big[i + 1:])
        for p in _paths_via(g, a, b, big[i], used | rest):
            got = extend(a, b, i + 1, used | set(p[1:-1]), found + [p])
            if got:
                return got
        return None

    for a, b in combinations(others, 2):
        found = extend(a, b, 0, set(), [])
        if found:
            paths = {}
            for v, p in zip(big, found):
                k = p.index(v)
                paths[(v, a)] = tuple(reversed(p[: k + 1]))
                paths[(v, b)] = p[k:]
            return K32Subdivision(big, (a, b), paths)
    return None


def _search_circuit(g: Graph, x, y, z) -> tuple | None:
    """Backtrack over x-z paths avoiding y; close each through a 2-fan from y."""
    stack = [(x, (x,))]
    while stack:
        v, path = stack.pop()
        if v == z:
            inner = set(path[1:-1])
            fan = find_fan(g.without(inner), y, {x, z}, 2)
            if isinstance(fan, Fan):
                to = {p[-1]: p for p in fan.paths}
                return _close(path, to[z], to[x])
            continue
        for w in sorted(g.neighbors(v), key=vkey, reverse=True):
            if w not in path and w != y:
                stack.append((w, path + (w,)))
    return None


def _close(xz, yz, yx) -> tuple:
    # x ... z  then z ... y (reverse of y->z) then y ... x (without repeating x)
    cyc = list(xz) + list(reversed(yz))[1:] + list(yx)[1:-1]
    return tuple(cyc)


# ---------------------------------------------------------------------------
# Small-graph isomorphism and canonical forms
# ---------------------------------------------------------------------------

ISO_LIMIT = 12


def _refine(masks: list, cells: list) -> list:
    """Equitable refinement of an ordered partition (cells are lists of indices)."""
    cells = [list(c) for c in cells]
    changed = True
    while changed:
        changed = False
        for si in range(len(cells)):
            smask = 0
            for v in cells[si]:
                smask |= 1 << v
            new = []
            split = False
            for c in cells:
                if len(c) == 1:
                    new.append(c)
                    continue
                groups: dict = {}
                for v in c:
                    groups.setdefault(bin(masks[v] & smask).count("1"), []).append(v)
                if len(groups) == 1:
                    new.append(c)
                else:
                    split = True
                    for key in sorted(groups):
                        new.append(groups[key])
            if split:
                cells = new
                changed = True
                break
    return cells


def _code(masks: list, order: list) -> int:
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    code = 0
    for i, v in enumerate(order):
        m = masks[v]
        for j in range(i + 1, n):
            if m >> order[j] & 1:
                code |= 1 << (i * n + j)
    return code


def canonical_form(g: Graph, limit: int = ISO_LIMIT) -> tuple:
    """Isomorphism-invariant certificate ``(n, code)`` by individualisation-refinement."""
    if g.n > limit:
        raise SizeLimitExceeded(g.n, limit)
    _, _, masks = g.indexed()
    n = g.n
    if n == 0:
        return (0, 0)
    deg_cells: dict = {}
    for v in range(n):
        deg_cells.setdefault(bin(masks[v]).count("1"), []).append(v)
    start = _refine(masks, [deg_cells[d] for d in sorted(deg_cells)])
    best = [-1]

    def search(cells):
        if all(len(c) == 1 for c in cells):
            code = _code(masks, [c[0] for c in cells])
            if code > best[0]:
                best[0] = code
            return
        ci = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        cell = cells[ci]
        tried = []
        for v in cell:
            # twins inside one cell give isomorphic subtrees
            if any((masks[v] & ~(1 << u)) == (masks[u] & ~(1 << v)) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(_refine(masks, cells[:ci] + [[v], rest] + cells[ci + 1:]))

    search(start)
    return (n, best[0])


def is_isomorphic_small(g: Graph, h: Graph, limit: int = ISO_LIMIT) -> bool:
    """Exact isomorphism test for graphs of at most ``limit`` vertices."""
    for x in (g, h):
        if x.n > limit:
            raise SizeLimitExceeded(x.n, limit)
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in g) != sorted(h.degree(v) for v in h):
        return False
    return canonical_form(g, limit) == canonical_form(h, limit)
