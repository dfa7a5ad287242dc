"""Exact chromatic numbers and constructive colorings.

``color_asp`` and ``color_aspp`` peel vertices of degree below the palette
size, colour what is left structurally (blocks, 2-cuts, 3-connected family
members), and put the peeled vertices back greedily.  For an ASP graph with
no K6 (an ASP-P graph with no K5) nothing is left after peeling, so the
structural branch only runs on graphs containing the excluded clique.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (
    ColoringInconsistency,
    GraphError,
    K5Exception,
    K6Exception,
    NotASP,
    NotASPP,
    PreconditionViolated,
    SizeLimitExceeded,
    TagMismatch,
)
from .graph import (
    Graph,
    articulation_points,
    biconnected_components,
    connected_components,
    is_connected,
    is_three_connected,
    skeleton_view,
    vkey,
)

EXACT_LIMIT = 60
BOUNDARY_LIMIT = 30


@dataclass(frozen=True)
class Coloring:
    assignment: Mapping
    palette_size: int

    def __getitem__(self, v) -> int:
        return self.assignment[v]

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def is_proper(self, g: Graph) -> bool:
        return check_coloring(g, self) is None

    def as_dict(self) -> dict:
        return {"palette_size": self.palette_size, "assignment": {str(v): c for v, c in self.assignment.items()}}


def check_coloring(g: Graph, coloring) -> str | None:
    """None when the coloring is total, proper and within its palette; else a reason."""
    a = coloring.assignment if isinstance(coloring, Coloring) else coloring
    k = coloring.palette_size if isinstance(coloring, Coloring) else None
    for v in g.vertices:
        if v not in a:
            return f"vertex {v!r} is uncolored"
        if k is not None and not 0 <= a[v] < k:
            return f"vertex {v!r} has color {a[v]} outside the palette"
    for u, v in g.edges:
        if a[u] == a[v]:
            return f"edge {u!r}-{v!r} is monochromatic"
    return None


def canonical_coloring(g: Graph, assignment: Mapping) -> Coloring:
    """Rename colors in order of first use along the sorted vertex order."""
    rename: dict = {}
    out = {}
    for v in g.vertices:
        c = assignment[v]
        if c not in rename:
            rename[c] = len(rename)
        out[v] = rename[c]
    return Coloring(out, len(rename))


# ---------------------------------------------------------------------------
# Exact solver
# ---------------------------------------------------------------------------


def _popcount(x: int) -> int:
    return bin(x).count("1")


def k_coloring(g: Graph, k: int) -> dict | None:
    """A proper k-coloring by DSATUR backtracking, or None when none exists."""
    order, index, adj = g.indexed()
    n = len(order)
    if n == 0:
        return {}
    if k <= 0:
        return None
    deg = [_popcount(a) for a in adj]
    nbrs = [[j for j in range(n) if adj[i] >> j & 1] for i in range(n)]
    color = [-1] * n
    count = [[0] * k for _ in range(n)]
    sat = [0] * n

    def assign(v, c):
        color[v] = c
        for w in nbrs[v]:
            if count[w][c] == 0:
                sat[w] += 1
            count[w][c] += 1

    def unassign(v, c):
        color[v] = -1
        for w in nbrs[v]:
            count[w][c] -= 1
            if count[w][c] == 0:
                sat[w] -= 1

    def pick():
        best, key = -1, None
        for v in range(n):
            if color[v] < 0:
                kk = (sat[v], deg[v], -v)
                if key is None or kk > key:
                    best, key = v, kk
        return best

    def search(done, used):
        if done == n:
            return True
        v = pick()
        if sat[v] >= k:
            return False
        for c in range(min(k, used + 1)):
            if count[v][c]:
                continue
            assign(v, c)
            if search(done + 1, max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    if not search(0, 0):
        return None
    return {order[i]: color[i] for i in range(n)}


def max_clique(g: Graph) -> tuple:
    """A maximum clique (simple branch and bound on bitmasks)."""
    order, index, adj = g.indexed()
    best: list = [0]
    best_set: list = [()]

    def expand(cand: int, size: int, chosen: tuple):
        if cand == 0:
            if size > best[0]:
                best[0] = size
                best_set[0] = chosen
            return
        while cand:
            if size + _popcount(cand) <= best[0]:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            expand(cand & adj[v], size + 1, chosen + (v,))

    expand((1 << len(order)) - 1, 0, ())
    return tuple(order[i] for i in best_set[0])


def has_clique(g: Graph, size: int) -> bool:
    return len(max_clique(g)) >= size


def chromatic_number_exact(g: Graph, limit: int = EXACT_LIMIT) -> int:
    """Exact chromatic number; raises SizeLimitExceeded above ``limit`` vertices."""
    if g.n > limit:
        raise SizeLimitExceeded(g.n, limit, "exact coloring input")
    if g.n == 0:
        return 0
    lower = max(1, len(max_clique(g)))
    upper = _popcount_colors(_greedy_dsatur(g))
    for k in range(lower, upper):
        if k_coloring(g, k) is not None:
            return k
    return upper


def _popcount_colors(a: Mapping) -> int:
    return len(set(a.values()))


def _greedy_dsatur(g: Graph) -> dict:
    _, index, _ = g.indexed()
    color: dict = {}
    sat = {v: set() for v in g}
    left = set(g.vertices)
    while left:
        v = max(left, key=lambda x: (len(sat[x]), g.degree(x), -index[x]))
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        left.discard(v)
        for w in g.neighbors(v):
            sat[w].add(c)
    return color


def exact_coloring(g: Graph, limit: int = EXACT_LIMIT) -> Coloring:
    k = chromatic_number_exact(g, limit)
    return canonical_coloring(g, k_coloring(g, k))


def _identify(g: Graph, a, b) -> tuple[Graph, object]:
    """Merge b into a; returns the new graph and the merged vertex name."""
    edges = []
    for u, v in g.edges:
        u2 = a if u == b else u
        v2 = a if v == b else v
        if u2 != v2:
            edges.append((u2, v2))
    verts = [v for v in g.vertices if v != b]
    return Graph.from_edges(edges, verts, dedupe=True), a


def enumerate_colorings_boundary(g: Graph, boundary: Sequence, k: int, limit: int = BOUNDARY_LIMIT) -> frozenset:
    """Which of ``"same"`` / ``"different"`` extend to a proper k-coloring."""
    if g.n > limit:
        raise SizeLimitExceeded(g.n, limit, "boundary enumeration input")
    a, b = boundary
    out = set()
    if g.has_edge(a, b):
        if k_coloring(g, k) is not None:
            out.add("different")
        return frozenset(out)
    merged, _ = _identify(g, a, b)
    if k_coloring(merged, k) is not None:
        out.add("same")
    if k_coloring(g.with_edges([(a, b)]), k) is not None:
        out.add("different")
    return frozenset(out)


# ---------------------------------------------------------------------------
# Brooks 3-coloring
# ---------------------------------------------------------------------------


def _bfs_order(g: Graph, root, blocked=()) -> list:
    seen = {root} | set(blocked)
    order = [root]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in sorted(g.neighbors(v), key=vkey):
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


def _greedy_in(g: Graph, order, color: dict, k: int) -> None:
    for v in order:
        taken = {color[w] for w in g.neighbors(v) if w in color}
        c = next(c for c in range(k + 1) if c not in taken)
        if c >= k:
            raise PreconditionViolated(f"greedy step at {v!r} needs more than {k} colors")
        color[v] = c


def _permute_to(coloring: dict, want: Mapping, k: int) -> dict:
    """Rename colors of ``coloring`` so that ``coloring[v] == want[v]`` for v in want."""
    perm = {}
    for v, c in want.items():
        src = coloring[v]
        if perm.get(src, c) != c:
            raise ValueError("incompatible boundary")
        perm[src] = c
    free = [c for c in range(k) if c not in perm.values()]
    for c in sorted(set(coloring.values())):
        if c not in perm:
            perm[c] = free.pop(0)
    return {v: perm[c] for v, c in coloring.items()}


def _merge_blocks(g: Graph, color_block, k: int) -> dict:
    """Color each block independently and glue along the block-cut tree."""
    comps = biconnected_components(g)
    comps.sort(key=lambda c: min(vkey(v) for v in c))
    colored: dict = {}
    pending = list(comps)
    while pending:
        for i, comp in enumerate(pending):
            shared = [v for v in comp if v in colored]
            if not colored or shared:
                break
        else:
            i, shared = 0, []
        comp = pending.pop(i)
        part = color_block(g.subgraph(comp))
        if shared:
            part = _permute_to(part, {v: colored[v] for v in shared}, k)
        colored.update(part)
    return colored


def brooks_color3(g: Graph) -> Coloring:
    """Proper 3-coloring of a connected graph with maximum degree 3 other than K4."""
    if g.n == 0 or not is_connected(g):
        raise PreconditionViolated("Brooks coloring needs a connected graph")
    if g.max_degree() != 3:
        raise PreconditionViolated("Brooks coloring here needs maximum degree exactly 3")
    if g.n == 4 and g.m == 6:
        raise PreconditionViolated("K4 needs four colors")
    return canonical_coloring(g, _brooks(g))


def _brooks(g: Graph) -> dict:
    low = [v for v in g.vertices if g.degree(v) <= 2]
    if low:
        order = _bfs_order(g, low[0])
        color: dict = {}
        _greedy_in(g, list(reversed(order)), color, 3)
        return color
    if articulation_points(g):
        return _merge_blocks(g, _brooks, 3)
    for v in g.vertices:
        for u, w in combinations(sorted(g.neighbors(v), key=vkey), 2):
            if g.has_edge(u, w):
                continue
            rest = g.without([u, w])
            if not is_connected(rest):
                continue
            color = {u: 0, w: 0}
            order = _bfs_order(rest, v)
            _greedy_in(g, list(reversed(order)), color, 3)
            return color
    raise PreconditionViolated("no Brooks configuration found (input is K4?)")


# ---------------------------------------------------------------------------
# Family colorings
# ---------------------------------------------------------------------------


def _cycle_order(nodes, link) -> list:
    start = min(nodes, key=vkey)
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = sorted((w for w in link(cur) if w != prev), key=vkey)
        step = nxt[0]
        if step == start or step in order:
            break
        order.append(step)
        prev, cur = cur, step
    return order


def _color_rim(order) -> dict:
    color = {}
    for i, v in enumerate(order):
        color[v] = 1 + (i % 2)
    if len(order) % 2 == 1:
        color[order[-1]] = 3
    return color


def color_family(g: Graph, tag) -> Coloring:
    """Direct coloring for a graph known to lie in the family named by ``tag``."""
    from .classifier import is_fishpond, is_truncated_cubic, is_wheel, match_family_KE3r, match_family_SrWr

    name = getattr(tag, "name", tag)
    view = skeleton_view(g)
    color: dict = {}
    if name == "Wheel":
        r = is_wheel(g)
        if r is None:
            raise TagMismatch("not a wheel")
        hub = next(v for v in g.vertices if g.degree(v) == g.n - 1 and _is_rim(g, v))
        rim = [v for v in g.vertices if v != hub]
        color = _color_rim(_cycle_order(rim, lambda v: g.neighbors(v) - {hub}))
        color[hub] = 0
    elif name in ("KE3r_Dr", "K3r_Dr_3conn"):
        if match_family_KE3r(view) is None:
            raise TagMismatch("not a K_{3,r} sandwich")
        star = view.skeleton_vertices
        a = sorted((v for v in star if view.star_degree[v] >= 4), key=vkey)
        for i, v in enumerate(a):
            color[v] = i
        for v in star:
            color.setdefault(v, 3)
    elif name == "Sr_Wr":
        if match_family_SrWr(view) is None:
            raise TagMismatch("not a subdivided-wheel sandwich")
        star = view.skeleton_vertices
        hub = next(v for v in sorted(star, key=vkey) if view.n1[v] == star - {v} and not view.n2[v])
        rim = star - {hub}
        color = _color_rim(_cycle_order(rim, lambda v: view.links(v) - {hub}))
        color[hub] = 0
    elif name in ("Fishpond", "TruncatedCubic"):
        if name == "TruncatedCubic" and not is_truncated_cubic(g):
            raise TagMismatch("not truncated cubic")
        if name == "Fishpond" and not is_fishpond(view, check=False):
            raise TagMismatch("not a fishpond")
        sk = Graph(sorted(view.skeleton_vertices, key=vkey), view.skeleton_edges)
        for comp in connected_components(sk):
            part = sk.subgraph(comp)
            if part.max_degree() == 3:
                color.update(_brooks(part))
            elif part.max_degree() == 4:
                color.update(_color_bowtie(part))
            else:
                _greedy_in(part, part.vertices, color, 3)
    elif name in ("SmallCase", "SP"):
        return _small_or_sp(g)
    else:
        raise TagMismatch(f"no direct coloring for family {name!r}")
    rest = [v for v in g.vertices if v not in color]
    _greedy_in(g, rest, color, 4)
    return canonical_coloring(g, color)


def _is_rim(g: Graph, hub) -> bool:
    rest = g.without([hub])
    return all(rest.degree(v) == 2 for v in rest)


def _color_bowtie(part: Graph) -> dict:
    hub = next(v for v in part.vertices if part.degree(v) == 4)
    color = {hub: 0}
    for v in sorted(part.neighbors(hub), key=vkey):
        if v in color:
            continue
        mate = next(w for w in part.neighbors(v) if w != hub)
        color[v], color[mate] = 1, 2
    return color


def _small_or_sp(g: Graph) -> Coloring:
    if g.n <= EXACT_LIMIT:
        return exact_coloring(g)
    raise SizeLimitExceeded(g.n, EXACT_LIMIT, "exact coloring input")


# ---------------------------------------------------------------------------
# Constructive colorings for ASP / ASP-P graphs
# ---------------------------------------------------------------------------


class _Stuck(Exception):
    pass


def _peel(g: Graph, k: int) -> tuple[list, set]:
    """Remove vertices of current degree < k; returns removal order and the core."""
    deg = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    stack = [v for v in g.vertices if deg[v] < k]
    queued = set(stack)
    order = []
    while stack:
        v = stack.pop()
        alive.discard(v)
        order.append(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] < k and w not in queued:
                    queued.add(w)
                    stack.append(w)
    return order, alive


def _solve(g: Graph, k: int) -> dict:
    """k-coloring by peeling plus structural splitting; raises _Stuck."""
    order, core = _peel(g, k)
    color: dict = {}
    if core:
        sub = g.subgraph(core)
        for comp in connected_components(sub):
            color.update(_solve_core(sub.subgraph(comp), k))
    for v in reversed(order):
        taken = {color[w] for w in g.neighbors(v) if w in color}
        color[v] = next(c for c in range(k) if c not in taken)
    return color


def _solve_core(g: Graph, k: int) -> dict:
    """Connected graph of minimum degree at least k."""
    from .classifier import is_truncated_cubic, is_wheel, match_family_KE3r

    if g.n == k + 1 and g.m == k * (k + 1) // 2:
        raise _Stuck("clique")
    if articulation_points(g):
        return _merge_blocks(g, lambda b: _solve(b, k), k)
    if g.n <= 6:
        found = k_coloring(g, k)
        if found is None:
            raise _Stuck("small graph needs more colors")
        return found
    if is_three_connected(g):
        for test, tag in ((is_wheel, "Wheel"), (match_family_KE3r, "KE3r_Dr"), (is_truncated_cubic, "TruncatedCubic")):
            hit = test(g)
            if hit is not None and hit is not False:
                col = color_family(g, tag).assignment
                if max(col.values()) < k:
                    return dict(col)
        raise _Stuck("3-connected core outside the ASP families")
    return _split_two_cut(g, k)


def _two_cut(g: Graph):
    for u in g.vertices:
        aps = articulation_points(g, removed=(u,))
        if aps:
            return u, min(aps, key=vkey)
    return None


def _split_two_cut(g: Graph, k: int) -> dict:
    x, y = _two_cut(g)
    comps = sorted(connected_components(g, removed=(x, y)), key=lambda c: min(vkey(v) for v in c))
    side_a = g.subgraph(comps[0] | {x, y})
    side_b = g.subgraph(frozenset().union(*comps[1:]) | {x, y})
    patterns = ("different", "same") if not g.has_edge(x, y) else ("different",)
    for pattern in patterns:
        try:
            ca = _solve_pattern(side_a, x, y, pattern, k)
            cb = _solve_pattern(side_b, x, y, pattern, k)
        except _Stuck:
            continue
        cb = _permute_to(cb, {x: ca[x], y: ca[y]}, k)
        out = dict(ca)
        out.update(cb)
        return out
    raise _Stuck("no boundary pattern works on both sides of a 2-cut")


def _solve_pattern(side: Graph, x, y, pattern: str, k: int) -> dict:
    if pattern == "different":
        h = side if side.has_edge(x, y) else side.with_edges([(x, y)])
        return _solve(h, k)
    merged, keep = _identify(side, x, y)
    col = _solve(merged, k)
    col[y] = col[keep]
    return col


def _color_bounded(g: Graph, k: int, clique_exc, stuck_exc, assume: bool) -> Coloring:
    try:
        col = _solve(g, k)
    except _Stuck as stuck:
        clique = max_clique(g)
        if len(clique) >= k + 1:
            try:
                wide = _solve(g, k + 1)
            except _Stuck:
                wide = None
            if wide is None and g.n <= EXACT_LIMIT:
                wide = k_coloring(g, k + 1)
            if wide is not None:
                raise clique_exc(canonical_coloring(g, wide))
        if assume:
            raise ColoringInconsistency(f"coloring got stuck on a graph asserted to be in the class: {stuck}")
        raise stuck_exc(f"not {'ASP' if k == 5 else 'ASP-P'}: {stuck}")
    coloring = canonical_coloring(g, col)
    reason = check_coloring(g, coloring)
    if reason is not None or coloring.palette_size > k:
        raise ColoringInconsistency(f"internal coloring error: {reason}")
    return coloring


def color_asp(g: Graph, assume_asp: bool = False) -> Coloring:
    """At most 5 colors for an ASP graph; K6Exception when a K6 is present.

    With ``assume_asp`` a failure is reported as ColoringInconsistency instead
    of NotASP, since the caller vouched for membership.
    """
    return _color_bounded(g, 5, K6Exception, NotASP, assume_asp)


def color_aspp(g: Graph, assume_aspp: bool = False) -> Coloring:
    """At most 4 colors for an ASP-P graph; K5Exception when a K5 is present."""
    return _color_bounded(g, 4, K5Exception, NotASPP, assume_aspp)
