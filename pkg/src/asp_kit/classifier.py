"""Structural recognition of ASP and ASP-P graphs.

Small skeletons (at most six vertices of degree three or more) are decided by
the exhaustive search in :mod:`asp_kit.oracle`.  Larger virtually
3-connected graphs are ASP exactly when they fall into one of three families:
a K_{3,r} sandwich, a subdivided wheel sandwich, or a fishpond.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import AspKitError, NotTriconnected, NotV3C, ParallelThreads
from .graph import Graph, SkeletonView, connected_components, edge_key, is_three_connected, is_virtually_3connected, skeleton_view, vkey
from .oracle import ASP_FORBIDDEN, ForbiddenWitness, Verdict, find_forbidden_local, oracle_classify, validate_witness
from .receptacles import Receptacle, lift_receptacle_witness, receptacles

# Structural recognition needs more than this many skeleton vertices; the
# wheel family needs a rim of at least this length.
MIN_RIM = 6


@dataclass(frozen=True)
class FamilyTag:
    name: str
    r: int | None = None

    def __str__(self) -> str:
        return self.name if self.r is None else f"{self.name}({self.r})"


SMALL_CASE = FamilyTag("SmallCase")
SP_TAG = FamilyTag("SP")
NON_ASP_TAG = FamilyTag("NonASP")
FISHPOND = FamilyTag("Fishpond")
TRUNCATED_CUBIC = FamilyTag("TruncatedCubic")


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    family: FamilyTag
    witness: ForbiddenWitness | None = None
    per_receptacle: tuple = ()

    @property
    def is_asp(self) -> bool:
        return self.verdict.is_asp()

    @property
    def is_aspp(self) -> bool:
        return self.verdict.is_aspp()

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.label,
            "family": str(self.family),
            "witness": None if self.witness is None else self.witness.as_dict(),
            "receptacles": [
                {"vertices": sorted(r.core_vertices, key=vkey), "windows": [list(w) for w in sorted(r.windows, key=_pair_key)],
                 "extreme": r.extreme, "verdict": c.verdict.label, "family": str(c.family)}
                for r, c in self.per_receptacle
            ],
        }


def _pair_key(p):
    return (vkey(p[0]), vkey(p[1]))


# ---------------------------------------------------------------------------
# Family matchers
# ---------------------------------------------------------------------------


def _view(g) -> SkeletonView:
    return g if isinstance(g, SkeletonView) else skeleton_view(g)


def match_family_KE3r(g) -> int | None:
    """r when K_{3,r} spans the skeleton and everything else sits on its 3-part."""
    view = _view(g)
    star = view.skeleton_vertices
    a = frozenset(v for v in star if view.star_degree[v] >= 4)
    if len(a) != 3:
        return None
    b = star - a
    if len(b) < 4:
        return None
    for v in b:
        if view.n1[v] != a or view.n2[v]:
            return None
    if any(not set(w) <= a for w in view.windows):
        return None
    return len(b)


def match_family_SrWr(g) -> int | None:
    """r when a hub sees every other skeleton vertex and the rest is a circuit of links."""
    view = _view(g)
    star = view.skeleton_vertices
    if len(star) < 4:
        return None
    for h in sorted(star, key=vkey):
        if view.n1[h] != star - {h} or view.n2[h]:
            continue
        rim = star - {h}
        links = {v: view.links(v) - {h} for v in rim}
        if any(len(links[v]) != 2 for v in rim):
            continue
        start = min(rim, key=vkey)
        seen = {start}
        prev, cur = None, start
        while True:
            nxt = [w for w in links[cur] if w != prev]
            step = nxt[0] if prev is not None else min(nxt, key=vkey)
            if step == start:
                break
            if step in seen:
                break
            seen.add(step)
            prev, cur = cur, step
        if seen == rim:
            return len(rim)
    return None


def is_wheel(g: Graph) -> int | None:
    """r when g is the wheel W_r (hub plus an r-circuit)."""
    n = g.n
    if n < 4 or g.m != 2 * (n - 1):
        return None
    for h in g.vertices:
        if g.degree(h) != n - 1:
            continue
        rest = g.without([h])
        if all(rest.degree(v) == 2 for v in rest) and len(connected_components(rest)) == 1:
            return n - 1
    return None


def is_truncated_cubic(g: Graph) -> bool:
    """Cubic, with every vertex in exactly one triangle."""
    if g.n == 0 or any(g.degree(v) != 3 for v in g):
        return False
    for v in g:
        nb = sorted(g.neighbors(v), key=vkey)
        tri = sum(1 for x, y in combinations(nb, 2) if g.has_edge(x, y))
        if tri != 1:
            return False
    return True


@dataclass(frozen=True)
class FishpondReport:
    ok: bool
    violations: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def _skeleton_triangles(view: SkeletonView) -> list[tuple]:
    sk = view.n1
    out = []
    for v in sorted(view.skeleton_vertices, key=vkey):
        for x, y in combinations(sorted(sk[v], key=vkey), 2):
            if vkey(v) < vkey(x) and y in sk[x]:
                out.append((v, x, y))
    return out


def _has_k4_minus(j_vertices, n1) -> bool:
    for u, v in combinations(sorted(j_vertices, key=vkey), 2):
        if v in n1[u] and len(n1[u] & n1[v]) >= 2:
            return True
    return False


def is_fishpond(g, check: bool = True) -> FishpondReport:
    """Check the fishpond conditions; the report lists every failed condition."""
    view = _view(g)
    if check and not is_virtually_3connected(view.base):
        raise NotV3C("fishpond test needs a virtually 3-connected graph")
    bad = []
    star = view.skeleton_vertices
    d = view.star_degree
    if any(d[v] > 4 for v in star):
        bad.append("skeleton max degree above 4")
    triangles = _skeleton_triangles(view)
    in_tri = {v for t in triangles for v in t}
    for v in sorted(star, key=vkey):
        if d[v] >= 2 and v not in in_tri:
            bad.append(f"triangle cover: {v!r} has d*>=2 but lies in no skeleton triangle")
    for t in triangles:
        for x, y in combinations(t, 2):
            if edge_key(x, y) in view.windows:
                bad.append(f"triangle rule: triangle edge {x!r}-{y!r} has a parallel thread")
        if sum(1 for v in t if len(view.links(v)) == 3) < 2:
            bad.append(f"triangle rule: triangle {t!r} has fewer than two vertices with three links")
    sk_graph = Graph(sorted(star, key=vkey), view.skeleton_edges)
    for comp in connected_components(sk_graph):
        if len(comp) <= 3:
            continue
        degs = [len(view.n1[v]) for v in comp]
        edges = sum(degs) // 2
        if max(degs) == 3:
            # every triangle vertex of such a component has exactly three links
            crowded = sorted((v for v in comp if len(view.n1[v]) >= 2 and len(view.links(v)) > 3), key=vkey)
            if crowded:
                bad.append(f"component rule: vertex {crowded[0]!r} of a cubic skeleton component has |N(v)| > 3")
            elif len(star) >= 5 and _has_k4_minus(comp, view.n1):
                bad.append(f"component rule: component at {min(comp, key=vkey)!r} contains K4-minus")
            continue
        if len(comp) == 5 and edges == 6 and sorted(degs) == [2, 2, 2, 2, 4]:
            hub = next(v for v in comp if len(view.n1[v]) == 4)
            rest = view.n1[hub]
            pairs = [(x, y) for x, y in combinations(sorted(rest, key=vkey), 2) if y in view.n1[x]]
            if len(pairs) == 2 and not set(pairs[0]) & set(pairs[1]):
                continue
        bad.append(f"component rule: component at {min(comp, key=vkey)!r} has no admissible form")
    return FishpondReport(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def _is_bare(g: Graph) -> bool:
    return g.n <= 2 or all(g.degree(v) == 2 for v in g)


def _structural_tag(view: SkeletonView, min_rim: int) -> tuple[Verdict, FamilyTag] | None:
    r = match_family_KE3r(view)
    if r is not None and r >= 4:
        return Verdict.ASP, FamilyTag("KE3r_Dr", r)
    r = match_family_SrWr(view)
    if r is not None and r >= min_rim:
        return Verdict.ASP_P, FamilyTag("Sr_Wr", r)
    if is_fishpond(view, check=False):
        return Verdict.ASP_P, TRUNCATED_CUBIC if is_truncated_cubic(view.base) else FISHPOND
    return None


def _non_asp_witness(g: Graph) -> ForbiddenWitness:
    w = find_forbidden_local(g, ASP_FORBIDDEN)
    if w is None:
        raise AspKitError("structural test rejected a graph the exhaustive search accepts")
    validate_witness(g, w)
    return w


def classify_v3c(g: Graph, min_rim: int = MIN_RIM, check: bool = True) -> Classification:
    """Verdict and family of a virtually 3-connected graph."""
    if _is_bare(g):
        return Classification(Verdict.SP, SP_TAG)
    if check and not is_virtually_3connected(g):
        raise NotV3C("input is not virtually 3-connected")
    view = skeleton_view(g)
    if len(view.skeleton_vertices) <= min_rim:
        res = oracle_classify(g)
        if res.verdict == Verdict.SP:
            return Classification(Verdict.SP, SP_TAG)
        if res.verdict == Verdict.NON_ASP:
            return Classification(Verdict.NON_ASP, NON_ASP_TAG, res.witness)
        tag = SMALL_CASE
        if not view.parallel_windows():
            hit = _structural_tag(view, min_rim)
            if hit is not None and hit[0] == res.verdict:
                tag = hit[1]
        return Classification(res.verdict, tag)
    if view.parallel_windows():
        raise ParallelThreads(f"parallel threads on windows {view.parallel_windows()!r}")
    hit = _structural_tag(view, min_rim)
    if hit is not None:
        return Classification(hit[0], hit[1])
    return Classification(Verdict.NON_ASP, NON_ASP_TAG, _non_asp_witness(g))


def classify_3connected(g: Graph) -> Classification:
    """Verdict and family of a 3-connected graph."""
    if not is_three_connected(g):
        raise NotTriconnected("input is not 3-connected")
    if g.n <= 6:
        res = oracle_classify(g)
        tag = NON_ASP_TAG if res.verdict == Verdict.NON_ASP else SMALL_CASE
        if res.verdict == Verdict.ASP_P and is_truncated_cubic(g):
            tag = TRUNCATED_CUBIC
        return Classification(res.verdict, tag, res.witness if res.verdict == Verdict.NON_ASP else None)
    r = match_family_KE3r(g)
    if r is not None and r >= 4:
        return Classification(Verdict.ASP, FamilyTag("K3r_Dr_3conn", r))
    r = is_wheel(g)
    if r is not None and r >= 6:
        return Classification(Verdict.ASP_P, FamilyTag("Wheel", r))
    if is_truncated_cubic(g):
        return Classification(Verdict.ASP_P, TRUNCATED_CUBIC)
    return Classification(Verdict.NON_ASP, NON_ASP_TAG, _non_asp_witness(g))


def classify_receptacle(rec: Receptacle, min_rim: int = MIN_RIM) -> Classification:
    if rec.degenerate:
        return Classification(Verdict.SP, SP_TAG)
    return classify_v3c(rec.graph, min_rim=min_rim, check=False)


def classify(g: Graph, min_rim: int = MIN_RIM) -> Classification:
    """Blocks, then receptacles, then the structural test on each; worst verdict wins."""
    dec = receptacles(g)
    parts = []
    worst = None
    for rec in dec.receptacles:
        c = classify_receptacle(rec, min_rim)
        parts.append((rec, c))
        if worst is None or c.verdict > worst[1].verdict:
            worst = (rec, c)
    if worst is None:
        return Classification(Verdict.SP, SP_TAG)
    rec, c = worst
    witness = None
    if c.verdict == Verdict.NON_ASP:
        witness = lift_receptacle_witness(dec, rec, c.witness) if rec.threads else c.witness
        validate_witness(g, witness)
    family = c.family if len(parts) == 1 or c.verdict == Verdict.NON_ASP else _combined_tag(parts)
    return Classification(c.verdict, family, witness, tuple(parts))


def _combined_tag(parts) -> FamilyTag:
    tags = {c.family for _, c in parts if c.family != SP_TAG}
    if len(tags) == 1:
        return next(iter(tags))
    if not tags:
        return SP_TAG
    return FamilyTag("Composite")


def classify_by_oracle(g: Graph) -> Classification:
    """Exhaustive-search verdict on the whole graph, skipping the structure theory."""
    res = oracle_classify(g)
    tag = {Verdict.SP: SP_TAG, Verdict.NON_ASP: NON_ASP_TAG}.get(res.verdict, SMALL_CASE)
    return Classification(res.verdict, tag, res.witness if res.verdict == Verdict.NON_ASP else None)
