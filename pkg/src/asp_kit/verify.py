"""Exhaustive cross-checks over all small connected graphs.

Every graph on at most ``max_n`` vertices is run through four checks:

- ``classifier``: pipeline verdict equals the exhaustive oracle verdict
- ``receptacles``: for 2-connected graphs, the oracle on the whole graph
  agrees with the AND of the oracle over its receptacles (both shape sets)
- ``normalization``: the oracle gives the same verdict with and without
  thread shortening
- ``coloring``: constructive colorings are proper and within their bound
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from itertools import islice
from dataclasses import dataclass, field

from .chromatic import chromatic_number_exact, color_asp, color_aspp, has_clique
from .classifier import MIN_RIM, classify
from .errors import AspKitError, K5Exception, K6Exception
from .generators import enumerate_small_graphs
from .graph import Graph, is_two_connected
from .oracle import ASP_FORBIDDEN, ASPP_FORBIDDEN, find_forbidden, oracle_verdict
from .receptacles import is_asp_via_receptacles

CHECKS = ("classifier", "receptacles", "normalization", "coloring")
CHUNK = 400


@dataclass
class VerifyReport:
    max_n: int
    graphs: int = 0
    checked: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    verdicts: dict = field(default_factory=dict)
    mismatches: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def absorb(self, other: "VerifyReport") -> None:
        self.graphs += other.graphs
        for c, k in other.checked.items():
            self.checked[c] = self.checked.get(c, 0) + k
        for v, k in other.verdicts.items():
            self.verdicts[v] = self.verdicts.get(v, 0) + k
        self.mismatches.extend(other.mismatches)

    def as_dict(self) -> dict:
        return {
            "max_n": self.max_n,
            "graphs": self.graphs,
            "checked": dict(self.checked),
            "verdicts": dict(sorted(self.verdicts.items())),
            "mismatches": self.mismatches,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
        }


def _oracle_rule(forbidden):
    def decide(rec):
        return find_forbidden(rec.graph, forbidden) is None

    return decide


def _coloring_ok(g: Graph, chi: int, k: int) -> str | None:
    colorer, exc, clique = (color_asp, K6Exception, 6) if k == 5 else (color_aspp, K5Exception, 5)
    try:
        c = colorer(g)
    except exc as e:
        if not has_clique(g, clique) or not e.coloring.is_proper(g):
            return f"unexpected {exc.__name__}"
        return None
    except AspKitError as e:
        return f"{type(e).__name__}: {e}"
    if not c.is_proper(g):
        return "improper coloring"
    if not chi <= c.palette_size <= k:
        return f"palette {c.palette_size} outside [{chi}, {k}]"
    return None


def check_graph(g: Graph, checks=CHECKS, min_rim: int = MIN_RIM) -> tuple[str, list]:
    """Oracle verdict label and a list of ``(check, message)`` failures."""
    truth = oracle_verdict(g)
    bad = []
    if "classifier" in checks:
        try:
            got = classify(g, min_rim=min_rim).verdict
        except AspKitError as e:
            bad.append(("classifier", f"classifier raised {type(e).__name__}: {e}"))
        else:
            if got != truth:
                bad.append(("classifier", f"classifier {got.label}, oracle {truth.label}"))
    if "receptacles" in checks and is_two_connected(g):
        for name, forbidden in (("ASP", ASP_FORBIDDEN), ("ASP-P", ASPP_FORBIDDEN)):
            whole = find_forbidden(g, forbidden) is None
            rule = is_asp_via_receptacles(g, forbidden, decide=_oracle_rule(forbidden)).ok
            if whole != rule:
                bad.append(("receptacles", f"{name}: whole graph {whole}, receptacle rule {rule}"))
    if "normalization" in checks:
        raw = oracle_verdict(g, normalize=False)
        if raw != truth:
            bad.append(("normalization", f"raw {raw.label}, normalized {truth.label}"))
    if "coloring" in checks and truth.is_asp():
        chi = chromatic_number_exact(g)
        for k, wanted in ((5, True), (4, truth.is_aspp())):
            if wanted:
                msg = _coloring_ok(g, chi, k)
                if msg:
                    bad.append(("coloring", f"k={k}: {msg}"))
    return truth.label, bad


def _run_chunk(task) -> VerifyReport:
    n, start, stop, checks, min_rim = task
    rep = VerifyReport(max_n=n)
    for g in islice(enumerate_small_graphs(n), start, stop):
        label, bad = check_graph(g, checks, min_rim)
        rep.graphs += 1
        rep.verdicts[label] = rep.verdicts.get(label, 0) + 1
        for c in checks:
            if c != "receptacles" or is_two_connected(g):
                rep.checked[c] += 1
        for check, msg in bad:
            rep.mismatches.append({"n": g.n, "edges": [list(e) for e in g.edges], "check": check, "detail": msg})
    return rep


def _count(n: int) -> int:
    return sum(1 for _ in enumerate_small_graphs(n))


def run_verify(max_n: int = 8, jobs: int = 1, checks=CHECKS, min_rim: int = MIN_RIM) -> VerifyReport:
    """Run ``checks`` on every connected graph with 1..max_n vertices."""
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    t0 = time.perf_counter()
    tasks = []
    for n in range(1, max_n + 1):
        total = _count(n)
        tasks += [(n, s, min(s + CHUNK, total), tuple(checks), min_rim) for s in range(0, total, CHUNK)]
    report = VerifyReport(max_n=max_n)
    if jobs <= 1:
        for part in map(_run_chunk, tasks):
            report.absorb(part)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_run_chunk, tasks):
                report.absorb(part)
    report.seconds = time.perf_counter() - t0
    return report
