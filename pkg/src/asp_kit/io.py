"""Plain-text graph files.

Format: a header line ``n m`` followed by ``m`` lines ``u v`` with 0-based
vertex indices.  Lines starting with ``#`` and blank lines are ignored.
Files are ASCII with LF line endings.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, TextIO

from .errors import GraphError
from .graph import Graph


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.line = line
        self.source = source


def _records(lines: Iterable[str]):
    for no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        yield no, text


def _ints(text: str, want: int, no: int, source: str) -> list[int]:
    parts = text.split()
    if len(parts) != want:
        raise GraphFormatError(f"expected {want} integers, got {text!r}", no, source)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(f"non-integer token in {text!r}", no, source) from None


def parse_graph(text: str | Iterable[str], source: str = "<input>") -> Graph:
    lines = text.splitlines() if isinstance(text, str) else text
    it = _records(lines)
    try:
        no, header = next(it)
    except StopIteration:
        raise GraphFormatError("missing 'n m' header", None, source) from None
    n, m = _ints(header, 2, no, source)
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", no, source)
    edges = []
    seen = set()
    for no, text in it:
        u, v = _ints(text, 2, no, source)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex index out of range 0..{n - 1}", no, source)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", no, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", no, source)
        seen.add(key)
        edges.append((u, v))
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(edges)} were read", None, source)
    return Graph(range(n), edges)


def read_graph(path: str | Path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise GraphFormatError(f"non-ASCII content ({exc.reason})", None, str(p)) from None
    return parse_graph(text, source=str(p))


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    """Serialise ``g``; vertices must be exactly 0..n-1 unless relabelled first."""
    if set(g.vertices) != set(range(g.n)):
        g, _ = g.relabeled_ints()
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.m}")
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def write_graph(g: Graph, dest: str | Path | TextIO, comments: Iterable[str] = ()) -> None:
    text = format_graph(g, comments)
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(dest, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)


def to_dot(g: Graph, highlight: Iterable = (), name: str = "G") -> str:
    """DOT text; ``highlight`` edges are drawn bold and red."""
    marked = {tuple(sorted(e, key=repr)) for e in highlight}
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for u, v in g.edges:
        style = ' [color=red, penwidth=2]' if tuple(sorted((u, v), key=repr)) in marked else ""
        lines.append(f'  "{u}" -- "{v}"{style};')
    lines.append("}")
    return "\n".join(lines) + "\n"
