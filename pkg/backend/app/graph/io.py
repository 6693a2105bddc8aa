"""Text and JSON formats for undirected dependency graphs."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, ValidationError

from app.core.errors import InputError
from app.graph.udg import UndirectedDependencyGraph, from_edge_list


class UDGDocument(BaseModel):
    num_vertices: int = Field(..., ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list)
    vertex_labels: Optional[list[str]] = None

    @classmethod
    def from_graph(cls, g: UndirectedDependencyGraph) -> "UDGDocument":
        labels = list(g.vertex_labels) if g.vertex_labels is not None else None
        return cls(num_vertices=g.num_vertices, edges=g.edges(), vertex_labels=labels)

    def to_graph(self) -> UndirectedDependencyGraph:
        return from_edge_list(self.num_vertices, self.edges, self.vertex_labels)


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append((number, line))
    return lines


def _parse_int(token: str, line: int, source: Optional[str]) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"expected an integer, got {token!r}", line=line, source=source) from None


def _parse_edge_list(lines: list[tuple[int, str]], source: Optional[str]) -> UndirectedDependencyGraph:
    header_line, header = lines[0]
    tokens = header.split()
    if len(tokens) != 2 or tokens[0] != "n":
        raise InputError('header must read "n <num_vertices>"', line=header_line, source=source)
    n = _parse_int(tokens[1], header_line, source)
    if n < 0:
        raise InputError(f"num_vertices must be non-negative, got {n}", line=header_line, source=source)

    edges = []
    for number, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != 2:
            raise InputError(f'expected "u v", got {line!r}', line=number, source=source)
        u, v = (_parse_int(tok, number, source) for tok in tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) out of range for n={n}", line=number, source=source)
        if u == v:
            raise InputError(f"self-loop on vertex {u}", line=number, source=source)
        edges.append((u, v))
    return from_edge_list(n, edges)


def _parse_dense(lines: list[tuple[int, str]], source: Optional[str]) -> UndirectedDependencyGraph:
    n = len(lines)
    rows = []
    for i, (number, line) in enumerate(lines):
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != n:
            raise InputError(f"expected {n} entries, got {len(cells)}", line=number, source=source)
        row = 0
        for j, cell in enumerate(cells):
            if cell not in ("0", "1"):
                raise InputError(f"entries must be 0 or 1, got {cell!r}", line=number, source=source)
            if cell == "1":
                row |= 1 << j
        if (row >> i) & 1:
            raise InputError(f"self-loop on vertex {i}", line=number, source=source)
        rows.append(row)
    for i, (number, _) in enumerate(lines):
        for j in range(n):
            if ((rows[i] >> j) & 1) != ((rows[j] >> i) & 1):
                raise InputError(f"matrix is not symmetric at ({i}, {j})", line=number, source=source)
    return UndirectedDependencyGraph(rows)


def parse_udg(text: str, source: Optional[str] = None) -> UndirectedDependencyGraph:
    """Edge-list when the first content line starts with ``n``, JSON when it starts with ``{``, dense otherwise."""
    lines = _content_lines(text)
    if not lines:
        raise InputError("no graph data found", source=source)
    first = lines[0][1]
    if first.startswith("{"):
        try:
            return UDGDocument.model_validate_json(text).to_graph()
        except ValidationError as exc:
            raise InputError(f"invalid graph document: {exc.errors()[0]['msg']}", source=source) from exc
    if first.split()[0] == "n":
        return _parse_edge_list(lines, source)
    return _parse_dense(lines, source)


def read_udg(path: str | Path) -> UndirectedDependencyGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc.strerror}", source=str(path)) from exc
    return parse_udg(text, source=str(path))


def format_edge_list(g: UndirectedDependencyGraph) -> str:
    lines = [f"n {g.num_vertices}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_dense(g: UndirectedDependencyGraph) -> str:
    if g.num_vertices == 0:
        return ""
    matrix = g.adjacency.astype(int)
    return "\n".join(",".join(str(cell) for cell in row) for row in matrix) + "\n"


def format_udg(g: UndirectedDependencyGraph, fmt: str = "text") -> str:
    if fmt == "json":
        return UDGDocument.from_graph(g).model_dump_json(indent=2) + "\n"
    return format_edge_list(g)
