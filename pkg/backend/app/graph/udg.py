from typing import Any, Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.core.errors import InputError
from app.graph.bitset import bits_to_tuple, is_clique_mask, iter_bits, mask_of


class UndirectedDependencyGraph:
    """
    Pairwise dependence graph over the measurement variables.

    Vertex ``i`` is measurement column ``i``. Adjacency is stored as one integer
    bitset per row; instances are immutable once built.
    """

    __slots__ = ("_n", "_rows", "_labels")

    def __init__(self, rows: Sequence[int], labels: Optional[Sequence[str]] = None):
        n = len(rows)
        full = (1 << n) - 1
        rows = tuple(int(r) for r in rows)
        for i, row in enumerate(rows):
            if row & ~full:
                raise InputError(f"row {i} references a vertex outside 0..{n - 1}")
            if (row >> i) & 1:
                raise InputError(f"self-loop on vertex {i}")
            for j in iter_bits(row):
                if not (rows[j] >> i) & 1:
                    raise InputError(f"adjacency is not symmetric at ({i}, {j})")
        if labels is not None:
            labels = tuple(str(label) for label in labels)
            if len(labels) != n:
                raise InputError(f"expected {n} vertex labels, got {len(labels)}")
            if len(set(labels)) != n:
                raise InputError("vertex labels must be unique")
        self._n = n
        self._rows = rows
        self._labels = labels

    @classmethod
    def from_adjacency(cls, matrix: Any, labels: Optional[Sequence[str]] = None) -> "UndirectedDependencyGraph":
        adjacency = np.asarray(matrix)
        if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
            raise InputError(f"adjacency must be square, got shape {adjacency.shape}")
        adjacency = adjacency.astype(bool)
        rows = [mask_of(np.flatnonzero(adjacency[i]).tolist()) for i in range(adjacency.shape[0])]
        return cls(rows, labels)

    @property
    def num_vertices(self) -> int:
        return self._n

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def vertex_labels(self) -> Optional[tuple[str, ...]]:
        return self._labels

    @property
    def adjacency(self) -> np.ndarray:
        matrix = np.zeros((self._n, self._n), dtype=bool)
        for i, row in enumerate(self._rows):
            for j in iter_bits(row):
                matrix[i, j] = True
        return matrix

    def label(self, v: int) -> str:
        if self._labels is not None:
            return self._labels[v]
        return f"M{v + 1}"

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return bits_to_tuple(self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._rows[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def with_labels(self, labels: Optional[Sequence[str]]) -> "UndirectedDependencyGraph":
        return UndirectedDependencyGraph(self._rows, labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UndirectedDependencyGraph):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"UndirectedDependencyGraph(n={self._n}, edges={self.edges()})"


class Clique(BaseModel):
    """Sorted, duplicate-free vertex set; validity against a host graph is checked separately."""

    model_config = ConfigDict(frozen=True)

    members: tuple[int, ...]

    @model_validator(mode="before")
    @classmethod
    def _accept_plain_sequence(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple, set, frozenset)):
            return {"members": tuple(data)}
        return data

    @field_validator("members")
    @classmethod
    def _canonical(cls, members: tuple[int, ...]) -> tuple[int, ...]:
        if not members:
            raise ValueError("a clique needs at least one member")
        if any(m < 0 for m in members):
            raise ValueError("clique members must be non-negative vertex indices")
        if len(set(members)) != len(members):
            raise ValueError(f"duplicate members in {members}")
        return tuple(sorted(members))

    @classmethod
    def from_mask(cls, mask: int) -> "Clique":
        return cls(members=bits_to_tuple(mask))

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    def pairs(self) -> list[tuple[int, int]]:
        m = self.members
        return [(m[a], m[b]) for a in range(len(m)) for b in range(a + 1, len(m))]


def canonical_order(cliques: Iterable[Clique]) -> list[Clique]:
    return sorted(cliques, key=lambda c: c.members)


def from_edge_list(
    num_vertices: int,
    edges: Iterable[tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
) -> UndirectedDependencyGraph:
    if num_vertices < 0:
        raise InputError(f"num_vertices must be non-negative, got {num_vertices}")
    rows = [0] * num_vertices
    for u, v in edges:
        if not (0 <= u < num_vertices and 0 <= v < num_vertices):
            raise InputError(f"edge ({u}, {v}) out of range for n={num_vertices}")
        if u == v:
            raise InputError(f"self-loop on vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return UndirectedDependencyGraph(rows, labels)


def is_clique(g: UndirectedDependencyGraph, s: Iterable[int]) -> bool:
    vertices = list(s)
    for v in vertices:
        if not 0 <= v < g.num_vertices:
            raise InputError(f"vertex {v} out of range for n={g.num_vertices}")
    return is_clique_mask(g.rows, mask_of(vertices))


def connected_components(g: UndirectedDependencyGraph) -> list[list[int]]:
    seen = 0
    components = []
    for start in range(g.num_vertices):
        if (seen >> start) & 1:
            continue
        component = 1 << start
        frontier = component
        while frontier:
            reached = 0
            for v in iter_bits(frontier):
                reached |= g.rows[v]
            frontier = reached & ~component
            component |= frontier
        seen |= component
        components.append(list(bits_to_tuple(component)))
    return components
