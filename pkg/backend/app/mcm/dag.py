from collections import deque
from typing import Iterable, Optional, Sequence

from app.core.errors import InputError
from app.graph.bitset import iter_bits, mask_of


class GeneralDag:
    """Directed graph stored as child bitsets; acyclicity is checked on demand."""

    __slots__ = ("_n", "_children", "_parents", "_labels")

    def __init__(self, children: Sequence[int], labels: Optional[Sequence[str]] = None):
        n = len(children)
        full = (1 << n) - 1
        self._n = n
        self._children = tuple(int(c) for c in children)
        for v, row in enumerate(self._children):
            if row & ~full:
                raise InputError(f"vertex {v} has a child outside 0..{n - 1}")
        parents = [0] * n
        for v, row in enumerate(self._children):
            for c in iter_bits(row):
                parents[c] |= 1 << v
        self._parents = tuple(parents)
        self._labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_arcs(cls, num_vertices: int, arcs: Iterable[tuple[int, int]], labels: Optional[Sequence[str]] = None) -> "GeneralDag":
        children = [0] * num_vertices
        for u, v in arcs:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise InputError(f"arc ({u}, {v}) out of range for n={num_vertices}")
            children[u] |= 1 << v
        return cls(children, labels)

    @property
    def num_vertices(self) -> int:
        return self._n

    def label(self, v: int) -> str:
        return self._labels[v] if self._labels is not None else str(v)

    def children(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._children[v]))

    def parents(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._parents[v]))

    def in_degree(self, v: int) -> int:
        return self._parents[v].bit_count()

    def out_degree(self, v: int) -> int:
        return self._children[v].bit_count()

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._children[u])]

    def topological_order(self) -> Optional[list[int]]:
        """Kahn's algorithm; None when a cycle exists."""
        remaining = [p.bit_count() for p in self._parents]
        queue = deque(v for v in range(self._n) if remaining[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for c in iter_bits(self._children[v]):
                remaining[c] -= 1
                if remaining[c] == 0:
                    queue.append(c)
        return order if len(order) == self._n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def ancestors_of(self, targets: int) -> int:
        """Bitmask of ``targets`` and all their ancestors."""
        seen = targets
        frontier = targets
        while frontier:
            reached = 0
            for v in iter_bits(frontier):
                reached |= self._parents[v]
            frontier = reached & ~seen
            seen |= frontier
        return seen

    def reachable(self, source: int, given: int) -> int:
        """Vertices joined to ``source`` by a path that is active given the ``given`` mask."""
        opened = self.ancestors_of(given)
        # direction True: arrived from a child (moving up)
        queue = deque([(source, True)])
        visited = set()
        found = 0
        while queue:
            v, up = queue.popleft()
            if (v, up) in visited:
                continue
            visited.add((v, up))
            observed = (given >> v) & 1
            if not observed:
                found |= 1 << v
            if up and not observed:
                queue.extend((p, True) for p in iter_bits(self._parents[v]))
                queue.extend((c, False) for c in iter_bits(self._children[v]))
            elif not up:
                if not observed:
                    queue.extend((c, False) for c in iter_bits(self._children[v]))
                if (opened >> v) & 1:
                    queue.extend((p, True) for p in iter_bits(self._parents[v]))
        return found & ~(1 << source)


def d_separated(dag: GeneralDag, i: int, j: int, given: Iterable[int] = ()) -> bool:
    given = list(given)
    n = dag.num_vertices
    for v in (i, j, *given):
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for n={n}")
    if i == j:
        raise InputError("d-separation needs two distinct vertices")
    if i in given or j in given:
        raise InputError("endpoints must not be in the conditioning set")
    if not dag.is_acyclic():
        raise InputError("d-separation is only defined on acyclic graphs")
    return not (dag.reachable(i, mask_of(given)) >> j) & 1
