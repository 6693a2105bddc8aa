from typing import Iterator, Sequence

from app.graph.bitset import iter_bits
from app.graph.udg import Clique, UndirectedDependencyGraph


def iter_maximal_clique_masks(rows: Sequence[int], candidates: int) -> Iterator[int]:
    """
    Pivoted Bron-Kerbosch over the subgraph induced by ``candidates``.

    Yields one bitmask per maximal clique; emission order is not canonical.
    """
    if not candidates:
        return
    stack = [(0, candidates, 0)]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                yield r
            continue
        # pivot maximises |P ∩ N(u)| over P ∪ X
        pivot_gain = -1
        pivot_row = 0
        for u in iter_bits(p | x):
            gain = (p & rows[u]).bit_count()
            if gain > pivot_gain:
                pivot_gain = gain
                pivot_row = rows[u]
        for v in iter_bits(p & ~pivot_row):
            bit = 1 << v
            stack.append((r | bit, p & rows[v], x & rows[v]))
            p &= ~bit
            x |= bit


def maximal_clique_masks(rows: Sequence[int], candidates: int) -> list[int]:
    return sorted(iter_maximal_clique_masks(rows, candidates), key=_mask_key)


def maximal_cliques(g: UndirectedDependencyGraph) -> list[Clique]:
    if g.num_vertices == 0:
        return []
    full = (1 << g.num_vertices) - 1
    return [Clique.from_mask(mask) for mask in maximal_clique_masks(g.rows, full)]


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))
