from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from app.core.errors import InputError
from app.graph.udg import UndirectedDependencyGraph, from_edge_list


class InstanceKind(str, Enum):
    ERDOS_RENYI = "erdos_renyi"
    TRIANGLE_FREE = "triangle_free"
    FRAGILE_FOOTNOTE = "fragile_footnote"


class FragilePair(NamedTuple):
    """Two graphs differing in the single hub edge (0, 1)."""

    with_edge: UndirectedDependencyGraph
    without_edge: UndirectedDependencyGraph


def _canonical_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def erdos_renyi(n: int, p: float, seed: int = 0) -> UndirectedDependencyGraph:
    # one uniform draw per pair, in canonical pair order
    rng = np.random.default_rng(seed)
    pairs = _canonical_pairs(n)
    draws = rng.random(len(pairs))
    return from_edge_list(n, [pair for pair, draw in zip(pairs, draws) if draw < p])


def triangle_free(n: int, p: float, seed: int = 0) -> UndirectedDependencyGraph:
    """Visit pairs in random order and keep each with probability ``p`` unless it closes a triangle."""
    rng = np.random.default_rng(seed)
    pairs = _canonical_pairs(n)
    order = rng.permutation(len(pairs))
    draws = rng.random(len(pairs))
    rows = [0] * n
    edges = []
    for idx, draw in zip(order, draws):
        u, v = pairs[idx]
        if draw >= p or rows[u] & rows[v]:
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        edges.append((u, v))
    return from_edge_list(n, edges)


def fragile_footnote(n: int) -> FragilePair:
    """
    Hubs 0 and 1 joined to every other vertex.

    With the hub edge the optimum is n-2 triangles; without it the graph is
    K_{2,n-2} and needs all 2(n-2) edges as cliques.
    """
    spokes = [(hub, w) for w in range(2, n) for hub in (0, 1)]
    return FragilePair(
        with_edge=from_edge_list(n, [(0, 1), *spokes]),
        without_edge=from_edge_list(n, spokes),
    )


def generate_instance(
    kind: InstanceKind | str,
    *,
    n: int,
    p: Optional[float] = None,
    seed: int = 0,
) -> UndirectedDependencyGraph | FragilePair:
    try:
        kind = InstanceKind(kind)
    except ValueError as exc:
        raise InputError(f"unknown instance kind {kind!r}") from exc
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")

    if kind is InstanceKind.FRAGILE_FOOTNOTE:
        if n < 3:
            raise InputError(f"fragile instances need n >= 3, got {n}")
        return fragile_footnote(n)

    if p is None or not 0.0 <= p <= 1.0:
        raise InputError(f"edge probability must lie in [0, 1], got {p}")
    if kind is InstanceKind.ERDOS_RENYI:
        return erdos_renyi(n, p, seed)
    return triangle_free(n, p, seed)
