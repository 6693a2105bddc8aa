"""Worked example structures over 0-indexed measurements."""

from app.graph.udg import UndirectedDependencyGraph, from_edge_list
from app.mcm.model import MeDILCausalModel

TRIANGLE_TAIL_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3)]
CHORDED_HEXAGON_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]
# union of the pairs inside the five clique-minimum cliques
OVERLAP_CLIQUE_MINIMUM = [(0, 1, 2, 4), (0, 3, 6), (1, 2, 4, 5, 7), (3, 5, 7), (1, 2, 6, 7)]
OVERLAP_ASSIGNMENT_MINIMUM = [(0, 4), (0, 1, 2, 6), (0, 3), (1, 2, 4, 5, 7), (3, 5), (3, 6, 7)]


def triangle_tail_udg() -> UndirectedDependencyGraph:
    return from_edge_list(4, TRIANGLE_TAIL_EDGES)


def triangle_tail_structure() -> MeDILCausalModel:
    return MeDILCausalModel(4, [(0, 1, 2), (2, 3)])


def triangle_tail_factor_structure() -> MeDILCausalModel:
    """Two latents each parenting all four measurements, as a factor model would posit."""
    return MeDILCausalModel(4, [(0, 1, 2, 3), (0, 1, 2, 3)])


def overlap_udg() -> UndirectedDependencyGraph:
    edges = {(c[a], c[b]) for c in OVERLAP_CLIQUE_MINIMUM for a in range(len(c)) for b in range(a + 1, len(c))}
    return from_edge_list(8, sorted(edges))


def chorded_hexagon_udg() -> UndirectedDependencyGraph:
    return from_edge_list(6, CHORDED_HEXAGON_EDGES)


def chorded_hexagon_structure() -> MeDILCausalModel:
    return MeDILCausalModel(6, sorted(tuple(sorted(e)) for e in CHORDED_HEXAGON_EDGES))


STRUCTURES = {
    "triangle_tail": triangle_tail_structure,
    "chorded_hexagon": chorded_hexagon_structure,
}

STRUCTURE_ALIASES = {
    "fig1": "triangle_tail",
    "fig3": "chorded_hexagon",
}


def resolve_structure(name: str) -> MeDILCausalModel | None:
    """Built-in structure by name or alias; None when ``name`` is not built in."""
    factory = STRUCTURES.get(STRUCTURE_ALIASES.get(name, name))
    return factory() if factory is not None else None
