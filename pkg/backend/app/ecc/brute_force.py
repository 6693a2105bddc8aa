"""Exhaustive optimal cover for small graphs; the reference the solvers are checked against."""

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from app.core.config import settings
from app.core.errors import InputError, InvariantViolationError
from app.ecc.cover import CoverObjective, EdgeCliqueCover
from app.graph.bitset import iter_bits
from app.graph.cliques import maximal_clique_masks
from app.graph.udg import UndirectedDependencyGraph


def _all_cliques(rows: tuple[int, ...], n: int) -> list[int]:
    """Every clique with at least two members, by plain subset enumeration."""
    found = []
    for mask in range(1, 1 << n):
        if mask.bit_count() < 2:
            continue
        if all(mask & ~(rows[v] | (1 << v)) == 0 for v in iter_bits(mask)):
            found.append(mask)
    return found


def brute_force_ecc(
    g: UndirectedDependencyGraph,
    objective: CoverObjective | str,
    max_vertices: int | None = None,
) -> EdgeCliqueCover:
    """
    Enumerate the candidate cliques and solve the edge set cover exactly as a 0/1 program.

    Clique count only needs maximal cliques; assignment count needs every clique
    because a smaller clique can be cheaper.
    """
    objective = CoverObjective(objective)
    cap = settings.brute_force_max_vertices if max_vertices is None else max_vertices
    n = g.num_vertices
    if n > cap:
        raise InputError(f"brute force refuses n={n} above the cap of {cap}")

    edges = g.edges()
    if not edges:
        return EdgeCliqueCover.build([], objective)

    if objective is CoverObjective.CLIQUE_COUNT:
        pool = maximal_clique_masks(g.rows, (1 << n) - 1)
        costs = np.ones(len(pool))
    else:
        pool = _all_cliques(g.rows, n)
        costs = np.array([mask.bit_count() for mask in pool], dtype=float)

    incidence = np.zeros((len(edges), len(pool)))
    for row, (u, v) in enumerate(edges):
        for col, mask in enumerate(pool):
            if (mask >> u) & 1 and (mask >> v) & 1:
                incidence[row, col] = 1.0

    result = milp(
        c=costs,
        constraints=LinearConstraint(incidence, lb=1.0, ub=np.inf),
        integrality=np.ones(len(pool)),
        bounds=Bounds(0.0, 1.0),
        options={"mip_rel_gap": 0.0},
    )
    if not result.success:
        raise InvariantViolationError(f"ecc:brute_force set cover failed: {result.message}")

    chosen = [pool[idx] for idx in np.flatnonzero(result.x > 0.5)]
    return EdgeCliqueCover.from_masks(chosen, objective)
