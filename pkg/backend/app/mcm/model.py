from typing import Any, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from app.core.errors import InputError
from app.graph.bitset import iter_bits, mask_of
from app.graph.udg import UndirectedDependencyGraph
from app.mcm.dag import GeneralDag, d_separated


class MeDILCausalModel:
    """
    Bipartite causal DAG: latents point into measurements and nothing else.

    Latent ``a`` is stored as the bitset of its measurement children. The
    structure is not required to satisfy the measurement-model constraints;
    ``validate_mcm`` reports on them.
    """

    __slots__ = ("_num_measurements", "_children", "_latent_labels", "_measurement_labels")

    def __init__(
        self,
        num_measurements: int,
        latent_children: Sequence[Sequence[int]],
        latent_labels: Optional[Sequence[str]] = None,
        measurement_labels: Optional[Sequence[str]] = None,
    ):
        if num_measurements < 0:
            raise InputError(f"num_measurements must be non-negative, got {num_measurements}")
        children = []
        for a, members in enumerate(latent_children):
            for b in members:
                if not 0 <= b < num_measurements:
                    raise InputError(f"latent {a} points to measurement {b} outside 0..{num_measurements - 1}")
            children.append(mask_of(members))
        if latent_labels is not None and len(latent_labels) != len(children):
            raise InputError(f"expected {len(children)} latent labels, got {len(latent_labels)}")
        if measurement_labels is not None:
            if len(measurement_labels) != num_measurements:
                raise InputError(f"expected {num_measurements} measurement labels, got {len(measurement_labels)}")
            if len(set(measurement_labels)) != num_measurements:
                raise InputError("measurement labels must be unique")
        self._num_measurements = num_measurements
        self._children = tuple(children)
        self._latent_labels = tuple(latent_labels) if latent_labels is not None else None
        self._measurement_labels = tuple(measurement_labels) if measurement_labels is not None else None

    @classmethod
    def from_biadjacency(cls, matrix: Any, **labels: Any) -> "MeDILCausalModel":
        biadjacency = np.asarray(matrix, dtype=bool)
        if biadjacency.ndim != 2:
            raise InputError(f"biadjacency must be 2-D, got shape {biadjacency.shape}")
        children = [np.flatnonzero(row).tolist() for row in biadjacency]
        return cls(int(biadjacency.shape[1]), children, **labels)

    @property
    def num_measurements(self) -> int:
        return self._num_measurements

    @property
    def num_latents(self) -> int:
        return len(self._children)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self._children)

    @property
    def biadjacency(self) -> np.ndarray:
        matrix = np.zeros((self.num_latents, self._num_measurements), dtype=bool)
        for a, row in enumerate(self._children):
            for b in iter_bits(row):
                matrix[a, b] = True
        return matrix

    @property
    def child_masks(self) -> tuple[int, ...]:
        return self._children

    def children(self, a: int) -> tuple[int, ...]:
        return tuple(iter_bits(self._children[a]))

    def parents(self, b: int) -> tuple[int, ...]:
        return tuple(a for a, row in enumerate(self._children) if (row >> b) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self._children) for b in iter_bits(row)]

    def measurement_label(self, b: int) -> str:
        """Column name for measurement ``b``; unlabelled columns are named ``M1``, ``M2``, ... like sample headers."""
        if self._measurement_labels is not None:
            return self._measurement_labels[b]
        return f"M{b + 1}"

    def latent_label(self, a: int) -> str:
        """``L{index}:{children}`` with the 0-based latent index and sorted 0-based measurement indices."""
        if self._latent_labels is not None:
            return self._latent_labels[a]
        members = ",".join(str(b) for b in self.children(a))
        return f"L{a}:{members}"

    @property
    def measurement_labels(self) -> Optional[tuple[str, ...]]:
        return self._measurement_labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeDILCausalModel):
            return NotImplemented
        return self._num_measurements == other._num_measurements and self._children == other._children

    def __hash__(self) -> int:
        return hash((self._num_measurements, self._children))

    def __repr__(self) -> str:
        return f"MeDILCausalModel(measurements={self._num_measurements}, latents={[self.children(a) for a in range(self.num_latents)]})"


def induced_udg(m: MeDILCausalModel) -> UndirectedDependencyGraph:
    rows = [0] * m.num_measurements
    for clique in m.child_masks:
        for b in iter_bits(clique):
            rows[b] |= clique & ~(1 << b)
    return UndirectedDependencyGraph(rows, m.measurement_labels)


def _check_dimensions(m: MeDILCausalModel, g: UndirectedDependencyGraph) -> None:
    if m.num_measurements != g.num_vertices:
        raise InputError(f"model has {m.num_measurements} measurements but graph has {g.num_vertices} vertices")


def is_observationally_consistent(m: MeDILCausalModel, g: UndirectedDependencyGraph) -> bool:
    """Induces exactly the dependencies of ``g``: none missing and none extra."""
    _check_dimensions(m, g)
    return induced_udg(m).rows == g.rows


def is_observationally_consistent_superset(m: MeDILCausalModel, g: UndirectedDependencyGraph) -> bool:
    """Induces every dependency of ``g``, possibly more (not measurement-faithful)."""
    _check_dimensions(m, g)
    induced = induced_udg(m).rows
    return all(row & ~have == 0 for row, have in zip(g.rows, induced))


def to_dag(m: MeDILCausalModel) -> GeneralDag:
    """Latents occupy vertices ``0..L-1``, measurements follow."""
    offset = m.num_latents
    children = [row << offset for row in m.child_masks] + [0] * m.num_measurements
    labels = [m.latent_label(a) for a in range(m.num_latents)]
    labels += [m.measurement_label(b) for b in range(m.num_measurements)]
    return GeneralDag(children, labels)


class McmCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class McmValidation(BaseModel):
    checks: list[McmCheck]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> McmCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)


def validate_mcm(m: MeDILCausalModel, check_latent_separation: bool = True) -> McmValidation:
    dag = to_dag(m)
    offset = m.num_latents
    latents = range(offset)
    measurements = range(offset, offset + m.num_measurements)

    orphans = [m.measurement_label(v - offset) for v in measurements if dag.in_degree(v) == 0]
    emitting = [m.measurement_label(v - offset) for v in measurements if dag.out_degree(v) > 0]
    idle = [m.latent_label(a) for a in latents if dag.out_degree(a) == 0]
    parented = [m.latent_label(a) for a in latents if dag.in_degree(a) > 0]
    acyclic = dag.is_acyclic()

    checks = [
        McmCheck(name="measurement_in_degree", passed=not orphans, detail=", ".join(orphans)),
        McmCheck(name="measurement_out_degree", passed=not emitting, detail=", ".join(emitting)),
        McmCheck(name="latent_out_degree", passed=not idle, detail=", ".join(idle)),
        McmCheck(name="acyclic", passed=acyclic),
        McmCheck(name="latents_parentless", passed=not parented, detail=", ".join(parented)),
    ]
    if check_latent_separation and acyclic:
        connected = [
            f"{m.latent_label(a)}~{m.latent_label(b)}"
            for a in latents
            for b in range(a + 1, offset)
            if not d_separated(dag, a, b, ())
        ]
        checks.append(McmCheck(name="latents_pairwise_separated", passed=not connected, detail=", ".join(connected)))
    return McmValidation(checks=checks)
