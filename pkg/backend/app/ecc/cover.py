from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from pydantic import BaseModel, Field, ValidationError, field_serializer

from app.core.errors import InputError
from app.graph.bitset import is_clique_mask
from app.graph.udg import Clique, UndirectedDependencyGraph, canonical_order


class CoverObjective(str, Enum):
    CLIQUE_COUNT = "clique_count"
    ASSIGNMENT_COUNT = "assignment_count"

    def value_of(self, cliques: Iterable[Clique]) -> int:
        cliques = list(cliques)
        if self is CoverObjective.CLIQUE_COUNT:
            return len(cliques)
        return sum(c.size for c in cliques)


class EdgeCliqueCover(BaseModel):
    """Cliques covering every edge of a host graph, in canonical order."""

    objective: CoverObjective
    objective_value: int = Field(..., ge=0)
    cliques: list[Clique] = Field(default_factory=list)

    @field_serializer("cliques")
    def _cliques_as_lists(self, cliques: list[Clique]) -> list[list[int]]:
        return [list(c.members) for c in cliques]

    @classmethod
    def build(cls, cliques: Iterable[Clique | Sequence[int]], objective: CoverObjective) -> "EdgeCliqueCover":
        normalized = canonical_order(c if isinstance(c, Clique) else Clique(members=tuple(c)) for c in cliques)
        objective = CoverObjective(objective)
        return cls(objective=objective, objective_value=objective.value_of(normalized), cliques=normalized)

    @classmethod
    def from_masks(cls, masks: Iterable[int], objective: CoverObjective) -> "EdgeCliqueCover":
        return cls.build((Clique.from_mask(m) for m in masks), objective)

    @property
    def num_cliques(self) -> int:
        return len(self.cliques)

    def recomputed_value(self) -> int:
        return self.objective.value_of(self.cliques)


class CoverCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class CoverVerification(BaseModel):
    checks: list[CoverCheck]

    @property
    def ok(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CoverCheck:
        for item in self.checks:
            if item.name == name:
                return item
        raise KeyError(name)

    def failures(self) -> list[CoverCheck]:
        return [check for check in self.checks if not check.passed]


def verify_cover(g: UndirectedDependencyGraph, cover: EdgeCliqueCover) -> CoverVerification:
    n = g.num_vertices
    invalid = []
    non_edges = []
    for c in cover.cliques:
        if any(m >= n for m in c.members):
            invalid.append(f"{list(c.members)} out of range")
            continue
        if not is_clique_mask(g.rows, c.mask):
            invalid.append(f"{list(c.members)} is not a clique")
            non_edges.extend(f"{u}-{v}" for u, v in c.pairs() if not g.has_edge(u, v))

    covered = [0] * n
    for c in cover.cliques:
        mask = c.mask
        if mask >> n:
            continue
        for v in c.members:
            covered[v] |= mask
    uncovered = [f"{u}-{v}" for u, v in g.edges() if not (covered[u] >> v) & 1]

    masks = [c.mask for c in cover.cliques]
    redundant = []
    for a, mask_a in enumerate(masks):
        for b, mask_b in enumerate(masks):
            # identical cliques count once
            if a != b and mask_a & ~mask_b == 0 and (mask_a != mask_b or a > b):
                redundant.append(f"{list(cover.cliques[a].members)} within {list(cover.cliques[b].members)}")
                break

    recomputed = cover.recomputed_value()
    return CoverVerification(
        checks=[
            CoverCheck(name="all_cliques_valid", passed=not invalid, detail="; ".join(invalid)),
            CoverCheck(name="all_edges_covered", passed=not uncovered, detail=", ".join(uncovered)),
            CoverCheck(name="no_non_edges_covered", passed=not non_edges, detail=", ".join(non_edges)),
            CoverCheck(name="no_subset_redundancy", passed=not redundant, detail="; ".join(redundant)),
            CoverCheck(
                name="objective_value",
                passed=recomputed == cover.objective_value,
                detail="" if recomputed == cover.objective_value else f"stated {cover.objective_value}, recomputed {recomputed}",
            ),
        ]
    )


def parse_cover(text: str, source: str | None = None) -> EdgeCliqueCover:
    try:
        cover = EdgeCliqueCover.model_validate_json(text)
    except ValidationError as exc:
        raise InputError(f"invalid cover document: {exc.errors()[0]['msg']}", source=source) from exc
    recomputed = cover.recomputed_value()
    if recomputed != cover.objective_value:
        raise InputError(
            f"objective_value {cover.objective_value} does not match recomputed {recomputed}",
            source=source,
        )
    return cover.model_copy(update={"cliques": canonical_order(cover.cliques)})


def read_cover(path: str | Path) -> EdgeCliqueCover:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read cover file: {exc.strerror}", source=str(path)) from exc
    return parse_cover(text, source=str(path))


def format_cover(cover: EdgeCliqueCover) -> str:
    return cover.model_dump_json(indent=2) + "\n"
