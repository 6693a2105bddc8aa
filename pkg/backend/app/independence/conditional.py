from pydantic import BaseModel, Field, model_validator

from app.graph.udg import UndirectedDependencyGraph


class ConditionalRelation(BaseModel):
    """Whether M_i and M_j are dependent given the single measurement M_given."""

    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    given: int = Field(..., ge=0)
    dependent: bool

    @model_validator(mode="after")
    def _distinct(self) -> "ConditionalRelation":
        if len({self.i, self.j, self.given}) != 3:
            raise ValueError(f"indices must be pairwise distinct, got ({self.i}, {self.j} | {self.given})")
        return self


class ConditionalRelations(BaseModel):
    num_measurements: int
    relations: list[ConditionalRelation]

    def lookup(self, i: int, j: int, given: int) -> ConditionalRelation:
        if i > j:
            i, j = j, i
        for rel in self.relations:
            if rel.i == i and rel.j == j and rel.given == given:
                return rel
        raise KeyError((i, j, given))


def is_dependent_given(g: UndirectedDependencyGraph, i: int, j: int, k: int) -> bool:
    if g.has_edge(i, j):
        return True
    # a shared latent path through M_k only opens when M_k depends on both
    return g.has_edge(i, k) and g.has_edge(j, k)


def derive_conditional_relations(g: UndirectedDependencyGraph) -> list[ConditionalRelation]:
    """One relation per unordered pair i < j and every other conditioning measurement k."""
    n = g.num_vertices
    return [
        ConditionalRelation(i=i, j=j, given=k, dependent=is_dependent_given(g, i, j, k))
        for i in range(n)
        for j in range(i + 1, n)
        for k in range(n)
        if k != i and k != j
    ]
