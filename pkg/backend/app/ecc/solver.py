"""
Exact minimum edge clique cover by branch and bound.

Both objectives share one search: pick the uncovered edge with the fewest
candidate extensions, branch on the cliques that could cover it, and prune with
an admissible lower bound. Edges whose candidate extension is forced are
covered without branching, and independent components are solved separately.

Once the optimum is proven, a second pass walks the candidate cliques in
canonical order and keeps each one that still extends to an optimal cover, so
the returned cover is the lexicographically least optimum.
"""

import time
from typing import Iterator, Optional, Sequence

from pydantic import BaseModel, Field

from app.core.config import settings
from app.core.errors import BudgetExceededError, InvariantViolationError
from app.core.utils import get_app_logger, get_error_logger
from app.ecc.cover import CoverObjective, EdgeCliqueCover, verify_cover
from app.graph.bitset import is_clique_mask, iter_bits
from app.graph.cliques import iter_maximal_clique_masks, maximal_clique_masks
from app.graph.udg import UndirectedDependencyGraph

_CLOCK_CHECK_INTERVAL = 256


class SearchBudget(BaseModel):
    time_limit: Optional[float] = Field(None, gt=0.0, description="wall-clock seconds")
    node_limit: Optional[int] = Field(None, ge=1, description="search nodes")

    @classmethod
    def from_settings(cls) -> "SearchBudget":
        return cls(time_limit=settings.solver_time_budget, node_limit=settings.solver_node_budget)


class SearchStats(BaseModel):
    objective: CoverObjective
    nodes: int = 0
    reductions: int = 0
    components: int = 0
    lower_bound: int = 0
    greedy_value: int = 0
    optimum: Optional[int] = None
    elapsed: float = 0.0


def _cover_edges(unc: list[int], clique: int) -> None:
    for v in iter_bits(clique):
        unc[v] &= ~clique


def _alive(unc: Sequence[int]) -> int:
    mask = 0
    for v, row in enumerate(unc):
        if row:
            mask |= 1 << v
    return mask


def _uncovered_edges(unc: Sequence[int]) -> list[tuple[int, int]]:
    return [(u, v) for u, row in enumerate(unc) for v in iter_bits(row >> (u + 1) << (u + 1))]


def _uncovered_inside(unc: Sequence[int], clique: int) -> int:
    return sum((unc[v] & clique).bit_count() for v in iter_bits(clique)) // 2


def _dominated_by(unc: Sequence[int], small: int, large: int) -> bool:
    """True when every uncovered edge inside ``small`` also lies inside ``large``."""
    for v in iter_bits(small):
        inside = unc[v] & small
        if inside and (not (large >> v) & 1 or inside & ~large):
            return False
    return True


def _drop_subsets(masks: list[int]) -> list[int]:
    kept = []
    for a, mask in enumerate(masks):
        if any(b != a and mask & ~other == 0 and (mask != other or b < a) for b, other in enumerate(masks)):
            continue
        kept.append(mask)
    return kept


def _mask_key(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


class _BranchAndBound:
    objective: CoverObjective

    def __init__(self, g: UndirectedDependencyGraph, budget: SearchBudget):
        self.g = g
        self.rows = g.rows
        self.budget = budget
        self.stats = SearchStats(objective=self.objective)
        self._started = 0.0
        self._deadline: Optional[float] = None

    # objective-specific hooks

    def cost(self, clique: int) -> int:
        raise NotImplementedError

    def reduce(self, unc: list[int]) -> list[int]:
        raise NotImplementedError

    def candidates(self, unc: list[int], u: int, v: int, alive: int) -> list[int]:
        raise NotImplementedError

    def lower_bound(self, unc: Sequence[int]) -> int:
        raise NotImplementedError

    def greedy_clique(self, unc: list[int], u: int, v: int) -> int:
        raise NotImplementedError

    def pool(self, unc: Sequence[int], after: tuple[int, ...]) -> Iterator[int]:
        """Cliques an optimal cover may use, in canonical order, strictly after ``after``."""
        raise NotImplementedError

    def useful(self, unc: Sequence[int], clique: int) -> bool:
        raise NotImplementedError

    def normalize(self, masks: Sequence[int]) -> list[int]:
        return list(masks)

    # shared search

    def _common(self, u: int, v: int, alive: int) -> int:
        return self.rows[u] & self.rows[v] & alive

    def _tick(self) -> None:
        self.stats.nodes += 1
        limit = self.budget.node_limit
        if limit is not None and self.stats.nodes > limit:
            self._exceeded("node budget exhausted")
        if self._deadline is not None and self.stats.nodes % _CLOCK_CHECK_INTERVAL == 0:
            if time.perf_counter() > self._deadline:
                self._exceeded("time budget exhausted")

    def _exceeded(self, reason: str) -> None:
        best = self.stats.optimum if self.stats.optimum is not None else self.stats.greedy_value
        raise BudgetExceededError(
            f"ecc:{self.objective.value} {reason}",
            best_value=best,
            lower_bound=self.stats.lower_bound,
            nodes=self.stats.nodes,
            elapsed=time.perf_counter() - self._started,
        )

    def cover_cost(self, masks: Sequence[int]) -> int:
        return sum(self.cost(m) for m in masks)

    def greedy(self) -> list[int]:
        """Cover the lowest uncovered edge with the locally best clique until nothing is left."""
        unc = list(self.rows)
        masks = []
        while True:
            edges = _uncovered_edges(unc)
            if not edges:
                break
            u, v = edges[0]
            clique = self.greedy_clique(unc, u, v)
            masks.append(clique)
            _cover_edges(unc, clique)
        return _drop_subsets(masks)

    def _components(self, unc: Sequence[int], alive: int) -> list[int]:
        comps = []
        remaining = alive
        while remaining:
            comp = remaining & -remaining
            frontier = comp
            while frontier:
                reached = 0
                for v in iter_bits(frontier):
                    reached |= self.rows[v]
                frontier = reached & alive & ~comp
                comp |= frontier
            comps.append(comp)
            remaining &= ~comp
        return comps

    def _restrict(self, unc: Sequence[int], comp: int) -> list[int]:
        return [row if (comp >> v) & 1 else 0 for v, row in enumerate(unc)]

    def _solve(self, unc: list[int], limit: int) -> Optional[list[int]]:
        """Optimal cover of the uncovered edges costing less than ``limit``, or None."""
        self._tick()
        unc = list(unc)
        forced = self.reduce(unc)
        spent = self.cover_cost(forced)
        if spent >= limit:
            return None
        alive = _alive(unc)
        if not alive:
            return forced

        parts = [self._restrict(unc, comp) for comp in self._components(unc, alive)]
        if len(parts) > 1:
            self.stats.components += len(parts)
        bounds = [self.lower_bound(part) for part in parts]
        if spent + sum(bounds) >= limit:
            return None

        result = list(forced)
        for idx, part in enumerate(parts):
            part_limit = limit - spent - sum(bounds[idx + 1 :])
            if part_limit <= bounds[idx]:
                return None
            sub = self._branch(part, part_limit, bounds[idx])
            if sub is None:
                return None
            result.extend(sub)
            spent += self.cover_cost(sub)
        return result

    def _branch(self, unc: list[int], limit: int, bound: int) -> Optional[list[int]]:
        alive = _alive(unc)
        u, v = min(
            _uncovered_edges(unc),
            key=lambda e: (self._common(e[0], e[1], alive).bit_count(), e),
        )
        best = None
        for clique in self.candidates(unc, u, v, alive):
            child_limit = limit - self.cost(clique)
            if child_limit <= 0:
                continue
            child = list(unc)
            _cover_edges(child, clique)
            sub = self._solve(child, child_limit)
            if sub is None:
                continue
            best = [clique, *sub]
            limit = self.cover_cost(best)
            if limit <= bound:
                break
        return best

    def _order(self, unc: Sequence[int], cands: list[int]) -> list[int]:
        unique = sorted(set(cands), key=_mask_key)
        kept = []
        for a, small in enumerate(unique):
            dominated = False
            for b, large in enumerate(unique):
                if a == b or self.cost(large) > self.cost(small):
                    continue
                if not _dominated_by(unc, small, large):
                    continue
                # equal coverage at equal cost: keep the canonical first
                if _dominated_by(unc, large, small) and self.cost(large) == self.cost(small) and b > a:
                    continue
                dominated = True
                break
            if not dominated:
                kept.append(small)
        return sorted(kept, key=lambda m: (-_uncovered_inside(unc, m), self.cost(m), _mask_key(m)))

    def _lex_least(self, witness: list[int]) -> list[int]:
        """
        Rebuild an optimal cover one canonical clique at a time.

        A clique is kept when it is the smallest remaining candidate that some
        optimal cover extending the kept prefix contains. Every other clique of
        such a cover then sorts after it, so the kept cliques come out in order.
        """
        witness = sorted(self.normalize(witness), key=_mask_key)
        unc = list(self.rows)
        remaining = self.cover_cost(witness)
        chosen: list[int] = []
        after: tuple[int, ...] = ()
        while any(unc):
            target = witness[len(chosen)]
            for clique in self.pool(unc, after):
                if clique == target:
                    break
                cost = self.cost(clique)
                if cost > remaining or not self.useful(unc, clique):
                    continue
                child = list(unc)
                _cover_edges(child, clique)
                sub = self._solve(child, remaining - cost + 1)
                if sub is not None:
                    witness = chosen + [clique] + sorted(self.normalize(sub), key=_mask_key)
                    break
            else:
                raise InvariantViolationError(f"ecc:{self.objective.value} optimal cover clique missing from pool")
            clique = witness[len(chosen)]
            chosen.append(clique)
            _cover_edges(unc, clique)
            remaining -= self.cost(clique)
            after = _mask_key(clique)
        return chosen

    def run(self) -> list[int]:
        logger = get_app_logger()
        self._started = time.perf_counter()
        if self.budget.time_limit is not None:
            self._deadline = self._started + self.budget.time_limit

        unc = list(self.rows)
        greedy = self.greedy()
        self.stats.greedy_value = self.cover_cost(greedy)
        self.stats.lower_bound = self.lower_bound(unc)
        logger.info(
            "ecc:%s start n=%s m=%s lower_bound=%s greedy=%s",
            self.objective.value,
            self.g.num_vertices,
            self.g.num_edges,
            self.stats.lower_bound,
            self.stats.greedy_value,
        )
        result = self._solve(unc, self.stats.greedy_value + 1)
        if result is None:
            # unreachable: the greedy cover is a witness below the initial limit
            raise InvariantViolationError(f"ecc:{self.objective.value} search found no cover below greedy bound")
        self.stats.optimum = self.cover_cost(result)
        result = self._lex_least(result)
        if self.cover_cost(result) != self.stats.optimum:
            raise InvariantViolationError(f"ecc:{self.objective.value} canonical pass changed the optimum")
        self.stats.elapsed = time.perf_counter() - self._started
        return result


class _CliqueCountSearch(_BranchAndBound):
    objective = CoverObjective.CLIQUE_COUNT

    def __init__(self, g: UndirectedDependencyGraph, budget: SearchBudget):
        super().__init__(g, budget)
        self._maximal: Optional[list[int]] = None

    def cost(self, clique: int) -> int:
        return 1

    def reduce(self, unc: list[int]) -> list[int]:
        # an edge whose live common neighbourhood is a clique has a single useful cover
        forced = []
        applied = True
        while applied:
            applied = False
            alive = _alive(unc)
            for u, v in _uncovered_edges(unc):
                if not (unc[u] >> v) & 1:
                    continue
                common = self._common(u, v, alive)
                if is_clique_mask(self.rows, common):
                    clique = common | (1 << u) | (1 << v)
                    forced.append(clique)
                    _cover_edges(unc, clique)
                    self.stats.reductions += 1
                    applied = True
        return forced

    def candidates(self, unc: list[int], u: int, v: int, alive: int) -> list[int]:
        base = (1 << u) | (1 << v)
        common = self._common(u, v, alive)
        cands = [base | m for m in iter_maximal_clique_masks(self.rows, common)] or [base]
        return self._order(unc, cands)

    def lower_bound(self, unc: Sequence[int]) -> int:
        """Uncovered edges no two of which fit in one clique each need their own clique."""
        alive = _alive(unc)
        edges = sorted(
            _uncovered_edges(unc),
            key=lambda e: (self._common(e[0], e[1], alive).bit_count(), e),
        )
        chosen: list[int] = []
        for u, v in edges:
            pair = (1 << u) | (1 << v)
            if all(not is_clique_mask(self.rows, pair | other) for other in chosen):
                chosen.append(pair)
        return len(chosen)

    def greedy_clique(self, unc: list[int], u: int, v: int) -> int:
        base = (1 << u) | (1 << v)
        common = self.rows[u] & self.rows[v]
        cands = [base | m for m in iter_maximal_clique_masks(self.rows, common)] or [base]
        return min(cands, key=lambda m: (-_uncovered_inside(unc, m), _mask_key(m)))

    def pool(self, unc: Sequence[int], after: tuple[int, ...]) -> Iterator[int]:
        if self._maximal is None:
            everything = (1 << self.g.num_vertices) - 1
            self._maximal = [m for m in maximal_clique_masks(self.rows, everything) if m.bit_count() > 1]
        return (m for m in self._maximal if _mask_key(m) > after)

    def useful(self, unc: Sequence[int], clique: int) -> bool:
        return _uncovered_inside(unc, clique) > 0

    def normalize(self, masks: Sequence[int]) -> list[int]:
        # grow each clique to the lowest-indexed maximal clique containing it
        grown = []
        for clique in masks:
            for w in range(self.g.num_vertices):
                if not (clique >> w) & 1 and clique & ~self.rows[w] == 0:
                    clique |= 1 << w
            grown.append(clique)
        return grown


class _AssignmentSearch(_BranchAndBound):
    objective = CoverObjective.ASSIGNMENT_COUNT

    def __init__(self, g: UndirectedDependencyGraph, budget: SearchBudget):
        super().__init__(g, budget)
        self._count_bound = _CliqueCountSearch(g, budget)
        # largest clique through each vertex, minus the vertex itself
        self._capacity = [0] * g.num_vertices
        if g.num_vertices:
            for mask in iter_maximal_clique_masks(self.rows, (1 << g.num_vertices) - 1):
                size = mask.bit_count() - 1
                for v in iter_bits(mask):
                    self._capacity[v] = max(self._capacity[v], size)

    def cost(self, clique: int) -> int:
        return clique.bit_count()

    def _useful_common(self, unc: Sequence[int], u: int, v: int, alive: int) -> int:
        common = self._common(u, v, alive)
        span = common | (1 << u) | (1 << v)
        useful = 0
        for w in iter_bits(common):
            if unc[w] & span:
                useful |= 1 << w
        return useful

    def _trim(self, unc: Sequence[int], clique: int) -> int:
        # a member with no uncovered edge inside the clique only adds cost
        changed = True
        while changed:
            changed = False
            for w in iter_bits(clique):
                if not unc[w] & clique:
                    clique &= ~(1 << w)
                    changed = True
        return clique

    def reduce(self, unc: list[int]) -> list[int]:
        forced = []
        applied = True
        while applied:
            applied = False
            alive = _alive(unc)
            for u, v in _uncovered_edges(unc):
                if not (unc[u] >> v) & 1:
                    continue
                if not self._useful_common(unc, u, v, alive):
                    pair = (1 << u) | (1 << v)
                    forced.append(pair)
                    _cover_edges(unc, pair)
                    self.stats.reductions += 1
                    applied = True
        return forced

    def _all_cliques(self, within: int) -> list[int]:
        found = [0]
        stack = [(0, within)]
        while stack:
            clique, extendable = stack.pop()
            for w in iter_bits(extendable):
                bigger = clique | (1 << w)
                found.append(bigger)
                # only higher-indexed vertices extend, so each clique appears once
                stack.append((bigger, extendable & self.rows[w] & ~((2 << w) - 1)))
        return found

    def candidates(self, unc: list[int], u: int, v: int, alive: int) -> list[int]:
        base = (1 << u) | (1 << v)
        useful = self._useful_common(unc, u, v, alive)
        cands = []
        for extra in self._all_cliques(useful):
            clique = base | extra
            if all(unc[w] & clique for w in iter_bits(extra)):
                cands.append(clique)
        return self._order(unc, cands)

    def lower_bound(self, unc: Sequence[int]) -> int:
        alive = _alive(unc)
        per_vertex = 0
        for v in iter_bits(alive):
            reach = min(self._capacity[v], (self.rows[v] & alive).bit_count())
            per_vertex += -(-unc[v].bit_count() // reach)
        return max(per_vertex, 2 * self._count_bound.lower_bound(unc))

    def greedy_clique(self, unc: list[int], u: int, v: int) -> int:
        base = (1 << u) | (1 << v)
        common = self.rows[u] & self.rows[v]
        cands = [self._trim(unc, base | m) for m in iter_maximal_clique_masks(self.rows, common)] or [base]
        return min(
            cands,
            key=lambda m: (-_uncovered_inside(unc, m) / m.bit_count(), -_uncovered_inside(unc, m), _mask_key(m)),
        )

    def pool(self, unc: Sequence[int], after: tuple[int, ...]) -> Iterator[int]:
        return self._cliques_after(0, _alive(unc), after)

    def _cliques_after(self, clique: int, extendable: int, after: tuple[int, ...]) -> Iterator[int]:
        # preorder over increasing extensions visits cliques in canonical order
        for w in iter_bits(extendable):
            bigger = clique | (1 << w)
            key = _mask_key(bigger)
            head = after[: len(key)]
            if key < head:
                continue
            if key > head and bigger.bit_count() > 1:
                yield bigger
            yield from self._cliques_after(bigger, extendable & self.rows[w] & ~((2 << w) - 1), after)

    def useful(self, unc: Sequence[int], clique: int) -> bool:
        return all(unc[w] & clique for w in iter_bits(clique))


_SEARCHES = {
    CoverObjective.CLIQUE_COUNT: _CliqueCountSearch,
    CoverObjective.ASSIGNMENT_COUNT: _AssignmentSearch,
}


def solve_ecc(
    g: UndirectedDependencyGraph,
    objective: CoverObjective | str = CoverObjective.CLIQUE_COUNT,
    budget: Optional[SearchBudget] = None,
) -> tuple[EdgeCliqueCover, SearchStats]:
    """Provably optimal cover for ``objective`` together with the search statistics."""
    logger = get_app_logger()
    error_logger = get_error_logger()
    objective = CoverObjective(objective)
    search = _SEARCHES[objective](g, budget or SearchBudget.from_settings())

    if g.num_edges == 0:
        logger.info("ecc:%s edgeless n=%s", objective.value, g.num_vertices)
        search.stats.optimum = 0
        return EdgeCliqueCover.build([], objective), search.stats

    try:
        masks = search.run()
    except BudgetExceededError as exc:
        error_logger.error("ecc:%s budget %s", objective.value, exc)
        raise

    cover = EdgeCliqueCover.from_masks(masks, objective)
    report = verify_cover(g, cover)
    if not report.ok:
        failed = ", ".join(f"{c.name} ({c.detail})" for c in report.failures())
        error_logger.error("ecc:%s verification failed %s", objective.value, failed)
        raise InvariantViolationError(f"ecc:{objective.value} produced an invalid cover: {failed}")

    stats = search.stats
    logger.info(
        "ecc:%s done value=%s cliques=%s nodes=%s reductions=%s elapsed=%.3fs",
        objective.value,
        cover.objective_value,
        cover.num_cliques,
        stats.nodes,
        stats.reductions,
        stats.elapsed,
    )
    return cover, stats


def min_clique_ecc(g: UndirectedDependencyGraph, budget: Optional[SearchBudget] = None) -> EdgeCliqueCover:
    return solve_ecc(g, CoverObjective.CLIQUE_COUNT, budget)[0]


def min_assignment_ecc(g: UndirectedDependencyGraph, budget: Optional[SearchBudget] = None) -> EdgeCliqueCover:
    return solve_ecc(g, CoverObjective.ASSIGNMENT_COUNT, budget)[0]


def greedy_upper_bound(g: UndirectedDependencyGraph, objective: CoverObjective | str) -> EdgeCliqueCover:
    """Heuristic cover used to seed the search incumbent; not optimal in general."""
    objective = CoverObjective(objective)
    search = _SEARCHES[objective](g, SearchBudget())
    return EdgeCliqueCover.from_masks(search.greedy(), objective)
