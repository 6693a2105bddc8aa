import time
from pathlib import Path
from typing import Optional

from joblib import Parallel, delayed
from pydantic import BaseModel, Field, ValidationError

from app.core.config import settings
from app.core.errors import InputError
from app.core.utils import get_app_logger
from app.graph.udg import UndirectedDependencyGraph, from_edge_list
from app.independence.permutation import pair_rng, permutation_test
from app.independence.samples import SampleMatrix


class PairTest(BaseModel):
    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    dcorr: float = Field(..., ge=0.0, le=1.0)
    p_value: float = Field(..., ge=0.0, le=1.0)
    independent: bool


class IndependenceTestReport(BaseModel):
    num_variables: int = Field(..., ge=2)
    num_samples: int = Field(..., ge=2)
    dcorr_threshold: float
    p_threshold: float
    num_permutations: int
    strict_exceedance: bool
    seed: int
    column_labels: Optional[list[str]] = None
    pairs: list[PairTest]

    def pair(self, i: int, j: int) -> PairTest:
        if i > j:
            i, j = j, i
        for test in self.pairs:
            if test.i == i and test.j == j:
                return test
        raise KeyError((i, j))

    def dependent_pairs(self) -> list[tuple[int, int]]:
        return [(t.i, t.j) for t in self.pairs if not t.independent]

    def to_udg(self) -> UndirectedDependencyGraph:
        return from_edge_list(self.num_variables, self.dependent_pairs(), self.column_labels)


def is_independent(dcorr: float, p_value: float, dcorr_threshold: float, p_threshold: float) -> bool:
    return dcorr < dcorr_threshold and p_value > p_threshold


def _test_pair(
    samples: SampleMatrix,
    i: int,
    j: int,
    num_permutations: int,
    seed: int,
    strict: bool,
) -> tuple[int, int, float, float]:
    dcorr, p_value = permutation_test(
        samples.column(i),
        samples.column(j),
        num_permutations,
        pair_rng(seed, i, j),
        strict,
    )
    return i, j, dcorr, p_value


def estimate_udg(
    samples: SampleMatrix,
    dcorr_threshold: Optional[float] = None,
    p_threshold: Optional[float] = None,
    num_permutations: Optional[int] = None,
    seed: Optional[int] = None,
    strict_exceedance: Optional[bool] = None,
    threads: Optional[int] = None,
) -> tuple[UndirectedDependencyGraph, IndependenceTestReport]:
    """
    Test every pair of columns and connect the pairs that are not declared independent.

    Unset arguments fall back to ``settings``; results do not depend on ``threads``.
    """
    logger = get_app_logger()
    cfg = settings.with_overrides(
        dcorr_threshold=dcorr_threshold,
        p_threshold=p_threshold,
        num_permutations=num_permutations,
        seed=seed,
        strict_exceedance=strict_exceedance,
        threads=threads,
    )
    n = samples.num_variables
    if n < 2:
        raise InputError(f"need at least 2 variables, got {n}")

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    logger.info(
        "independence:estimate start variables=%s samples=%s pairs=%s permutations=%s threads=%s",
        n,
        samples.num_samples,
        len(pairs),
        cfg.num_permutations,
        cfg.threads,
    )
    started = time.perf_counter()
    outcomes = Parallel(n_jobs=cfg.threads, prefer="threads")(
        delayed(_test_pair)(samples, i, j, cfg.num_permutations, cfg.seed, cfg.strict_exceedance)
        for i, j in pairs
    )

    tests = [
        PairTest(
            i=i,
            j=j,
            dcorr=dcorr,
            p_value=p_value,
            independent=is_independent(dcorr, p_value, cfg.dcorr_threshold, cfg.p_threshold),
        )
        for i, j, dcorr, p_value in sorted(outcomes)
    ]
    report = IndependenceTestReport(
        num_variables=n,
        num_samples=samples.num_samples,
        dcorr_threshold=cfg.dcorr_threshold,
        p_threshold=cfg.p_threshold,
        num_permutations=cfg.num_permutations,
        strict_exceedance=cfg.strict_exceedance,
        seed=cfg.seed,
        column_labels=list(samples.column_labels) if samples.column_labels is not None else None,
        pairs=tests,
    )
    udg = report.to_udg()
    logger.info(
        "independence:estimate done edges=%s elapsed=%.2fs",
        udg.num_edges,
        time.perf_counter() - started,
    )
    return udg, report


def format_report(report: IndependenceTestReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def read_report(path: str | Path) -> IndependenceTestReport:
    path = Path(path)
    try:
        return IndependenceTestReport.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read report: {exc.strerror}", source=str(path)) from exc
    except ValidationError as exc:
        raise InputError(f"invalid report document: {exc.errors()[0]['msg']}", source=str(path)) from exc
