from itertools import permutations
from typing import Iterable, Optional

import numpy as np

from app.core.errors import InputError
from app.independence.dcorr import check_pair, dcorr_from_centered, double_centered

TIE_TOLERANCE = 1e-12
EXACT_MAX_SAMPLES = 8


def pair_rng(seed: int, i: int, j: int) -> np.random.Generator:
    """Stream for pair (i, j); independent of worker count and visiting order."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i, j)))


def _exceeds(stat: float, observed: float, strict: bool) -> bool:
    if strict:
        return stat > observed + TIE_TOLERANCE
    return stat >= observed - TIE_TOLERANCE


def _count_exceedances(
    A: np.ndarray,
    B: np.ndarray,
    observed: float,
    orders: Iterable[np.ndarray],
    strict: bool,
) -> int:
    # permuting y's observations permutes both axes of its centred distance matrix
    count = 0
    for order in orders:
        stat = dcorr_from_centered(A, B[np.ix_(order, order)])
        if _exceeds(stat, observed, strict):
            count += 1
    return count


def permutation_test(
    x,
    y,
    num_permutations: int,
    rng: np.random.Generator,
    strict: bool = False,
) -> tuple[float, float]:
    """Observed distance correlation and the share of shuffles of ``y`` that reach it."""
    if num_permutations < 1:
        raise InputError(f"num_permutations must be at least 1, got {num_permutations}")
    x, y = check_pair(x, y)
    A = double_centered(x)
    B = double_centered(y)
    observed = dcorr_from_centered(A, B)
    if not A.any() or not B.any():
        # constant input: every shuffle ties the observed zero
        return observed, 1.0
    n = x.shape[0]
    orders = (rng.permutation(n) for _ in range(num_permutations))
    count = _count_exceedances(A, B, observed, orders, strict)
    return observed, count / num_permutations


def permutation_pvalue(
    x,
    y,
    num_permutations: int,
    seed: Optional[int] = 0,
    strict: bool = False,
) -> float:
    return permutation_test(x, y, num_permutations, np.random.default_rng(seed), strict)[1]


def exact_permutation_pvalue(x, y, strict: bool = False) -> float:
    """Enumerate every ordering of ``y``; only feasible for tiny samples."""
    x, y = check_pair(x, y)
    n = x.shape[0]
    if n > EXACT_MAX_SAMPLES:
        raise InputError(f"exact enumeration refuses N={n} above {EXACT_MAX_SAMPLES}")
    A = double_centered(x)
    B = double_centered(y)
    observed = dcorr_from_centered(A, B)
    if not A.any() or not B.any():
        return 1.0
    orders = [np.array(order) for order in permutations(range(n))]
    return _count_exceedances(A, B, observed, orders, strict) / len(orders)
