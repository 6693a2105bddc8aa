import logging

import pytest

from app.analysis.structures import chorded_hexagon_udg, overlap_udg, triangle_tail_structure, triangle_tail_udg
from app.core.utils import APP_LOG_NAME, ERROR_LOG_NAME
from app.graph.generators import InstanceKind, generate_instance
from app.graph.udg import from_edge_list


@pytest.fixture(autouse=True)
def _reset_loggers():
    yield
    # handlers bound to a captured stream must not outlive the test
    for name in (APP_LOG_NAME, ERROR_LOG_NAME):
        logger = logging.getLogger(name)
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)


@pytest.fixture
def triangle_tail():
    return triangle_tail_udg()


@pytest.fixture
def triangle_tail_model():
    return triangle_tail_structure()


@pytest.fixture
def overlap():
    return overlap_udg()


@pytest.fixture
def chorded_hexagon():
    return chorded_hexagon_udg()


@pytest.fixture
def k4():
    return generate_instance(InstanceKind.ERDOS_RENYI, n=4, p=1.0, seed=0)


def cocktail_party(k: int):
    """K_{2,...,2}: every edge's common neighbourhood is a non-clique, so the solver must branch."""
    n = 2 * k
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n) if v != u + 1 or u % 2 == 1])


@pytest.fixture
def cocktail():
    return cocktail_party(4)


def oracle_instances(count: int = 200):
    """Seeded graphs cycling n over 3..8 and density over 0.2..0.8."""
    densities = [0.2, 0.4, 0.6, 0.8]
    for idx in range(count):
        n = 3 + idx % 6
        p = densities[(idx // 6) % 4]
        yield idx, generate_instance(InstanceKind.ERDOS_RENYI, n=n, p=p, seed=idx)
