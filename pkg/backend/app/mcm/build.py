from typing import Optional, Sequence

from app.core.errors import InputError
from app.ecc.cover import EdgeCliqueCover
from app.mcm.model import MeDILCausalModel


def build_mcm(
    cover: EdgeCliqueCover,
    num_measurements: int,
    measurement_labels: Optional[Sequence[str]] = None,
) -> MeDILCausalModel:
    """
    One latent per clique, parenting exactly that clique.

    A measurement left out of every clique still needs a parent, so it gets an
    exclusive singleton latent. Latents are ordered by their member lists.
    """
    groups = []
    covered = set()
    for clique in cover.cliques:
        for b in clique.members:
            if b >= num_measurements:
                raise InputError(f"clique {list(clique.members)} references measurement {b} >= {num_measurements}")
        groups.append(clique.members)
        covered.update(clique.members)
    groups.extend((b,) for b in range(num_measurements) if b not in covered)
    groups.sort()
    return MeDILCausalModel(num_measurements, groups, measurement_labels=measurement_labels)
