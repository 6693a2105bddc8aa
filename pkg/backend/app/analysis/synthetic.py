from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.core.errors import InputError
from app.independence.samples import SampleMatrix
from app.mcm.model import MeDILCausalModel


class LinkFunction(str, Enum):
    LINEAR = "linear"
    # every second child of a latent sees (L^2 - 1): dependent on L yet uncorrelated with it
    QUADRATIC = "quadratic"


class SyntheticModel(BaseModel):
    """Functional causal model over a measurement structure with standard-normal latents and noise."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    structure: MeDILCausalModel
    weights: np.ndarray
    noise_sd: np.ndarray
    link: LinkFunction = LinkFunction.LINEAR

    @model_validator(mode="after")
    def _consistent(self) -> "SyntheticModel":
        support = self.structure.biadjacency
        if self.weights.shape != support.shape:
            raise ValueError(f"weights shape {self.weights.shape} does not match structure {support.shape}")
        if not np.all(np.isfinite(self.weights)):
            raise ValueError("weights must be finite")
        if not np.array_equal(self.weights != 0, support):
            raise ValueError("weights must be nonzero exactly on the structure's edges")
        if self.noise_sd.shape != (self.structure.num_measurements,):
            raise ValueError(f"noise_sd needs one entry per measurement, got shape {self.noise_sd.shape}")
        if not np.all(self.noise_sd > 0):
            raise ValueError("noise_sd must be positive")
        return self

    @classmethod
    def create(
        cls,
        structure: MeDILCausalModel,
        weights: Any = 1.0,
        noise_sd: Any = 0.1,
        link: LinkFunction | str = LinkFunction.LINEAR,
    ) -> "SyntheticModel":
        """Scalars broadcast: a scalar weight lands on every edge, a scalar noise on every measurement."""
        support = structure.biadjacency
        w = np.asarray(weights, dtype=float)
        if w.ndim == 0:
            w = np.where(support, float(w), 0.0)
        sd = np.asarray(noise_sd, dtype=float)
        if sd.ndim == 0:
            sd = np.full(structure.num_measurements, float(sd))
        try:
            return cls(structure=structure, weights=w, noise_sd=sd, link=LinkFunction(link))
        except ValueError as exc:
            raise InputError(f"invalid synthetic model: {exc}") from exc

    def split_weights(self) -> tuple[np.ndarray, np.ndarray]:
        """Weights on the latent itself and on its centred square."""
        linear = self.weights.copy()
        squared = np.zeros_like(self.weights)
        if self.link is LinkFunction.QUADRATIC:
            for a in range(self.structure.num_latents):
                for position, b in enumerate(self.structure.children(a)):
                    if position % 2 == 1:
                        squared[a, b] = linear[a, b]
                        linear[a, b] = 0.0
        return linear, squared


def _row_generator(seed: int, row: int) -> np.random.Generator:
    # the row sits in the high counter words; draws within a row advance the low words
    return np.random.Generator(np.random.Philox(key=seed, counter=row << 128))


def simulate(model: SyntheticModel, num_samples: int, seed: int = 0) -> SampleMatrix:
    """
    Draw ``num_samples`` observations.

    Row ``r`` comes from its own counter-based stream keyed by ``seed``, so a
    row does not depend on how many rows are drawn around it.
    """
    if num_samples < 2:
        raise InputError(f"num_samples must be at least 2, got {num_samples}")
    if seed < 0:
        raise InputError(f"seed must be non-negative, got {seed}")
    structure = model.structure
    width = structure.num_latents + structure.num_measurements
    draws = np.empty((num_samples, width))
    for row in range(num_samples):
        draws[row] = _row_generator(seed, row).standard_normal(width)
    latents = draws[:, : structure.num_latents]
    noise = draws[:, structure.num_latents :]

    linear, squared = model.split_weights()
    values = latents @ linear + (latents**2 - 1.0) @ squared + noise * model.noise_sd
    labels = [structure.measurement_label(b) for b in range(structure.num_measurements)]
    return SampleMatrix.of(values, labels)
