"""Power-law distributions on {1..r} and on-the-fly parameter sampling.

A power-law variate X on {1..r} with exponent beta has
Pr[X = k] = k^(-beta) / C with C the normalizing sum. Heavy-tailed
draws mapped through small affine grids give population parameters
that usually sit near a good default but occasionally jump, which is
what lets a run adapt without hand tuning.

The three control grids:

    elite fraction   0.10 + 0.01 * (15 - x),  x in 1..15  ->  0.24 .. 0.10
    mutant fraction  0.10 + 0.01 * x,         x in 1..20  ->  0.11 .. 0.30
    crossover bias   0.50 + 0.01 * x,         x in 1..30  ->  0.51 .. 0.80

with x power-law distributed, so the most likely values are 0.24, 0.11
and 0.51 respectively. One triple is drawn per generation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_BETA = 1.5

ELITE_RANGE = 15
MUTANT_RANGE = 20
BIAS_RANGE = 30


def elite_fraction_from_rank(x: int) -> float:
    return 0.10 + 0.01 * (ELITE_RANGE - x)

def mutant_fraction_from_rank(x: int) -> float:
    return 0.10 + 0.01 * x

def bias_from_rank(x: int) -> float:
    return 0.50 + 0.01 * x


@dataclass(frozen=True)
class PowerLaw:
    """Power-law distribution on the integers {1..r} with exponent beta.

    pmf and cdf are precomputed; sampling is inverse transform via
    binary search, so one uniform draw yields one variate.
    """

    r: int
    beta: float = DEFAULT_BETA
    pmf: np.ndarray = field(init=False, repr=False)
    cdf: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"support bound must be >= 1, got {self.r}")
        if not math.isfinite(self.beta):
            raise ValueError(f"exponent must be finite, got {self.beta}")
        k = np.arange(1, self.r + 1, dtype=np.float64)
        masses = k ** (-self.beta)
        norm = math.fsum(masses)
        pmf = masses / norm
        cdf = np.cumsum(pmf)
        cdf[-1] = 1.0
        pmf.setflags(write=False)
        cdf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)
        object.__setattr__(self, "cdf", cdf)

    def sample(self, rng: np.random.Generator) -> int:
        """One draw from {1..r}; consumes exactly one uniform."""
        return int(np.searchsorted(self.cdf, rng.random(), side="right")) + 1

    def sample_n(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """``n`` iid draws; consumes exactly ``n`` uniforms."""
        return np.searchsorted(self.cdf, rng.random(n), side="right").astype(np.int64) + 1


def powerlaw_new(r: int, beta: float = DEFAULT_BETA) -> PowerLaw:
    return PowerLaw(r, beta)


def powerlaw_sample(dist: PowerLaw, rng: np.random.Generator) -> int:
    return dist.sample(rng)


@dataclass(frozen=True)
class ParameterTriple:
    """One generation's control parameters."""

    elite_fraction: float
    mutant_fraction: float
    bias: float


class ParameterSampler:
    """Draws a fresh (elite, mutant, bias) triple per generation.

    Draw order is fixed (elite, then mutant, then bias) so runs are
    reproducible from the generator state alone.
    """

    def __init__(self, beta: float = DEFAULT_BETA):
        self.beta = beta
        self.elite_dist = PowerLaw(ELITE_RANGE, beta)
        self.mutant_dist = PowerLaw(MUTANT_RANGE, beta)
        self.bias_dist = PowerLaw(BIAS_RANGE, beta)

    def sample(self, rng: np.random.Generator) -> ParameterTriple:
        return ParameterTriple(
            elite_fraction=elite_fraction_from_rank(self.elite_dist.sample(rng)),
            mutant_fraction=mutant_fraction_from_rank(self.mutant_dist.sample(rng)),
            bias=bias_from_rank(self.bias_dist.sample(rng)),
        )


def sample_parameters(rng: np.random.Generator, beta: float = DEFAULT_BETA) -> ParameterTriple:
    """Convenience one-shot triple draw (builds the distributions each call)."""
    return ParameterSampler(beta).sample(rng)
