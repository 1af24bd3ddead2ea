"""Seeded Monte Carlo estimates of exact measures.

Tuples are drawn uniformly from ``G^e`` (the finite image of Haar measure),
tuples that are not regular are rejected, and the hit rate among the rest
estimates the measure. Draws come in fixed-size chunks, chunk ``k`` using the
``k``-th child of ``SeedSequence(seed)`` with a Philox4x32-10 counter-based
bit generator, so a report depends only on (scenario, target, e, samples, seed)
and chunks can be produced in any order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .counting import Joiner
from .exceptions import ValidationError
from .measure import CoverScenario, measure_at

GENERATOR = "numpy-philox4x32-10/seedsequence-spawn/chunk-65536/v1"
CHUNK = 1 << 16


@dataclass(frozen=True)
class EstimateReport:
    scenario: str
    target: str
    e: int
    samples: int
    seed: int
    accepted: int
    hits: int
    estimate: Fraction | None
    exact: Fraction
    generator: str = GENERATOR

    @property
    def abs_error(self) -> Fraction | None:
        return None if self.estimate is None else abs(self.estimate - self.exact)

    @property
    def sigma(self) -> float | None:
        """Binomial standard error at the exact value, ``sqrt(p(1-p)/accepted)``."""
        if not self.accepted:
            return None
        p = float(self.exact)
        return math.sqrt(p * (1 - p) / self.accepted)

    @property
    def no_regular_samples(self) -> bool:
        return self.accepted == 0

    def within(self, k: float = 4.0) -> bool:
        if self.estimate is None:
            return False
        return float(self.abs_error) <= k * self.sigma


def _chunks(seed: int, samples: int):
    children = np.random.SeedSequence(seed).spawn((samples + CHUNK - 1) // CHUNK)
    for k, child in enumerate(children):
        yield np.random.Generator(np.random.Philox(child)), min(CHUNK, samples - k * CHUNK)


def sample_measure(s: CoverScenario, target: str, e: int, samples: int, seed: int) -> EstimateReport:
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    if not 0 <= seed < 2**64:
        raise ValidationError("seed must be a 64-bit unsigned integer")
    H = s.target(target)
    exact = measure_at(s, e).value(target)
    L = s.G.lattice
    want = L.class_index(H)
    JG, JQ = Joiner.of(s.G), Joiner.of(s.Q)
    pi = s.projection.images
    accepted = hits = 0
    for rng, size in _chunks(seed, samples):
        draws = rng.integers(0, s.G.order, size=(size, e)).tolist()
        for tup in draws:
            if not JQ.generates(pi[g] for g in tup):
                continue
            accepted += 1
            hits += L.class_of[JG.generated(tup)] == want
    estimate = Fraction(hits, accepted) if accepted else None
    return EstimateReport(s.name, target, e, samples, seed, accepted, hits, estimate, exact)
