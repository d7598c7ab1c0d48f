"""Seeded random inputs for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .shear import LineDecomposition, ShearConfiguration, ShearStep, exact_matrix
from .weights import SubspaceBasis, WeightSystem


def random_rational(rng: random.Random, bound: int = 1000) -> Fraction:
    """Numerator in ``[-bound, bound]``, denominator in ``[1, bound]``."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_element(basis: SubspaceBasis, rng: random.Random, bound: int = 1000) -> WeightSystem:
    return basis.combine([random_rational(rng, bound) for _ in range(basis.dimension)])


def random_exact_decomposition(n: int, rng: random.Random, spread: int = 3) -> LineDecomposition:
    while True:
        rows = [[Fraction(rng.randint(-spread, spread), rng.randint(1, spread)) for _ in range(n)] for _ in range(n)]
        try:
            return LineDecomposition(exact_matrix(rows))
        except ValueError:
            continue


def random_float_decomposition(n: int, rng: np.random.Generator) -> LineDecomposition:
    """Orthogonal frame with column scales in [0.5, 2]; condition number at most 4."""
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return LineDecomposition(q * rng.uniform(0.5, 2.0, size=n))


def random_configuration(n: int, m: int, rng: np.random.Generator, amplitude: float = 0.5) -> ShearConfiguration:
    """``m`` gaps with cumulative amplitudes built from increments in [-amplitude, amplitude]."""
    gaps = [
        (random_float_decomposition(n, rng), random_float_decomposition(n, rng), rng.uniform(-amplitude, amplitude, n - 1))
        for _ in range(m)
    ]
    return ShearConfiguration.from_increments(
        gaps, random_float_decomposition(n, rng), rng.uniform(-amplitude, amplitude, n - 1)
    )


def random_exact_configuration(n: int, m: int, rng: random.Random) -> ShearConfiguration:
    steps = tuple(
        ShearStep(
            random_exact_decomposition(n, rng),
            random_exact_decomposition(n, rng),
            tuple(random_rational(rng, 10) for _ in range(n - 1)),
        )
        for _ in range(m)
    )
    return ShearConfiguration(steps, random_exact_decomposition(n, rng), tuple(random_rational(rng, 10) for _ in range(n - 1)))
