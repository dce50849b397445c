"""Random divisor-closed integer tables for round-trip and integrality checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .arith import divisors
from .curve_lattice import CurveClass, GeometryModel, Truncation, canonical_degree, divide, index
from .transforms import InvariantTable


def random_geometry(rng: random.Random, rank: int | None = None, calabi_yau: bool | None = None) -> GeometryModel:
    rank = rank or rng.randint(1, 3)
    if calabi_yau is None:
        calabi_yau = rng.random() < 0.5
    if calabi_yau:
        pairing = (0,) * rank
    else:
        pairing = tuple(-rng.randint(0, 2) for _ in range(rank))
        if not any(pairing):
            pairing = (-1,) + pairing[1:]
    dim = rng.randint(3, 5)
    return GeometryModel(dim, pairing, "CY" if calabi_yau else "semi-positive")


def random_truncation(rng: random.Random, rank: int, max_cutoff: int = 12) -> Truncation:
    return Truncation(tuple(rng.randint(1, 2) for _ in range(rank)), rng.randint(2, max_cutoff))


def _degrees_for(rng: random.Random, n: int, m: int, k_beta: int) -> tuple[int, ...]:
    if n == 1:
        return (m - k_beta - 2,)
    if n == 2:
        total = m - k_beta - 1
        j = rng.randint(0, total)
        return (j, total - j)
    return tuple(rng.randint(0, m) for _ in range(n))


def random_table(
    rng: random.Random,
    kind: str,
    n: int,
    geom: GeometryModel | None = None,
    truncation: Truncation | None = None,
    n_keys: int | None = None,
    value_range: int = 50,
) -> InvariantTable:
    """A random explicit table with integer entries, closed under divisors.

    For ``n`` in ``{1, 2}`` every key shares one value of ``K.beta`` so the
    insertion degrees can satisfy the QK degree hypothesis on all of them.
    """
    geom = geom or random_geometry(rng)
    truncation = truncation or random_truncation(rng, geom.rank)
    classes = truncation.classes()
    if not classes:
        truncation = Truncation(truncation.weights, max(truncation.weights))
        classes = truncation.classes()
    level = None
    if n in (1, 2):
        level = canonical_degree(geom, rng.choice(classes))
        classes = [b for b in classes if canonical_degree(geom, b) == level]
    n_keys = n_keys or rng.randint(1, min(8, len(classes)))
    keys: set[CurveClass] = set()
    for beta in rng.sample(classes, min(n_keys, len(classes))):
        keys.add(beta)
        if canonical_degree(geom, beta) == 0:
            keys.update(divide(beta, r) for r in divisors(index(beta)))
    degrees = _degrees_for(rng, n, geom.dim, level if level is not None else 0)
    entries = {b: Fraction(rng.randint(-value_range, value_range)) for b in keys}
    return InvariantTable(kind, n, degrees, geom, entries, truncation)
