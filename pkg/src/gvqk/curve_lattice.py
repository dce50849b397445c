"""Curve classes as lattice vectors in the non-negative orthant.

The effective cone is modelled as the orthant spanned by a chosen basis, so
effectivity and divisibility are decided coordinatewise.  A geometry is the
pair (complex dimension, pairing of the canonical class with the basis).

Semi-positivity is taken to mean ``K_X . beta <= 0`` for every effective
``beta``; that is the inequality the dimension counts actually use.  With the
orthant model it reduces to every entry of ``canonical_pairing`` being
non-positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import NotDivisible, RankMismatch, SemiPositivityError, ValidationError


@dataclass(frozen=True, order=True)
class CurveClass:
    coords: tuple[int, ...]

    def __init__(self, coords: Iterable[int]):
        coords = tuple(coords)
        for c in coords:
            if isinstance(c, bool) or not isinstance(c, int):
                raise ValidationError(f"curve class coordinates must be ints: {coords!r}")
            if c < 0:
                raise ValidationError(f"curve class must be effective: {coords!r}")
        if not coords or not any(coords):
            raise ValidationError(f"curve class must be nonzero: {coords!r}")
        object.__setattr__(self, "coords", coords)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __add__(self, other: CurveClass) -> CurveClass:
        _same_rank(self, other)
        return CurveClass(a + b for a, b in zip(self.coords, other.coords))

    def __mul__(self, r: int) -> CurveClass:
        return CurveClass(r * c for c in self.coords)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"

    def __repr__(self) -> str:
        return f"CurveClass({self.coords})"


def _same_rank(a: CurveClass, b: CurveClass) -> None:
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")


def index(beta: CurveClass) -> int:
    """Largest ``k`` such that ``beta / k`` is still a lattice class."""
    return reduce(math.gcd, beta.coords)


def divide(beta: CurveClass, r: int) -> CurveClass:
    if r < 1 or index(beta) % r:
        raise NotDivisible(f"{r} does not divide {beta}")
    return CurveClass(c // r for c in beta.coords)


def primitive_part(beta: CurveClass) -> CurveClass:
    return divide(beta, index(beta))


@dataclass(frozen=True)
class GeometryModel:
    dim: int
    canonical_pairing: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "canonical_pairing", tuple(self.canonical_pairing))
        if not self.canonical_pairing:
            raise ValidationError("canonical_pairing must be non-empty")
        if self.dim < 3:
            raise ValidationError(f"dimension must be at least 3, got {self.dim}")
        bad = [i for i, k in enumerate(self.canonical_pairing) if k > 0]
        if bad:
            raise SemiPositivityError(
                f"canonical pairing is positive on basis vector(s) {bad}: "
                f"{self.canonical_pairing}"
            )

    @property
    def rank(self) -> int:
        return len(self.canonical_pairing)

    @property
    def is_calabi_yau(self) -> bool:
        return not any(self.canonical_pairing)


def canonical_degree(geom: GeometryModel, beta: CurveClass) -> int:
    """``K_X . beta``; never positive on a valid geometry."""
    if beta.rank != geom.rank:
        raise RankMismatch(f"class {beta} has rank {beta.rank}, geometry has {geom.rank}")
    return sum(k * c for k, c in zip(geom.canonical_pairing, beta.coords))


@dataclass(frozen=True)
class Truncation:
    """Degree functional ``sum(weights[i] * beta[i])`` with an inclusive cutoff."""

    weights: tuple[int, ...]
    cutoff: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if not self.weights or any(
            isinstance(w, bool) or not isinstance(w, int) or w < 1 for w in self.weights
        ):
            raise ValidationError(f"truncation weights must be positive ints: {self.weights}")
        if self.cutoff < 0:
            raise ValidationError(f"cutoff must be non-negative: {self.cutoff}")

    @property
    def rank(self) -> int:
        return len(self.weights)

    def degree(self, beta: CurveClass) -> int:
        if beta.rank != self.rank:
            raise RankMismatch(f"class {beta} has rank {beta.rank}, truncation has {self.rank}")
        return sum(w * c for w, c in zip(self.weights, beta.coords))

    def admits(self, beta: CurveClass) -> bool:
        return self.degree(beta) <= self.cutoff

    def classes(self) -> list[CurveClass]:
        """Every effective class within the cutoff, sorted lexicographically."""
        out: list[tuple[int, ...]] = []

        def rec(prefix: tuple[int, ...], budget: int) -> None:
            i = len(prefix)
            if i == self.rank:
                if any(prefix):
                    out.append(prefix)
                return
            for c in range(budget // self.weights[i] + 1):
                rec(prefix + (c,), budget - c * self.weights[i])

        rec((), self.cutoff)
        return [CurveClass(c) for c in sorted(out)]


def multiples_up_to(beta: CurveClass, bound: Truncation) -> list[CurveClass]:
    """``[beta, 2 beta, ...]`` while the degree stays within the cutoff."""
    step = bound.degree(beta)
    return [beta * r for r in range(1, bound.cutoff // step + 1)]


def as_class(value: CurveClass | Sequence[int]) -> CurveClass:
    return value if isinstance(value, CurveClass) else CurveClass(value)
