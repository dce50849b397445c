"""Truncated power series in the Novikov variables ``Q^beta``.

Coefficients are exact rationals.  Classes inside the truncation that carry
no stored term have coefficient zero; classes outside it are *unknown* and
asking for them raises :class:`OutOfTruncation`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .curve_lattice import CurveClass, Truncation, as_class
from .errors import OutOfTruncation, TruncationMismatch, ValidationError


class NovikovSeries:
    __slots__ = ("_terms", "_constant", "truncation")

    def __init__(
        self,
        terms: Mapping[CurveClass | Sequence[int], Fraction | int] | None = None,
        truncation: Truncation | None = None,
        constant_term: Fraction | int = 0,
    ):
        if truncation is None:
            raise ValidationError("a NovikovSeries needs a truncation")
        self.truncation = truncation
        self._constant = Fraction(constant_term)
        clean: dict[CurveClass, Fraction] = {}
        for key, value in (terms or {}).items():
            beta = as_class(key)
            if not truncation.admits(beta):
                raise OutOfTruncation(f"{beta} lies beyond the truncation")
            value = Fraction(value)
            if value:
                clean[beta] = clean.get(beta, Fraction(0)) + value
        self._terms = {b: c for b, c in sorted(clean.items()) if c}

    @classmethod
    def monomial(cls, beta, truncation: Truncation, coeff=1) -> NovikovSeries:
        """``coeff * Q^beta``, or zero if ``beta`` escapes the truncation."""
        beta = as_class(beta)
        if not truncation.admits(beta):
            return cls({}, truncation)
        return cls({beta: coeff}, truncation)

    @classmethod
    def one(cls, truncation: Truncation) -> NovikovSeries:
        return cls({}, truncation, 1)

    @property
    def constant_term(self) -> Fraction:
        return self._constant

    @property
    def terms(self) -> dict[CurveClass, Fraction]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, beta) -> Fraction:
        beta = as_class(beta)
        if not self.truncation.admits(beta):
            raise OutOfTruncation(f"coefficient of {beta} is beyond the truncation")
        return self._terms.get(beta, Fraction(0))

    def _check(self, other: NovikovSeries) -> None:
        if self.truncation != other.truncation:
            raise TruncationMismatch(f"{self.truncation} vs {other.truncation}")

    def __add__(self, other: NovikovSeries) -> NovikovSeries:
        self._check(other)
        terms = dict(self._terms)
        for b, c in other._terms.items():
            terms[b] = terms.get(b, Fraction(0)) + c
        return NovikovSeries(terms, self.truncation, self._constant + other._constant)

    def __neg__(self) -> NovikovSeries:
        return self.scale(-1)

    def __sub__(self, other: NovikovSeries) -> NovikovSeries:
        return self + (-other)

    def scale(self, c) -> NovikovSeries:
        c = Fraction(c)
        return NovikovSeries(
            {b: c * v for b, v in self._terms.items()}, self.truncation, c * self._constant
        )

    def __mul__(self, other: NovikovSeries) -> NovikovSeries:
        self._check(other)
        tr = self.truncation
        out: dict[CurveClass, Fraction] = {}

        def put(b: CurveClass, v: Fraction) -> None:
            out[b] = out.get(b, Fraction(0)) + v

        for b, v in self._terms.items():
            if other._constant:
                put(b, v * other._constant)
        for b, v in other._terms.items():
            if self._constant:
                put(b, v * self._constant)
        for b1, v1 in self._terms.items():
            for b2, v2 in other._terms.items():
                b = b1 + b2
                if tr.admits(b):
                    put(b, v1 * v2)
        return NovikovSeries(out, tr, self._constant * other._constant)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self._constant == other._constant
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.truncation, self._constant, tuple(self._terms.items())))

    def __repr__(self) -> str:
        parts = []
        if self._constant or not self._terms:
            parts.append(str(self._constant))
        parts += [f"{c}*Q^{b}" for b, c in self._terms.items()]
        return "NovikovSeries(" + " + ".join(parts) + ")"


def add(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    return a + b


def mul(a: NovikovSeries, b: NovikovSeries) -> NovikovSeries:
    return a * b


def adams(r: int, s: NovikovSeries) -> NovikovSeries:
    """Adams operation on the Novikov variables: ``Q^beta -> Q^(r beta)``.

    Coefficients are untouched; images beyond the truncation are dropped.
    """
    if r < 1:
        raise ValueError(f"Adams operation needs r >= 1, got {r}")
    tr = s.truncation
    terms = {b * r: c for b, c in s if tr.admits(b * r)}
    return NovikovSeries(terms, tr, s.constant_term)


def coeff(s: NovikovSeries, beta) -> Fraction:
    return s.coeff(beta)
