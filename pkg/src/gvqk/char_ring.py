"""Finite graded cohomology rings, Chern characters and Todd classes.

A :class:`GradedRing` is a rational vector space with a named basis, complex
degrees ``0..m``, structure constants, a unit and a designated top class.
Integration reads off the top coefficient (times the ring's ``volume``).

Transforms never look inside these rings: invariant tables only record how
many insertions there are and their degrees.  The rings are here for the
K-theoretic pairing and for lifting integral classes through ``ch``.  Two
inverses of ``ch`` are offered, the rational one (:func:`ch_inverse`) and an
integral lift that is only correct modulo higher degree
(:func:`integral_ch_inverse`).  The higher degree ambiguity of the latter does
not affect any degree-counting computation in this package.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegreeMismatch,
    NoIntegralLift,
    PoleAtOne,
    SingularPairing,
    ValidationError,
)

# ---------------------------------------------------------------------------
# one-variable series


def _series_inverse(coeffs: Sequence, order: int) -> list:
    """Taylor coefficients of ``1 / f`` through ``x**order``; needs ``f(0) != 0``."""
    c0 = coeffs[0]
    out = [1 / c0 if not isinstance(c0, Fraction) else Fraction(1) / c0]
    for k in range(1, order + 1):
        acc = 0
        for j in range(1, k + 1):
            if j < len(coeffs):
                acc += coeffs[j] * out[k - j]
        out.append(-acc / c0)
    return out


def _series_log(coeffs: Sequence[Fraction], order: int) -> list[Fraction]:
    """Coefficients of ``log f`` for ``f(0) = 1``, via ``(log f)' = f' / f``."""
    if coeffs[0] != 1:
        raise ValueError("log needs constant term 1")
    inv = _series_inverse(coeffs, order)
    deriv = [k * coeffs[k] for k in range(1, min(len(coeffs), order + 1))]
    out = [Fraction(0)]
    for k in range(1, order + 1):
        # coefficient of x**(k-1) in f'/f, divided by k
        s = sum(
            (deriv[j] * inv[k - 1 - j] for j in range(min(k, len(deriv)))), Fraction(0)
        )
        out.append(s / k)
    return out


def _exp_neg(order: int) -> list[Fraction]:
    return [Fraction((-1) ** k, math.factorial(k)) for k in range(order + 1)]


def td_series(order: int) -> list[Fraction]:
    """Taylor coefficients of ``x / (1 - exp(-x))`` through ``x**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    # (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
    denom = [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)]
    return _series_inverse(denom, order)


def td_dual_series(order: int) -> list[Fraction]:
    """Taylor coefficients of ``-x / (1 - exp(x))``."""
    return [c if k % 2 == 0 else -c for k, c in enumerate(td_series(order))]


def _coerce_lambda(lam):
    if isinstance(lam, tuple):
        re, im = lam
        if Fraction(im) == 0:
            return Fraction(re)
        return complex(float(Fraction(re)), float(Fraction(im)))
    if isinstance(lam, complex):
        if lam.imag == 0 and lam.real in (1.0, -1.0):
            return Fraction(int(lam.real))
        return lam
    return Fraction(lam)


def td_lambda_series(lam, order: int) -> list:
    """Taylor coefficients of ``1 / (1 - lam * exp(-x))``.

    ``lam`` may be a rational, a ``(re, im)`` pair or a Python complex.  Real
    rational input stays exact; anything else is evaluated in floating point
    and is only good for validation.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    lam = _coerce_lambda(lam)
    if isinstance(lam, Fraction):
        if lam == 1:
            raise PoleAtOne("td_lambda has a pole at lambda = 1")
        f = [1 - lam] + [-lam * c for c in _exp_neg(order)[1:]]
        return _series_inverse(f, order)
    if abs(lam - 1) < 1e-12:
        raise PoleAtOne("td_lambda has a pole at lambda = 1")
    f = [1 - lam] + [-lam * float(c) for c in _exp_neg(order)[1:]]
    return _series_inverse(f, order)


def td_dual_lambda_series(lam, order: int) -> list:
    """Taylor coefficients of ``1 / (1 - lam * exp(x))``."""
    return [c if k % 2 == 0 else -c for k, c in enumerate(td_lambda_series(lam, order))]


def root_of_unity(r: int, k: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * k / r)


# ---------------------------------------------------------------------------
# exact linear algebra


def _solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve a square system exactly; ``None`` when singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n] for row in a]


def _inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        col = _solve(matrix, e)
        if col is None:
            return None
        cols.append(col)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


# ---------------------------------------------------------------------------
# graded rings


class Element:
    """An element of a :class:`GradedRing`, stored as basis coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: GradedRing, coeffs: Iterable):
        self.ring = ring
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != len(ring.names):
            raise ValidationError("coefficient vector has the wrong length")

    def _coerce(self, other) -> Element:
        if isinstance(other, Element):
            if other.ring is not self.ring:
                raise ValidationError("elements live in different rings")
            return other
        return self.ring.one() * Fraction(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Element(self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.ring.multiply(self, self._coerce(other))
        c = Fraction(other)
        return Element(self.ring, (c * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring is other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.ring.one() * other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def part(self, degree: int) -> Element:
        """Homogeneous component of the given complex degree."""
        return Element(
            self.ring,
            (c if d == degree else 0 for c, d in zip(self.coeffs, self.ring.degrees)),
        )

    def truncate(self, degree: int) -> Element:
        """Drop components above ``degree``."""
        return Element(
            self.ring,
            (c if d <= degree else 0 for c, d in zip(self.coeffs, self.ring.degrees)),
        )

    def lead_degree(self) -> int | None:
        degs = [d for c, d in zip(self.coeffs, self.ring.degrees) if c]
        return min(degs) if degs else None

    def is_homogeneous(self, degree: int) -> bool:
        return all(not c or d == degree for c, d in zip(self.coeffs, self.ring.degrees))

    def as_dict(self) -> dict[str, Fraction]:
        return {n: c for n, c in zip(self.ring.names, self.coeffs) if c}

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(
            (str(c) if n == self.ring.unit else f"{c}*{n}") for n, c in self.as_dict().items()
        )


class GradedRing:
    """Finite commutative graded ring with integration.

    ``products`` maps unordered pairs of basis names to an element given as a
    ``{name: coefficient}`` dict.  Products with the unit are implicit and
    unlisted products are zero.  ``chern`` lists ``c_1 .. c_k`` of the tangent
    bundle, also as name dicts.
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        products: Mapping[tuple[str, str], Mapping[str, object]],
        *,
        unit: str,
        top: str,
        volume=1,
        chern: Sequence[Mapping[str, object]] = (),
        label: str = "",
        check: bool = True,
    ):
        self.names = tuple(names)
        self.degrees = tuple(int(d) for d in degrees)
        self.label = label
        if len(set(self.names)) != len(self.names) or len(self.degrees) != len(self.names):
            raise ValidationError("basis names must be unique and match degrees")
        self._pos = {n: i for i, n in enumerate(self.names)}
        if unit not in self._pos or top not in self._pos:
            raise ValidationError("unit and top must be basis names")
        self.unit, self.top = unit, top
        self.dim = max(self.degrees)
        if self.degrees[self._pos[unit]] != 0 or self.degrees[self._pos[top]] != self.dim:
            raise ValidationError("unit must have degree 0 and top the maximal degree")
        if any(d < 0 for d in self.degrees):
            raise ValidationError("degrees must be non-negative")
        self.volume = Fraction(volume)
        if self.volume == 0:
            raise ValidationError("volume must be nonzero")

        n = len(self.names)
        self._table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (a, b), value in products.items():
            i, j = self._index(a), self._index(b)
            vec = self._vector(value)
            for key in ((i, j), (j, i)):
                if key in self._table and self._table[key] != vec:
                    raise ValidationError(f"inconsistent products for {a}*{b}")
                self._table[key] = vec
        u = self._pos[unit]
        for i in range(n):
            e = tuple(Fraction(int(k == i)) for k in range(n))
            for key in ((u, i), (i, u)):
                if key in self._table and self._table[key] != e:
                    raise ValidationError("unit must act as identity")
                self._table[key] = e

        self.chern = tuple(self.element(c) for c in chern)
        self._todd: Element | None = None
        if check:
            self.validate()

    def _index(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise ValidationError(f"unknown basis name {name!r}") from None

    def _vector(self, value: Mapping[str, object]) -> tuple[Fraction, ...]:
        vec = [Fraction(0)] * len(self.names)
        for name, c in value.items():
            vec[self._index(name)] += Fraction(c)
        return tuple(vec)

    # construction helpers

    def element(self, value: Mapping[str, object] | Element | Sequence = ()) -> Element:
        if isinstance(value, Element):
            return value
        if isinstance(value, Mapping):
            return Element(self, self._vector(value))
        if not value:
            return self.zero()
        return Element(self, value)

    def basis_element(self, name: str) -> Element:
        return self.element({name: 1})

    def basis(self) -> list[Element]:
        return [self.basis_element(n) for n in self.names]

    def zero(self) -> Element:
        return Element(self, [0] * len(self.names))

    def one(self) -> Element:
        return self.basis_element(self.unit)

    def names_of_degree(self, d: int) -> list[str]:
        return [n for n, k in zip(self.names, self.degrees) if k == d]

    # arithmetic

    def multiply(self, a: Element, b: Element) -> Element:
        n = len(self.names)
        out = [Fraction(0)] * n
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                vec = self._table.get((i, j))
                if vec is None:
                    continue
                xy = x * y
                for k, v in enumerate(vec):
                    if v:
                        out[k] += xy * v
        return Element(self, out)

    def integrate(self, a: Element) -> Fraction:
        return a.coeffs[self._pos[self.top]] * self.volume

    def chern_class(self, i: int) -> Element:
        if i == 0:
            return self.one()
        if 1 <= i <= len(self.chern):
            return self.chern[i - 1]
        return self.zero()

    # validation

    def poincare_gram(self) -> list[list[Fraction]]:
        basis = self.basis()
        return [[self.integrate(a * b) for b in basis] for a in basis]

    def validate(self) -> None:
        n = len(self.names)
        for (i, j), vec in self._table.items():
            if self._table.get((j, i)) != vec:
                raise ValidationError("multiplication is not commutative")
            target = self.degrees[i] + self.degrees[j]
            for k, v in enumerate(vec):
                if v and self.degrees[k] != target:
                    raise ValidationError(
                        f"product {self.names[i]}*{self.names[j]} is not graded"
                    )
        basis = self.basis()
        for i in range(n):
            for j in range(n):
                ij = basis[i] * basis[j]
                for k in range(n):
                    if ij * basis[k] != basis[i] * (basis[j] * basis[k]):
                        raise ValidationError(
                            "multiplication is not associative on "
                            f"{self.names[i]}, {self.names[j]}, {self.names[k]}"
                        )
        for k, c in enumerate(self.chern, start=1):
            if not c.is_homogeneous(k):
                raise ValidationError(f"c_{k} is not homogeneous of degree {k}")
        if _det(self.poincare_gram()) == 0:
            raise ValidationError("Poincare pairing is degenerate")

    def __repr__(self):
        return f"GradedRing({self.label or 'unnamed'}, dim={self.dim})"


# ---------------------------------------------------------------------------
# characteristic classes


def todd_class(ring: GradedRing) -> Element:
    """Todd class of the tangent bundle from its Chern classes.

    Splitting principle: ``log td = sum_k a_k p_k`` where ``a_k`` are the
    coefficients of ``log(x / (1 - e^-x))`` and ``p_k`` the power sums of the
    Chern roots, obtained from the Chern classes by Newton's identities.
    """
    if ring._todd is not None:
        return ring._todd
    m = ring.dim
    a = _series_log(td_series(m), m)
    c = [ring.chern_class(i) for i in range(m + 1)]
    p = [ring.zero()]
    for k in range(1, m + 1):
        pk = c[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            pk = pk + c[i] * p[k - i] * ((-1) ** (i - 1))
        p.append(pk)
    log_td = ring.zero()
    for k in range(1, m + 1):
        log_td = log_td + p[k] * a[k]
    ring._todd = _exp_nilpotent(log_td, m)
    return ring._todd


def _exp_nilpotent(x: Element, m: int) -> Element:
    out = x.ring.one()
    term = x.ring.one()
    for j in range(1, m + 1):
        term = term * x / j
        out = out + term
    return out


def ch_exp(divisor_class: Element, ring: GradedRing | None = None) -> Element:
    """``exp(D)`` for a degree-one class ``D``: the Chern character of ``O(D)``."""
    ring = ring or divisor_class.ring
    d = ring.element(divisor_class)
    if not d.is_homogeneous(1):
        raise DegreeMismatch("ch_exp expects a class of degree 1")
    return _exp_nilpotent(d, ring.dim)


def k_pairing(a: Element, b: Element, ring: GradedRing | None = None) -> Fraction:
    """``chi(a (x) b) = integral of td(T) ch(a) ch(b)``, inputs given as ch-images."""
    ring = ring or a.ring
    return ring.integrate(todd_class(ring) * ring.element(a) * ring.element(b))


def dual_basis(
    ring: GradedRing, elements: Sequence[Element] | None = None
) -> tuple[list[Element], list[Element]]:
    """Basis and its dual with respect to :func:`k_pairing`.

    ``elements`` defaults to the ring's own basis.
    """
    phi = list(elements) if elements is not None else ring.basis()
    gram = [[k_pairing(x, y, ring) for y in phi] for x in phi]
    inv = _inverse(gram) if len(gram) == len(ring.names) else None
    if inv is None:
        raise SingularPairing("the K-theoretic pairing is singular on this basis")
    dual = []
    for beta in range(len(phi)):
        e = ring.zero()
        for g, x in enumerate(phi):
            e = e + x * inv[g][beta]
        dual.append(e)
    return phi, dual


# ---------------------------------------------------------------------------
# K-classes and lifts through ch


@dataclass(frozen=True)
class KClass:
    label: str
    ch: Element


class KClassModel:
    """An integral basis of K^0, each class recorded by its Chern character.

    For every degree ``d`` the classes whose ``ch`` starts in degree ``d``
    must map their degree ``d`` parts unimodularly onto the degree ``d`` basis.
    That makes the ch matrix unitriangular after ordering by leading degree.
    """

    def __init__(self, ring: GradedRing, classes: Sequence[KClass], label: str = ""):
        self.ring = ring
        self.classes = list(classes)
        self.label = label
        self._blocks: dict[int, tuple[list[int], list[str], list[list[Fraction]]]] = {}
        for d in sorted(set(ring.degrees)):
            members = [i for i, k in enumerate(self.classes) if k.ch.lead_degree() == d]
            names = ring.names_of_degree(d)
            if len(members) != len(names):
                raise ValidationError(
                    f"K-class model {label!r}: {len(members)} classes lead in degree {d}, "
                    f"but the ring has {len(names)} basis classes there"
                )
            mat = [
                [self.classes[i].ch.coeffs[ring._pos[n]] for i in members] for n in names
            ]
            if abs(_det(mat)) != 1:
                raise ValidationError(
                    f"K-class model {label!r} is not unitriangular in degree {d}"
                )
            self._blocks[d] = (members, names, mat)
        if any(k.ch.lead_degree() is None for k in self.classes):
            raise ValidationError("K-class with zero Chern character")

    def ch_of(self, coords: Sequence) -> Element:
        out = self.ring.zero()
        for c, k in zip(coords, self.classes):
            out = out + k.ch * c
        return out

    def labels(self) -> list[str]:
        return [k.label for k in self.classes]


def integral_ch_inverse(
    gamma: Element, lead_degree: int, kmodel: KClassModel, ring: GradedRing | None = None
) -> list[int]:
    """Integer coordinates of a K-class whose ``ch`` matches ``gamma`` through ``lead_degree``.

    ``gamma`` must vanish below ``lead_degree`` and have integer coefficients
    there.  Elimination runs degree by degree over the unitriangular blocks of
    ``kmodel``; components of ``ch`` above ``lead_degree`` are not controlled.
    """
    ring = ring or kmodel.ring
    gamma = ring.element(gamma)
    for d in range(lead_degree):
        if gamma.part(d):
            raise ValueError(f"gamma has a nonzero component in degree {d} < {lead_degree}")
    if any(
        c.denominator != 1
        for c, d in zip(gamma.coeffs, ring.degrees)
        if d == lead_degree
    ):
        raise NoIntegralLift("degree-i component of gamma is not integral")
    coords = [Fraction(0)] * len(kmodel.classes)
    for d in range(lead_degree + 1):
        if d not in kmodel._blocks:
            continue
        residual = gamma - kmodel.ch_of(coords)
        members, names, mat = kmodel._blocks[d]
        rhs = [residual.coeffs[ring._pos[n]] for n in names]
        x = _solve(mat, rhs) if members else []
        if x is None:
            raise NoIntegralLift(f"singular block in degree {d}")
        for i, v in zip(members, x):
            if v.denominator != 1:
                raise NoIntegralLift(f"non-integral coefficient {v} in degree {d}")
            coords[i] += v
    return [int(c) for c in coords]


def ch_inverse(gamma: Element, kmodel: KClassModel, ring: GradedRing | None = None) -> list[Fraction]:
    """Rational coordinates of the unique K_Q-class with ``ch`` equal to ``gamma``."""
    ring = ring or kmodel.ring
    gamma = ring.element(gamma)
    coords = [Fraction(0)] * len(kmodel.classes)
    for d in sorted(kmodel._blocks):
        residual = gamma - kmodel.ch_of(coords)
        members, names, mat = kmodel._blocks[d]
        if not members:
            continue
        x = _solve(mat, [residual.coeffs[ring._pos[n]] for n in names])
        for i, v in zip(members, x):
            coords[i] += v
    return coords


# ---------------------------------------------------------------------------
# built-in models


def projective_space(n: int) -> GradedRing:
    """``H^*(P^n) = Q[H]/H^(n+1)`` with ``c(T) = (1 + H)^(n+1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    names = ["1"] + [f"H{i}" if i > 1 else "H" for i in range(1, n + 1)]
    products = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1 - i):
            products[(names[i], names[j])] = {names[i + j]: 1}
    chern = [{names[i]: math.comb(n + 1, i)} for i in range(1, n + 1)]
    return GradedRing(
        names, range(n + 1), products, unit="1", top=names[n], chern=chern, label=f"P{n}"
    )


def calabi_yau_threefold(degree: int = 5, c2_dot_h: int = 50, euler: int = -200) -> GradedRing:
    """Ring shaped like a one-parameter Calabi-Yau threefold.

    Basis ``1, H, H2, H3`` with ``H^i H^j = H^(i+j)`` and ``int H3 = degree``.
    Defaults are the numbers of the quintic.
    """
    names = ["1", "H", "H2", "H3"]
    products = {("H", "H"): {"H2": 1}, ("H", "H2"): {"H3": 1}}
    chern = [{}, {"H2": Fraction(c2_dot_h, degree)}, {"H3": Fraction(euler, degree)}]
    return GradedRing(
        names, range(4), products, unit="1", top="H3", volume=degree, chern=chern,
        label=f"CY3(d={degree})",
    )


def hyperplane(ring: GradedRing) -> Element:
    """The unique degree-one basis class of a Picard-rank-one model."""
    names = ring.names_of_degree(1)
    if len(names) != 1:
        raise ValidationError(f"{ring!r} does not have a single degree-one generator")
    return ring.basis_element(names[0])


def line_bundle_ch(ring: GradedRing, k: int) -> Element:
    """``ch O(k) = exp(k H)``."""
    return ch_exp(hyperplane(ring) * k, ring)


def standard_k_model(ring: GradedRing) -> KClassModel:
    """Classes ``(O(1) - O)^j`` for ``j = 0..dim``; ``ch = (e^H - 1)^j`` starts with ``H^j``."""
    eh1 = line_bundle_ch(ring, 1) - ring.one()
    classes = []
    for j in range(ring.dim + 1):
        label = "O" if j == 0 else ("O(1)-O" if j == 1 else f"(O(1)-O)^{j}")
        classes.append(KClass(label, eh1**j))
    return KClassModel(ring, classes, label=f"{ring.label} standard")


def binomial_chi(n: int, k: int) -> Fraction:
    """``C(n + k, n)`` as a polynomial in ``k``: ``prod_{i=1}^n (k + i) / n!``."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return Fraction(num, math.factorial(n))
