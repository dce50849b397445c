"""Multiplicative number theory on small positive integers.

Everything that feeds a transform coefficient is exact.  The root-of-unity
sums are floating point and exist only to validate the closed forms
(``mobius`` and ``euler_phi``) they are replaced by.
"""
from __future__ import annotations

import cmath
import functools
import math


def _check_positive(r: int) -> int:
    if isinstance(r, bool) or not isinstance(r, int):
        raise TypeError(f"expected a positive int, got {r!r}")
    if r < 1:
        raise ValueError(f"expected a positive int, got {r}")
    return r


@functools.lru_cache(maxsize=None)
def factorize(r: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``r`` by trial division, as ``((p, e), ...)``."""
    _check_positive(r)
    out = []
    p = 2
    while p * p <= r:
        if r % p == 0:
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if r > 1:
        out.append((r, 1))
    return tuple(out)


def mobius(r: int) -> int:
    factors = factorize(r)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def euler_phi(r: int) -> int:
    result = r
    for p, _ in factorize(r):
        result = result // p * (p - 1)
    return result


@functools.lru_cache(maxsize=None)
def _divisors(r: int) -> tuple[int, ...]:
    divs = [1]
    for p, e in factorize(r):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def divisors(r: int) -> list[int]:
    """All positive divisors of ``r`` in ascending order."""
    return list(_divisors(r))


def primitive_exponents(r: int) -> list[int]:
    """Exponents ``k`` in ``[1, r]`` with ``exp(2 pi i k / r)`` primitive."""
    _check_positive(r)
    return [k for k in range(1, r + 1) if math.gcd(k, r) == 1]


def primitive_root_sum(r: int, power: int) -> complex:
    """Numerical sum of ``zeta**power`` over the primitive ``r``-th roots of unity.

    This is the Ramanujan sum c_r(power); it equals ``mobius(r)`` for
    ``power = +-1`` and ``euler_phi(r)`` for ``power = 0``.
    """
    return sum(
        (cmath.exp(2j * cmath.pi * k * power / r) for k in primitive_exponents(r)),
        0j,
    )


def cyclotomic_norm_product(r: int) -> complex:
    """Numerical value of prod_{k=1}^{r-1} (1 - zeta**k) with zeta = exp(2 pi i / r).

    The exact value is ``r``.
    """
    _check_positive(r)
    if r < 2:
        raise ValueError("cyclotomic_norm_product needs r >= 2")
    zeta = cmath.exp(2j * cmath.pi / r)
    out = 1 + 0j
    for k in range(1, r):
        out *= 1 - zeta**k
    return out


def ramanujan_sum(r: int, power: int) -> int:
    """Exact c_r(power) = sum_{d | gcd(r, power)} d * mu(r / d)."""
    return sum(d * mobius(r // d) for d in _divisors(math.gcd(r, power)))
