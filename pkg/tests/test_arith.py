import math

import pytest
import sympy
from hypothesis import given, strategies as st

from gvqk import arith


def brute_phi(r):
    return sum(1 for k in range(1, r + 1) if math.gcd(k, r) == 1)


def brute_divisors(r):
    return [d for d in range(1, r + 1) if r % d == 0]


@pytest.mark.parametrize("r, expected", [(1, 1), (4, 0), (6, 1)])
def test_mobius_examples(r, expected):
    assert arith.mobius(r) == expected


@pytest.mark.parametrize("r, expected", [(1, 1), (6, 2), (12, 4)])
def test_euler_phi_examples(r, expected):
    assert arith.euler_phi(r) == expected == brute_phi(r)


@pytest.mark.parametrize("r, expected", [(1, [1]), (6, [1, 2, 3, 6]), (9, [1, 3, 9])])
def test_divisors_examples(r, expected):
    assert arith.divisors(r) == expected == brute_divisors(r)


def test_against_sympy_up_to_2000():
    for r in range(1, 2001):
        assert arith.mobius(r) == sympy.mobius(r)
        assert arith.euler_phi(r) == sympy.totient(r)
        assert arith.divisors(r) == sympy.divisors(r)


@pytest.mark.parametrize(
    "r, power, expected", [(4, 1, 0), (1, 1, 1), (6, 0, 2)]
)
def test_primitive_root_sum_examples(r, power, expected):
    assert abs(arith.primitive_root_sum(r, power) - expected) < 1e-9


@pytest.mark.parametrize("r", [2, 3, 5])
def test_cyclotomic_norm_product_examples(r):
    assert abs(arith.cyclotomic_norm_product(r) - r) < 1e-9


def test_root_sums_match_ramanujan_sums():
    for r in range(1, 60):
        for power in (-1, 0, 1):
            assert abs(arith.primitive_root_sum(r, power) - arith.ramanujan_sum(r, power)) < 1e-9


def test_cyclotomic_rejects_one():
    with pytest.raises(ValueError):
        arith.cyclotomic_norm_product(1)


@pytest.mark.parametrize("bad", [0, -3])
def test_non_positive_rejected(bad):
    with pytest.raises(ValueError):
        arith.mobius(bad)


@given(st.integers(1, 3000), st.integers(1, 3000))
def test_multiplicative_on_coprime(a, b):
    if math.gcd(a, b) != 1:
        return
    assert arith.mobius(a * b) == arith.mobius(a) * arith.mobius(b)
    assert arith.euler_phi(a * b) == arith.euler_phi(a) * arith.euler_phi(b)


def test_prime_and_square_free_products():
    r = 1_000_003  # prime
    assert arith.mobius(r) == -1
    assert arith.euler_phi(r) == r - 1
    assert arith.mobius(r * 2 * 3) == -1
    assert arith.mobius(r * r) == 0
