import math
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from gvqk.curve_lattice import (
    CurveClass,
    GeometryModel,
    Truncation,
    canonical_degree,
    divide,
    index,
    multiples_up_to,
)
from gvqk.errors import NotDivisible, RankMismatch, SemiPositivityError, ValidationError


@pytest.mark.parametrize("coords, expected", [((1, 0), 1), ((2, 4), 2), ((6, 9), 3)])
def test_index(coords, expected):
    assert index(CurveClass(coords)) == expected == reduce(math.gcd, coords)


def test_divide():
    assert divide(CurveClass((2, 4)), 2) == CurveClass((1, 2))
    assert divide(CurveClass((3, 3)), 1) == CurveClass((3, 3))
    with pytest.raises(NotDivisible):
        divide(CurveClass((2, 3)), 2)


@pytest.mark.parametrize(
    "pairing, beta, expected",
    [((0, 0), (5, 7), 0), ((-4,), (2,), -8), ((0, -1), (3, 2), -2)],
)
def test_canonical_degree(pairing, beta, expected):
    assert canonical_degree(GeometryModel(3, pairing), CurveClass(beta)) == expected


def test_canonical_degree_rank_mismatch():
    with pytest.raises(RankMismatch):
        canonical_degree(GeometryModel(3, (0, 0)), CurveClass((1,)))


def test_geometry_invariants():
    with pytest.raises(SemiPositivityError):
        GeometryModel(3, (0, 1))
    with pytest.raises(ValidationError):
        GeometryModel(2, (0,))


@pytest.mark.parametrize("coords", [(0, 0), (-1, 2), ()])
def test_curve_class_rejects_non_effective(coords):
    with pytest.raises(ValidationError):
        CurveClass(coords)


def test_multiples_up_to():
    tr = Truncation((1, 1), 3)
    assert multiples_up_to(CurveClass((1, 0)), tr) == [CurveClass((1, 0)), CurveClass((2, 0)), CurveClass((3, 0))]
    assert multiples_up_to(CurveClass((2, 0)), tr) == [CurveClass((2, 0))]
    assert multiples_up_to(CurveClass((1, 1)), Truncation((1, 1), 1)) == []


def test_truncation_classes_enumeration():
    tr = Truncation((1, 2), 4)
    brute = [
        CurveClass((a, b)) for a in range(5) for b in range(3)
        if (a or b) and a + 2 * b <= 4
    ]
    assert tr.classes() == sorted(brute)


coords = st.lists(st.integers(0, 40), min_size=1, max_size=3).filter(any)


@given(coords)
def test_index_of_divide(c):
    beta = CurveClass(c)
    for r in range(1, index(beta) + 1):
        if index(beta) % r == 0:
            assert index(divide(beta, r)) == index(beta) // r
    assert index(divide(beta, index(beta))) == 1


@given(st.data())
def test_canonical_degree_linear(data):
    rank = data.draw(st.integers(1, 3))
    pairing = tuple(data.draw(st.integers(-5, 0)) for _ in range(rank))
    geom = GeometryModel(4, pairing)
    vec = st.lists(st.integers(0, 20), min_size=rank, max_size=rank).filter(any)
    b1, b2 = CurveClass(data.draw(vec)), CurveClass(data.draw(vec))
    k = canonical_degree(geom, b1 + b2)
    assert k == canonical_degree(geom, b1) + canonical_degree(geom, b2)
    assert k <= 0
