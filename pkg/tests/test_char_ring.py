from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gvqk import char_ring as cr
from gvqk.errors import DegreeMismatch, NoIntegralLift, PoleAtOne, SingularPairing, ValidationError

x = sympy.symbols("x")


def sympy_coeffs(expr, order):
    ser = sympy.series(expr, x, 0, order + 1).removeO()
    return [F(str(sympy.nsimplify(ser.coeff(x, k)))) for k in range(order + 1)]


def falling_binomial(n, k):
    return F(int(sympy.binomial(n + k, n))) if n + k >= 0 else F(
        int(sympy.prod([k + i for i in range(1, n + 1)])), int(sympy.factorial(n))
    )


@pytest.mark.parametrize(
    "order, expected",
    [(0, [1]), (2, [1, F(1, 2), F(1, 12)]), (4, [1, F(1, 2), F(1, 12), 0, F(-1, 720)])],
)
def test_td_series_examples(order, expected):
    assert cr.td_series(order) == expected


def test_td_series_against_sympy():
    assert cr.td_series(10) == sympy_coeffs(x / (1 - sympy.exp(-x)), 10)
    assert cr.td_dual_series(10) == sympy_coeffs(-x / (1 - sympy.exp(x)), 10)


def test_td_dual_examples():
    assert cr.td_dual_series(1) == [1, F(-1, 2)]
    assert cr.td_dual_series(2) == [1, F(-1, 2), F(1, 12)]
    assert cr.td_dual_lambda_series(-1, 0) == [F(1, 2)]


def test_td_and_dual_parity():
    td, dual = cr.td_series(10), cr.td_dual_series(10)
    for k in range(11):
        assert dual[k] == (td[k] if k % 2 == 0 else -td[k])


def test_td_lambda_examples():
    assert cr.td_lambda_series(-1, 0) == [F(1, 2)]
    # d/dx 1/(1 + e^-x) at 0 is +1/4; the dual series carries the minus sign
    assert cr.td_lambda_series(-1, 1) == [F(1, 2), F(1, 4)]
    assert cr.td_lambda_series((-1, 0), 1) == [F(1, 2), F(1, 4)]
    assert cr.td_dual_lambda_series(-1, 1) == [F(1, 2), F(-1, 4)]
    for lam in (1, (1, 0), complex(1, 0)):
        with pytest.raises(PoleAtOne):
            cr.td_lambda_series(lam, 3)


def test_td_lambda_exact_against_sympy():
    assert cr.td_lambda_series(-1, 8) == sympy_coeffs(1 / (1 + sympy.exp(-x)), 8)
    assert cr.td_dual_lambda_series(-1, 8) == sympy_coeffs(1 / (1 + sympy.exp(x)), 8)


@pytest.mark.parametrize("r, k", [(3, 1), (4, 1), (5, 2), (6, 5)])
def test_td_lambda_float_path(r, k):
    lam = cr.root_of_unity(r, k)
    lam_mp = mpmath.exp(2j * mpmath.pi * k / r)
    ref = mpmath.taylor(lambda t: 1 / (1 - lam_mp * mpmath.exp(-t)), 0, 4)
    got = cr.td_lambda_series(lam, 4)
    for i in range(5):
        assert abs(got[i] - complex(ref[i])) < 1e-9


def test_todd_examples():
    p1, p2 = cr.projective_space(1), cr.projective_space(2)
    H1, H2 = p1.basis_element("H"), p2.basis_element("H")
    assert cr.todd_class(p1) == 1 + H1
    assert cr.todd_class(p2) == 1 + H2 * F(3, 2) + p2.basis_element("H2")
    flat = cr.GradedRing(["1", "H", "H2", "H3"], range(4),
                         {("H", "H"): {"H2": 1}, ("H", "H2"): {"H3": 1}},
                         unit="1", top="H3", chern=[{}, {}, {}])
    assert cr.todd_class(flat) == flat.one()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_todd_projective_against_sympy(n):
    ring = cr.projective_space(n)
    expected = sympy_coeffs((x / (1 - sympy.exp(-x))) ** (n + 1), n)
    assert list(cr.todd_class(ring).coeffs) == expected


def _p4_shaped(a1, a2, a3, a4):
    names = ["1", "H", "H2", "H3", "H4"]
    prods = {(names[i], names[j]): {names[i + j]: 1} for i in range(1, 5) for j in range(i, 5) if i + j <= 4}
    chern = [{names[i]: a} for i, a in enumerate((a1, a2, a3, a4), start=1)]
    return cr.GradedRing(names, range(5), prods, unit="1", top="H4", chern=chern)


@settings(max_examples=40, deadline=None)
@given(*(st.integers(-6, 6) for _ in range(4)))
def test_todd_universal_polynomials(a1, a2, a3, a4):
    ring = _p4_shaped(a1, a2, a3, a4)
    td = cr.todd_class(ring).coeffs
    assert td[0] == 1
    assert td[1] == F(a1, 2)
    assert td[2] == F(a1**2 + a2, 12)
    assert td[3] == F(a1 * a2, 24)
    assert td[4] == F(-(a1**4) + 4 * a1**2 * a2 + 3 * a2**2 + a1 * a3 - a4, 720)


def test_cy3_todd_and_chi():
    ring = cr.calabi_yau_threefold()
    assert cr.todd_class(ring) == 1 + ring.basis_element("H2") * F(5, 6)
    assert cr.k_pairing(ring.one(), ring.one()) == 0
    # chi(O(1)) on the quintic = 5 = h^0(O(1))
    assert cr.k_pairing(cr.line_bundle_ch(ring, 1), ring.one()) == 5


def test_ch_exp_examples():
    p1, p2 = cr.projective_space(1), cr.projective_space(2)
    assert cr.ch_exp(p1.basis_element("H")) == 1 + p1.basis_element("H")
    H = p2.basis_element("H")
    assert cr.ch_exp(H) == 1 + H + p2.basis_element("H2") / 2
    assert cr.ch_exp(p2.zero(), p2) == p2.one()
    with pytest.raises(DegreeMismatch):
        cr.ch_exp(p2.basis_element("H2"))


def test_k_pairing_examples():
    p1, p2 = cr.projective_space(1), cr.projective_space(2)
    assert cr.k_pairing(p1.one(), p1.one()) == 1
    assert cr.k_pairing(cr.line_bundle_ch(p2, 1), p2.one()) == 3
    assert cr.k_pairing(cr.line_bundle_ch(p1, -1), p1.one()) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hrr_binomial(n):
    ring = cr.projective_space(n)
    for k in range(-n, 6):
        chi = cr.k_pairing(cr.line_bundle_ch(ring, k), ring.one())
        assert chi == falling_binomial(n, k)


def test_hrr_pairing_of_two_bundles():
    ring = cr.projective_space(3)
    for a in range(-3, 3):
        for b in range(-3, 3):
            lhs = cr.k_pairing(cr.line_bundle_ch(ring, a), cr.line_bundle_ch(ring, b))
            assert lhs == falling_binomial(3, a + b)


def test_integral_lift_examples():
    p2 = cr.projective_space(2)
    km = cr.standard_k_model(p2)
    assert km.labels()[1] == "O(1)-O"
    assert cr.integral_ch_inverse(p2.basis_element("H"), 1, km) == [0, 1, 0]
    assert cr.integral_ch_inverse(p2.one(), 0, km) == [1, 0, 0]
    assert cr.integral_ch_inverse(p2.zero(), 0, km) == [0, 0, 0]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_integral_lift_reproduces_gamma(n):
    ring = cr.projective_space(n)
    km = cr.standard_k_model(ring)
    for i in range(n + 1):
        for c in (1, -3, 7):
            gamma = ring.basis_element(ring.names[i]) * c
            coords = cr.integral_ch_inverse(gamma, i, km)
            assert all(isinstance(v, int) for v in coords)
            assert km.ch_of(coords).truncate(i) == gamma.truncate(i)


def test_integral_lift_with_tail():
    ring = cr.projective_space(3)
    km = cr.standard_k_model(ring)
    gamma = ring.element({"H": 2, "H2": F(1, 3), "H3": 5})
    coords = cr.integral_ch_inverse(gamma, 1, km)
    assert km.ch_of(coords).truncate(1) == gamma.truncate(1)


def test_integral_lift_rejects_fractional():
    ring = cr.projective_space(2)
    km = cr.standard_k_model(ring)
    with pytest.raises(NoIntegralLift):
        cr.integral_ch_inverse(ring.basis_element("H") / 2, 1, km)
    with pytest.raises(ValueError):
        cr.integral_ch_inverse(ring.one(), 1, km)


def test_rational_ch_inverse_is_exact():
    ring = cr.projective_space(4)
    km = cr.standard_k_model(ring)
    gamma = ring.element({"1": 2, "H2": F(1, 7), "H4": -1})
    assert km.ch_of(cr.ch_inverse(gamma, km)) == gamma


def test_bad_k_model_rejected():
    ring = cr.projective_space(2)
    classes = [cr.KClass("O", ring.one()), cr.KClass("2H", ring.basis_element("H") * 2),
               cr.KClass("pt", ring.basis_element("H2"))]
    with pytest.raises(ValidationError):
        cr.KClassModel(ring, classes)


@pytest.mark.parametrize("ring", [cr.projective_space(n) for n in (1, 2, 3, 4)] + [cr.calabi_yau_threefold()])
def test_dual_basis_delta(ring):
    phi, dual = cr.dual_basis(ring)
    for a, x_ in enumerate(phi):
        for b, y in enumerate(dual):
            assert cr.k_pairing(x_, y, ring) == (1 if a == b else 0)


def test_dual_basis_p1_explicit():
    p1 = cr.projective_space(1)
    _, dual = cr.dual_basis(p1)
    # Gram [[1, 1], [1, 0]] has inverse [[0, 1], [1, -1]]
    H = p1.basis_element("H")
    assert dual == [H, p1.one() - H]


def test_dual_basis_on_k_model():
    ring = cr.projective_space(3)
    km = cr.standard_k_model(ring)
    phi, dual = cr.dual_basis(ring, [k.ch for k in km.classes])
    for a in range(4):
        assert cr.k_pairing(phi[a], dual[a]) == 1


def test_singular_pairing():
    degenerate = cr.GradedRing(["1", "H", "H2"], [0, 1, 2], {}, unit="1", top="H2", check=False)
    with pytest.raises(SingularPairing):
        cr.dual_basis(degenerate)
    with pytest.raises(ValidationError):
        degenerate.validate()
    ring = cr.projective_space(2)
    with pytest.raises(SingularPairing):
        cr.dual_basis(ring, [ring.one(), ring.one(), ring.basis_element("H")])


def test_ring_validation():
    with pytest.raises(ValidationError):  # not graded
        cr.GradedRing(["1", "H", "H2"], [0, 1, 2], {("H", "H"): {"H": 1}}, unit="1", top="H2")
    with pytest.raises(ValidationError, match="associative"):
        cr.GradedRing(
            ["1", "a", "b", "c", "p"], [0, 1, 1, 2, 3],
            {("a", "a"): {"c": 1}, ("a", "b"): {"c": 1}, ("a", "c"): {"p": 1}},
            unit="1", top="p",
        )
    with pytest.raises(ValidationError):  # c_2 in the wrong degree
        cr.GradedRing(["1", "H", "H2"], [0, 1, 2], {("H", "H"): {"H2": 1}},
                      unit="1", top="H2", chern=[{"H": 3}, {"H": 1}])
