from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherednik.cyclo import (
    CycloFactor,
    CycloNum,
    DivisionError,
    LaurentPoly,
    cyclotomic_coeffs,
    equal_up_to_unit,
    eval_laurent,
    factor_cyclotomic,
    factor_unity_roots,
    phi_poly,
    phi_roots,
)

Q = ("q",)
q = LaurentPoly.var(Q, "q")
one = LaurentPoly.const(Q, 1)


def univariate(coeffs):
    return LaurentPoly(Q, {(k,): c for k, c in enumerate(coeffs) if c})


@st.composite
def cyclo_nums(draw, order=None, max_order=30):
    n = order or draw(st.integers(1, max_order))
    total = CycloNum.rational(0)
    for _ in range(draw(st.integers(1, 4))):
        k = draw(st.integers(0, n - 1))
        c = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
        total = total + CycloNum.zeta(n, k) * c
    return total


def test_basic_identities():
    z3 = CycloNum.zeta(3)
    assert (z3 + z3**2 + 1).is_zero()
    i = CycloNum.zeta(4)
    assert i * i == CycloNum.rational(-1)
    assert CycloNum.zeta(5).inv() == CycloNum.zeta(5, 4)


def test_zero_division():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        CycloNum.rational(0).inv()


def test_order_reduction_and_mixed_orders():
    # zeta_6 = -zeta_3^2
    assert CycloNum.zeta(6) == -(CycloNum.zeta(3, 2))
    s = CycloNum.zeta(8) + CycloNum.zeta(8, 7)  # sqrt 2
    assert s * s == CycloNum.rational(2)
    assert (CycloNum.zeta(12) * CycloNum.zeta(12, 11)).is_rational()


@st.composite
def cyclo_triples(draw):
    n = draw(st.integers(1, 30))
    return draw(cyclo_nums(n)), draw(cyclo_nums(n)), draw(cyclo_nums(n))


@settings(max_examples=1000, deadline=None)
@given(cyclo_triples())
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inv() == CycloNum.rational(1)


@settings(max_examples=200, deadline=None)
@given(cyclo_nums())
def test_json_round_trip_and_complex(a):
    assert CycloNum.from_json(a.to_json()) == a
    assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-9


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_polynomials(n):
    xn1 = q**n - one
    phi = univariate(cyclotomic_coeffs(n))
    assert phi.divides(xn1)
    prod = one
    for d in range(1, n + 1):
        if n % d == 0:
            prod = prod * univariate(cyclotomic_coeffs(d))
    assert prod == xn1


def test_phi_labels():
    assert phi_poly("Phi4''") == q - CycloNum.zeta(4, -1)
    assert phi_poly("Phi2") == q + 1
    expected = one
    for k in (1, 7, 13, 19):
        expected = expected * (q - CycloNum.zeta(30, k))
    assert phi_poly("Phi30'''") == expected
    with pytest.raises(ValueError):
        phi_poly("Phi5'")


@pytest.mark.parametrize(
    "pair",
    [("Phi3'", "Phi3''", "Phi3"), ("Phi4'", "Phi4''", "Phi4"), ("Phi6'", "Phi6''", "Phi6"),
     ("Phi12'", "Phi12''", "Phi12"), ("Phi12'''", "Phi12''''", "Phi12"),
     ("Phi30'", "Phi30''", "Phi30"), ("Phi30'''", "Phi30''''", "Phi30")],
)
def test_primed_labels_multiply_to_phi(pair):
    a, b, c = pair
    assert phi_poly(a) * phi_poly(b) == phi_poly(c)
    assert sorted(phi_roots(a) + phi_roots(b)) == sorted(phi_roots(c))


def test_factor_unity_roots_examples():
    unit, factors, rem = factor_unity_roots(1 + q + q * q)
    assert {f.angle for f in factors} == {Fraction(1, 3), Fraction(2, 3)}
    assert rem == one
    unit, factors, rem = factor_unity_roots(q**3 - 2)
    assert factors == [] and rem == q**3 - 2


def _rebuild(unit, factors, rem):
    out = unit * rem
    for f in factors:
        out = out * f.poly()
    return out


def h3_poincare():
    out = one
    for d in (2, 6, 10):
        out = out * sum((q**k for k in range(1, d)), one)
    return out


def test_h3_poincare_factors():
    p = h3_poincare()
    unit, factors, rem = factor_unity_roots(p)
    counts = {}
    for f in factors:
        d = f.angle.denominator
        counts[d] = counts.get(d, 0) + f.multiplicity
    # each Phi_d contributes phi(d) linear factors
    assert counts == {2: 3, 3: 2, 5: 4, 6: 2, 10: 4}
    assert _rebuild(unit, factors, rem) == p
    assert eval_laurent(p, {"q": CycloNum.rational(1)}) == CycloNum.rational(120)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=1, max_size=4), st.integers(-3, 3), st.integers(1, 3))
def test_factorization_is_exact(ds, shift, scale):
    p = LaurentPoly.const(Q, scale) * q**shift if shift >= 0 else LaurentPoly.monomial(Q, (shift,), scale)
    for d in ds:
        p = p * univariate(cyclotomic_coeffs(d))
    unit, factors, rem = factor_unity_roots(p)
    assert rem.is_constant()
    assert _rebuild(unit, factors, rem) == p


def test_multivariate_factorization():
    vs = ("x", "y")
    x, y = LaurentPoly.var(vs, "x"), LaurentPoly.var(vs, "y")
    p = (x * y + 1) * (x - CycloNum.zeta(3)) * (y * y + y + 1)
    unit, factors, rem = factor_cyclotomic(p)
    assert rem.is_constant()
    assert _rebuild(unit, factors, rem) == p
    assert equal_up_to_unit(p, p * x**3 * 5)


def test_laurent_division_and_eval():
    assert eval_laurent(1 + q, {"q": CycloNum.rational(-1)}).is_zero()
    assert eval_laurent(1 + q + q * q, {"q": CycloNum.zeta(3)}).is_zero()
    assert (q**4 - one).exact_div(q - one) == q**3 + q**2 + q + one
    with pytest.raises(DivisionError):
        (q**2 + one).exact_div(q - one)
    with pytest.raises((KeyError, ValueError)):
        eval_laurent(q, {})


def test_cyclo_factor_vanishing():
    f = CycloFactor(("x", "y"), (1, 2), Fraction(1, 2))
    assert f.vanishes_at({"x": Fraction(1, 2), "y": Fraction(0)})
    assert f.vanishes_at({"x": Fraction(1, 4), "y": Fraction(1, 8)})
    assert not f.vanishes_at({"x": Fraction(0), "y": Fraction(0)})
