import math
from fractions import Fraction

import pytest
import sympy

from cherednik.characters import isotypic_projectors
from cherednik.cyclo import CycloNum, LaurentPoly
from cherednik.groups import build_cyclic, build_from_spec, strata
from cherednik.dunkl import (
    MultiPoly,
    SingularPairing,
    act,
    act_vector,
    choose_lambda,
    denominator_bound,
    derham_check,
    dunkl_apply,
    euler_check,
    exp_series_numeric,
    exp_series_symbolic,
    exp_series_symbolic_solve,
    monomials,
    pairing_matrix,
    singular_hyperplanes,
    stabilizer_of_covector,
    symbolic_c,
)
from cherednik.hecke import _to_sympy

GROUPS = ["a2", "grpn:2,1,2", "cyclic:3"]
C_VALUES = {
    "a2": {("x", 1): Fraction(2, 7)},
    "grpn:2,1,2": {("x", 1): Fraction(1, 5), ("y", 1): Fraction(-3, 4)},
    "cyclic:3": {("x", 1): Fraction(1, 4), ("x", 2): Fraction(2, 9)},
}


def basis(n, i):
    return [1 if k == i else 0 for k in range(n)]


def random_poly(n, d, seed):
    out = MultiPoly(n)
    for k, e in enumerate(monomials(n, d)):
        out = out + MultiPoly.monomial(n, e, CycloNum.rational((seed * 7 + k * 3) % 11 - 5))
    return out


@pytest.fixture(scope="module", params=GROUPS)
def setup(request):
    g = build_from_spec(request.param)
    return g, C_VALUES[request.param]


@pytest.mark.parametrize("d", range(1, 7))
def test_dunkl_operators_commute(setup, d):
    g, c = setup
    n = g.rank
    f = random_poly(n, d, d)
    for i in range(n):
        for j in range(i + 1, n):
            a = dunkl_apply(g, c, basis(n, i), dunkl_apply(g, c, basis(n, j), f))
            b = dunkl_apply(g, c, basis(n, j), dunkl_apply(g, c, basis(n, i), f))
            assert a == b


def test_dunkl_operators_commute_symbolically():
    g = build_from_spec("grpn:2,1,2")
    _, cvars = symbolic_c(g)
    f = random_poly(2, 4, 1)
    a = dunkl_apply(g, cvars, [1, 0], dunkl_apply(g, cvars, [0, 1], f))
    b = dunkl_apply(g, cvars, [0, 1], dunkl_apply(g, cvars, [1, 0], f))
    assert a == b


@pytest.mark.parametrize("d", range(0, 5))
def test_equivariance(setup, d):
    g, c = setup
    n = g.rank
    f = random_poly(n, d, d + 1)
    for w in range(g.order):
        for i in range(n):
            y = basis(n, i)
            lhs = act(g, w, dunkl_apply(g, c, y, f))
            rhs = dunkl_apply(g, c, act_vector(g, w, y), act(g, w, f))
            assert lhs == rhs


@pytest.mark.parametrize("d", range(1, 6))
def test_euler_identity(setup, d):
    g, c = setup
    assert euler_check(g, c, random_poly(g.rank, d, 2 * d))


def test_euler_needs_homogeneous():
    g = build_from_spec("a2")
    f = MultiPoly.var(2, 0) + MultiPoly.var(2, 0) * MultiPoly.var(2, 1)
    with pytest.raises(ValueError):
        euler_check(g, {}, f)


def test_exponential_eigen_equations(setup):
    g, c = setup
    lam = choose_lambda(g, strata(g)[-1])
    s = exp_series_numeric(g, lam, 5, c)
    assert s.component_poly(0) == MultiPoly.monomial(g.rank, (0,) * g.rank, CycloNum.rational(1))
    for d in range(1, 6):
        for i in range(g.rank):
            got = dunkl_apply(g, c, basis(g.rank, i), s.component_poly(d))
            assert got == s.component_poly(d - 1).scale(lam[i])


def test_stabilizer_invariance():
    g = build_from_spec("grpn:2,1,2")
    c = C_VALUES["grpn:2,1,2"]
    for st in strata(g):
        lam = choose_lambda(g, st, seed=3)
        assert sorted(stabilizer_of_covector(g, lam)) == sorted(st.parabolic)
        s = exp_series_numeric(g, lam, 4, c)
        for w in st.parabolic:
            assert act(g, w, s.truncated(4)) == s.truncated(4)


def test_zero_lambda_gives_one():
    g = build_from_spec("a2")
    s = exp_series_numeric(g, [0, 0], 4, C_VALUES["a2"])
    for d in range(1, 5):
        assert s.component_poly(d).is_zero()


@pytest.mark.parametrize("spec", ["a2", "grpn:2,1,2", "cyclic:2"])
def test_apolarity_at_zero(spec):
    g = build_from_spec(spec)
    for d in range(4):
        m = pairing_matrix(g, {}, d)
        mons = monomials(g.rank, d)
        for i, e in enumerate(mons):
            for j in range(len(mons)):
                want = math.prod(math.factorial(k) for k in e) if i == j else 0
                assert m[i][j] == CycloNum.rational(want)


@pytest.mark.parametrize("spec", ["a2", "grpn:2,1,2"])
def test_symbolic_denominators_divide_bound(spec):
    g = build_from_spec(spec)
    chars = isotypic_projectors(g)
    lam = choose_lambda(g, strata(g)[-1])
    s = exp_series_symbolic(g, lam, 5, chars=chars)
    names, _ = symbolic_c(g)
    for d in range(1, 6):
        den = s.components[d].denominator_poly(names)
        assert den.divides(denominator_bound(g, chars, d))


def test_recursion_matches_sympy_solve():
    g = build_from_spec("a2")
    lam = [CycloNum.rational(2), CycloNum.rational(-1)]
    s = exp_series_symbolic(g, lam, 4)
    syms, solved = exp_series_symbolic_solve(g, lam, 4)
    for d in range(5):
        for i, e in enumerate(s.monomials[d]):
            num, den = s.coefficient(e)
            ours = _to_sympy(num, syms) / _to_sympy(den, syms)
            assert sympy.simplify(ours - solved[d][i]) == 0


def test_symbolic_matches_numeric():
    g = build_from_spec("grpn:2,1,2")
    c = C_VALUES["grpn:2,1,2"]
    lam = choose_lambda(g, strata(g)[-1])
    s = exp_series_symbolic(g, lam, 4)
    n = exp_series_numeric(g, lam, 4, c)
    names, _ = symbolic_c(g)
    point = {"c_x1": CycloNum.rational(c[("x", 1)]), "c_y1": CycloNum.rational(c[("y", 1)])}
    for d in range(5):
        for e, v in zip(n.monomials[d], n.components[d]):
            num, den = s.coefficient(e)
            assert num.evaluate(point) == v * den.evaluate(point)


def test_z2_series_values():
    g = build_cyclic(2)
    s = exp_series_symbolic(g, [1], 4)
    names, _ = symbolic_c(g)
    c = LaurentPoly.var(names, names[0])
    one = LaurentPoly.const(names, 1)
    num, den = s.coefficient((1,))
    assert num * (one - c * 2) == den
    num, den = s.coefficient((2,))
    assert num * (one - c * 2) * 2 == den


def test_z2_singular_hyperplanes():
    g = build_cyclic(2)
    res = singular_hyperplanes(g, [1], 8)
    assert [h.describe() for h in res["hyperplanes"]] == [
        "2*c_x1 = 1",
        "2*c_x1 = 3",
        "2*c_x1 = 5",
        "2*c_x1 = 7",
    ]


def test_s3_singular_hyperplanes():
    g = build_from_spec("a2")
    lam = choose_lambda(g, strata(g)[-1])
    res = singular_hyperplanes(g, lam, 5)
    found = {(h.describe(), h.degree) for h in res["hyperplanes"]}
    assert found == {
        ("3*c_x1 = 1", 1),
        ("3*c_x1 = 2", 2),
        ("2*c_x1 = 1", 3),
        ("3*c_x1 = 4", 4),
        ("3*c_x1 = 5", 5),
    }


def test_s3_half_is_certified_pole_at_degree_three():
    g = build_from_spec("a2")
    lam = choose_lambda(g, strata(g)[-1])
    with pytest.raises(SingularPairing) as exc:
        exp_series_numeric(g, lam, 4, {("x", 1): Fraction(1, 2)})
    assert exc.value.degree == 3


@pytest.mark.parametrize(
    "spec, c, d, p",
    [
        ("a2", {("x", 1): Fraction(1, 3)}, 2, 1),
        ("a2", {("x", 1): Fraction(-2, 5)}, 3, 1),
        ("grpn:2,1,2", {("x", 1): Fraction(1, 2), ("y", 1): Fraction(1, 3)}, 2, 1),
        ("grpn:2,1,2", {("x", 1): Fraction(1, 2), ("y", 1): Fraction(1, 3)}, 1, 2),
        ("cyclic:3", C_VALUES["cyclic:3"], 3, 1),
    ],
)
def test_derham_identity(spec, c, d, p):
    assert derham_check(build_from_spec(spec), c, d, p)
