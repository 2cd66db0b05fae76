import os
from fractions import Fraction

import pytest

from cherednik.cyclo import CycloNum, LaurentPoly, equal_up_to_unit, eval_laurent
from cherednik.groups import build_from_spec, build_grpn, strata
from cherednik.hecke import (
    SchurElement,
    TableParseError,
    Undecidable,
    basis_element,
    coxeter_table_rows,
    epsilon_element,
    gr1n_in_orbit_variables,
    gr1n_schur,
    hecke_multiply,
    ingest_schur_table,
    orbit_variables,
    parse_schur_table,
    poincare_polynomial,
    principal_schur,
    q_factorial,
    q_index,
    schur_from_trace,
    schur_sum,
    serialize_schur_table,
)

SLOW = os.environ.get("CHEREDNIK_SLOW") == "1"


@pytest.fixture(scope="module")
def table():
    return ingest_schur_table()


@pytest.mark.parametrize("spec, tname", [("h3", "G23"), ("f4", "G28")])
def test_table_rows_match_enumeration(spec, tname, table):
    g = build_from_spec(spec)
    rows = coxeter_table_rows(g, tname)
    shipped = table.rows_for(tname)
    assert set(rows) == set(shipped)
    for name, s in rows.items():
        assert s.same_factors(shipped[name]), name


@pytest.mark.skipif(not SLOW, reason="set CHEREDNIK_SLOW=1")
def test_h4_table_rows(table):
    g = build_from_spec("h4")
    rows = coxeter_table_rows(g, "G30")
    for name, s in rows.items():
        assert s.same_factors(table.rows_for("G30")[name]), name


def test_h3_principal_notation():
    assert principal_schur(build_from_spec("h3")).notation() == "Phi2^3 Phi3 Phi5 Phi6 Phi10 (x1)"


@pytest.mark.parametrize("r, n", [(2, 2), (2, 3), (3, 1), (3, 2)])
def test_gr1n_principal_vs_coxeter_or_order(r, n):
    g = build_grpn(r, 1, n)
    s = principal_schur(g)
    # at the trivial parameter the Schur element is |W|
    ones = {v: CycloNum.rational(1) for v in s.variables}
    assert eval_laurent(s.poly, ones) == CycloNum.rational(g.order)
    if r == 2:
        assert equal_up_to_unit(s.poly, schur_sum(g).with_variables(s.variables))


@pytest.mark.parametrize("spec", ["a1", "a2", "b2", "i2(5)"])
def test_trace_schur_equals_sum(spec):
    g = build_from_spec(spec)
    assert schur_from_trace(g) == schur_sum(g)


@pytest.mark.parametrize("spec", ["a2", "b2", "i2(5)"])
def test_epsilon_is_fixed(spec):
    g = build_from_spec(spec)
    eps = epsilon_element(g)
    for w in g.gen_index:
        assert hecke_multiply(g, basis_element(g, w), eps) == eps


def test_quadratic_relation():
    g = build_from_spec("a1")
    s = g.gen_index[0]
    t = basis_element(g, s)
    vs = orbit_variables(g)
    q = LaurentPoly.var(vs, vs[0])
    one = basis_element(g, 0)
    # T^2 = (1 - q) T + q
    assert hecke_multiply(g, t, t) == t.scale(1 - q) + one.scale(q)


@pytest.mark.parametrize("spec", ["a3", "b3", "h3", "grpn:2,1,2", "grpn:3,1,2", "cyclic:3"])
def test_poincare_at_one_and_qindex(spec):
    g = build_from_spec(spec)
    s = principal_schur(g)
    ones = {v: CycloNum.rational(1) for v in s.variables}
    assert eval_laurent(s.poly, ones) == CycloNum.rational(g.order)
    for st in strata(g):
        qi = q_index(g, st)
        assert eval_laurent(qi.poly, {v: CycloNum.rational(1) for v in qi.variables}) == CycloNum.rational(
            g.order // len(st.parabolic)
        )


def test_q_binomial_index():
    g = build_grpn(1, 1, 4)
    vs = orbit_variables(g)
    assert poincare_polynomial(g) == q_factorial(4, vs, vs[0])


def test_gr1n_schur_k():
    # k = n leaves the index of S_n
    vs = gr1n_schur(2, 3).variables
    assert gr1n_schur(2, 3, 3) * q_factorial(3, vs) == gr1n_schur(2, 3)
    with pytest.raises(ValueError):
        gr1n_schur(2, 3, 4)


def test_gr1n_dictionary_matches_principal():
    g = build_grpn(2, 1, 2)
    assert equal_up_to_unit(gr1n_in_orbit_variables(g, gr1n_schur(2, 2)), principal_schur(g).poly)


def test_table_round_trip(table):
    text = serialize_schur_table(table)
    again = parse_schur_table(text)
    assert serialize_schur_table(again) == text
    assert set(again.keys()) == set(table.keys())
    for key in table.keys():
        assert again[key].same_factors(table[key])


def test_g4_primed_row_values(table):
    s = table[("G4", "principal")]
    # monomial x1 carries Phi2 Phi3'' Phi6''
    assert sum(f.multiplicity for f in s.factors if f.monomial == (1, 0)) == 3


@pytest.mark.parametrize(
    "bad",
    [
        "G4 | principal",
        "G4 | principal | Phi7' (x1)",
        "G4 | principal | Foo (x1)",
        "G4 | principal | Phi2 (x1) trailing",
        "G4 | p | Phi2 (x1)\nG4 | p | Phi2 (x1)",
        "G4 | p | Phi2 (x1+)",
    ],
)
def test_table_parse_errors(bad):
    with pytest.raises(TableParseError):
        parse_schur_table(bad)


def test_vanishing_and_undecidable():
    g = build_from_spec("a2")
    s = principal_schur(g)
    hit = s.vanishing_factors({s.variables[0]: Fraction(1, 3)})
    assert hit and all(f.angle.denominator == 3 for f in hit)
    assert s.vanishing_factors({s.variables[0]: Fraction(1, 5)}) == []
    with pytest.raises(Undecidable):
        principal_schur(build_grpn(3, 3, 2))


def test_schur_json_round_trip_notation():
    s = principal_schur(build_from_spec("b2"))
    assert isinstance(s, SchurElement)
    assert s.to_json()["provenance"] == "enumerated"
