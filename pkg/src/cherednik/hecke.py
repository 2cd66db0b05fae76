"""Schur elements: Poincare polynomials, Hecke T-basis arithmetic, the G(r,1,n)
formulas and ingestion of tabulated factor lists.

Hecke relation (Coxeter case): (T_s - 1)(T_s + q_s) = 0, so
T_s^2 = (1 - q_s) T_s + q_s.  The trivial character sends T_s to 1 and the
principal Schur element of the trivial character is sum_w q_w^{-1}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import gcd

from .cyclo import (
    CycloFactor,
    CycloNum,
    LaurentPoly,
    equal_up_to_unit,
    factor_cyclotomic,
    monomial_str,
    phi_roots,
)
from .groups import ReflectionGroup, Stratum, coordinate_names, monomial_parabolic_type, strata

HECKE_CAP = 1200
TRACE_CAP = 48


class UnsupportedGroup(ValueError):
    pass


class Undecidable(RuntimeError):
    """Schur data for this group has to come from a table."""


# ---------------------------------------------------------------------------
# Schur elements and the Phi-label notation
# ---------------------------------------------------------------------------

_PRIMED_ORDERS = {3: 2, 4: 2, 6: 2, 12: 4, 30: 4}


def _label_angles(angles: dict) -> list[tuple[str, int]]:
    """Greedy Phi labelling of a multiset of root angles (all for one monomial)."""
    angles = dict(angles)
    out: list[tuple[str, int]] = []

    def take(roots):
        need = {Fraction(k, n): 1 for n, k in roots}
        times = min(angles.get(a, 0) for a in need)
        if times:
            for a in need:
                angles[a] -= times
        return times

    for d in sorted({a.denominator for a, m in angles.items() if m}):
        full = [(d, k) for k in range(d) if gcd(k, d) == 1]
        t = take(full)
        if t:
            out.append((f"Phi{d}", t))
        for primes in range(1, _PRIMED_ORDERS.get(d, 0) + 1):
            label = f"Phi{d}" + "'" * primes
            t = take(phi_roots(label))
            if t:
                out.append((label, t))
    for a in sorted(angles):
        if angles[a]:
            out.append((f"E{a.denominator}_{a.numerator}", angles[a]))
    return out


def _mono_key(mon):
    return (sum(abs(x) for x in mon), tuple(-x for x in mon))


@dataclass
class SchurElement:
    expanded: LaurentPoly | None  # None until first needed (ingested rows)
    factors: list
    unit: LaurentPoly
    remainder: LaurentPoly
    provenance: str
    labels: list | None = None  # [(monomial, [(label, mult)])] when ingested

    @classmethod
    def from_poly(cls, poly: LaurentPoly, provenance: str, bound: int = 60) -> SchurElement:
        unit, factors, rem = factor_cyclotomic(poly, bound=bound)
        return cls(poly, factors, unit, rem, provenance)

    @classmethod
    def from_factors(cls, variables, factors, provenance: str, labels=None) -> SchurElement:
        one = LaurentPoly.const(tuple(variables), 1)
        return cls(None, list(factors), one, one, provenance, labels)

    @property
    def poly(self) -> LaurentPoly:
        if self.expanded is None:
            # expanding a long factor list over cyclotomic fields is slow; do it on demand
            out = self.unit * self.remainder
            for f in self.factors:
                out = out * f.poly()
            self.expanded = out
        return self.expanded

    @property
    def variables(self):
        return self.unit.variables

    def factor_multiset(self) -> dict:
        out: dict = {}
        for f in self.factors:
            key = (f.monomial, f.angle)
            out[key] = out.get(key, 0) + f.multiplicity
        return out

    def renamed(self, variables) -> SchurElement:
        """Same element over a (super)set of variables."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.variables]

        def lift(mon):
            new = [0] * len(variables)
            for p, x in zip(pos, mon):
                new[p] = x
            return tuple(new)

        factors = [CycloFactor(variables, lift(f.monomial), f.angle, f.multiplicity) for f in self.factors]
        labels = None if self.labels is None else [(lift(m), ls) for m, ls in self.labels]
        return SchurElement(
            None if self.expanded is None else self.expanded.with_variables(variables),
            factors,
            self.unit.with_variables(variables),
            self.remainder.with_variables(variables),
            self.provenance,
            labels,
        )

    def labelled(self) -> list:
        if self.labels is not None:
            return self.labels
        by_mon: dict = {}
        for f in self.factors:
            by_mon.setdefault(f.monomial, {})
            by_mon[f.monomial][f.angle] = by_mon[f.monomial].get(f.angle, 0) + f.multiplicity
        return [(m, _label_angles(by_mon[m])) for m in sorted(by_mon, key=_mono_key)]

    def notation(self) -> str:
        parts = []
        for mon, labels in self.labelled():
            text = " ".join(lab if k == 1 else f"{lab}^{k}" for lab, k in labels)
            parts.append(f"{text} ({monomial_str(self.variables, mon)})")
        if not self.remainder.is_constant():
            parts.append(f"[{self.remainder}]")
        return " ".join(parts) if parts else "1"

    def equals_up_to_unit(self, other: SchurElement) -> bool:
        names = tuple(sorted(set(self.variables) | set(other.variables)))
        return equal_up_to_unit(self.poly.with_variables(names), other.poly.with_variables(names))

    def same_factors(self, other: SchurElement) -> bool:
        names = tuple(sorted(set(self.variables) | set(other.variables)))
        a, b = self.renamed(names), other.renamed(names)
        return a.factor_multiset() == b.factor_multiset() and a.remainder.is_constant() and b.remainder.is_constant()

    def vanishing_factors(self, angles: dict) -> list:
        """Factors vanishing when each variable v takes the value exp(2 pi i angles[v])."""
        if not self.remainder.is_constant():
            values = {v: CycloNum.zeta(Fraction(a).denominator, Fraction(a).numerator) for v, a in angles.items()}
            if self.remainder.evaluate(values).is_zero():
                raise Undecidable("unfactored Schur remainder vanishes at this parameter")
        return [f for f in self.factors if f.vanishes_at(angles)]

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "notation": self.notation(),
            "factors": [f.to_json() for f in self.factors],
            "unit": self.unit.to_json(),
            "remainder": self.remainder.to_json(),
            "poly": self.poly.to_json(),
        }


# ---------------------------------------------------------------------------
# Poincare polynomials
# ---------------------------------------------------------------------------


def orbit_variables(g: ReflectionGroup) -> tuple[str, ...]:
    """q-variable names x1, x2, .., y1, one per (orbit, nontrivial character)."""
    return tuple(coordinate_names(g))


def _require_coxeter(g: ReflectionGroup):
    if not g.is_coxeter:
        raise UnsupportedGroup("Poincare polynomials need a real (Coxeter) group")


def orbit_exponents(g: ReflectionGroup) -> list[tuple[int, ...]]:
    """Per-orbit letter counts of a reduced word of every element."""
    cache = g.__dict__.get("_orbit_exps")
    if cache is not None:
        return cache
    _require_coxeter(g)
    labels = g.orbit_labels
    gen_orbit = [labels.index(o) for o in g.generator_orbits()]
    exps = [None] * g.order
    exps[0] = (0,) * len(labels)
    # parents come before children in BFS order
    for i in range(1, g.order):
        k, p = g.parent[i]
        e = list(exps[p])
        e[gen_orbit[k]] += 1
        exps[i] = tuple(e)
    g.__dict__["_orbit_exps"] = exps
    return exps


def poincare_polynomial(g: ReflectionGroup, subset=None, stratum: Stratum | None = None) -> LaurentPoly:
    """sum of q_w over W, or over the standard parabolic W_J."""
    exps = orbit_exponents(g)
    if stratum is not None:
        if stratum.standard_subset is None:
            raise UnsupportedGroup("stratum has no standard parabolic representative")
        subset = stratum.standard_subset
    if subset is None:
        elems = range(g.order)
    else:
        elems = g.subgroup([g.gen_index[k] for k in subset])
    terms: dict = {}
    for i in elems:
        terms[exps[i]] = terms.get(exps[i], 0) + 1
    return LaurentPoly(orbit_variables(g), terms)


def principal_schur(g: ReflectionGroup, bound: int = 60) -> SchurElement:
    if g.is_coxeter:
        return SchurElement.from_poly(poincare_polynomial(g), "enumerated", bound)
    r, n = _gr1n_shape(g)
    poly = gr1n_in_orbit_variables(g, gr1n_schur(r, n))
    return SchurElement.from_poly(poly, "gr1n_formula", bound)


def q_index(g: ReflectionGroup, stratum: Stratum, bound: int = 60) -> SchurElement:
    """|W : W_S|_q for a stratum (cached per group)."""
    cache = g.__dict__.setdefault("_qindex", {})
    key = (stratum.hyperplanes, bound)
    if key not in cache:
        cache[key] = _q_index(g, stratum, bound)
    return cache[key]


def _q_index(g: ReflectionGroup, stratum: Stratum, bound: int) -> SchurElement:
    variables = orbit_variables(g)
    if len(stratum.parabolic) == g.order:
        one = LaurentPoly.const(variables, 1)
        return SchurElement(one, [], one, one, "trivial")
    if g.is_coxeter:
        top = poincare_polynomial(g)
        bottom = poincare_polynomial(g, stratum=stratum)
        return SchurElement.from_poly(top.exact_div(bottom), "enumerated", bound)
    r, n = _gr1n_shape(g)
    m, blocks = gr1n_parabolic_type(g, stratum)
    poly = gr1n_in_orbit_variables(g, gr1n_relative(r, n, m, blocks))
    return SchurElement.from_poly(poly, "gr1n_formula", bound)


# ---------------------------------------------------------------------------
# G(r,1,n)
# ---------------------------------------------------------------------------


@dataclass
class Gr1nParams:
    """Parameters (c_0, d_0..d_{r-1}) with q = exp(-2 pi i c_0), Q_j = exp(2 pi i (j - d_j)/r)."""

    r: int
    n: int
    c0: Fraction
    d: list = field(default_factory=list)

    def __post_init__(self):
        self.c0 = Fraction(self.c0)
        self.d = [Fraction(x) for x in self.d] or [Fraction(0)] * self.r
        if len(self.d) != self.r:
            raise ValueError("need exactly r values d_0..d_{r-1}")

    def q_angle(self) -> Fraction:
        return -self.c0

    def Q_angle(self, j: int) -> Fraction:
        return (j - self.d[j]) / self.r

    def orbit_coordinates(self) -> dict:
        """c_{H,chi} coordinates: y1 = c_0 on the transposition orbit, x_j = (d_0 - d_j)/r."""
        out = {}
        for j in range(1, self.r):
            out[("x", j)] = (self.d[0] - self.d[j]) / self.r
        if self.n >= 2:
            out[("y", 1)] = self.c0
        return out


def gr1n_variables(r: int) -> tuple[str, ...]:
    return ("q",) + tuple(f"Q{j}" for j in range(r))


def q_factorial(n: int, variables=("q",), var: str = "q") -> LaurentPoly:
    q = LaurentPoly.var(variables, var)
    one = LaurentPoly.const(variables, 1)
    out, acc = one, one
    for _ in range(1, n):
        acc = acc * q + one
        out = out * acc
    return out


def _gr1n_product(r: int, m_range) -> LaurentPoly:
    vs = gr1n_variables(r)
    q = LaurentPoly.var(vs, "q")
    out = LaurentPoly.const(vs, 1)
    for j in range(1, r):
        ratio = LaurentPoly.var(vs, "Q0") * LaurentPoly.monomial(vs, tuple(-1 if v == f"Q{j}" else 0 for v in vs))
        for m in m_range:
            out = out * (q**m * ratio - 1)
    return out


def gr1n_schur(r: int, n: int, k: int | None = None) -> LaurentPoly:
    """Principal Schur element of G(r,1,n), or with k the q-index of S_k x G(r,1,n-k)."""
    vs = gr1n_variables(r)
    if k is None:
        return q_factorial(n, vs) * _gr1n_product(r, range(n))
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    binom = q_factorial(n, vs).exact_div(q_factorial(k, vs) * q_factorial(n - k, vs))
    return binom * _gr1n_product(r, range(n - k, n))


def gr1n_relative(r: int, n: int, m: int, blocks) -> LaurentPoly:
    """|G(r,1,n) : G(r,1,m) x prod S_b|_q (blocks of size 1 may be omitted)."""
    vs = gr1n_variables(r)
    if m + sum(blocks) > n:
        raise ValueError("parabolic type does not fit")
    top = gr1n_schur(r, n)
    bottom = q_factorial(0, vs) if m == 0 else gr1n_schur(r, m)
    for b in blocks:
        bottom = bottom * q_factorial(b, vs)
    return top.exact_div(bottom)


def _gr1n_shape(g: ReflectionGroup) -> tuple[int, int]:
    kind = g.kind
    if kind["kind"] == "cyclic":
        return kind["n"], 1
    if kind["kind"] == "grpn" and kind["p"] == 1:
        return kind["r"], kind["n"]
    raise Undecidable("no Schur formula for this group: provide table data")


def gr1n_orbit_labels(g: ReflectionGroup) -> tuple[str | None, str | None]:
    """(label of the diagonal orbit, label of the transposition orbit)."""
    diag = trans = None
    for h in g.hyperplanes:
        nz = sum(1 for a in h.alpha if not a.is_zero())
        if nz == 1:
            diag = h.orbit
        else:
            trans = h.orbit
    return diag, trans


def gr1n_dictionary(g: ReflectionGroup) -> dict:
    """q -> y^{-1}, Q_0 -> 1, Q_j -> zeta_r^j x_j, so Q_0/Q_j = zeta_r^{-j} x_j^{-1}."""
    r, n = _gr1n_shape(g)
    diag, trans = gr1n_orbit_labels(g)
    vs = orbit_variables(g)
    sub = {"Q0": LaurentPoly.const(vs, 1)}
    for j in range(1, r):
        sub[f"Q{j}"] = LaurentPoly.var(vs, f"{diag}{j}") * CycloNum.zeta(r, j)
    sub["q"] = LaurentPoly.monomial(vs, tuple(-1 if v == f"{trans}1" else 0 for v in vs)) if trans else LaurentPoly.const(vs, 1)
    return sub


def gr1n_in_orbit_variables(g: ReflectionGroup, poly: LaurentPoly) -> LaurentPoly:
    vs = orbit_variables(g)
    sub = gr1n_dictionary(g)
    return poly.substitute(sub).with_variables(vs)


def gr1n_parabolic_type(g: ReflectionGroup, stratum: Stratum) -> tuple[int, list[int]]:
    """(m, blocks): W_S is conjugate to G(r,1,m) x prod S_b."""
    return monomial_parabolic_type(g, stratum.hyperplanes)


# ---------------------------------------------------------------------------
# Hecke algebra in the T-basis
# ---------------------------------------------------------------------------


@dataclass
class HeckeElement:
    variables: tuple
    coeffs: dict  # element index -> LaurentPoly

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return HeckeElement(self.variables, out)

    def scale(self, c: LaurentPoly) -> HeckeElement:
        return HeckeElement(self.variables, {w: a * c for w, a in self.coeffs.items() if not (a * c).is_zero()})

    def __eq__(self, other):
        return self.variables == other.variables and self.coeffs == other.coeffs

    def trace(self) -> LaurentPoly:
        return self.coeffs.get(0, LaurentPoly.const(self.variables, 0))


def _hecke_setup(g: ReflectionGroup):
    _require_coxeter(g)
    if g.order > HECKE_CAP:
        raise UnsupportedGroup(f"T-basis arithmetic capped at |W| <= {HECKE_CAP}")
    vs = orbit_variables(g)
    gen_q = [LaurentPoly.var(vs, f"{o}1") for o in g.generator_orbits()]
    return vs, gen_q


def basis_element(g: ReflectionGroup, w: int) -> HeckeElement:
    vs = orbit_variables(g)
    return HeckeElement(vs, {w: LaurentPoly.const(vs, 1)})


def _left_generator(g: ReflectionGroup, k: int, a: HeckeElement, gen_q) -> HeckeElement:
    s = g.gen_index[k]
    qs = gen_q[k]
    out: dict = {}

    def add(w, c):
        v = out.get(w)
        v = c if v is None else v + c
        if v.is_zero():
            out.pop(w, None)
        else:
            out[w] = v

    for w, c in a.coeffs.items():
        sw = g.mul(s, w)
        if g.length[sw] > g.length[w]:
            add(sw, c)
        else:
            add(w, c * (1 - qs))
            add(sw, c * qs)
    return HeckeElement(a.variables, out)


def hecke_multiply(g: ReflectionGroup, a: HeckeElement, b: HeckeElement) -> HeckeElement:
    _, gen_q = _hecke_setup(g)
    total = HeckeElement(a.variables, {})
    for u, cu in a.coeffs.items():
        acc = b
        for k in reversed(g.word(u)):
            acc = _left_generator(g, k, acc, gen_q)
        total = total + acc.scale(cu)
    return total


def q_weight(g: ReflectionGroup, w: int, power: int = 1) -> LaurentPoly:
    exps = orbit_exponents(g)[w]
    return LaurentPoly.monomial(orbit_variables(g), tuple(power * e for e in exps))


def epsilon_element(g: ReflectionGroup) -> HeckeElement:
    """eps = sum_w q_w^{-1} T_w, with T_w eps = eps."""
    _hecke_setup(g)
    return HeckeElement(orbit_variables(g), {w: q_weight(g, w, -1) for w in range(g.order)})


def schur_sum(g: ReflectionGroup) -> LaurentPoly:
    """sum_w q_w^{-1}: the principal Schur element of the trivial character."""
    out = LaurentPoly.const(orbit_variables(g), 0)
    for w in range(g.order):
        out = out + q_weight(g, w, -1)
    return out


def schur_from_trace(g: ReflectionGroup) -> LaurentPoly:
    """Solve t(T_w a) = chi(T_w) for a in the T-basis (chi trivial) and return chi(a).

    The Gram matrix t(T_u T_v) is built by T-basis multiplication and the
    system is solved over the fraction field of the q-variables.
    """
    import sympy

    if g.order > TRACE_CAP:
        raise UnsupportedGroup(f"trace Schur elements capped at |W| <= {TRACE_CAP}")
    vs, _ = _hecke_setup(g)
    syms = sympy.symbols(vs)
    elems = [basis_element(g, w) for w in range(g.order)]
    gram = [[_to_sympy(hecke_multiply(g, elems[u], elems[v]).trace(), syms) for v in range(g.order)] for u in range(g.order)]
    ring = sympy.QQ.frac_field(*syms)
    dm = sympy.polys.matrices.DomainMatrix.from_list_sympy(g.order, g.order, gram).convert_to(ring)
    rhs = sympy.polys.matrices.DomainMatrix.from_list_sympy(g.order, 1, [[1]] * g.order).convert_to(ring)
    if dm.det() == ring.zero:
        raise ArithmeticError("singular Gram matrix for the symmetrizing trace")
    sol = dm.lu_solve(rhs)
    # chi(T_v) = 1 for the trivial character
    total = ring.zero
    for i in range(g.order):
        total += sol[i, 0].element
    return _from_sympy(ring.to_sympy(total), syms, vs)


def _to_sympy(p: LaurentPoly, syms):
    import sympy

    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        if not c.is_rational():
            raise ValueError("expected rational coefficients")
        f = c.as_fraction()
        term = sympy.Rational(f.numerator, f.denominator)
        for s, x in zip(syms, e):
            term *= s**x
        expr += term
    return expr


def _from_sympy(expr, syms, variables) -> LaurentPoly:
    import sympy

    num, den = sympy.fraction(sympy.together(expr))
    pn = sympy.Poly(sympy.expand(num), *syms)
    pd = sympy.Poly(sympy.expand(den), *syms)
    if len(pd.terms()) != 1:
        raise ArithmeticError("trace Schur element is not a Laurent polynomial")
    (dexp, dcoef), = pd.terms()
    terms = {}
    for e, c in pn.terms():
        terms[tuple(a - b for a, b in zip(e, dexp))] = Fraction(int(c.p), int(c.q)) / Fraction(int(dcoef.p), int(dcoef.q))
    return LaurentPoly(tuple(variables), terms)


# ---------------------------------------------------------------------------
# table ingestion
# ---------------------------------------------------------------------------

_LABEL_RE = re.compile(r"^(Phi\d+'{0,4}|E\d+_\d+)(?:\^(\d+))?$")
_VAR_RE = re.compile(r"^([A-Za-z]+\d*)(?:\^(-?\d+))?$")


class TableParseError(ValueError):
    pass


@dataclass
class SchurTable:
    lines: list  # raw comment strings or (group, parabolic, [(monomial str, [(label, k)])])
    elements: dict  # (group, parabolic) -> SchurElement

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, key):
        return self.elements[key]

    def __contains__(self, key):
        return key in self.elements

    def keys(self):
        return self.elements.keys()

    def rows_for(self, group: str) -> dict:
        return {p: s for (gname, p), s in self.elements.items() if gname == group}


def _parse_monomial(text: str, lineno: int) -> dict:
    out: dict = {}
    for part in text.split("*"):
        part = part.strip()
        m = _VAR_RE.match(part)
        if not m:
            raise TableParseError(f"line {lineno}: bad monomial {text!r}")
        out[m.group(1)] = out.get(m.group(1), 0) + int(m.group(2) or 1)
    return out


def _parse_factor_groups(text: str, lineno: int) -> list:
    groups = []
    pos = 0
    for m in re.finditer(r"([^()]*)\(([^()]*)\)", text):
        if text[pos : m.start()].strip():
            raise TableParseError(f"line {lineno}: unexpected text {text[pos:m.start()]!r}")
        pos = m.end()
        labels = []
        for tok in m.group(1).split():
            lm = _LABEL_RE.match(tok)
            if not lm:
                raise TableParseError(f"line {lineno}: unknown label {tok!r}")
            try:
                phi_roots(lm.group(1))
            except ValueError as exc:
                raise TableParseError(f"line {lineno}: {exc}") from None
            labels.append((lm.group(1), int(lm.group(2) or 1)))
        if not labels:
            raise TableParseError(f"line {lineno}: no labels before ({m.group(2)})")
        groups.append((m.group(2).strip(), labels))
    if text[pos:].strip():
        raise TableParseError(f"line {lineno}: trailing text {text[pos:]!r}")
    return groups


def parse_schur_table(text: str) -> SchurTable:
    lines: list = []
    elements: dict = {}
    parsed = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            lines.append(line)
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != 3 or not cols[0] or not cols[1]:
            raise TableParseError(f"line {lineno}: expected 'group | parabolic | factors'")
        groups = _parse_factor_groups(cols[2], lineno)
        row = (cols[0], cols[1], groups)
        if (cols[0], cols[1]) in elements:
            raise TableParseError(f"line {lineno}: duplicate row {cols[0]} | {cols[1]}")
        elements[(cols[0], cols[1])] = None
        lines.append(row)
        parsed.append((row, lineno))
    # variables are shared by all rows of a group
    group_vars: dict = {}
    for (gname, _, groups), lineno in parsed:
        names = group_vars.setdefault(gname, set())
        for mon, _ in groups:
            names.update(_parse_monomial(mon, lineno))
    for (gname, par, groups), lineno in parsed:
        variables = tuple(sorted(group_vars[gname]))
        factors, labels = [], []
        for mon_text, labs in groups:
            powers = _parse_monomial(mon_text, lineno)
            mon = tuple(powers.get(v, 0) for v in variables)
            labels.append((mon, labs))
            for lab, k in labs:
                for n, j in phi_roots(lab):
                    factors.append(CycloFactor(variables, mon, Fraction(j, n), k))
        elements[(gname, par)] = SchurElement.from_factors(variables, _merge(factors), "ingested_table", labels)
    return SchurTable(lines, elements)


def _merge(factors):
    counts: dict = {}
    for f in factors:
        key = (f.variables, f.monomial, f.angle)
        counts[key] = counts.get(key, 0) + f.multiplicity
    return [CycloFactor(v, m, a, k) for (v, m, a), k in counts.items()]


def serialize_schur_table(table: SchurTable) -> str:
    out = []
    for line in table.lines:
        if isinstance(line, str):
            out.append(line)
            continue
        gname, par, groups = line
        body = " ".join(
            " ".join(lab if k == 1 else f"{lab}^{k}" for lab, k in labs) + f" ({mon})" for mon, labs in groups
        )
        out.append(f"{gname} | {par} | {body}")
    return "\n".join(out) + "\n"


def ingest_schur_table(path=None) -> SchurTable:
    """Parse a table file; with no path, the shipped table."""
    if path is None:
        text = resources.files("cherednik").joinpath("data/schur_tables.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return parse_schur_table(text)


# table parabolic ids -> standard subsets of the generators used by the named Coxeter builders
TABLE_COXETER = {
    "G23": ("h3", {"H2": (0, 1), "A1^2": (0, 2), "A2": (1, 2)}),
    "G28": ("f4", {"B3": (0, 1, 2), "C3": (1, 2, 3), "A1A2~": (0, 2, 3), "A2A1~": (0, 1, 3)}),
    "G30": ("h4", {"H3": (0, 1, 2), "H2A1": (0, 1, 3), "A2A1": (0, 2, 3), "A3": (1, 2, 3)}),
}


def coxeter_table_rows(g: ReflectionGroup, table_group: str, bound: int = 60) -> dict:
    """Recompute the Coxeter rows (principal and parabolic) a table lists for a group."""
    _, subsets = TABLE_COXETER[table_group]
    out = {"principal": SchurElement.from_poly(poincare_polynomial(g), "enumerated", bound)}
    top = poincare_polynomial(g)
    for name, subset in subsets.items():
        out[name] = SchurElement.from_poly(top.exact_div(poincare_polynomial(g, subset)), "enumerated", bound)
    return out


def schur_for_strata(g: ReflectionGroup, bound: int = 60) -> list[SchurElement]:
    """q-index for every stratum orbit (raises Undecidable without a formula)."""
    return [q_index(g, st, bound) for st in strata(g)]
