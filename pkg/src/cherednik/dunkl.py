"""Dunkl operators on C[V], the contravariant pairing and truncated W-exponentials.

Polynomials live in x_1..x_n, the coordinate covectors. W acts on functions by
(w.f)(v) = f(w^{-1} v), so w.x_i = sum_j (w^{-1})_{ij} x_j. The Dunkl operator of
y in V is

    y(f) = d_y f - sum_r c_r <alpha_r, y> (f - r.f) / alpha_r,

with c_{r_H^m} = -sum_j c_{H,j} zeta_{n_H}^{-jm} in the (H, chi) coordinates.
Everything is linear in the coordinates, so each operator is stored as a
constant part plus one part per coordinate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .characters import CharacterData, c_function, isotypic_projectors, reflection_c_forms
from .cyclo import CycloNum, DivisionError, LaurentPoly
from .groups import ReflectionGroup, coordinate_names, param_coordinates, strata

try:
    from gmpy2 import mpq as _fast_q
except ImportError:  # pragma: no cover
    _fast_q = Fraction

SYMBOLIC_MAX_RANK = 2


def _to_fast(v: CycloNum):
    f = v.as_fraction()
    return _fast_q(f.numerator, f.denominator)


def _from_fast(x) -> CycloNum:
    return CycloNum.rational(Fraction(int(x.numerator), int(x.denominator)))


class SingularPairing(ArithmeticError):
    """The degree-d pairing system has no solution at this parameter."""

    def __init__(self, degree: int):
        super().__init__(f"pairing singular and inconsistent in degree {degree}")
        self.degree = degree


def _zero(x) -> bool:
    if isinstance(x, LaurentPoly):
        return x.is_zero()
    return not x


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial in x_1..x_n; coefficients CycloNum, Fraction or LaurentPoly (in c)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if not _zero(c)}

    @classmethod
    def _raw(cls, n, terms):
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def monomial(cls, n: int, exp, coeff=None) -> MultiPoly:
        return cls(n, {tuple(exp): CycloNum.rational(1) if coeff is None else coeff})

    @classmethod
    def var(cls, n: int, i: int) -> MultiPoly:
        return cls.monomial(n, tuple(1 if k == i else 0 for k in range(n)))

    @classmethod
    def linear(cls, coeffs) -> MultiPoly:
        n = len(coeffs)
        return cls(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.n, CycloNum.rational(0))

    def homogeneous(self, d: int) -> MultiPoly:
        return MultiPoly._raw(self.n, {e: c for e, c in self.terms.items() if sum(e) == d})

    def _combine(self, other, sign):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = (c if sign > 0 else -c) if s is None else (s + c if sign > 0 else s - c)
            if _zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly._raw(self.n, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return MultiPoly._raw(self.n, {e: -c for e, c in self.terms.items()})

    def scale(self, a) -> MultiPoly:
        if _zero(a):
            return MultiPoly._raw(self.n, {})
        out = {}
        for e, c in self.terms.items():
            v = a * c if isinstance(a, LaurentPoly) else c * a
            if not _zero(v):
                out[e] = v
        return MultiPoly._raw(self.n, out)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                s = out.get(e)
                out[e] = v if s is None else s + v
        return MultiPoly._raw(self.n, {e: c for e, c in out.items() if not _zero(c)})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms))

    def diff(self, i: int) -> MultiPoly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.n, out)

    def div_linear(self, alpha) -> MultiPoly:
        """Exact quotient by the linear form sum alpha_j x_j."""
        p = next(i for i, a in enumerate(alpha) if not _zero(a))
        inv = 1 / alpha[p]
        order = [p] + [i for i in range(self.n) if i != p]
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            lead = max(rem, key=lambda e: tuple(e[i] for i in order))
            c = rem[lead]
            if lead[p] == 0:
                raise DivisionError("inexact division by a linear form")
            qe = list(lead)
            qe[p] -= 1
            qe = tuple(qe)
            qc = c * inv
            quot[qe] = qc
            for j, a in enumerate(alpha):
                if _zero(a):
                    continue
                e = list(qe)
                e[j] += 1
                e = tuple(e)
                v = rem.get(e)
                v = -(qc * a) if v is None else v - qc * a
                if _zero(v):
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return MultiPoly._raw(self.n, quot)

    def substitute_linear(self, forms) -> MultiPoly:
        """Replace x_i by the linear form forms[i] (a coefficient list)."""
        lin = [MultiPoly.linear(f) for f in forms]
        cache: dict = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = MultiPoly.monomial(self.n, (0,) * self.n) if k == 0 else power(i, k - 1) * lin[i]
            return cache[(i, k)]

        out = MultiPoly._raw(self.n, {})
        for e, c in self.terms.items():
            term = MultiPoly.monomial(self.n, (0,) * self.n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def map_coeffs(self, fn) -> MultiPoly:
        return MultiPoly(self.n, {e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        return f"MultiPoly({self.terms})"


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree d, lexicographically decreasing."""
    out = [e for e in itertools.product(range(d + 1), repeat=n) if sum(e) == d]
    return sorted(out, reverse=True)


def act(g: ReflectionGroup, w: int, f: MultiPoly) -> MultiPoly:
    """(w.f)(v) = f(w^{-1} v)."""
    cache = g.__dict__.setdefault("_inverse_matrices", {})
    if w not in cache:
        cache[w] = g.matrix(g.inverse(w))
    return f.substitute_linear(cache[w])


def act_vector(g: ReflectionGroup, w: int, y) -> list:
    return linalg.matvec(g.matrix(w), list(y))


# ---------------------------------------------------------------------------
# Dunkl operators
# ---------------------------------------------------------------------------


def coordinate_keys(g: ReflectionGroup) -> list[tuple[str, int]]:
    return param_coordinates(g)


def symbolic_c(g: ReflectionGroup) -> tuple[tuple[str, ...], dict]:
    """Formal parameters c_x1, c_y1, ... as LaurentPoly variables."""
    names = tuple(f"c_{n}" for n in coordinate_names(g))
    keys = coordinate_keys(g)
    return names, {k: LaurentPoly.var(names, nm) for k, nm in zip(keys, names)}


def dunkl_parts(g: ReflectionGroup, y, f: MultiPoly) -> tuple[MultiPoly, dict]:
    """y(f) = const + sum_k c_k part[k], with c_k the (H, chi) coordinates."""
    y = [CycloNum.coerce(v) for v in y]
    const = MultiPoly._raw(f.n, {})
    for i, yi in enumerate(y):
        if not _zero(yi):
            const = const + f.diff(i).scale(yi)
    forms = reflection_c_forms(g)
    parts: dict = {}
    for h in g.hyperplanes:
        ay = sum((a * b for a, b in zip(h.alpha, y)), CycloNum.rational(0))
        if _zero(ay):
            continue
        acc: dict = {}
        for r in h.reflections:
            diff = f - act(g, r, f)
            if diff.is_zero():
                continue
            for key, a in forms[r].items():
                acc[key] = acc[key] + diff.scale(a) if key in acc else diff.scale(a)
        for key, num in acc.items():
            if num.is_zero():
                continue
            q = num.div_linear(h.alpha).scale(-ay)
            parts[key] = parts[key] + q if key in parts else q
    return const, parts


def _coord_value(c: dict, key):
    v = c.get(key, 0)
    if isinstance(v, (int, Fraction, str)):
        return CycloNum.rational(Fraction(v))
    return v


def dunkl_apply(g: ReflectionGroup, c: dict, y, f: MultiPoly) -> MultiPoly:
    """Dunkl operator of y applied to f; c maps (orbit, j) to a number or a LaurentPoly."""
    const, parts = dunkl_parts(g, y, f)
    out = const
    for key, p in parts.items():
        out = out + p.scale(_coord_value(c, key))
    return out


def reflection_sum(g: ReflectionGroup, c: dict, f: MultiPoly) -> MultiPoly:
    """sum_r c_r (f - r.f)."""
    forms = reflection_c_forms(g)
    out = MultiPoly._raw(f.n, {})
    for r in g.reflections:
        cr = None
        for key, a in forms[r].items():
            term = _coord_value(c, key)
            term = term * a if isinstance(term, LaurentPoly) else a * term
            cr = term if cr is None else cr + term
        out = out + (f - act(g, r, f)).scale(cr)
    return out


def euler_check(g: ReflectionGroup, c: dict, f: MultiPoly) -> bool:
    """sum_i x_i y_i(f) == d f - sum_r c_r (f - r f) for homogeneous f of degree d."""
    if f.is_zero():
        return True
    d = f.degree()
    if f.homogeneous(d) != f:
        raise ValueError("euler_check needs a homogeneous polynomial")
    n = g.rank
    lhs = MultiPoly._raw(n, {})
    for i in range(n):
        y = [1 if k == i else 0 for k in range(n)]
        lhs = lhs + MultiPoly.var(n, i) * dunkl_apply(g, c, y, f)
    rhs = f.scale(CycloNum.rational(d)) - reflection_sum(g, c, f)
    return lhs == rhs


# ---------------------------------------------------------------------------
# pairing matrices
# ---------------------------------------------------------------------------


class DunklTables:
    """Matrices of y_i from degree k to k-1 in the monomial bases, split by coordinate."""

    def __init__(self, g: ReflectionGroup, max_degree: int):
        self.g = g
        self.n = g.rank
        self.keys = coordinate_keys(g)
        self.mons = [monomials(self.n, k) for k in range(max_degree + 1)]
        self.index = [{e: i for i, e in enumerate(ms)} for ms in self.mons]
        self.const: list = [None]
        self.parts: list = [None]
        self.max_degree = 0
        self.extend(max_degree)

    def extend(self, max_degree: int):
        while len(self.mons) <= max_degree:
            k = len(self.mons)
            self.mons.append(monomials(self.n, k))
            self.index.append({e: i for i, e in enumerate(self.mons[k])})
        for k in range(self.max_degree + 1, max_degree + 1):
            rows, cols = len(self.mons[k - 1]), len(self.mons[k])
            zero = CycloNum.rational(0)
            const_k, parts_k = [], []
            for i in range(self.n):
                a = [[zero] * cols for _ in range(rows)]
                b = {key: [[zero] * cols for _ in range(rows)] for key in self.keys}
                y = [1 if t == i else 0 for t in range(self.n)]
                for j, e in enumerate(self.mons[k]):
                    cst, parts = dunkl_parts(self.g, y, MultiPoly.monomial(self.n, e))
                    for e2, v in cst.terms.items():
                        a[self.index[k - 1][e2]][j] = v
                    for key, p in parts.items():
                        for e2, v in p.terms.items():
                            b[key][self.index[k - 1][e2]][j] = v
                const_k.append(a)
                parts_k.append(b)
            self.const.append(const_k)
            self.parts.append(parts_k)
        self.max_degree = max(self.max_degree, max_degree)

    def rational(self) -> bool:
        return all(
            v.is_rational()
            for k in range(1, self.max_degree + 1)
            for i in range(self.n)
            for mat in [self.const[k][i]] + list(self.parts[k][i].values())
            for row in mat
            for v in row
        )

    def _converted(self, k: int, i: int, scalar):
        """(const, parts) of y_i at degree k with entries passed through scalar, cached."""
        cache = self.__dict__.setdefault("_conv", {})
        key = (k, i, scalar)
        if key not in cache:
            const = [[scalar(v) for v in row] for row in self.const[k][i]]
            parts = {}
            for name, b in self.parts[k][i].items():
                entries = [(r, s, scalar(v)) for r, row in enumerate(b) for s, v in enumerate(row) if v]
                if entries:
                    parts[name] = entries
            cache[key] = (const, parts)
        return cache[key]

    def operator(self, k: int, i: int, c: dict, scalar=None):
        """Matrix of y_i : degree k -> k-1 at parameter c (scalar converts entries)."""
        if scalar is None:
            const, parts = self._converted(k, i, _identity)
        else:
            const, parts = self._converted(k, i, scalar)
        out = [list(row) for row in const]
        for key, entries in parts.items():
            val = c.get(key, 0)
            if isinstance(val, LaurentPoly):
                for r, s, v in entries:
                    out[r][s] = out[r][s] + val * v
                continue
            if not isinstance(val, (CycloNum, LaurentPoly)):
                val = CycloNum.rational(Fraction(val))
            val = scalar(val) if scalar else val
            if not val:
                continue
            for r, s, v in entries:
                out[r][s] = out[r][s] + val * v
        return out

    def pairing_matrices(self, c: dict, max_degree: int, scalar=None) -> list:
        """M_d[I][J] = constant term of y^I(x^J) for d = 0..max_degree."""
        self.extend(max_degree)
        one = scalar(CycloNum.rational(1)) if scalar else CycloNum.rational(1)
        if any(isinstance(v, LaurentPoly) for v in c.values()):
            names = next(v for v in c.values() if isinstance(v, LaurentPoly)).variables
            one = LaurentPoly.const(names, 1)
        rows = {(0,) * self.n: [one]}
        out = [[[one]]]
        for d in range(1, max_degree + 1):
            ops = [self.operator(d, i, c, scalar) for i in range(self.n)]
            new_rows = {}
            for e in self.mons[d]:
                i = next(t for t, x in enumerate(e) if x)
                prev = list(e)
                prev[i] -= 1
                prev_row = rows[tuple(prev)]
                op = ops[i]
                row = []
                for s in range(len(self.mons[d])):
                    acc = None
                    for r, pr in enumerate(prev_row):
                        v = op[r][s]
                        if _zero(pr) or _zero(v):
                            continue
                        t = pr * v
                        acc = t if acc is None else acc + t
                    row.append(acc if acc is not None else one * 0)
                new_rows[e] = row
            rows = new_rows
            out.append([rows[e] for e in self.mons[d]])
        return out


def _identity(v):
    return v


def dunkl_tables(g: ReflectionGroup, max_degree: int) -> DunklTables:
    t = g.__dict__.get("_dunkl_tables")
    if t is None:
        t = DunklTables(g, max_degree)
        g.__dict__["_dunkl_tables"] = t
    else:
        t.extend(max_degree)
    return t


def pairing_matrix(g: ReflectionGroup, c: dict, d: int):
    return dunkl_tables(g, d).pairing_matrices(c, d)[d]


# ---------------------------------------------------------------------------
# rational functions in c with linear denominators
# ---------------------------------------------------------------------------


def _primitive_linear(form: LaurentPoly) -> tuple[LaurentPoly, Fraction]:
    """Scale a rational linear form to integer coprime coefficients, constant > 0
    (or first coefficient > 0 when there is no constant). Returns (form, scale)."""
    coeffs = []
    for e, v in form.terms.items():
        if not v.is_rational():
            return form, Fraction(1)
        coeffs.append((e, v.as_fraction()))
    den = 1
    for _, v in coeffs:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = {e: int(v * den) for e, v in coeffs}
    g = 0
    for v in ints.values():
        g = math.gcd(g, abs(v))
    zero = (0,) * len(form.variables)
    lead = ints.get(zero)
    if lead is None:
        lead = ints[max(ints)]
    sign = 1 if lead > 0 else -1
    s = Fraction(sign * den, g)
    return form * s, s


@dataclass
class RationalVector:
    """A vector of polynomials in c over a common denominator prod(forms^k)."""

    numer: list  # LaurentPoly entries
    denom: dict = field(default_factory=dict)  # primitive linear LaurentPoly -> multiplicity

    def reduce(self) -> RationalVector:
        numer = list(self.numer)
        denom = dict(self.denom)
        for f in list(denom):
            while denom[f] and all(v.is_zero() or f.divides(v) for v in numer):
                numer = [v if v.is_zero() else v.exact_div(f) for v in numer]
                denom[f] -= 1
            if not denom[f]:
                del denom[f]
        return RationalVector(numer, denom)

    def denominator_poly(self, variables) -> LaurentPoly:
        out = LaurentPoly.const(variables, 1)
        for f, k in self.denom.items():
            out = out * f**k
        return out

    def entry(self, i: int):
        """(numerator, denominator) of entry i."""
        num = self.numer[i]
        return num, self.denominator_poly(num.variables)


# ---------------------------------------------------------------------------
# W-exponential
# ---------------------------------------------------------------------------


@dataclass
class ExpSeries:
    lam: list
    max_degree: int
    monomials: list  # per degree, exponent vectors
    components: list  # per degree: RationalVector (symbolic) or coefficient list (numeric)
    symbolic: bool
    c_variables: tuple = ()
    denominator_factors: list = field(default_factory=list)  # forms d - c_F met by the recursion
    method: str = ""
    degree_factors: list = field(default_factory=list)  # per degree, the forms d - c_F used
    reduced_factors: list = field(default_factory=list)  # primitive forms left after cancellation

    def component_poly(self, d: int) -> MultiPoly:
        """g_d as a MultiPoly (numeric series only)."""
        if self.symbolic:
            raise ValueError("symbolic components are rational functions; use coefficient()")
        n = len(self.lam)
        return MultiPoly(n, dict(zip(self.monomials[d], self.components[d])))

    def truncated(self, degree: int) -> MultiPoly:
        out = MultiPoly(len(self.lam))
        for d in range(degree + 1):
            out = out + self.component_poly(d)
        return out

    def coefficient(self, exp):
        """(numerator, denominator) in c of the coefficient of x^exp."""
        d = sum(exp)
        vec = self.components[d]
        i = self.monomials[d].index(tuple(exp))
        if self.symbolic:
            return vec.entry(i)
        return vec[i]


def _lambda_vector(lam, mons):
    out = []
    for e in mons:
        v = CycloNum.rational(1)
        for li, k in zip(lam, e):
            if k:
                v = v * li**k
        out.append(v)
    return out


def exp_series_numeric(g: ReflectionGroup, lam, max_degree: int, c: dict, degrees=None) -> ExpSeries:
    """Per-degree solve M_d z = (lambda^I) at numeric c.

    Raises SingularPairing when some degree is inconsistent (a certified pole);
    a singular but consistent degree is solved by any particular solution and
    recorded in ``singular_degrees``.
    """
    lam = [CycloNum.coerce(v) for v in lam]
    tables = dunkl_tables(g, max_degree)
    rational = tables.rational() and all(v.is_rational() for v in lam) and all(
        not isinstance(v, CycloNum) or v.is_rational() for v in c.values()
    )
    scalar = _to_fast if rational else None
    mats = tables.pairing_matrices(c, max_degree, scalar)
    comps, singular = [], []
    for d in range(max_degree + 1):
        mons = tables.mons[d]
        if degrees is not None and d not in degrees and d:
            comps.append(None)
            continue
        rhs = _lambda_vector(lam, mons)
        if rational:
            rhs = [_to_fast(v) for v in rhs]
        x, ok, full = linalg.solve(mats[d], rhs)
        if not ok:
            raise SingularPairing(d)
        if not full:
            singular.append(d)
        comps.append([_from_fast(v) for v in x] if rational else x)
    series = ExpSeries(lam, max_degree, [tables.mons[d] for d in range(max_degree + 1)], comps, False, method="solve")
    series.singular_degrees = singular
    return series


def exp_series_symbolic(g: ReflectionGroup, lam, max_degree: int, chars: CharacterData | None = None, seed: int = 0) -> ExpSeries:
    """g_d = sum_F (d - c_F)^{-1} e_F(l_lambda g_{d-1}), l_lambda = sum_i lambda_i x_i."""
    if g.rank > SYMBOLIC_MAX_RANK:
        raise ValueError(f"symbolic series capped at rank {SYMBOLIC_MAX_RANK}")
    lam = [CycloNum.coerce(v) for v in lam]
    chars = chars or isotypic_projectors(g, seed=seed)
    names, cvars = symbolic_c(g)
    n = g.rank
    mons = [monomials(n, d) for d in range(max_degree + 1)]
    index = [{e: i for i, e in enumerate(ms)} for ms in mons]
    # group irreps by their c-function
    by_form: dict = {}
    for f in range(len(chars.irreps)):
        form = c_function(g, chars, f)
        cf = LaurentPoly.const(names, 0)
        for key, a in form.items():
            cf = cf + cvars[key] * a
        by_form.setdefault(cf, []).append(f)
    one = LaurentPoly.const(names, 1)
    comps = [RationalVector([one])]
    factors: list = []
    encountered: list = []
    per_degree: list = [[]]
    for d in range(1, max_degree + 1):
        prev = comps[-1]
        # l_lambda * g_{d-1} on the degree-d basis
        lifted = [LaurentPoly.const(names, 0)] * len(mons[d])
        for e, v in zip(mons[d - 1], prev.numer):
            if v.is_zero():
                continue
            for i, li in enumerate(lam):
                if _zero(li):
                    continue
                e2 = list(e)
                e2[i] += 1
                j = index[d][tuple(e2)]
                lifted[j] = lifted[j] + v * li
        proj = _projectors_on_degree(g, chars, d, mons[d], index[d])
        lin_forms = {}
        for cf in by_form:
            form = LaurentPoly.const(names, d) - cf
            prim, s = _primitive_linear(form) if not form.is_constant() else (form, Fraction(1))
            lin_forms[cf] = (form, prim, s)
        new_denom = dict(prev.denom)
        extra = [lin_forms[cf][1] for cf in by_form if not lin_forms[cf][0].is_constant()]
        for f in extra:
            new_denom[f] = new_denom.get(f, 0) + 1
        total = [LaurentPoly.const(names, 0)] * len(mons[d])
        used: list = []
        for cf, irr in by_form.items():
            mat = None
            for f in irr:
                p = proj[f]
                mat = p if mat is None else [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(mat, p)]
            piece = [sum((lifted[k] * mat[j][k] for k in range(len(lifted)) if mat[j][k]), LaurentPoly.const(names, 0)) for j in range(len(lifted))]
            form, prim, s = lin_forms[cf]
            if any(not v.is_zero() for v in piece):
                used.append(form)
                if form not in encountered:
                    encountered.append(form)
            if form.is_constant():
                scale = one * (1 / form.constant_term())
                cofactor = one
                for f2 in extra:
                    cofactor = cofactor * f2
            else:
                # 1/form = s/prim
                scale = one * s
                cofactor = one
                for f2 in extra:
                    if f2 != prim:
                        cofactor = cofactor * f2
            mult = cofactor * scale
            total = [t + v * mult for t, v in zip(total, piece)]
        vec = RationalVector(total, new_denom).reduce()
        comps.append(vec)
        per_degree.append(used)
        for f in vec.denom:
            if f not in factors:
                factors.append(f)
    return ExpSeries(lam, max_degree, mons, comps, True, names, encountered, "recursion", per_degree, factors)


def _projectors_on_degree(g: ReflectionGroup, chars: CharacterData, d: int, mons, index) -> list:
    """Matrices of e_F on degree-d polynomials (columns: images of basis monomials)."""
    cache = g.__dict__.setdefault("_deg_projectors", {})
    key = (id(chars), d)
    if key in cache:
        return cache[key]
    n = g.rank
    size = len(mons)
    zero = CycloNum.rational(0)
    images = []
    for w in range(g.order):
        cols = []
        for e in mons:
            img = act(g, w, MultiPoly.monomial(n, e))
            col = [zero] * size
            for e2, v in img.terms.items():
                col[index[e2]] = v
            cols.append(col)
        images.append(cols)
    out = []
    for f in range(len(chars.irreps)):
        proj = chars.projector(f)
        mat = [[zero] * size for _ in range(size)]
        for w, a in proj.items():
            cols = images[w]
            for k in range(size):
                for j in range(size):
                    v = cols[k][j]
                    if v:
                        mat[j][k] = mat[j][k] + a * v
        out.append(mat)
    cache[key] = out
    return out


def exp_series(g: ReflectionGroup, lam, max_degree: int, c: dict | None = None, **kw) -> ExpSeries:
    """Symbolic series (c=None) by the isotypic recursion, or numeric by per-degree solves."""
    if c is None:
        return exp_series_symbolic(g, lam, max_degree, **kw)
    return exp_series_numeric(g, lam, max_degree, c)


def exp_series_symbolic_solve(g: ReflectionGroup, lam, max_degree: int):
    """Independent symbolic path: solve M_d z = lambda^I over Q(c) with sympy.

    Returns per-degree lists of sympy rational functions. Needs rational data.
    """
    import sympy
    from sympy.polys.matrices import DomainMatrix

    from .hecke import _to_sympy as laurent_to_sympy

    names, cvars = symbolic_c(g)
    syms = sympy.symbols(names)
    tables = dunkl_tables(g, max_degree)
    mats = tables.pairing_matrices(cvars, max_degree)
    field_ = sympy.QQ.frac_field(*syms)
    out = []
    for d in range(max_degree + 1):
        rhs = [laurent_to_sympy(LaurentPoly.const(names, v), syms) for v in _lambda_vector([CycloNum.coerce(x) for x in lam], tables.mons[d])]
        m = [[laurent_to_sympy(v if isinstance(v, LaurentPoly) else LaurentPoly.const(names, v), syms) for v in row] for row in mats[d]]
        size = len(m)
        dm = DomainMatrix.from_list_sympy(size, size, m).convert_to(field_)
        b = DomainMatrix.from_list_sympy(size, 1, [[v] for v in rhs]).convert_to(field_)
        sol = dm.lu_solve(b)
        out.append([field_.to_sympy(sol[i, 0].element) for i in range(size)])
    return syms, out


def denominator_bound(g: ReflectionGroup, chars: CharacterData, d: int) -> LaurentPoly:
    """prod over F and 1 <= m <= d of (m - c_F), skipping constants."""
    names, cvars = symbolic_c(g)
    out = LaurentPoly.const(names, 1)
    for f in range(len(chars.irreps)):
        form = c_function(g, chars, f)
        cf = LaurentPoly.const(names, 0)
        for key, a in form.items():
            cf = cf + cvars[key] * a
        for m in range(1, d + 1):
            out = out * (LaurentPoly.const(names, m) - cf)
    return out


# ---------------------------------------------------------------------------
# singular hyperplanes
# ---------------------------------------------------------------------------


@dataclass
class SingularHyperplane:
    form: LaurentPoly  # primitive linear form in c; the hyperplane is form = 0
    degree: int  # first degree where it appeared
    matches: list  # (m, irrep index) with form proportional to m - c_F

    def describe(self) -> str:
        const = self.form.constant_term()
        lin = self.form - const
        return f"{-lin} = {const}"


def singular_hyperplanes(g: ReflectionGroup, lam, max_degree: int, chars: CharacterData | None = None, seed: int = 0) -> dict:
    """Denominator hyperplanes of the symbolic series, "up to degree D"."""
    chars = chars or isotypic_projectors(g, seed=seed)
    series = exp_series_symbolic(g, lam, max_degree, chars=chars)
    names, cvars = symbolic_c(g)
    cforms = []
    for f in range(len(chars.irreps)):
        cf = LaurentPoly.const(names, 0)
        for key, a in c_function(g, chars, f).items():
            cf = cf + cvars[key] * a
        cforms.append(cf)
    out = []
    for d in range(1, max_degree + 1):
        for f in series.components[d].denom:
            if any(h.form == f for h in out):
                continue
            matches = []
            for m in range(1, max_degree + 1):
                for k, cf in enumerate(cforms):
                    form = LaurentPoly.const(names, m) - cf
                    if not form.is_constant() and _primitive_linear(form)[0] == f:
                        matches.append((m, k))
            out.append(SingularHyperplane(f, d, matches))
    return {"up_to_degree": max_degree, "hyperplanes": out, "series": series}


# ---------------------------------------------------------------------------
# Dunkl-de Rham check
# ---------------------------------------------------------------------------


def _wedge_basis(n: int, p: int):
    return list(itertools.combinations(range(n), p))


def derham_operator(g: ReflectionGroup, c: dict, d: int, p: int):
    """Matrix of d_c o partial + partial o d_c on C[V]^d (x) Lambda^p V*."""
    n = g.rank
    tables = dunkl_tables(g, d + 1)
    basis = [(e, s) for e in tables.mons[d] for s in _wedge_basis(n, p)]
    index = {b: i for i, b in enumerate(basis)}
    zero = CycloNum.rational(0)

    def add_form(acc, e, s, coeff):
        acc[(e, s)] = acc.get((e, s), zero) + coeff

    def wedge_front(i, s):
        """dx_i ^ dx_s as (sign, sorted tuple) or None."""
        if i in s:
            return None
        t = (i,) + s
        sign = 1
        lst = list(t)
        for a in range(len(lst)):
            for b in range(len(lst) - 1 - a):
                if lst[b] > lst[b + 1]:
                    lst[b], lst[b + 1] = lst[b + 1], lst[b]
                    sign = -sign
        return sign, tuple(lst)

    def d_c(form):
        out = {}
        for (e, s), a in form.items():
            for i in range(n):
                w = wedge_front(i, s)
                if w is None:
                    continue
                y = [1 if k == i else 0 for k in range(n)]
                img = dunkl_apply(g, c, y, MultiPoly.monomial(n, e))
                for e2, v in img.terms.items():
                    add_form(out, e2, w[1], a * v * w[0])
        return out

    def koszul(form):
        out = {}
        for (e, s), a in form.items():
            for j, i in enumerate(s):
                e2 = list(e)
                e2[i] += 1
                rest = s[:j] + s[j + 1 :]
                add_form(out, tuple(e2), rest, a * (1 if j % 2 == 0 else -1))
        return out

    size = len(basis)
    mat = [[zero] * size for _ in range(size)]
    for col, b in enumerate(basis):
        unit = {b: CycloNum.rational(1)}
        total = {}
        for k, v in d_c(koszul(unit)).items():
            total[k] = total.get(k, zero) + v
        for k, v in koszul(d_c(unit)).items():
            total[k] = total.get(k, zero) + v
        for k, v in total.items():
            if v:
                mat[index[k]][col] = v
    return basis, mat


def _form_action(g: ReflectionGroup, w: int, basis, index):
    """Matrix of w on C[V]^d (x) Lambda^p V* in the given basis."""
    n = g.rank
    m = g.matrix(g.inverse(w))
    zero = CycloNum.rational(0)
    size = len(basis)
    mat = [[zero] * size for _ in range(size)]
    for col, (e, s) in enumerate(basis):
        poly = act(g, w, MultiPoly.monomial(n, e))
        # w.dx_i = sum_j m_ij dx_j ; wedge of images, expanded
        forms = {(): CycloNum.rational(1)}
        for i in s:
            new = {}
            for t, a in forms.items():
                for j in range(n):
                    v = m[i][j]
                    if not v or j in t:
                        continue
                    lst = list(t) + [j]
                    sign = 1
                    for x in range(len(lst)):
                        for y in range(len(lst) - 1 - x):
                            if lst[y] > lst[y + 1]:
                                lst[y], lst[y + 1] = lst[y + 1], lst[y]
                                sign = -sign
                    key = tuple(lst)
                    new[key] = new.get(key, zero) + a * v * sign
            forms = new
        for e2, a in poly.terms.items():
            for t, b in forms.items():
                if b:
                    mat[index[(e2, t)]][col] = mat[index[(e2, t)]][col] + a * b
    return mat


def derham_check(g: ReflectionGroup, c: dict, d: int, p: int, chars: CharacterData | None = None, seed: int = 0) -> bool:
    """d_c o partial + partial o d_c acts by d + p - c_F on every F-isotypic block."""
    chars = chars or isotypic_projectors(g, seed=seed)
    basis, op = derham_operator(g, c, d, p)
    if not basis:
        return True
    index = {b: i for i, b in enumerate(basis)}
    actions = [_form_action(g, w, basis, index) for w in range(g.order)]
    size = len(basis)
    zero = CycloNum.rational(0)
    for f in range(len(chars.irreps)):
        proj = [[zero] * size for _ in range(size)]
        for w, a in chars.projector(f).items():
            for i in range(size):
                for j in range(size):
                    v = actions[w][i][j]
                    if v:
                        proj[i][j] = proj[i][j] + a * v
        cf = zero
        for key, a in c_function(g, chars, f).items():
            cf = cf + a * _coord_value(c, key)
        scalar = CycloNum.rational(d + p) - cf
        lhs = linalg.matmul(op, proj)
        rhs = [[v * scalar for v in row] for row in proj]
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# lambda for a stratum
# ---------------------------------------------------------------------------


def stabilizer_of_covector(g: ReflectionGroup, lam) -> list[int]:
    lam = [CycloNum.coerce(v) for v in lam]
    return [w for w in range(g.order) if linalg.vecmat(lam, g.matrix(w)) == lam]


def choose_lambda(g: ReflectionGroup, stratum, seed: int = 0, tries: int = 20) -> list:
    """Random small-integer covector fixed by W_S with stabilizer exactly W_S."""
    rng = np.random.default_rng(seed)
    n = g.rank
    one = CycloNum.rational(1)
    gens = [r for r in stratum.parabolic if r in set(g.reflections)] or [0]
    stacked_cols = []
    for r in gens:
        m = g.matrix(r)
        stacked_cols.append([[m[i][j] - (one if i == j else 0) for j in range(n)] for i in range(n)])
    # lambda (w - 1) = 0 for all generators: left nullspace of [w1-1 | w2-1 | ...]
    wide = [sum((mat[i] for mat in stacked_cols), []) for i in range(n)]
    basis = linalg.left_nullspace(wide)
    target = sorted(stratum.parabolic)
    if not basis:
        lam = [CycloNum.rational(0)] * n
        if stabilizer_of_covector(g, lam) == target:
            return lam
        raise ValueError("no covector with the required stabilizer")
    for _ in range(tries):
        coeffs = rng.integers(-9, 10, size=len(basis))
        lam = [sum((b[i] * int(a) for a, b in zip(coeffs, basis)), CycloNum.rational(0)) for i in range(n)]
        if stabilizer_of_covector(g, lam) == target:
            return lam
    raise ValueError("could not find a covector with stabilizer exactly W_S")


def stratum_lambdas(g: ReflectionGroup, seed: int = 0) -> list:
    return [choose_lambda(g, st, seed=seed) for st in strata(g)]
