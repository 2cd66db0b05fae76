"""Deciding which strata lie in the support of L_c(1).

Two routes. The Schur route excludes a stratum S when a cyclotomic factor of
|W : W_S|_q vanishes at q_c on a positive hyperplane through c. The
exponential route picks lambda with stabilizer W_S and looks for an
inconsistent pairing solve, which certifies a pole of the normalized
W-exponential at c.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .characters import c_function, isotypic_projectors
from .cyclo import CycloFactor, CycloNum, _lcm
from .dunkl import SingularPairing, choose_lambda, exp_series_numeric
from .groups import ReflectionGroup, param_coordinates, strata
from .hecke import Gr1nParams, Undecidable, gr1n_orbit_labels, q_index

log = logging.getLogger(__name__)

_KEY_RE = re.compile(r"^(?:c_)?([A-Za-z]+)\.?(\d+)$")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass
class ParamPoint:
    """Rational coordinates c_{H,chi}, keyed by (orbit label, j)."""

    coords: dict

    @classmethod
    def parse(cls, g: ReflectionGroup, value) -> ParamPoint:
        """From a number (all coordinates equal), or a mapping like {"x.1": "1/2", "y1": 0}."""
        keys = param_coordinates(g)
        if not isinstance(value, dict):
            v = _frac(value)
            return cls({k: v for k in keys})
        coords = {k: Fraction(0) for k in keys}
        for name, v in value.items():
            m = _KEY_RE.match(str(name).strip())
            if not m:
                raise ValueError(f"bad coordinate name {name!r}")
            key = (m.group(1), int(m.group(2)))
            if key not in coords:
                raise ValueError(f"unknown coordinate {name!r}; expected one of {[f'{a}.{b}' for a, b in keys]}")
            coords[key] = _frac(v)
        return cls(coords)

    @classmethod
    def from_gr1n(cls, g: ReflectionGroup, params: Gr1nParams) -> ParamPoint:
        """(c_0, d_j) to c_{H,chi}: c on the transposition orbit is c_0, x_j = (d_0 - d_j)/r."""
        diag, trans = gr1n_orbit_labels(g)
        coords = {k: Fraction(0) for k in param_coordinates(g)}
        for (label, j), v in params.orbit_coordinates().items():
            real = diag if label == "x" else trans
            if real is not None and (real, j) in coords:
                coords[(real, j)] = v
        return cls(coords)

    @property
    def denominator_lcm(self) -> int:
        out = 1
        for v in self.coords.values():
            out = _lcm(out, v.denominator)
        return out

    def angles(self) -> dict:
        """Variable name -> c value; q_{H,chi} = exp(2 pi i c_{H,chi})."""
        return {f"{a}{j}": v for (a, j), v in self.coords.items()}

    def q_values(self) -> dict:
        return {f"{a}{j}": CycloNum.zeta(v.denominator, v.numerator) for (a, j), v in self.coords.items()}

    def shifted(self, shift: dict) -> ParamPoint:
        return ParamPoint({k: v + int(shift.get(k, 0)) for k, v in self.coords.items()})

    def to_json(self) -> dict:
        return {f"{a}.{j}": _frac_str(v) for (a, j), v in sorted(self.coords.items())}


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


@dataclass
class VanishingCondition:
    """sum a_k c_k = theta (mod 1), from a factor (monomial - exp(2 pi i theta))."""

    coeffs: dict  # variable name -> int
    offset: Fraction

    @classmethod
    def from_factor(cls, f: CycloFactor) -> VanishingCondition:
        return cls({v: a for v, a in zip(f.variables, f.monomial) if a}, Fraction(f.angle) % 1)

    def value(self, angles: dict) -> Fraction:
        return sum((a * angles[v] for v, a in self.coeffs.items()), Fraction(0))

    def holds(self, angles: dict) -> bool:
        return (self.value(angles) - self.offset).denominator == 1

    def to_json(self) -> dict:
        return {"coeffs": dict(sorted(self.coeffs.items())), "offset": _frac_str(self.offset)}


def positivity(cond: VanishingCondition, value: Fraction) -> str:
    """'positive', 'not positive' or 'indeterminate' for the hyperplane sum a c' = value."""
    signs = {a > 0 for a in cond.coeffs.values()}
    if len(signs) > 1:
        return "indeterminate"
    if not signs:
        return "not positive"
    if signs == {True}:
        return "positive" if value > 0 else "not positive"
    return "positive" if value < 0 else "not positive"


@dataclass
class Witness:
    condition: VanishingCondition
    value: Fraction
    verdict: str

    def to_json(self) -> dict:
        return {"condition": self.condition.to_json(), "value": _frac_str(self.value), "verdict": self.verdict}


@dataclass
class StratumVerdict:
    orbit_id: int
    name: str
    dimension: int
    in_support: bool
    witnesses: list = field(default_factory=list)
    status: str = ""  # exponential route: "excluded (certified)" / "not excluded up to D"
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "stratum": self.orbit_id,
            "name": self.name,
            "dimension": self.dimension,
            "in_support": self.in_support,
            "witnesses": [w.to_json() for w in self.witnesses],
        }
        if self.status:
            out["status"] = self.status
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


@dataclass
class SupportResult:
    point: ParamPoint
    verdicts: list
    route: str
    degree: int | None = None

    @property
    def support(self) -> list[int]:
        return [v.orbit_id for v in self.verdicts if v.in_support]

    @property
    def finite_dimensional(self) -> bool:
        """Only the origin stratum (W_S = W, i.e. V^W) survives."""
        bottom = min(v.dimension for v in self.verdicts)
        return all(not v.in_support for v in self.verdicts if v.dimension > bottom)

    def is_downward_closed(self, g: ReflectionGroup) -> bool:
        inside = set(self.support)
        return all(set(st.below) <= inside for st in strata(g) if st.orbit_id in inside)

    def to_json(self) -> dict:
        out = {
            "route": self.route,
            "parameters": self.point.to_json(),
            "strata": [v.to_json() for v in self.verdicts],
            "finite_dimensional": self.finite_dimensional,
        }
        if self.degree is not None:
            out["up_to_degree"] = self.degree
        return out


# ---------------------------------------------------------------------------
# Schur route
# ---------------------------------------------------------------------------


def schur_witnesses(schur, point: ParamPoint) -> list[Witness]:
    angles = point.angles()
    out = []
    for f in schur.vanishing_factors(angles):
        cond = VanishingCondition.from_factor(f)
        v = cond.value(angles)
        out.append(Witness(cond, v, positivity(cond, v)))
    return out


def support_via_schur(g: ReflectionGroup, c: ParamPoint, schur_data: dict | None = None, bound: int = 60) -> SupportResult:
    """schur_data optionally maps stratum orbit ids to SchurElements (table data)."""
    verdicts = []
    for st in strata(g):
        if schur_data and st.orbit_id in schur_data:
            schur = schur_data[st.orbit_id]
        else:
            try:
                schur = q_index(g, st, bound)
            except Undecidable as exc:
                raise Undecidable(f"undecidable: provide table data ({exc})") from exc
        wits = schur_witnesses(schur, c)
        excluded = any(w.verdict == "positive" for w in wits)
        warnings = []
        if not excluded and any(w.verdict == "indeterminate" for w in wits):
            warnings.append("positivity-indeterminate factor; defaulting to in support")
            log.warning("stratum %s: mixed-sign vanishing factor at %s", st.name, c.to_json())
        verdicts.append(StratumVerdict(st.orbit_id, st.name, st.dimension, not excluded, wits, warnings=warnings))
    return SupportResult(c, verdicts, "schur")


def finite_dimensional(g: ReflectionGroup, c: ParamPoint, **kw) -> bool:
    return support_via_schur(g, c, **kw).finite_dimensional


# ---------------------------------------------------------------------------
# G(r,1,n) closed criterion
# ---------------------------------------------------------------------------


def _cond_hit(value: Fraction, j: int, r: int) -> bool:
    """value = k for an integer k > 0 with k = -j mod r."""
    return value.denominator == 1 and value > 0 and (value.numerator + j) % r == 0


def gr1n_finite_dim_criterion(params: Gr1nParams) -> bool:
    """Conditions (a) or (b) for L_c(1) of G(r,1,n) to be finite dimensional."""
    r, n = params.r, params.n
    if r < 2:
        raise ValueError("criterion stated for r >= 2 only")
    c0, d = params.c0, params.d

    def hit(m: int) -> bool:
        return any(_cond_hit(d[0] - d[j] + r * m * c0, j, r) for j in range(1, r))

    if hit(n - 1):
        return True
    if c0 <= 0 or n == 1:
        return False
    den = c0.denominator
    if n % den:
        return False
    return any(hit(m) for m in range(n - den, n))


# ---------------------------------------------------------------------------
# exponential route
# ---------------------------------------------------------------------------


def c_forms(g: ReflectionGroup, seed: int = 0) -> list[dict]:
    cache = g.__dict__.setdefault("_cf_forms", {})
    if seed not in cache:
        chars = isotypic_projectors(g, seed=seed)
        cache[seed] = [c_function(g, chars, f) for f in range(len(chars.irreps))]
    return cache[seed]


def _cf_values(g: ReflectionGroup, c: ParamPoint, seed: int = 0) -> list:
    out = []
    for form in c_forms(g, seed):
        total = CycloNum.rational(0)
        for key, a in form.items():
            total = total + a * c.coords.get(key, Fraction(0))
        out.append(total)
    return out


def first_singular_degree(g: ReflectionGroup, c: ParamPoint, max_degree: int, seed: int = 0) -> int | None:
    """Least m <= D with m = c_F(c) for some F; the pairing is invertible below it."""
    hits = [int(v.as_fraction()) for v in _cf_values(g, c, seed) if v.is_rational() and v.as_fraction().denominator == 1]
    hits = [m for m in hits if 1 <= m <= max_degree]
    return min(hits) if hits else None


def support_via_exponential(g: ReflectionGroup, c: ParamPoint, max_degree: int, seed: int = 0) -> SupportResult:
    """Per stratum: an inconsistent pairing solve certifies exclusion."""
    start = first_singular_degree(g, c, max_degree, seed)
    coords = {k: v for k, v in c.coords.items()}
    verdicts = []
    for st in strata(g):
        status = f"not excluded up to {max_degree}"
        in_support = True
        if len(st.parabolic) < g.order and start is not None:
            lams = g.__dict__.setdefault("_lambdas", {})
            if (st.orbit_id, seed) not in lams:
                lams[(st.orbit_id, seed)] = choose_lambda(g, st, seed=seed)
            lam = lams[(st.orbit_id, seed)]
            try:
                exp_series_numeric(g, lam, max_degree, coords, degrees=range(start, max_degree + 1))
            except SingularPairing as exc:
                status = f"excluded (certified, degree {exc.degree})"
                in_support = False
        verdicts.append(StratumVerdict(st.orbit_id, st.name, st.dimension, in_support, status=status))
    return SupportResult(c, verdicts, "exponential", max_degree)


def routes_agree(schur: SupportResult, expo: SupportResult) -> bool:
    """Exponential exclusions are a subset of Schur exclusions."""
    out_s = {v.orbit_id for v in schur.verdicts if not v.in_support}
    out_e = {v.orbit_id for v in expo.verdicts if not v.in_support}
    return out_e <= out_s


# ---------------------------------------------------------------------------
# q-binomial oracle for S_n
# ---------------------------------------------------------------------------


def qbinomial_vanishes(n: int, k: int, c: Fraction) -> bool:
    """[n choose k]_q = 0 at q = exp(2 pi i c): count primitive d-th roots in numerator vs denominator."""
    d = Fraction(c).denominator
    if d == 1:
        return False
    top = sum(1 for m in range(1, n + 1) if m % d == 0)
    bot = sum(1 for m in range(1, k + 1) if m % d == 0) + sum(1 for m in range(1, n - k + 1) if m % d == 0)
    return top > bot


def sn_finite_dim_oracle(n: int, c: Fraction) -> bool:
    """Every maximal parabolic q-index [n choose k] vanishes at q_c with c > 0."""
    c = Fraction(c)
    return c > 0 and all(qbinomial_vanishes(n, k, c) for k in range(1, n))


def expected_sn_values(n: int, lo: Fraction, hi: Fraction, max_den: int) -> set:
    return {Fraction(m, n) for m in range(1, int(hi * n) + 1) if gcd(m, n) == 1 and lo < Fraction(m, n) <= hi}


def rationals(lo: Fraction, hi: Fraction, max_den: int, include_lo: bool = True) -> list[Fraction]:
    out = set()
    for q in range(1, max_den + 1):
        for p in range(int(lo * q) - 1, int(hi * q) + 2):
            v = Fraction(p, q)
            if (lo <= v if include_lo else lo < v) and v <= hi:
                out.add(v)
    return sorted(out)
