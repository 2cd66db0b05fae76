"""Exact arithmetic in cyclotomic fields and Laurent polynomials over them.

A :class:`CycloNum` is an element of Q(zeta_N) stored in the power basis
1, zeta_N, ..., zeta_N^(phi(N)-1) modulo the N-th cyclotomic polynomial.
Mixed-order arithmetic lifts both operands to the lcm of their orders.

A :class:`LaurentPoly` is a sparse polynomial in named variables, with
integer (possibly negative) exponents and :class:`CycloNum` coefficients.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "CycloNum",
    "LaurentPoly",
    "CycloFactor",
    "DivisionError",
    "cyclotomic_coeffs",
    "phi_poly",
    "phi_roots",
    "factor_unity_roots",
    "factor_cyclotomic",
    "eval_laurent",
    "normalize_unit",
    "equal_up_to_unit",
    "root_of_unity",
]


class DivisionError(ArithmeticError):
    """Raised when an exact division is impossible (or divides by zero)."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    # x^n - 1 divided by all Phi_d for proper divisors d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_divexact(num, list(cyclotomic_coeffs(d)))
    return tuple(num)


def _int_poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + dn] // den[dn]
        out[i] = q
        for j, dj in enumerate(den):
            num[i + j] -= q * dj
    if any(num):
        raise DivisionError("inexact integer polynomial division")
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis coordinates of zeta_n^k for k = 0..n-1."""
    phi = euler_phi(n)
    cyc = cyclotomic_coeffs(n)
    rows = []
    for k in range(n):
        if k < phi:
            v = [Fraction(0)] * phi
            v[k] = Fraction(1)
        else:
            prev = rows[k - 1]
            # multiply by zeta: shift, then reduce the zeta^phi term
            top = prev[phi - 1]
            v = [Fraction(0)] + list(prev[:-1])
            if top:
                for j in range(phi):
                    v[j] -= top * cyc[j]
        rows.append(tuple(v))
    return tuple(rows)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational number")


class CycloNum:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError("order must be positive")
        if order % 4 == 2:
            # Q(zeta_2m) = Q(zeta_m) for odd m, zeta_2m = -zeta_m^((m+1)/2)
            m = order // 2
            acc = [Fraction(0)] * m
            for i, c in enumerate(coeffs or ()):
                c = _as_fraction(c)
                acc[(i * (m + 1) // 2) % m] += -c if i % 2 else c
            coeffs = _reduce_exponent_vector(m, acc) if m > 1 else (sum(acc, Fraction(0)),)
            order = m
        phi = euler_phi(order)
        if coeffs is None:
            coeffs = ()
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) > phi:
            coeffs = list(_reduce_exponent_vector(order, coeffs))
        coeffs = coeffs + [Fraction(0)] * (phi - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, order: int, coeffs: tuple) -> CycloNum:
        obj = object.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------
    @classmethod
    def rational(cls, value) -> CycloNum:
        return cls._raw(1, (Fraction(value),))

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CycloNum:
        """zeta_n^k = exp(2 pi i k / n)."""
        if n < 1:
            raise ValueError("root of unity order must be positive")
        k %= n
        g = gcd(n, k) if k else n
        n, k = n // g, k // g
        if n == 1:
            return cls.rational(1)
        if n == 2:
            return cls.rational(-1)
        if n % 4 == 2:
            # zeta_n = -zeta_{n/2}^{(n/2+1)/2}
            m = n // 2
            return -cls.zeta(m, k * ((m + 1) // 2))
        return cls._raw(n, _power_table(n)[k])

    @classmethod
    def coerce(cls, x) -> CycloNum:
        if isinstance(x, CycloNum):
            return x
        return cls.rational(_as_fraction(x))

    # -- structure -----------------------------------------------------
    def _lift(self, n: int) -> CycloNum:
        if n == self.order:
            return self
        if n % self.order:
            raise ValueError("can only lift to a multiple of the order")
        step = n // self.order
        table = _power_table(n)
        out = [Fraction(0)] * euler_phi(n)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * step) % n]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloNum._raw(n, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _simplify(self) -> CycloNum:
        if self.order > 1 and self.is_rational():
            return CycloNum._raw(1, (self.coeffs[0],))
        return self

    def reduce_order(self) -> CycloNum:
        """Rewrite in the smallest cyclotomic field containing this element."""
        cur = self._simplify()
        changed = True
        while changed and cur.order > 1:
            changed = False
            n = cur.order
            for p in _prime_factors(n):
                m = n // p
                if cur._in_subfield(m):
                    low = m // 2 if m % 4 == 2 else m
                    cur = CycloNum._raw(low, _lower_order(cur.coeffs, n, low))._simplify()
                    changed = True
                    break
        return cur

    def _in_subfield(self, m: int) -> bool:
        n = self.order
        for t in range(n // m):
            k = 1 + m * t
            if gcd(k, n) != 1 or k == 1:
                continue
            if self.galois(k) != self:
                return False
        return True

    def galois(self, k: int) -> CycloNum:
        """Apply the automorphism zeta_N -> zeta_N^k (k coprime to N)."""
        n = self.order
        if gcd(k, n) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        table = _power_table(n)
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * k) % n]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycloNum._raw(n, tuple(out))

    def conjugate(self) -> CycloNum:
        return self.galois(-1 % self.order) if self.order > 2 else self

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.order)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs) if c)

    # -- arithmetic ----------------------------------------------------
    def _common(self, other):
        other = CycloNum.coerce(other)
        if self.order == other.order:
            return self, other
        n = _lcm(self.order, other.order)
        if n % 4 == 2:
            n //= 2
        return self._lift(n), other._lift(n)

    def __add__(self, other):
        if not isinstance(other, (CycloNum, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycloNum._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))._simplify()

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (CycloNum, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycloNum._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))._simplify()

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return CycloNum._raw(1, (Fraction(0),))
            return CycloNum._raw(self.order, tuple(x * other for x in self.coeffs))
        if not isinstance(other, CycloNum):
            return NotImplemented
        if other.order == 1:
            return self * other.coeffs[0]
        if self.order == 1:
            return other * self.coeffs[0]
        a, b = self._common(other)
        n = a.order
        acc = [0] * n
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        acc[(i + j) % n] += x * y
        return CycloNum._raw(n, _reduce_exponent_vector(n, acc))._simplify()

    __rmul__ = __mul__

    def inv(self) -> CycloNum:
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.order == 1:
            return CycloNum._raw(1, (1 / self.coeffs[0],))
        # extended Euclid in Q[x]: a u + Phi_n v = 1
        phi = [Fraction(c) for c in cyclotomic_coeffs(self.order)]
        u = _poly_inverse_mod([Fraction(c) for c in self.coeffs], phi)
        return CycloNum(self.order, u)._simplify()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, CycloNum):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return CycloNum.coerce(other) * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = CycloNum.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        if self._hash is None:
            r = self.reduce_order()
            self._hash = hash(r.coeffs[0]) if r.order == 1 else hash((r.order, r.coeffs))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloNum({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.order == 1:
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if i == 0 else (f"z{self.order}" if i == 1 else f"z{self.order}^{i}")
            if not z:
                parts.append(str(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    # -- roots of unity --------------------------------------------------
    def root_angle(self, bound: int = 0) -> Fraction | None:
        """If this is a root of unity exp(2 pi i theta), return theta in [0, 1)."""
        n = self.reduce_order().order
        n = 2 * n if n % 2 else n
        for k in range(n):
            if CycloNum.zeta(n, k) == self:
                return Fraction(k, n)
        return None

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> CycloNum:
        if isinstance(data, (int, str)):
            return cls.rational(Fraction(data))
        return cls(int(data["order"]), [Fraction(c) for c in data["coeffs"]])


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _reduce_exponent_vector(n: int, acc) -> tuple:
    """Power-basis coordinates of sum_k acc[k] zeta_n^k (indices taken mod n)."""
    phi = euler_phi(n)
    table = _power_table(n)
    out = [Fraction(0)] * phi
    for k, c in enumerate(acc):
        if c:
            if k % n < phi:
                out[k % n] += c
            else:
                for j, r in enumerate(table[k % n]):
                    if r:
                        out[j] += c * r
    return tuple(out)


def _lower_order(coeffs, n: int, m: int) -> tuple:
    """Coordinates in Q(zeta_m) of an element of Q(zeta_n) known to lie there."""
    phi_m = euler_phi(m)
    step = n // m
    table_n = _power_table(n)
    cols = [table_n[(j * step) % n] for j in range(phi_m)]
    target = list(coeffs) + [Fraction(0)] * (euler_phi(n) - len(coeffs))
    sol = _solve_overdetermined(cols, target)
    if sol is None:
        raise ValueError("element does not lie in the requested subfield")
    return tuple(sol)


def _poly_trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            a[k + i] -= f * c
    return q, a


def _poly_sub_mul(a, q, b):
    """a - q b."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a, m):
    """u with a u = 1 mod m (coefficient lists, low degree first)."""
    r0, r1 = list(m), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("division by zero")
    c = r1[0]
    _, u = _poly_divmod([x / c for x in s1] or [Fraction(0)], m)
    return _poly_trim(u)


def _solve_overdetermined(cols, target):
    """Solve sum_j x_j cols[j] = target exactly; None if inconsistent."""
    rows = len(target)
    ncol = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(ncol)] + [Fraction(target[i])] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, rows) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, rows):
        if mat[i][ncol]:
            return None
    sol = [Fraction(0)] * ncol
    for i, c in enumerate(piv_cols):
        sol[c] = mat[i][ncol]
    return sol


def root_of_unity(angle: Fraction) -> CycloNum:
    """exp(2 pi i angle) for rational angle."""
    angle = Fraction(angle)
    return CycloNum.zeta(angle.denominator, angle.numerator)


_ZERO = CycloNum.rational(0)
_ONE = CycloNum.rational(1)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPoly:
    """Sparse Laurent polynomial with CycloNum coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise ValueError("exponent vector length does not match variables")
                c = CycloNum.coerce(c)
                if not c.is_zero():
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms):
        obj = object.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, variables, value) -> LaurentPoly:
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def var(cls, variables, name: str) -> LaurentPoly:
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise KeyError(name)
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(cls, variables, exp, coeff=1) -> LaurentPoly:
        return cls(variables, {tuple(exp): coeff})

    def zero(self) -> LaurentPoly:
        return LaurentPoly._raw(self.variables, {})

    def one(self) -> LaurentPoly:
        return LaurentPoly.const(self.variables, 1)

    # -- inspection --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> CycloNum:
        return self.terms.get((0,) * len(self.variables), _ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self.terms), default=0)

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.variables)
        return tuple(min(col) for col in zip(*self.terms))

    def has_rational_coeffs(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    # -- variables ----------------------------------------------------------
    def with_variables(self, variables) -> LaurentPoly:
        """Re-express over a (super)set of variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        idx = []
        for v in self.variables:
            if v not in variables:
                raise ValueError(f"variable {v} missing from target variable list")
            idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for k, x in zip(idx, e):
                new[k] = x
            out[tuple(new)] = c
        return LaurentPoly._raw(variables, out)

    def _align(self, other):
        if isinstance(other, LaurentPoly):
            if other.variables == self.variables:
                return self, other
            merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
            return self.with_variables(merged), other.with_variables(merged)
        return self, LaurentPoly.const(self.variables, CycloNum.coerce(other))

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (LaurentPoly, CycloNum, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly._raw(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (LaurentPoly, CycloNum, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (CycloNum, int, Fraction)):
            if not other:
                return self.zero()
            return LaurentPoly._raw(self.variables, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._align(other)
        out = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return LaurentPoly._raw(a.variables, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise DivisionError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.variables, {tuple(-x * -k for x in e): c ** k})
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (CycloNum, int, Fraction)):
            other = LaurentPoly.const(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset((self.variables[i], e[i]) for e in self.terms for i in range(len(e))))

    def shift(self, exp) -> LaurentPoly:
        """Multiply by the monomial with exponent vector exp."""
        return LaurentPoly._raw(
            self.variables, {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()}
        )

    def map_coeffs(self, fn) -> LaurentPoly:
        return LaurentPoly(self.variables, {e: fn(c) for e, c in self.terms.items()})

    # -- division -------------------------------------------------------------
    def _leading(self, order):
        key = max(self.terms, key=lambda e: tuple(e[i] for i in order))
        return key, self.terms[key]

    def exact_div(self, other) -> LaurentPoly:
        """Exact quotient in the Laurent ring; raises DivisionError otherwise."""
        if isinstance(other, (CycloNum, int, Fraction)):
            other = CycloNum.coerce(other)
            if other.is_zero():
                raise DivisionError("division by zero")
            return self * other.inv()
        a, b = self._align(other)
        if b.is_zero():
            raise DivisionError("division by zero")
        if a.is_zero():
            return a
        # Work with honest polynomials, then shift back.
        sa, sb = a.min_exponents(), b.min_exponents()
        a = a.shift(tuple(-x for x in sa))
        b = b.shift(tuple(-x for x in sb))
        order = list(range(len(a.variables)))
        lb, cb = b._leading(order)
        cb_inv = cb.inv()
        rem = dict(a.terms)
        quot = {}
        while rem:
            le = max(rem, key=lambda e: tuple(e[i] for i in order))
            diff = tuple(x - y for x, y in zip(le, lb))
            if any(d < 0 for d in diff):
                raise DivisionError("polynomial is not divisible")
            coef = rem[le] * cb_inv
            quot[diff] = coef
            for e, c in b.terms.items():
                t = tuple(x + y for x, y in zip(e, diff))
                s = rem.get(t)
                s = -(c * coef) if s is None else s - c * coef
                if s.is_zero():
                    rem.pop(t, None)
                else:
                    rem[t] = s
        q = LaurentPoly._raw(a.variables, quot)
        return q.shift(tuple(x - y for x, y in zip(sa, sb)))

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
        except DivisionError:
            return False
        return True

    # -- evaluation ------------------------------------------------------------
    def evaluate(self, values) -> CycloNum:
        return eval_laurent(self, values)

    def substitute(self, values) -> LaurentPoly:
        """Substitute LaurentPoly or scalar values for some variables."""
        keep = tuple(v for v in self.variables if v not in values)
        result = LaurentPoly._raw(keep, {})
        cache: dict = {}
        for e, c in self.terms.items():
            term = LaurentPoly._raw(keep, {tuple(x for v, x in zip(self.variables, e) if v not in values): c})
            for v, x in zip(self.variables, e):
                if v in values and x:
                    key = (v, x)
                    if key not in cache:
                        val = values[v]
                        if not isinstance(val, LaurentPoly):
                            val = LaurentPoly.const(keep, val)
                        cache[key] = val ** x
                    term = term * cache[key]
            result = result + term
        return result

    # -- output --------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __repr__(self):
        return f"LaurentPoly({self.variables}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = monomial_str(self.variables, e)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif c.order == 1 or len([x for x in c.coeffs if x]) == 1:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> LaurentPoly:
        return cls(data["variables"], {tuple(t["exp"]): CycloNum.from_json(t["coeff"]) for t in data["terms"]})


def monomial_str(variables, exp) -> str:
    parts = []
    for v, x in zip(variables, exp):
        if x == 1:
            parts.append(v)
        elif x:
            parts.append(f"{v}^{x}")
    return "*".join(parts)


def eval_laurent(p: LaurentPoly, values) -> CycloNum:
    """Evaluate exactly; every variable with a nonzero exponent must be assigned."""
    total = _ZERO
    powers: dict = {}
    for e, c in p.terms.items():
        term = c
        for v, x in zip(p.variables, e):
            if not x:
                continue
            if v not in values:
                raise KeyError(f"missing value for variable {v}")
            key = (v, x)
            if key not in powers:
                val = CycloNum.coerce(values[v])
                if x < 0 and val.is_zero():
                    raise ZeroDivisionError(f"zero value for {v} with negative exponent")
                powers[key] = val ** x
            term = term * powers[key]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and factorization
# ---------------------------------------------------------------------------


def _univariate(coeffs, var="q") -> LaurentPoly:
    return LaurentPoly((var,), {(i,): c for i, c in enumerate(coeffs)})


# GAP3 notation for factors of cyclotomic polynomials over cyclotomic fields:
# label -> (n, exponents k with factor (q - zeta_n^k))
_PRIMED = {
    ("3", 1): (3, (1,)), ("3", 2): (3, (2,)),
    ("4", 1): (4, (1,)), ("4", 2): (4, (3,)),
    ("6", 1): (6, (1,)), ("6", 2): (6, (5,)),
    ("12", 1): (12, (1, 5)), ("12", 2): (12, (7, 11)),
    ("12", 3): (12, (1, 7)), ("12", 4): (12, (5, 11)),
    ("30", 1): (30, (1, 11, 19, 29)), ("30", 2): (30, (7, 13, 17, 23)),
    ("30", 3): (30, (1, 7, 13, 19)), ("30", 4): (30, (11, 17, 23, 29)),
}


def phi_roots(label: str) -> list[tuple[int, int]]:
    """Roots (n, k), meaning zeta_n^k, of a labelled cyclotomic factor.

    Labels are ``Phi<n>`` optionally followed by one to four primes, as in
    ``Phi12'''``, or ``E<n>_<k>`` for the linear factor (q - zeta_n^k).
    """
    label = label.strip()
    if label.startswith("E"):
        try:
            n, k = label[1:].split("_")
            n, k = int(n), int(k)
        except ValueError:
            raise ValueError(f"unknown cyclotomic label {label!r}") from None
        if n < 1:
            raise ValueError(f"unknown cyclotomic label {label!r}")
        return [(n, k % n)]
    if not label.startswith("Phi"):
        raise ValueError(f"unknown cyclotomic label {label!r}")
    body = label[3:]
    primes = len(body) - len(body.rstrip("'"))
    num = body.rstrip("'")
    if not num.isdigit() or int(num) < 1:
        raise ValueError(f"unknown cyclotomic label {label!r}")
    n = int(num)
    if primes == 0:
        return [(n, k) for k in range(n) if gcd(n, k) == 1]
    key = (num, primes)
    if key not in _PRIMED:
        raise ValueError(f"unknown cyclotomic label {label!r}")
    n, ks = _PRIMED[key]
    return [(n, k) for k in ks]


def phi_poly(label: str, var: str = "q") -> LaurentPoly:
    """The univariate polynomial named by a GAP3-style cyclotomic label."""
    roots = phi_roots(label)
    if label.startswith("Phi") and not label.endswith("'"):
        return _univariate(cyclotomic_coeffs(roots and roots[0][0] or int(label[3:])), var)
    result = LaurentPoly.const((var,), 1)
    q = LaurentPoly.var((var,), var)
    for n, k in roots:
        result = result * (q - CycloNum.zeta(n, k))
    return result


@dataclass(frozen=True)
class CycloFactor:
    """The factor (monomial - root)^multiplicity, root = exp(2 pi i angle)."""

    variables: tuple
    monomial: tuple
    angle: Fraction
    multiplicity: int = 1

    @property
    def root(self) -> CycloNum:
        return root_of_unity(self.angle)

    def poly(self) -> LaurentPoly:
        base = LaurentPoly.monomial(self.variables, self.monomial) - self.root
        return base ** self.multiplicity

    def vanishes_at(self, angles) -> bool:
        """angles maps variable -> rational theta with value exp(2 pi i theta)."""
        total = sum((Fraction(a) * Fraction(angles[v]) for v, a in zip(self.variables, self.monomial) if a), Fraction(0))
        return (total - self.angle).denominator == 1

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "monomial": list(self.monomial),
            "root_angle": _frac_str(self.angle),
            "multiplicity": self.multiplicity,
        }


def _primitive_vectors(nvars: int, max_abs: int):
    """Primitive integer vectors, first nonzero entry positive, |entries| <= max_abs."""
    rng = range(-max_abs, max_abs + 1)
    for v in itertools.product(rng, repeat=nvars):
        nz = [x for x in v if x]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for x in nz:
            g = gcd(g, abs(x))
        if g == 1:
            yield v


def normalize_unit(p: LaurentPoly):
    """Split p = unit * core, unit a monomial times a constant.

    The core has all minimal exponents zero and constant term 1 when the
    constant term is nonzero (otherwise its lexicographically first term is
    made monic).
    """
    if p.is_zero():
        raise DivisionError("zero has no unit normalization")
    shift = p.min_exponents()
    core = p.shift(tuple(-x for x in shift))
    lead_key = min(core.terms, key=lambda e: (sum(e), e))
    lead = core.terms[lead_key]
    core = core * lead.inv()
    unit = LaurentPoly.monomial(p.variables, shift, lead)
    return unit, core


def equal_up_to_unit(p: LaurentPoly, q: LaurentPoly) -> bool:
    p, q = p._align(q)
    return normalize_unit(p)[1] == normalize_unit(q)[1]


def factor_cyclotomic(p: LaurentPoly, bound: int = 60, max_exponent: int | None = None):
    """Extract every factor (M - zeta) with M a primitive monomial and zeta a
    root of unity of order <= bound.

    Returns (unit, factors, remainder) with p == unit * prod(factors) * remainder
    exactly; the unit is a monomial times a constant.
    """
    if p.is_zero():
        raise DivisionError("cannot factor zero")
    _, rem = normalize_unit(p)
    nv = len(p.variables)
    factors: list[CycloFactor] = []
    span = [max(e[i] for e in rem.terms) for i in range(nv)]
    if max_exponent is None:
        max_exponent = max(span + [1])
    mons = sorted(_primitive_vectors(nv, max_exponent), key=lambda v: (sum(map(abs, v)), v))
    for mon in mons:
        if rem.is_constant():
            break
        span = [max(e[i] for e in rem.terms) for i in range(nv)]
        if any(abs(a) > s for a, s in zip(mon, span)):
            continue
        mono = LaurentPoly.monomial(p.variables, mon)
        for d in range(1, bound + 1):
            if rem.is_constant():
                break
            if euler_phi(d) * max(abs(a) for a in mon) > max(span):
                continue
            phi_m = _univariate(cyclotomic_coeffs(d), "_t").substitute({"_t": mono})
            phi_m = phi_m.with_variables(p.variables)
            while not rem.is_constant():
                try:
                    rem = rem.exact_div(phi_m)
                except DivisionError:
                    break
                factors.extend(CycloFactor(p.variables, mon, Fraction(k, d)) for k in range(d) if gcd(k, d) == 1)
        if not rem.has_rational_coeffs():
            # a linear factor (M - zeta_d^k) needs zeta_d in the coefficient field
            field_order = 2
            for c in rem.terms.values():
                field_order = _lcm(field_order, c.order)
            for d in range(1, bound + 1):
                if field_order % d:
                    continue
                for k in range(d):
                    if gcd(k, d) != 1:
                        continue
                    lin = mono - CycloNum.zeta(d, k)
                    while not rem.is_constant():
                        try:
                            rem = rem.exact_div(lin)
                        except DivisionError:
                            break
                        factors.append(CycloFactor(p.variables, mon, Fraction(k, d)))
    factors = _merge_factors(factors)
    prod = LaurentPoly.const(p.variables, 1)
    for f in factors:
        prod = prod * f.poly()
    if rem.is_constant():
        rem = LaurentPoly.const(p.variables, 1)
        unit = p.exact_div(prod)
    else:
        # keep the cofactor's constant in the remainder, only the shift in the unit
        shift = p.min_exponents()
        unit = LaurentPoly.monomial(p.variables, shift)
        rem = p.exact_div(prod * unit)
    if not unit.is_monomial():
        raise AssertionError("cyclotomic factorization failed to reproduce its input")
    return unit, factors, rem


def _merge_factors(factors):
    counts: dict = {}
    order = []
    for f in factors:
        key = (f.variables, f.monomial, f.angle)
        if key not in counts:
            order.append(key)
            counts[key] = 0
        counts[key] += f.multiplicity
    return [CycloFactor(v, m, a, counts[(v, m, a)]) for (v, m, a) in order]


def factor_unity_roots(p: LaurentPoly, bound: int = 60):
    """Univariate cyclotomic factorization: (unit, factors, remainder)."""
    if len(p.variables) != 1:
        raise ValueError("factor_unity_roots expects a univariate polynomial")
    return factor_cyclotomic(p, bound=bound, max_exponent=1)
