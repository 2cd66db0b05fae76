"""Character tables and central idempotents from the regular representation.

A random central element z = sum a_i C_i (C_i the class sums) acts normally
on the regular representation. Its Hermitian and anti-Hermitian parts
commute, so a two-stage eigh splits the regular representation into the
isotypic blocks. The identity column of each block projector is
e_F = (dim F / |W|) sum_g conj(chi_F(g)) g, from which characters are read off
and then made exact through eigenvalue multiplicities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclo import CycloNum
from .groups import ReflectionGroup, conjugacy_classes

ORDER_BOUND = 1500
TAU = 1e-9


class CharacterError(RuntimeError):
    pass


@dataclass
class Irrep:
    dim: int
    values: list  # CycloNum per class, or None when exactification failed
    values_float: np.ndarray
    exact: bool


@dataclass
class CharacterData:
    classes: list
    class_of: list  # element index -> class index
    irreps: list

    def chi(self, f: int, w: int):
        return self.irreps[f].values[self.class_of[w]]

    def projector(self, f: int) -> dict:
        """Exact e_F as a group-algebra element {element index: coefficient}."""
        irr = self.irreps[f]
        if not irr.exact:
            raise CharacterError("character values not exact")
        order = len(self.class_of)
        scale = Fraction(irr.dim, order)
        out = {}
        for w, c in enumerate(self.class_of):
            v = irr.values[c].conjugate() * scale
            if not v.is_zero():
                out[w] = v
        return out

    def projector_float(self, f: int) -> np.ndarray:
        irr = self.irreps[f]
        order = len(self.class_of)
        return (irr.dim / order) * np.conj(irr.values_float[self.class_of])

    @property
    def trivial(self) -> int:
        return next(i for i, irr in enumerate(self.irreps) if irr.dim == 1 and all(v == 1 for v in irr.values))

    def to_json(self) -> dict:
        return {
            "class_sizes": [len(c) for c in self.classes],
            "class_representatives": [c[0] for c in self.classes],
            "irreps": [
                {
                    "dim": irr.dim,
                    "exact": irr.exact,
                    "values": [v.to_json() for v in irr.values] if irr.exact else None,
                    "values_float": [[complex(v).real, complex(v).imag] for v in irr.values_float],
                }
                for irr in self.irreps
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def regular_matrix(g: ReflectionGroup, coeffs: dict) -> np.ndarray:
    """Matrix of left multiplication by sum coeffs[h] h on the group algebra."""
    n = g.order
    m = np.zeros((n, n), dtype=complex)
    for h, a in coeffs.items():
        row = [g.mul(h, x) for x in range(n)]
        m[row, np.arange(n)] += a
    return m


def _clusters(values, tol):
    order = np.argsort(values)
    groups, cur = [], [order[0]]
    for a, b in zip(order, order[1:]):
        if values[b] - values[a] > tol:
            groups.append(cur)
            cur = []
        cur.append(b)
    groups.append(cur)
    return groups


def _gap_ok(values, tol):
    """No two clusters closer than 10 tol (otherwise the split is ambiguous)."""
    gaps = np.diff(np.sort(values))
    return not np.any((gaps > tol) & (gaps < 10 * tol))


def _exactify(g: ReflectionGroup, classes, class_of, values: np.ndarray):
    """Exact character values from eigenvalue multiplicities of each class rep."""
    out = []
    for cls in classes:
        w = cls[0]
        o = g.element_order(w)
        powers = [0]
        for _ in range(o - 1):
            powers.append(g.mul(w, powers[-1]))
        chis = np.array([values[class_of[p]] for p in powers])
        ks = np.arange(o)
        mult = []
        for j in range(o):
            m = np.sum(chis * np.exp(-2j * np.pi * j * ks / o)) / o
            r = round(m.real)
            if abs(m - r) > 1e-6 or r < 0:
                return None
            mult.append(r)
        total = CycloNum.rational(0)
        for j, m in enumerate(mult):
            if m:
                total = total + CycloNum.zeta(o, j) * m
        out.append(total.reduce_order())
    return out


def isotypic_projectors(g: ReflectionGroup, seed: int = 0, tau: float = TAU, bound: int = ORDER_BOUND, tries: int = 5) -> CharacterData:
    if g.order > bound:
        raise CharacterError(f"group order {g.order} exceeds the character bound {bound}")
    cache = g.__dict__.setdefault("_chars", {})
    if seed in cache:
        return cache[seed]
    classes = conjugacy_classes(g)
    class_of = [0] * g.order
    for k, cls in enumerate(classes):
        for w in cls:
            class_of[w] = k
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        a = rng.integers(-20, 21, size=len(classes)) + 1j * rng.integers(-20, 21, size=len(classes))
        z = regular_matrix(g, {w: a[class_of[w]] for w in range(g.order)})
        herm = (z + z.conj().T) / 2
        anti = (z - z.conj().T) / 2j
        hv, hu = np.linalg.eigh(herm)
        tol = tau * max(1.0, np.abs(hv).max())
        if not _gap_ok(hv, tol):
            continue
        blocks = []
        for cl in _clusters(hv, tol):
            u = hu[:, cl]
            kv, ku = np.linalg.eigh(u.conj().T @ anti @ u)
            if not _gap_ok(kv, tol):
                break
            for sub in _clusters(kv, tol):
                blocks.append(u @ ku[:, sub])
        if len(blocks) != len(classes):
            continue
        irreps = []
        for b in blocks:
            e = b @ b[0].conj()  # identity column of the block projector (element 0 is the identity)
            dim = int(round(np.sqrt(e[0].real * g.order)))
            if dim * dim != b.shape[1]:
                break
            chi_all = np.conj(e) * g.order / dim
            values = np.array([np.mean(chi_all[c]) for c in classes])
            exact = _exactify(g, classes, class_of, values)
            irreps.append(Irrep(dim, exact, values, exact is not None))
        else:
            irreps.sort(key=lambda r: (r.dim, -r.values_float.real.sum()))
            data = CharacterData(classes, class_of, irreps)
            _verify(g, data)
            cache[seed] = data
            return data
    raise CharacterError("eigenvalue clusters too close: rerun with new random combination")


def _verify(g: ReflectionGroup, data: CharacterData):
    if sum(irr.dim**2 for irr in data.irreps) != g.order:
        raise CharacterError("dimensions do not account for the regular representation")
    sizes = [len(c) for c in data.classes]
    for i, a in enumerate(data.irreps):
        for j, b in enumerate(data.irreps[: i + 1]):
            if a.exact and b.exact:
                s = CycloNum.rational(0)
                for n, x, y in zip(sizes, a.values, b.values):
                    s = s + x * y.conjugate() * n
                ok = s == CycloNum.rational(g.order if i == j else 0)
            else:
                s = np.sum(np.array(sizes) * a.values_float * np.conj(b.values_float))
                ok = abs(s - (g.order if i == j else 0)) < 1e-6 * g.order
            if not ok:
                raise CharacterError("character orthogonality failed")


# ---------------------------------------------------------------------------
# parameters: c_r and c_F
# ---------------------------------------------------------------------------


def reflection_power(g: ReflectionGroup, r: int) -> tuple[int, int]:
    """(hyperplane index, m) with r = r_H^m."""
    k = g.reflection_hyperplane[r]
    h = g.hyperplanes[k]
    x, m = h.rotation_generator, 1
    while x != r:
        x = g.mul(h.rotation_generator, x)
        m += 1
    return k, m


def reflection_c_forms(g: ReflectionGroup) -> dict:
    """c_r as a linear form {(orbit, j): coefficient}: c_{r_H^m} = -sum_j c_{H,j} zeta_{n_H}^{-jm}."""
    cache = g.__dict__.get("_c_forms")
    if cache is not None:
        return cache
    out = {}
    for r in g.reflections:
        k, m = reflection_power(g, r)
        h = g.hyperplanes[k]
        n = h.order
        out[r] = {(h.orbit, j): -CycloNum.zeta(n, -j * m) for j in range(1, n)}
    g.__dict__["_c_forms"] = out
    return out


def c_function(g: ReflectionGroup, chars: CharacterData, f: int) -> dict:
    """c_F = sum_r c_r (1 - chi_F(r)/chi_F(1)) as {(orbit, j): coefficient}."""
    irr = chars.irreps[f]
    forms = reflection_c_forms(g)
    total: dict = {}
    for r in g.reflections:
        if irr.exact:
            w = CycloNum.rational(1) - chars.chi(f, r) * Fraction(1, irr.dim)
        else:
            raise CharacterError("c_F needs exact character values")
        if w.is_zero():
            continue
        for key, a in forms[r].items():
            total[key] = total.get(key, CycloNum.rational(0)) + a * w
    return {k: v.reduce_order() for k, v in sorted(total.items()) if not v.is_zero()}


def c_function_value(form: dict, coords: dict):
    """Evaluate a c-form at coordinates {(orbit, j): value}."""
    total = 0
    for key, a in form.items():
        total = total + (a.as_fraction() if a.is_rational() else a) * coords.get(key, 0)
    return total
