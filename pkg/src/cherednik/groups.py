"""Finite complex reflection groups as exact matrix groups.

Groups are built from generating matrices over a cyclotomic field. Elements
are enumerated as permutations of a finite spanning W-orbit of vectors (the
orbit of the standard basis), which keeps closure and multiplication cheap;
exact matrices are reconstructed from the permutation on demand.
"""

from __future__ import annotations

import string
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from . import linalg
from .cyclo import CycloNum

ZERO = linalg.ZERO
ONE = linalg.ONE

DEFAULT_CAP = 200_000

ORBIT_LABELS = "xyzuvw" + "".join(c for c in string.ascii_lowercase if c not in "xyzuvw")


class GroupTooLarge(RuntimeError):
    pass


def _normalize_covector(alpha):
    """Scale so that the first nonzero entry is 1."""
    lead = next(x for x in alpha if not x.is_zero())
    inv = lead.inv()
    return tuple(x * inv for x in alpha)


@dataclass
class Hyperplane:
    alpha: tuple
    pointwise_stabilizer: list  # element indices of W_H, sorted, identity included
    order: int
    rotation_generator: int
    orbit: str = ""

    @property
    def reflections(self):
        return [i for i in self.pointwise_stabilizer if i != 0]


@dataclass
class Stratum:
    """A W-orbit of strata, represented by one intersection subspace."""

    annihilator: tuple  # RREF rows spanning the covectors vanishing on X
    dimension: int
    parabolic: list  # sorted element indices of W_X
    orbit_id: int
    members: list = field(default_factory=list)  # annihilators of all W-translates
    standard_subset: tuple | None = None  # simple-reflection subset J when W_X = W_J
    name: str = ""
    below: list = field(default_factory=list)  # orbit ids S' with S' <= S
    hyperplanes: frozenset = frozenset()  # indices of hyperplanes containing X

    @property
    def representative_subspace(self):
        """Basis of X (as column vectors)."""
        if not self.annihilator:
            n = self.dimension
            return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
        return linalg.nullspace([list(r) for r in self.annihilator])


class ReflectionGroup:
    """A finite group generated by reflections, with enumerated elements."""

    def __init__(self, generators, kind: dict, cap: int = DEFAULT_CAP, coxeter_matrix=None):
        self.generators = [tuple(tuple(CycloNum.coerce(x) for x in row) for row in g) for g in generators]
        self.rank = len(self.generators[0])
        self.kind = kind
        self.coxeter_matrix = coxeter_matrix
        self.cap = cap
        self._build_points()
        self._enumerate()

    # -- enumeration --------------------------------------------------------
    def _build_points(self):
        n = self.rank
        basis = [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
        index = {}
        pts = []
        queue = deque()
        for v in basis:
            if v not in index:
                index[v] = len(pts)
                pts.append(v)
                queue.append(v)
        gens = [[list(r) for r in g] for g in self.generators]
        while queue:
            v = queue.popleft()
            for g in gens:
                w = tuple(linalg.matvec(g, v))
                if w not in index:
                    index[w] = len(pts)
                    pts.append(w)
                    queue.append(w)
                    if len(pts) > self.cap:
                        raise GroupTooLarge("group too large or infinite")
        self.points = pts
        self._point_index = index
        self._basis_idx = [index[v] for v in basis]
        self.gen_perms = []
        for g in gens:
            self.gen_perms.append(tuple(index[tuple(linalg.matvec(g, p))] for p in pts))

    def _enumerate(self):
        ident = tuple(range(len(self.points)))
        self.elements = [ident]
        self.index = {ident: 0}
        self.parent = [(-1, -1)]  # (generator, element) with element = gen * parent
        self.length = [0]
        queue = deque([0])
        while queue:
            i = queue.popleft()
            p = self.elements[i]
            for k, s in enumerate(self.gen_perms):
                new = tuple(s[x] for x in p)
                if new not in self.index:
                    self.index[new] = len(self.elements)
                    self.elements.append(new)
                    self.parent.append((k, i))
                    self.length.append(self.length[i] + 1)
                    queue.append(self.index[new])
                    if len(self.elements) > self.cap:
                        raise GroupTooLarge("group too large or infinite")
        self.gen_index = [self.index[s] for s in self.gen_perms]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j] (apply j first)."""
        a, b = self.elements[i], self.elements[j]
        return self.index[tuple(a[x] for x in b)]

    @cached_property
    def inverses(self) -> list[int]:
        out = [0] * len(self.elements)
        for i, p in enumerate(self.elements):
            inv = [0] * len(p)
            for a, b in enumerate(p):
                inv[b] = a
            out[i] = self.index[tuple(inv)]
        return out

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def word(self, i: int) -> list[int]:
        """Generator indices k_1..k_m with element = g_{k_1} ... g_{k_m}."""
        out = []
        while i:
            k, i = self.parent[i]
            out.append(k)
        return out

    @cached_property
    def _basis_inverse(self):
        cols = [self.points[i] for i in self._basis_idx]
        mat = [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]
        return linalg.inverse(mat)

    def matrix(self, i: int):
        """Exact matrix (list of rows) of element i acting on column vectors."""
        cache = self.__dict__.setdefault("_matrix_cache", {})
        if i not in cache:
            perm = self.elements[i]
            imgs = [self.points[perm[b]] for b in self._basis_idx]
            # basis is the standard basis, so columns are the images
            cache[i] = [[imgs[j][r] for j in range(self.rank)] for r in range(self.rank)]
        return cache[i]

    def element_of_matrix(self, m) -> int:
        perm = tuple(self._point_index[tuple(linalg.matvec(m, p))] for p in self.points)
        return self.index[perm]

    def element_order(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.mul(i, j)
            k += 1
        return k

    def det(self, i: int) -> CycloNum:
        return linalg.det(self.matrix(i))

    # -- reflections and hyperplanes -----------------------------------------
    @property
    def is_coxeter(self) -> bool:
        kind = self.kind.get("kind")
        if kind == "coxeter":
            return True
        if kind == "grpn":
            r, p = self.kind["r"], self.kind["p"]
            return (r, p) in {(1, 1), (2, 1), (2, 2)} or (self.kind["n"] == 1 and r // p <= 2)
        if kind == "cyclic":
            return self.kind["n"] <= 2
        return False

    @cached_property
    def reflections(self) -> list[int]:
        seeds = set()
        for g in self.gen_index:
            j = g
            while j != 0:
                seeds.add(j)
                j = self.mul(g, j)
        found = set(seeds)
        queue = deque(seeds)
        while queue:
            r = queue.popleft()
            for g in self.gen_index:
                c = self.mul(self.mul(g, r), self.inverse(g))
                if c not in found:
                    found.add(c)
                    queue.append(c)
        out = []
        for r in sorted(found):
            m = self.matrix(r)
            diff = [[m[i][j] - (ONE if i == j else ZERO) for j in range(self.rank)] for i in range(self.rank)]
            if linalg.rank(diff) == 1:
                out.append(r)
        return out

    def reflection_covector(self, r: int) -> tuple:
        cache = self.__dict__.setdefault("_covector_cache", {})
        if r not in cache:
            cache[r] = self._reflection_covector(r)
        return cache[r]

    def _reflection_covector(self, r: int) -> tuple:
        m = self.matrix(r)
        diff = [[m[i][j] - (ONE if i == j else ZERO) for j in range(self.rank)] for i in range(self.rank)]
        row = next(row for row in diff if any(not x.is_zero() for x in row))
        return _normalize_covector(row)

    @cached_property
    def hyperplanes(self) -> list[Hyperplane]:
        by_alpha: dict = {}
        order = []
        for r in self.reflections:
            a = self.reflection_covector(r)
            if a not in by_alpha:
                by_alpha[a] = []
                order.append(a)
            by_alpha[a].append(r)
        hyps = []
        for a in order:
            stab = sorted([0] + by_alpha[a])
            n = len(stab)
            zeta = CycloNum.zeta(n)
            rot = next(r for r in by_alpha[a] if self.det(r) == zeta)
            hyps.append(Hyperplane(alpha=a, pointwise_stabilizer=stab, order=n, rotation_generator=rot))
        self._label_orbits(hyps)
        return hyps

    def act_on_covector(self, i: int, alpha) -> tuple:
        """Covector alpha o w^{-1} (the W-action on V*), normalized."""
        minv = self.matrix(self.inverse(i))
        return _normalize_covector(linalg.vecmat(list(alpha), minv))

    def _label_orbits(self, hyps):
        idx = {h.alpha: k for k, h in enumerate(hyps)}
        gen_inv = [self.matrix(self.inverse(g)) for g in self.gen_index]
        orbit_of = [-1] * len(hyps)
        seeds = []
        for g in self.gen_index:
            if g in self.reflections:
                seeds.append(idx[self.reflection_covector(g)])
        seeds += list(range(len(hyps)))
        n_orbits = 0
        self._hyperplane_orbits = []
        for s in seeds:
            if orbit_of[s] >= 0:
                continue
            members = [s]
            orbit_of[s] = n_orbits
            queue = deque([s])
            while queue:
                h = queue.popleft()
                for m in gen_inv:
                    b = idx[_normalize_covector(linalg.vecmat(list(hyps[h].alpha), m))]
                    if orbit_of[b] < 0:
                        orbit_of[b] = n_orbits
                        members.append(b)
                        queue.append(b)
            self._hyperplane_orbits.append(sorted(members))
            n_orbits += 1
        self._orbit_labels = [ORBIT_LABELS[k] for k in range(n_orbits)]
        for k, h in enumerate(hyps):
            h.orbit = self._orbit_labels[orbit_of[k]]

    @property
    def orbit_labels(self) -> list[str]:
        _ = self.hyperplanes
        return self._orbit_labels

    @property
    def hyperplane_orbits(self) -> list[list[int]]:
        """Hyperplane indices per orbit, in label order."""
        _ = self.hyperplanes
        return self._hyperplane_orbits

    def orbit_order(self, label: str) -> int:
        k = self.orbit_labels.index(label)
        return self.hyperplanes[self.hyperplane_orbits[k][0]].order

    @cached_property
    def reflection_hyperplane(self) -> dict:
        """Map reflection index -> hyperplane index."""
        _ = self.hyperplanes
        out = {}
        for k, h in enumerate(self.hyperplanes):
            for r in h.reflections:
                out[r] = k
        return out

    def generator_orbits(self) -> list[str]:
        """Orbit label of each generator's reflecting hyperplane."""
        return [self.hyperplanes[self.reflection_hyperplane[g]].orbit for g in self.gen_index]

    # -- subgroups ---------------------------------------------------------------
    def subgroup(self, gens) -> list[int]:
        found = {0}
        queue = deque([0])
        gens = list(gens)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.mul(g, x)
                if y not in found:
                    found.add(y)
                    queue.append(y)
        return sorted(found)

    def fixes_pointwise(self, i: int, basis) -> bool:
        m = self.matrix(i)
        return all(linalg.matvec(m, v) == list(v) for v in basis)

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        return conjugacy_classes(self)

    def describe_kind(self) -> str:
        k = self.kind
        if k["kind"] == "coxeter":
            return k.get("name") or "coxeter"
        if k["kind"] == "grpn":
            return f"G({k['r']},{k['p']},{k['n']})"
        return f"Z{k['n']}"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def two_cos_pi_over(m: int) -> CycloNum:
    """2 cos(pi/m) = zeta_2m + zeta_2m^-1."""
    return CycloNum.zeta(2 * m) + CycloNum.zeta(2 * m, -1)


NAMED_COXETER = {
    "a1": [[1]],
    "a2": [[1, 3], [3, 1]],
    "a3": [[1, 3, 2], [3, 1, 3], [2, 3, 1]],
    "a4": [[1, 3, 2, 2], [3, 1, 3, 2], [2, 3, 1, 3], [2, 2, 3, 1]],
    "b2": [[1, 4], [4, 1]],
    "b3": [[1, 3, 2], [3, 1, 4], [2, 4, 1]],
    "g2": [[1, 6], [6, 1]],
    "h3": [[1, 5, 2], [5, 1, 3], [2, 3, 1]],
    "h4": [[1, 5, 2, 2], [5, 1, 3, 2], [2, 3, 1, 3], [2, 2, 3, 1]],
    "f4": [[1, 3, 2, 2], [3, 1, 4, 2], [2, 4, 1, 3], [2, 2, 3, 1]],
    "d4": [[1, 3, 2, 2], [3, 1, 3, 3], [2, 3, 1, 2], [2, 3, 2, 1]],
}


def type_a_matrix(n: int):
    return [[1 if i == j else 3 if abs(i - j) == 1 else 2 for j in range(n)] for i in range(n)]


def type_b_matrix(n: int):
    m = type_a_matrix(n)
    if n > 1:
        m[0][1] = m[1][0] = 4
    return m


def dihedral_matrix(m: int):
    return [[1, m], [m, 1]]


def build_coxeter(coxeter_matrix, cap: int = DEFAULT_CAP, name: str | None = None) -> ReflectionGroup:
    """Finite Coxeter group in its geometric representation."""
    m = [list(map(int, row)) for row in coxeter_matrix]
    n = len(m)
    for i in range(n):
        if len(m[i]) != n or m[i][i] != 1:
            raise ValueError("Coxeter matrix must be square with ones on the diagonal")
        for j in range(n):
            if m[i][j] != m[j][i] or (i != j and m[i][j] < 2):
                raise ValueError("Coxeter matrix must be symmetric with entries >= 2 off the diagonal")
    gens = []
    for i in range(n):
        g = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
        # s_i(alpha_j) = alpha_j + 2 cos(pi/m_ij) alpha_i
        for j in range(n):
            g[i][j] = -ONE if j == i else two_cos_pi_over(m[i][j])
        gens.append(g)
    kind = {"kind": "coxeter", "matrix": m}
    if name:
        kind["name"] = name
    return ReflectionGroup(gens, kind, cap=cap, coxeter_matrix=m)


def build_grpn(r: int, p: int, n: int, cap: int = DEFAULT_CAP) -> ReflectionGroup:
    """The monomial group G(r, p, n)."""
    if r < 1 or p < 1 or n < 1 or r % p:
        raise ValueError("need r >= 1, n >= 1 and p dividing r")
    if n == 1 and r // p == 1:
        raise ValueError("G(r,r,1) is trivial")
    if r == 1 and n == 1:
        raise ValueError("G(1,1,1) is trivial")
    size = r**n
    for k in range(2, n + 1):
        size *= k
    if size // p > cap:
        raise GroupTooLarge("group too large or infinite")
    z = CycloNum.zeta(r)

    def diag(first):
        return [[first if (i == j == 0) else (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]

    def transposition(i, a=ONE, b=ONE):
        g = [[ONE if r_ == c and r_ not in (i, i + 1) else ZERO for c in range(n)] for r_ in range(n)]
        g[i][i + 1] = a
        g[i + 1][i] = b
        return g

    gens = []
    if n == 1:
        gens.append(diag(z**p))
    else:
        if p < r:
            gens.append(diag(z**p))
        if p > 1:
            gens.append(transposition(0, z.inv(), z))
        for i in range(n - 1):
            gens.append(transposition(i))
    return ReflectionGroup(gens, {"kind": "grpn", "r": r, "p": p, "n": n}, cap=cap)


def build_cyclic(n: int, cap: int = DEFAULT_CAP) -> ReflectionGroup:
    if n < 2:
        raise ValueError("cyclic reflection group needs n >= 2")
    g = [[CycloNum.zeta(n)]]
    return ReflectionGroup([g], {"kind": "cyclic", "n": n}, cap=cap)


def build_from_spec(spec) -> ReflectionGroup:
    """Build from a JSON-style dict or a short string such as 'h3', 'grpn:2,1,2', 'cyclic:2'."""
    if isinstance(spec, str):
        s = spec.strip().lower()
        if s in NAMED_COXETER:
            return build_coxeter(NAMED_COXETER[s], name=s.upper())
        if s.startswith("i2(") and s.endswith(")"):
            m = int(s[3:-1])
            return build_coxeter(dihedral_matrix(m), name=f"I2({m})")
        if s.startswith("grpn:"):
            r, p, n = (int(x) for x in s[5:].split(","))
            return build_grpn(r, p, n)
        if s.startswith("cyclic:"):
            return build_cyclic(int(s[7:]))
        if s[:1] in ("a", "b") and s[1:].isdigit() and int(s[1:]) >= 1:
            k = int(s[1:])
            mat = type_a_matrix(k) if s[0] == "a" else type_b_matrix(k)
            return build_coxeter(mat, name=s.upper())
        if s.startswith("s") and s[1:].isdigit():
            return build_grpn(1, 1, int(s[1:]))
        raise ValueError(f"unrecognized group spec {spec!r}")
    kind = spec.get("kind")
    if kind == "coxeter":
        return build_coxeter(spec["matrix"], name=spec.get("name"))
    if kind == "grpn":
        return build_grpn(int(spec["r"]), int(spec["p"]), int(spec["n"]))
    if kind == "cyclic":
        return build_cyclic(int(spec["n"]))
    raise ValueError(f"unrecognized group kind {kind!r}")


# ---------------------------------------------------------------------------
# classes, coordinates, strata
# ---------------------------------------------------------------------------


def conjugacy_classes(g: ReflectionGroup) -> list[list[int]]:
    seen = [False] * g.order
    classes = []
    gens = g.gen_index
    ginv = [g.inverse(x) for x in gens]
    for i in range(g.order):
        if seen[i]:
            continue
        cls = [i]
        seen[i] = True
        queue = deque([i])
        while queue:
            x = queue.popleft()
            for a, ai in zip(gens, ginv):
                y = g.mul(g.mul(a, x), ai)
                if not seen[y]:
                    seen[y] = True
                    cls.append(y)
                    queue.append(y)
        classes.append(sorted(cls))
    return classes


def param_coordinates(g: ReflectionGroup) -> list[tuple[str, int]]:
    """(orbit label, j) for every nontrivial character det^j of W_H, per orbit."""
    _ = g.hyperplanes
    out = []
    for label in g.orbit_labels:
        for j in range(1, g.orbit_order(label)):
            out.append((label, j))
    return out


def coordinate_names(g: ReflectionGroup) -> list[str]:
    return [f"{lab}{j}" for lab, j in param_coordinates(g)]


def _span_key(rows):
    red, _ = linalg.rref([list(r) for r in rows])
    return tuple(tuple(r) for r in red)


def _contains(ann_small, ann_big) -> bool:
    """Is span(ann_small) inside span(ann_big)? (i.e. X_big inside X_small)."""
    if not ann_small:
        return True
    return linalg.rank([list(r) for r in ann_big] + [list(r) for r in ann_small]) == len(ann_big)


def hyperplane_permutations(g: ReflectionGroup) -> list[tuple[int, ...]]:
    """How each generator permutes the hyperplane list."""
    cache = g.__dict__.get("_hperms")
    if cache is None:
        hyps = g.hyperplanes
        idx = {h.alpha: k for k, h in enumerate(hyps)}
        cache = []
        for x in g.gen_index:
            m = g.matrix(g.inverse(x))
            cache.append(tuple(idx[_normalize_covector(linalg.vecmat(list(h.alpha), m))] for h in hyps))
        g.__dict__["_hperms"] = cache
    return cache


class _FlatCloser:
    """Closure of hyperplane sets under 'alpha lies in the span'.

    Ranks are found numerically on the complex embedding (the covectors have
    small exact entries, so a 1e-8 threshold is far from ambiguous); the exact
    annihilator of each representative flat is rebuilt afterwards.
    """

    def __init__(self, g: ReflectionGroup):
        self.alphas = np.array([[x.to_complex() for x in h.alpha] for h in g.hyperplanes])
        self.alphas /= np.linalg.norm(self.alphas, axis=1)[:, None]

    def close(self, hs) -> tuple[frozenset, int]:
        rows = self.alphas[sorted(hs)]
        _, sv, vh = np.linalg.svd(rows)
        rk = int(np.sum(sv > 1e-8))
        basis = vh[:rk]
        resid = self.alphas - (self.alphas @ basis.conj().T) @ basis
        inside = np.linalg.norm(resid, axis=1) < 1e-8
        return frozenset(np.nonzero(inside)[0].tolist()), rk


def strata(g: ReflectionGroup) -> list[Stratum]:
    """Stratum orbits, ordered by dimension (the minimal stratum V^W first)."""
    cache = g.__dict__.get("_strata")
    if cache is not None:
        return cache
    hyps = g.hyperplanes
    closer = _FlatCloser(g)
    flats = {frozenset(): 0}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for f in frontier:
            for k in range(len(hyps)):
                if k in f:
                    continue
                new, rk = closer.close(f | {k})
                if new not in flats:
                    flats[new] = rk
                    nxt.append(new)
        frontier = nxt
    perms = hyperplane_permutations(g)
    remaining = set(flats)
    orbits = []
    for f in sorted(flats, key=lambda f: (-flats[f], sorted(f))):
        if f not in remaining:
            continue
        members = [f]
        remaining.discard(f)
        queue = deque([f])
        while queue:
            x = queue.popleft()
            for pm in perms:
                y = frozenset(pm[i] for i in x)
                if y in remaining:
                    remaining.discard(y)
                    members.append(y)
                    queue.append(y)
        orbits.append(members)
    gen_hyp = [g.reflection_hyperplane.get(s) for s in g.gen_index]
    result = []
    for oid, members in enumerate(orbits):
        codim = flats[members[0]]
        chosen, subset = members[0], None
        if g.is_coxeter:
            for f in members:
                J = tuple(k for k, h in enumerate(gen_hyp) if h in f)
                if len(J) == codim:
                    chosen, subset = f, J
                    break
        ann = _span_key([list(hyps[k].alpha) for k in sorted(chosen)]) if chosen else ()
        if len(ann) != codim:
            raise AssertionError("numeric and exact flat ranks disagree")
        refl = [r for k in sorted(chosen) for r in hyps[k].reflections]
        st = Stratum(
            annihilator=ann,
            dimension=g.rank - codim,
            parabolic=g.subgroup(refl),
            orbit_id=oid,
            members=members,
            standard_subset=subset,
        )
        st.hyperplanes = chosen
        st.name = _parabolic_name(g, st)
        result.append(st)
    for s in result:
        for t in result:
            # t <= s iff some translate of X_t lies in X_s
            if any(m >= s.hyperplanes for m in t.members):
                s.below.append(t.orbit_id)
    g.__dict__["_strata"] = result
    return result


def pointwise_stabilizer(g: ReflectionGroup, stratum: Stratum) -> list[int]:
    """Brute-force W_X (all elements fixing X pointwise)."""
    basis = stratum.representative_subspace
    return [i for i in range(g.order) if g.fixes_pointwise(i, basis)]


def minimal_stratum(strata_list):
    return strata_list[0]


def open_stratum(strata_list):
    return strata_list[-1]


def monomial_parabolic_type(g: ReflectionGroup, hyperplanes) -> tuple[int, list[int]]:
    """(m, blocks) with the parabolic fixing these hyperplanes of G(r,1,n) conjugate to G(r,1,m) x prod S_b."""
    n = g.rank
    zero_coords = set()
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for k in hyperplanes:
        support = [i for i, a in enumerate(g.hyperplanes[k].alpha) if not a.is_zero()]
        if len(support) == 1:
            zero_coords.add(support[0])
        else:
            parent[find(support[0])] = find(support[1])
    comps: dict = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    m = 0
    blocks = []
    for comp in comps.values():
        if zero_coords & set(comp):
            m += len(comp)
        elif len(comp) > 1:
            blocks.append(len(comp))
    return m, sorted(blocks, reverse=True)


def _parabolic_name(g: ReflectionGroup, st: Stratum) -> str:
    if len(st.parabolic) == 1:
        return "1"
    if st.standard_subset is not None and g.is_coxeter:
        return coxeter_type_name(g, st.standard_subset)
    kind = g.kind
    if kind.get("kind") in ("grpn", "cyclic") and kind.get("p", 1) == 1:
        r = kind.get("r", kind.get("n"))
        m, blocks = monomial_parabolic_type(g, st.hyperplanes)
        parts = []
        if m == 1:
            parts.append(f"Z{r}")
        elif m > 1:
            parts.append(f"G({r},1,{m})")
        parts.extend(f"A{b - 1}" for b in blocks)
        return "x".join(parts)
    return f"order {len(st.parabolic)}"


def _coxeter_matrix_of(g: ReflectionGroup):
    if g.coxeter_matrix is not None:
        return g.coxeter_matrix
    n = len(g.gen_index)
    m = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            m[i][j] = m[j][i] = g.element_order(g.mul(g.gen_index[i], g.gen_index[j]))
    return m


def coxeter_type_name(g: ReflectionGroup, subset) -> str:
    """Cartan-Killing style name of the standard parabolic W_J (components joined by 'x')."""
    m = _coxeter_matrix_of(g)
    orbits = g.generator_orbits()
    subset = list(subset)
    seen, comps = set(), []
    for s in subset:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in subset:
                if b not in seen and m[a][b] > 2:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    names = []
    for comp in comps:
        k = len(comp)
        edges = [m[a][b] for i, a in enumerate(comp) for b in comp[i + 1 :] if m[a][b] > 2]
        degree = {a: sum(1 for b in comp if b != a and m[a][b] > 2) for a in comp}
        big = max(edges, default=3)
        if k == 1:
            nm = "A1"
        elif k == 2:
            nm = {3: "A2", 4: "B2", 5: "H2", 6: "G2"}.get(big, f"I2({big})")
        elif max(degree.values()) == 3:
            nm = f"D{k}" if k == 4 or _is_d(comp, m) else f"E{k}"
        elif big == 3:
            nm = f"A{k}"
        elif big == 4:
            if k == 4 and edges.count(4) == 1 and _middle_edge(comp, m, 4):
                nm = "F4"
            else:
                # B_k versus C_k: which orbit holds most of the nodes
                first = sum(1 for a in comp if orbits[a] == orbits[0])
                nm = f"B{k}" if k == 2 or 2 * first > k else f"C{k}"
        elif big == 5:
            nm = f"H{k}"
        else:
            nm = f"?{k}"
        if len(set(orbits)) > 1 and orbits[comp[0]] != orbits[0] and all(orbits[a] == orbits[comp[0]] for a in comp):
            nm += "~"
        names.append(nm)
    return "x".join(sorted(names, key=lambda s: (-int("".join(c for c in s if c.isdigit()) or 0), s)))


def _is_d(comp, m):
    branch = [a for a in comp if sum(1 for b in comp if b != a and m[a][b] > 2) == 3]
    if len(branch) != 1:
        return False
    b = branch[0]
    legs = [a for a in comp if a != b and m[a][b] > 2]
    short = sum(1 for a in legs if sum(1 for c in comp if c != a and m[a][c] > 2) == 1)
    return short >= 2


def _middle_edge(comp, m, label):
    for i, a in enumerate(comp):
        for b in comp[i + 1 :]:
            if m[a][b] == label:
                da = sum(1 for c in comp if c != a and m[a][c] > 2)
                db = sum(1 for c in comp if c != b and m[b][c] > 2)
                return da == 2 and db == 2
    return False


def stratum_by_subset(g: ReflectionGroup, subset) -> Stratum:
    """The stratum orbit whose standard parabolic is W_J."""
    subset = tuple(sorted(subset))
    for st in strata(g):
        if st.standard_subset is not None and tuple(sorted(st.standard_subset)) == subset:
            return st
    target = len(g.subgroup([g.gen_index[k] for k in subset]))
    for st in strata(g):
        if st.standard_subset is not None and len(st.parabolic) == target:
            # conjugate standard parabolics may be listed under another subset
            if sorted(coxeter_type_name(g, st.standard_subset)) == sorted(coxeter_type_name(g, subset)):
                return st
    raise KeyError(f"no stratum with standard parabolic {subset}")


def gcd_list(xs):
    out = 0
    for x in xs:
        out = gcd(out, x)
    return out
