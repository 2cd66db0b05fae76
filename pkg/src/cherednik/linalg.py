"""Small exact linear algebra over CycloNum or Fraction entries.

Matrices are lists of rows. Entries must support +, -, *, 1/x and truth
testing (falsy exactly when zero).
"""

from __future__ import annotations

from .cyclo import CycloNum

ZERO = CycloNum.rational(0)
ONE = CycloNum.rational(1)


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a, b):
    m = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(m):
            s = ZERO
            for k, x in enumerate(row):
                if x:
                    y = b[k][j]
                    if y:
                        s = s + x * y
            new.append(s)
        out.append(new)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = ZERO
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def vecmat(v, a):
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [ZERO] * n
    for x, row in zip(v, a):
        if not x:
            continue
        for j, y in enumerate(row):
            if y:
                out[j] = out[j] + x * y
    return out


def rref(rows):
    """Reduced row echelon form; returns (rows, pivot columns). Zero rows dropped."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncol = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def inverse(a):
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a):
    n = len(a)
    mat = [list(r) for r in a]
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if mat[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            mat[c], mat[p] = mat[p], mat[c]
            result = -result
        result = result * mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c]:
                f = mat[i][c] * inv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return result


def left_nullspace(a):
    """Basis of {v : v a = 0} for a matrix a (list of rows)."""
    if not a:
        return []
    t = [list(col) for col in zip(*a)]
    return nullspace(t)


def nullspace(a):
    """Basis of {v : a v = 0}."""
    if not a:
        return []
    ncol = len(a[0])
    red, piv = rref(a)
    free = [c for c in range(ncol) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncol
        v[f] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve a x = b. Returns (x, consistent, full_rank); x is None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None, False, len(piv) == n
    zero = b[0] * 0 if b else ZERO
    x = [zero] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x, True, len(piv) == n
