"""Exact dense linear algebra over the rationals.

Matrices are lists of rows of ``Fraction`` (or ``int``).  Ranks use
fraction-free Bareiss elimination on integer-scaled rows; null spaces and
solves use reduced row echelon form.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def to_fraction(m: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in m]


def shape(m: Sequence[Sequence], cols: int | None = None) -> tuple[int, int]:
    if not m:
        return 0, (cols or 0)
    return len(m), len(m[0])


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner`` disambiguates empty operands."""
    n = len(a)
    k = len(b) if inner is None else inner
    p = len(b[0]) if b else 0
    out = zeros(n, p)
    for i in range(n):
        row = a[i]
        target = out[i]
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(p):
                    y = brow[j]
                    if y:
                        target[j] += x * y
    return out


def transpose(m: Sequence[Sequence], cols: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*m)]


def _integer_rows(m: Sequence[Sequence]) -> list[list[int]]:
    rows = []
    for row in m:
        fr = [Fraction(x) for x in row]
        scale = lcm(1, *(x.denominator for x in fr))
        rows.append([int(x * scale) for x in fr])
    return rows


def rank(m: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    a = [row for row in _integer_rows(m) if any(row)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        p = pr[c]
        for i in range(r + 1, len(a)):
            row = a[i]
            f = row[c]
            if f:
                a[i] = [(p * row[j] - f * pr[j]) // prev for j in range(ncols)]
            else:
                a[i] = [(p * row[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(a):
            break
    return r


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    a = to_fraction(m)
    if not a:
        return a, []
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                row = a[i]
                a[i] = [row[j] - f * pr[j] for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}``; ``ncols`` is needed when ``m`` has no rows."""
    if not m:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(m[0])
    r, pivots = rref(m)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def column_basis(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Columns of ``m`` forming a basis of its column space."""
    if not m or not m[0]:
        return []
    _, pivots = rref(m)
    return [[Fraction(row[c]) for row in m] for c in pivots]


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix | None:
    """Some ``x`` with ``a x = b``, or ``None`` when inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    k = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(nrows)]
    r, pivots = rref(aug)
    x = zeros(ncols, k)
    for i, p in enumerate(pivots):
        if p >= ncols:
            return None
        for j in range(k):
            x[p][j] = r[i][ncols + j]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    x = solve(a, identity(n))
    if x is None or rank(a) < n:
        raise ZeroDivisionError("matrix is singular")
    return x


def det(a: Sequence[Sequence]) -> Fraction:
    m = to_fraction(a)
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        p = m[c][c]
        out *= p
        for i in range(c + 1, n):
            f = m[i][c] / p
            if f:
                m[i] = [m[i][j] - f * m[c][j] for j in range(n)]
    return out


def char_poly(a: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial det(tI - a), coefficients low to high.

    Uses the Hessenberg reduction, which stays exact and costs O(n^3).
    """
    h = to_fraction(a)
    n = len(h)
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for row in h:
                row[c + 1], row[piv] = row[piv], row[c + 1]
        p = h[c + 1][c]
        for i in range(c + 2, n):
            f = h[i][c] / p
            if f:
                h[i] = [h[i][j] - f * h[c + 1][j] for j in range(n)]
                for row in h:
                    row[c + 1] += f * row[i]
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        # p_k = (t - h[k-1][k-1]) p_{k-1} - sum_{i<k-1} h[i][k-1] * prod(subdiag) * p_i
        prev = polys[k - 1]
        cur = [Fraction(0)] + prev
        diag = h[k - 1][k - 1]
        for i, c in enumerate(prev):
            cur[i] -= diag * c
        prod = Fraction(1)
        for i in range(k - 2, -1, -1):
            prod *= h[i + 1][i]
            coeff = h[i][k - 1] * prod
            if coeff:
                for j, c in enumerate(polys[i]):
                    cur[j] -= coeff * c
        polys.append(cur)
    return polys[n]


def block_diag(blocks: Sequence[Matrix], sizes: Sequence[tuple[int, int]]) -> Matrix:
    rows = sum(r for r, _ in sizes)
    cols = sum(c for _, c in sizes)
    out = zeros(rows, cols)
    r0 = c0 = 0
    for blk, (r, c) in zip(blocks, sizes):
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = Fraction(blk[i][j])
        r0 += r
        c0 += c
    return out
