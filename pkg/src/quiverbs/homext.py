"""Concrete representations, Hom and Ext dimensions, and Krull-Schmidt splitting."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import DecompositionFailed, InputError
from .linalg import Matrix, column_basis, identity, inverse, matmul, nullspace, rank, solve, zeros
from .quiver import Quiver, euler_form


@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    dims: Mapping[str, int]
    maps: Mapping[str, Matrix]

    def __post_init__(self):
        dims = {v: int(self.dims.get(v, 0)) for v in self.quiver.vertices}
        maps = {}
        for a in self.quiver.arrows:
            h, t = dims[a.head], dims[a.tail]
            m = self.maps.get(a.id)
            if m is None:
                m = zeros(h, t)
            m = [[Fraction(x) for x in row] for row in m]
            if len(m) != h or any(len(row) != t for row in m):
                raise InputError(f"matrix on arrow {a.id} has the wrong shape")
            maps[a.id] = m
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())


@dataclass(frozen=True)
class DvwMatrix:
    """Matrix of ``phi -> (phi_h V(a) - W(a) phi_t)_a``.

    Columns are indexed by ``(vertex, i, j)`` for entry ``phi_x[i][j]``; rows by
    ``(arrow, i, j)``.
    """

    matrix: Matrix
    columns: tuple[tuple[str, int, int], ...]
    rows: tuple[tuple[str, int, int], ...]


def dvw_matrix(v: Rep, w: Rep) -> DvwMatrix:
    q = v.quiver
    cols = [(x, i, j) for x in q.vertices for i in range(w.dims[x]) for j in range(v.dims[x])]
    rows = [
        (a.id, i, j)
        for a in q.arrows
        for i in range(w.dims[a.head])
        for j in range(v.dims[a.tail])
    ]
    cidx = {c: k for k, c in enumerate(cols)}
    mat = zeros(len(rows), len(cols))
    r = 0
    for a in q.arrows:
        va, wa = v.maps[a.id], w.maps[a.id]
        for i in range(w.dims[a.head]):
            for j in range(v.dims[a.tail]):
                row = mat[r]
                # (phi_h V(a))_{ij} = sum_k phi_h[i][k] V(a)[k][j]
                for k in range(v.dims[a.head]):
                    c = va[k][j]
                    if c:
                        row[cidx[(a.head, i, k)]] += c
                # (W(a) phi_t)_{ij} = sum_k W(a)[i][k] phi_t[k][j]
                for k in range(w.dims[a.tail]):
                    c = wa[i][k]
                    if c:
                        row[cidx[(a.tail, k, j)]] -= c
                r += 1
    return DvwMatrix(mat, tuple(cols), tuple(rows))


def hom_ext(v: Rep, w: Rep) -> tuple[int, int]:
    d = dvw_matrix(v, w)
    rk = rank(d.matrix) if d.rows and d.columns else 0
    return len(d.columns) - rk, len(d.rows) - rk


def hom_dim(v: Rep, w: Rep) -> int:
    return hom_ext(v, w)[0]


def ext_dim(v: Rep, w: Rep) -> int:
    return hom_ext(v, w)[1]


def schur_check(v: Rep) -> bool:
    return hom_dim(v, v) == 1


def endomorphism_basis(m: Rep) -> list[dict[str, Matrix]]:
    d = dvw_matrix(m, m)
    basis = nullspace(d.matrix, len(d.columns)) if d.columns else []
    out = []
    for vec in basis:
        phi = {x: zeros(m.dims[x], m.dims[x]) for x in m.quiver.vertices}
        for (x, i, j), c in zip(d.columns, vec):
            phi[x][i][j] = c
        out.append(phi)
    return out


def simple_rep(q: Quiver, v: str) -> Rep:
    return Rep(q, {x: int(x == v) for x in q.vertices}, {})


def direct_sum(*reps: Rep) -> Rep:
    q = reps[0].quiver
    dims = {x: sum(r.dims[x] for r in reps) for x in q.vertices}
    maps = {}
    for a in q.arrows:
        m = zeros(dims[a.head], dims[a.tail])
        r0 = c0 = 0
        for r in reps:
            blk = r.maps[a.id]
            for i in range(r.dims[a.head]):
                for j in range(r.dims[a.tail]):
                    m[r0 + i][c0 + j] = blk[i][j]
            r0 += r.dims[a.head]
            c0 += r.dims[a.tail]
        maps[a.id] = m
    return Rep(q, dims, maps)


def conjugate(w: Rep, g: Mapping[str, Matrix]) -> Rep:
    """The isomorphic representation ``g_h W(a) g_t^{-1}``."""
    inv = {x: inverse(g[x]) if w.dims[x] else [] for x in w.quiver.vertices}
    maps = {}
    for a in w.quiver.arrows:
        if w.dims[a.head] and w.dims[a.tail]:
            maps[a.id] = matmul(matmul(g[a.head], w.maps[a.id]), inv[a.tail])
    return Rep(w.quiver, w.dims, maps)


def random_matrix(rows: int, cols: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    return [[Fraction(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)]


def random_invertible(n: int, rng: random.Random) -> Matrix:
    while True:
        g = random_matrix(n, n, rng)
        if rank(g) == n:
            return g


def random_rep(q: Quiver, dims: Mapping[str, int], rng: random.Random, lo: int = -3, hi: int = 3) -> Rep:
    maps = {a.id: random_matrix(dims.get(a.head, 0), dims.get(a.tail, 0), rng, lo, hi) for a in q.arrows}
    return Rep(q, dims, maps)


def generic_hom(q: Quiver, alpha: Mapping[str, int], beta: Mapping[str, int], seed: int = 0,
                samples: int = 5) -> int:
    """Minimum of hom over random instantiations of the two dimension vectors.

    ``max(<alpha,beta>, 0)`` is a lower bound for every instance, so sampling
    stops early once it is reached.
    """
    rng = random.Random(seed)
    floor = max(euler_form(q, alpha, beta), 0)
    best = None
    for _ in range(samples):
        h = hom_dim(random_rep(q, alpha, rng), random_rep(q, beta, rng))
        best = h if best is None else min(best, h)
        if best == floor:
            break
    return best


def generic_ext(q: Quiver, alpha, beta, seed: int = 0, samples: int = 5) -> int:
    return generic_hom(q, alpha, beta, seed, samples) - euler_form(q, alpha, beta)


# ---- type A interval modules ---------------------------------------------

def line_order(q: Quiver) -> tuple[str, ...]:
    """Vertices along a linear quiver, starting from the first-declared endpoint."""
    n = len(q.vertices)
    if n == 1:
        return q.vertices
    ends = [v for v in q.vertices if q.degree(v) == 1]
    if len(q.arrows) != n - 1 or len(ends) != 2 or any(q.degree(v) > 2 for v in q.vertices):
        raise InputError("quiver is not of linear type A")
    order = [ends[0]]
    prev = None
    while len(order) < n:
        cur = order[-1]
        nxt = [y for y in q.neighbors(cur) if y != prev]
        prev = cur
        order.append(nxt[0])
    return tuple(order)


def interval_rep(q: Quiver, i: int, j: int) -> Rep:
    """Dimension one on positions ``i..j`` (1-based along the line)."""
    order = line_order(q)
    if not 1 <= i <= j <= len(order):
        raise InputError("interval out of range")
    support = set(order[i - 1 : j])
    dims = {v: int(v in support) for v in q.vertices}
    maps = {a.id: [[Fraction(1)]] for a in q.arrows if a.tail in support and a.head in support}
    return Rep(q, dims, maps)


def interval_dims(q: Quiver, i: int, j: int) -> tuple[int, ...]:
    return interval_rep(q, i, j).dim_vector()


# ---- Fitting decomposition -------------------------------------------------

def _restrict(m: Rep, bases: Mapping[str, list[list[Fraction]]]) -> Rep:
    """Subrepresentation on invariant subspaces given by column bases."""
    q = m.quiver
    dims = {x: len(bases[x]) for x in q.vertices}
    mats = {x: [list(r) for r in zip(*bases[x])] if bases[x] else [] for x in q.vertices}
    maps = {}
    for a in q.arrows:
        t, h = dims[a.tail], dims[a.head]
        if not t or not h:
            continue
        image = matmul(m.maps[a.id], mats[a.tail], m.dims[a.tail])
        sol = solve(mats[a.head], image)
        if sol is None:
            raise DecompositionFailed("subspace family is not a subrepresentation")
        maps[a.id] = sol
    return Rep(q, dims, maps)


def _power(a: Matrix, k: int) -> Matrix:
    n = len(a)
    out = identity(n)
    for _ in range(k):
        out = matmul(out, a, n)
    return out


def _split(m: Rep, phi: Mapping[str, Matrix], lam: Fraction) -> tuple[Rep, Rep] | None:
    total = m.total_dim()
    kers, ims = {}, {}
    for x in m.quiver.vertices:
        n = m.dims[x]
        if not n:
            kers[x], ims[x] = [], []
            continue
        psi = [[phi[x][i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        p = _power(psi, n)
        kers[x] = nullspace(p, n)
        ims[x] = column_basis(p)
    k = sum(len(b) for b in kers.values())
    if k == 0 or k == total:
        return None
    return _restrict(m, kers), _restrict(m, ims)


def _eigen_candidates(m: Rep, phi: Mapping[str, Matrix]) -> list[Fraction]:
    cands: list[Fraction] = []
    for x in m.quiver.vertices:
        n = m.dims[x]
        if not n:
            continue
        arr = np.array([[float(c) for c in row] for row in phi[x]])
        for z in np.linalg.eigvals(arr):
            if abs(z.imag) < 1e-7:
                r = Fraction(float(z.real)).limit_denominator(1000)
                if r not in cands:
                    cands.append(r)
    return cands


def _sample_endomorphism(m: Rep, basis, rng: random.Random, annihilate: bool):
    coeffs = [rng.randint(-3, 3) for _ in basis]
    if annihilate:
        verts = [x for x in m.quiver.vertices if m.dims[x]]
        x = rng.choice(verts)
        w = [Fraction(rng.randint(-3, 3)) for _ in range(m.dims[x])]
        images = [[sum(e[x][i][j] * w[j] for j in range(m.dims[x])) for i in range(m.dims[x])] for e in basis]
        system = [[images[k][i] for k in range(len(basis))] for i in range(m.dims[x])]
        sols = nullspace(system, len(basis))
        if sols:
            coeffs = [Fraction(0)] * len(basis)
            for s in sols:
                c = rng.randint(-3, 3)
                coeffs = [a + c * b for a, b in zip(coeffs, s)]
    phi = {x: zeros(m.dims[x], m.dims[x]) for x in m.quiver.vertices}
    for c, e in zip(coeffs, basis):
        if c:
            for x in m.quiver.vertices:
                for i in range(m.dims[x]):
                    for j in range(m.dims[x]):
                        phi[x][i][j] += c * e[x][i][j]
    return phi


def fitting_decompose(m: Rep, seed: int = 0, retries: int = 8) -> Counter:
    """Dimension vectors of the indecomposable summands of ``m``, with multiplicity.

    Each round samples an endomorphism and splits along the generalized
    eigenspace of a rational eigenvalue.  Sampling alternates between the whole
    endomorphism ring and the left ideal killing a random vector; the latter
    forces the eigenvalue 0 and is what separates isotypic blocks ``X^k``.
    """
    rng = random.Random(seed)
    out: Counter = Counter()
    stack = [m]
    while stack:
        n = stack.pop()
        if n.total_dim() == 0:
            continue
        basis = endomorphism_basis(n)
        if len(basis) == 1:
            out[n.dim_vector()] += 1
            continue
        pieces = None
        for attempt in range(retries):
            phi = _sample_endomorphism(n, basis, rng, annihilate=attempt % 2 == 1)
            for lam in _eigen_candidates(n, phi):
                pieces = _split(n, phi, lam)
                if pieces:
                    break
            if pieces:
                break
        if pieces is None:
            raise DecompositionFailed(
                f"no splitting endomorphism found for dimension vector {n.dim_vector()}"
            )
        stack.extend(pieces)
    return out
