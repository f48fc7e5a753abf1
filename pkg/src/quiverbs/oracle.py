"""Exact b-function oracle.

A semi-invariant ``f`` is built as an explicit polynomial. The dual operator
``f*(d)`` is applied to ``f^(m+1)`` and the quotient by ``f^m`` is read off
for ``m = 0..deg f``. The b-function is the interpolating polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, prod
from typing import Mapping, Sequence

from .errors import (
    DegreeMismatch, IdentityFailed, InputError, NotProportional, NotSquare, SizeGuard,
)
from .homext import Rep, random_matrix
from .linalg import inverse, rank
from .mpoly import MPoly, lagrange_interpolate, rational_roots, upoly_degree, upoly_monic
from .quiver import Quiver, euler_form

SIZE_LIMIT = 5_000_000
_BITS = 8
_MASK = (1 << _BITS) - 1


# ---- packed exponent arithmetic ------------------------------------------------

def _num(c: Fraction):
    return c.numerator if c.denominator == 1 else c


def _pack(p: MPoly) -> dict[int, object]:
    if p.terms and max(max(e, default=0) for e in p.terms) > _MASK:
        raise SizeGuard("exponent too large for the packed representation")
    return {sum(x << (_BITS * i) for i, x in enumerate(e)): _num(c) for e, c in p.terms.items()}


def _unpack(variables: Sequence[str], d: Mapping[int, object]) -> MPoly:
    n = len(variables)
    return MPoly(variables, {tuple((k >> (_BITS * i)) & _MASK for i in range(n)): c for k, c in d.items()})


def _mul(a: Mapping[int, object], b: Mapping[int, object]) -> dict[int, object]:
    out: dict[int, object] = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def _guard_exponent(d: Mapping[int, object], nvars: int, limit: int) -> None:
    for k in d:
        for i in range(nvars):
            if (k >> (_BITS * i)) & _MASK > limit:
                raise SizeGuard("exponent too large for the packed representation")


@dataclass(frozen=True)
class DiffOp:
    """A constant-coefficient operator, ``x_i`` read as ``d/dx_i``."""

    poly: MPoly

    @classmethod
    def dual_of(cls, f: MPoly, scale: Sequence | None = None) -> "DiffOp":
        return cls(f.scaled_variables(scale) if scale is not None else f)

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        return DiffOp(self.poly * other.poly)

    def __pow__(self, k: int) -> "DiffOp":
        return DiffOp(self.poly ** k)

    def _packed_terms(self):
        out = []
        n = len(self.poly.vars)
        for e, c in self.poly.terms.items():
            key = sum(x << (_BITS * i) for i, x in enumerate(e))
            out.append((key, [(i, x) for i, x in enumerate(e) if x], _num(c)))
        return out, n

    def _apply_packed(self, g: Mapping[int, object]) -> dict[int, object]:
        terms, _ = self._packed_terms()
        out: dict[int, object] = {}
        for key, parts, c in terms:
            for kg, cg in g.items():
                coef = c * cg
                for i, e in parts:
                    a = (kg >> (_BITS * i)) & _MASK
                    if a < e:
                        coef = 0
                        break
                    for t in range(a - e + 1, a + 1):
                        coef *= t
                if coef:
                    k = kg - key
                    out[k] = out.get(k, 0) + coef
        return {k: c for k, c in out.items() if c}

    def apply(self, g: MPoly) -> MPoly:
        if g.vars != self.poly.vars:
            raise InputError("operator and polynomial use different variables")
        return _unpack(g.vars, self._apply_packed(_pack(g)))


def _ratio(g: Mapping[int, object], h: Mapping[int, object]) -> Fraction:
    """``lambda`` with ``g = lambda * h``, or NotProportional."""
    if not h:
        raise NotProportional("division by the zero polynomial")
    if not g:
        return Fraction(0)
    k0 = max(h)
    lam = Fraction(g.get(k0, 0)) / Fraction(h[k0])
    if len(g) != len(h) or any(Fraction(g.get(k, 0)) != lam * h[k] for k in h):
        raise NotProportional("result is not a multiple of the expected power")
    return lam


def estimate_power_size(f: MPoly, k: int) -> int:
    degs = f.degrees()
    bounds = [
        comb(len(f) + k - 1, k),
        prod(k * d + 1 for d in degs),
        comb(len(f.vars) + k * f.degree() - 1, k * f.degree()) if f.vars else 1,
    ]
    return min(bounds)


def _check_size(f: MPoly, k: int, guard: bool) -> None:
    est = estimate_power_size(f, k)
    if guard and est > SIZE_LIMIT:
        raise SizeGuard(f"f^{k} has an estimated {est} monomials (limit {SIZE_LIMIT})")


def check_homogeneous(f: MPoly) -> int:
    """Degree of ``f``, after checking ``f(t x) = t^d f(x)``.

    Substituting ``t x`` multiplies each monomial by ``t`` to its total degree,
    so the identity holds exactly when every monomial has degree ``d``.
    """
    if not f:
        raise InputError("zero polynomial")
    d = f.degree()
    if any(sum(e) != d for e in f.terms):
        raise InputError("polynomial is not homogeneous")
    return d


def bvalue(f: MPoly, m: int, dual_scale: Sequence | None = None, guard: bool = True) -> Fraction:
    """``lambda`` with ``f*(d) f^(m+1) = lambda f^m``."""
    if not f:
        raise InputError("zero polynomial")
    if m < 0:
        raise InputError("m must be non-negative")
    _check_size(f, m + 1, guard)
    pf = _pack(f)
    _guard_exponent(pf, len(f.vars), _MASK // (m + 1))
    low = {0: 1}
    for _ in range(m):
        low = _mul(low, pf)
    high = _mul(low, pf)
    op = DiffOp.dual_of(f, dual_scale)
    return _ratio(op._apply_packed(high), low)


def bvalues(f: MPoly, upto: int, dual_scale: Sequence | None = None, guard: bool = True) -> list[Fraction]:
    """``bvalue(f, m)`` for ``m = 0..upto`` sharing the powers of ``f``."""
    _check_size(f, upto + 1, guard)
    pf = _pack(f)
    _guard_exponent(pf, len(f.vars), _MASK // (upto + 1))
    op = DiffOp.dual_of(f, dual_scale)
    out = []
    low = {0: 1}
    for _ in range(upto + 1):
        high = _mul(low, pf)
        out.append(_ratio(op._apply_packed(high), low))
        low = high
    return out


def bfunction_oracle(f: MPoly, dual_scale: Sequence | None = None, guard: bool = True) -> list[Fraction]:
    """Monic b-function of ``f`` as coefficients, lowest degree first."""
    d = check_homogeneous(f)
    vals = bvalues(f, d, dual_scale, guard)
    b = lagrange_interpolate([(m, v) for m, v in enumerate(vals)])
    if upoly_degree(b) != d:
        raise DegreeMismatch(f"interpolated degree {upoly_degree(b)} differs from deg f = {d}")
    b = upoly_monic(b)
    rts = rational_roots(b)
    if rts is None or any(r >= 0 for r in rts):
        raise DegreeMismatch("b-function roots are not all negative rationals")
    return b


def bvalue_multi(fs: Sequence[MPoly], m: Sequence[int], s: Sequence[int],
                 dual_scales: Sequence | None = None, guard: bool = True) -> Fraction:
    """``prod f_i*^{m_i}(d) prod f_i^{s_i+m_i} = lambda prod f_i^{s_i}``."""
    if not (len(fs) == len(m) == len(s)):
        raise InputError("one exponent per polynomial is required")
    if any(x < 0 for x in list(m) + list(s)):
        raise InputError("exponents must be non-negative")
    if any(not f for f in fs):
        raise InputError("zero polynomial")
    variables = fs[0].vars
    if any(f.vars != variables for f in fs):
        raise InputError("polynomials use different variables")
    top = MPoly.constant(variables, 1)
    low = MPoly.constant(variables, 1)
    op = DiffOp(MPoly.constant(variables, 1))
    for k, f in enumerate(fs):
        _check_size(f, s[k] + m[k], guard)
        scale = dual_scales[k] if dual_scales else None
        low = low * f ** s[k]
        top = top * f ** (s[k] + m[k])
        op = op * DiffOp.dual_of(f, scale) ** m[k]
    return _ratio(op._apply_packed(_pack(top)), _pack(low))


# ---- determinants --------------------------------------------------------

def det_mpoly(matrix: Sequence[Sequence[MPoly]], variables: Sequence[str]) -> MPoly:
    """Laplace expansion along rows, memoized on the set of used columns."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise NotSquare("matrix is not square")
    variables = tuple(variables)
    if n == 0:
        return MPoly.constant(variables, 1)
    nonzero = [[j for j in range(n) if matrix[i][j]] for i in range(n)]
    memo: dict[int, MPoly] = {}

    def minor(row: int, used: int) -> MPoly:
        if row == n:
            return MPoly.constant(variables, 1)
        if used in memo:
            return memo[used]
        total = MPoly(variables)
        for j in nonzero[row]:
            if (used >> j) & 1:
                continue
            sub = minor(row + 1, used | (1 << j))
            if not sub:
                continue
            # sign from the position of column j among the unused columns
            pos = j - bin(used & ((1 << j) - 1)).count("1")
            term = matrix[row][j] * sub
            total = total - term if pos % 2 else total + term
        memo[used] = total
        return total

    return minor(0, 0)


def generic_matrix(rows: int, cols: int, name: str = "x") -> tuple[list[list[MPoly]], tuple[str, ...]]:
    variables = tuple(f"{name}{i}{j}" for i in range(1, rows + 1) for j in range(1, cols + 1))
    mat = [[MPoly.variable(variables, f"{name}{i}{j}") for j in range(1, cols + 1)] for i in range(1, rows + 1)]
    return mat, variables


def det_poly(n: int) -> MPoly:
    mat, variables = generic_matrix(n, n)
    return det_mpoly(mat, variables)


def symdet_poly(n: int) -> tuple[MPoly, list[Fraction]]:
    """Determinant of a generic symmetric matrix and its dual scaling."""
    variables = tuple(f"x{i}{j}" for i in range(1, n + 1) for j in range(i, n + 1))
    mat = [[MPoly.variable(variables, f"x{min(i, j)}{max(i, j)}") for j in range(1, n + 1)]
           for i in range(1, n + 1)]
    scale = [Fraction(1) if v[1] == v[2] else Fraction(1, 2) for v in variables]
    return det_mpoly(mat, variables), scale


def sum_of_squares(m: int) -> MPoly:
    variables = tuple(f"x{i}" for i in range(1, m + 1))
    return MPoly(variables, {tuple(2 * (i == j) for j in range(m)): 1 for i in range(m)})


def binary_cubic_discriminant() -> tuple[MPoly, list[Fraction]]:
    """Discriminant of ``x0 u^3 + 3 x1 u^2 v + 3 x2 u v^2 + x3 v^3``."""
    variables = ("x0", "x1", "x2", "x3")
    f = MPoly(variables, {
        (0, 2, 2, 0): 3, (1, 0, 3, 0): -4, (0, 3, 0, 1): -4, (2, 0, 0, 2): -1, (1, 1, 1, 1): 6,
    })
    return f, [Fraction(3), Fraction(1), Fraction(1), Fraction(3)]


def maximal_minors(m: int, n: int) -> list[MPoly]:
    if m > n:
        raise InputError("maximal minors need m <= n")
    mat, variables = generic_matrix(m, n)
    return [det_mpoly([[row[j] for j in cols] for row in mat], variables)
            for cols in combinations(range(n), m)]


# ---- quiver semi-invariants --------------------------------------------------

def cv_variables(q: Quiver, beta: Mapping[str, int]) -> tuple[str, ...]:
    return tuple(
        f"{a.id}[{i},{j}]"
        for a in q.arrows
        for i in range(1, beta[a.head] + 1)
        for j in range(1, beta[a.tail] + 1)
    )


def build_cV(q: Quiver, beta: Mapping[str, int], v: Rep | Mapping[str, int], seed: int = 0) -> MPoly:
    """``c^V`` as the determinant of ``phi -> (phi_h V(a) - W(a) phi_t)``, ``W`` generic."""
    if not isinstance(v, Rep):
        rng = random.Random(seed)
        v = Rep(q, v, {a.id: random_matrix(v.get(a.head, 0), v.get(a.tail, 0), rng, 1, 4)
                       for a in q.arrows})
    alpha = v.dims
    beta = {x: int(beta.get(x, 0)) for x in q.vertices}
    if euler_form(q, alpha, beta) != 0:
        raise NotSquare(f"<dim V, beta> = {euler_form(q, alpha, beta)} is not zero")
    variables = cv_variables(q, beta)
    cols = {}
    for x in q.vertices:
        for i in range(beta[x]):
            for j in range(alpha[x]):
                cols[(x, i, j)] = len(cols)
    size = len(cols)
    zero = MPoly(variables)
    matrix = []
    for a in q.arrows:
        h, t = a.head, a.tail
        for i in range(beta[h]):
            for j in range(alpha[t]):
                row = [zero] * size
                for k in range(alpha[h]):
                    c = v.maps[a.id][k][j]
                    if c:
                        row[cols[(h, i, k)]] = row[cols[(h, i, k)]] + c
                for k in range(beta[t]):
                    w = MPoly.variable(variables, f"{a.id}[{i + 1},{k + 1}]")
                    row[cols[(t, k, j)]] = row[cols[(t, k, j)]] - w
                matrix.append(row)
    if len(matrix) != size:
        raise NotSquare("block matrix is not square")
    return det_mpoly(matrix, variables)


# ---- ideal powers ----------------------------------------------------------

def ideal_power_polynomial(m: int, n: int, d: int) -> list[Fraction]:
    """``prod_{i=n-m+1}^{n} prod_{j=0}^{d-1} (d s + i + j)`` as coefficients."""
    out = [Fraction(1)]
    for i in range(n - m + 1, n + 1):
        for j in range(d):
            nxt = [Fraction(0)] * (len(out) + 1)
            for k, c in enumerate(out):
                nxt[k] += c * (i + j)
                nxt[k + 1] += c * d
            out = nxt
    return out


def _independent(polys: list[MPoly]) -> list[int]:
    keys = sorted({e for p in polys for e in p.terms})
    chosen: list[int] = []
    rows: list[list[Fraction]] = []
    for i, p in enumerate(polys):
        cand = rows + [[p.terms.get(e, Fraction(0)) for e in keys]]
        if rank(cand) > len(rows):
            rows, chosen = cand, chosen + [i]
    return chosen


def ideal_power_generators(m: int, n: int, d: int) -> list[MPoly]:
    """A basis of the degree-``d`` products of maximal minors."""
    minors = maximal_minors(m, n)
    products = [prod(c, start=MPoly.constant(minors[0].vars, 1))
                for c in combinations_with_replacement(minors, d)]
    return [products[i] for i in _independent(products)]


def verify_ideal_power(m: int, n: int, d: int, tuples: Sequence[Sequence[int]], guard: bool = True) -> bool:
    """Check ``D f^k = c P(|k|) f^k`` for each exponent tuple ``k``.

    ``D`` is ``sum g_i*(d) f_i`` over the generators ``f_i`` and the basis
    ``g_i`` dual to them under ``<P, Q> = P*(d) Q``. The constant ``c`` is
    fixed by the first tuple.
    """
    gens = ideal_power_generators(m, n, d)
    gram = [[DiffOp(a).apply(b).evaluate([0] * len(a.vars)) for b in gens] for a in gens]
    dual = inverse(gram)
    target = ideal_power_polynomial(m, n, d)
    scale = None
    for k in tuples:
        if len(k) != len(gens):
            raise InputError(f"exponent tuples need {len(gens)} entries")
        base = MPoly.constant(gens[0].vars, 1)
        for g, e in zip(gens, k):
            if e:
                _check_size(g, e, guard)
                base = base * g ** e
        total = MPoly(gens[0].vars)
        for i, gi in enumerate(gens):
            lifted = _pack(gi * base)
            for j, gj in enumerate(gens):
                if dual[j][i]:
                    total = total + _unpack(total.vars, DiffOp(gj)._apply_packed(lifted)) * dual[j][i]
        lam = _ratio(_pack(total), _pack(base))
        p = sum(c * sum(k) ** e for e, c in enumerate(target))
        if scale is None:
            if p == 0:
                raise IdentityFailed("reference polynomial vanishes at the first tuple")
            scale = lam / p
        if lam != scale * p:
            raise IdentityFailed(f"tuple {tuple(k)}: got {lam}, expected {scale * p}")
    return True
