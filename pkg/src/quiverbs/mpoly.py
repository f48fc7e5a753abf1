"""Sparse multivariate polynomials with exact rational coefficients.

Univariate polynomials are plain coefficient lists (low degree first) and get
a handful of module-level helpers at the bottom of the file.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exp = tuple[int, ...]


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, Fraction] | None = None):
        self.vars: tuple[str, ...] = tuple(variables)
        self.terms: dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "MPoly":
        return cls(variables, {(0,) * len(variables): Fraction(c)})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MPoly":
        i = list(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    def _check(self, other: "MPoly") -> None:
        if self.vars != other.vars:
            raise ValueError("polynomials over different variable registries")

    def _wrap(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(self.vars, other)

    def __add__(self, other) -> "MPoly":
        other = self._wrap(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return _raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "MPoly":
        return self._wrap(other) - self

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            k = Fraction(other)
            if not k:
                return MPoly(self.vars)
            return _raw(self.vars, {e: c * k for e, c in self.terms.items()})
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self) -> list[int]:
        """Largest exponent of each variable."""
        out = [0] * len(self.vars)
        for e in self.terms:
            for i, x in enumerate(e):
                if x > out[i]:
                    out[i] = x
        return out

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def scaled_variables(self, scales: Sequence) -> "MPoly":
        """Substitute ``x_i -> scales[i] * x_i``."""
        out = {}
        for e, c in self.terms.items():
            k = Fraction(c)
            for s, x in zip(scales, e):
                if x:
                    k *= Fraction(s) ** x
            out[e] = k
        return MPoly(self.vars, out)

    def evaluate(self, point: Mapping[str, object] | Sequence) -> Fraction:
        vals = [point[v] for v in self.vars] if isinstance(point, Mapping) else list(point)
        total = Fraction(0)
        for e, c in self.terms.items():
            t = Fraction(c)
            for v, x in zip(vals, e):
                if x:
                    t *= Fraction(v) ** x
            total += t
        return total

    def leading_term(self) -> tuple[Exp, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def extend(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a larger registry containing ``self.vars``."""
        pos = [list(variables).index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for p, x in zip(pos, e):
                ne[p] = x
            out[tuple(ne)] = c
        return MPoly(variables, out)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if x == 1 else f"{v}^{x}" for v, x in zip(self.vars, e) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _raw(variables: tuple[str, ...], terms: dict[Exp, Fraction]) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.vars = variables
    p.terms = terms
    return p


def monomial_estimate(nvars: int, degree: int) -> int:
    """Number of monomials of the given total degree in ``nvars`` variables."""
    from math import comb

    if nvars == 0:
        return 1
    return comb(nvars + degree - 1, degree)


# ---- univariate helpers -------------------------------------------------

UPoly = list  # coefficients, low degree first


def upoly_trim(p: Sequence) -> list[Fraction]:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def upoly_mul(p: Sequence, q: Sequence) -> list[Fraction]:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return upoly_trim(out)


def upoly_from_roots(roots: Iterable) -> list[Fraction]:
    out = [Fraction(1)]
    for r in roots:
        out = upoly_mul(out, [-Fraction(r), Fraction(1)])
    return out


def upoly_monic(p: Sequence) -> list[Fraction]:
    q = upoly_trim(p)
    if not q:
        raise ZeroDivisionError("zero polynomial has no monic form")
    lead = q[-1]
    return [c / lead for c in q]


def upoly_eval(p: Sequence, x) -> Fraction:
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def upoly_degree(p: Sequence) -> int:
    return len(upoly_trim(p)) - 1


def lagrange_interpolate(points: Sequence[tuple]) -> list[Fraction]:
    """The unique polynomial of degree < len(points) through ``points``."""
    xs = [Fraction(x) for x, _ in points]
    out = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(zip(xs, (Fraction(y) for _, y in points))):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = upoly_mul(basis, [-xj, Fraction(1)])
                denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            out[k] += c * scale
    return upoly_trim(out)


_DENOMINATORS = (1, 2, 3, 4, 6, 12, 60, 840)


def rational_roots(p: Sequence, max_denominator: int = 10_000) -> list[Fraction] | None:
    """All roots with multiplicity when every root is rational, else ``None``.

    Floating-point roots only propose candidates; acceptance requires the
    exact identity ``p == lead * prod(s - r)``.
    """
    q = upoly_trim(p)
    if len(q) <= 1:
        return []
    monic = upoly_monic(q)
    found: list[Fraction] = []
    rest = monic
    # peel exact rational roots one at a time so clustered roots stay accurate
    for _ in range(len(q) - 1):
        cand = np.roots([float(c) for c in reversed(rest)])
        best = None
        for z in sorted(cand, key=lambda z: abs(z.imag)):
            # clustered roots are inaccurate in floating point, so small
            # denominators are tried before the fine approximation
            for den in _DENOMINATORS + (max_denominator,):
                r = Fraction(float(z.real)).limit_denominator(min(den, max_denominator))
                quo, rem = _divide_linear(rest, r)
                if rem == 0:
                    best = (r, quo)
                    break
            if best is not None:
                break
        if best is None:
            return None
        found.append(best[0])
        rest = best[1]
    if upoly_from_roots(found) != monic:
        return None
    return sorted(found)


def _divide_linear(p: Sequence[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    """Synthetic division of ``p`` by ``s - r``."""
    coeffs = list(reversed(p))
    out = []
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * r + c
        out.append(acc)
    rem = out.pop()
    return list(reversed(out)), rem


def render_upoly(p: Sequence, var: str = "s") -> str:
    q = upoly_trim(p)
    if not q:
        return "0"
    parts = []
    for k in range(len(q) - 1, -1, -1):
        c = q[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]
