"""Products of ``[s]^d_{a,b}`` blocks.

``[s]^d_{a,b}`` is the product over ``a < i <= b`` and ``0 <= j < d`` of
``(d*s + i + j)``.  With several variables the block carries an exponent
vector ``dvec`` and the linear part is ``sum_k dvec[k]*s_k``; the ``d`` in the
shifts is ``sum_k m_k*dvec[k]`` for the m-tuple fixed at expansion time.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BoundViolation
from .linform import LinForm, Relations
from .mpoly import MPoly, render_upoly, upoly_from_roots, upoly_mul


@dataclass(frozen=True)
class Factor:
    dvec: tuple[int, ...]
    a: LinForm
    b: LinForm

    def __init__(self, dvec: Sequence[int] | int, a, b, rel: Relations | None = None):
        dv = (dvec,) if isinstance(dvec, int) else tuple(int(x) for x in dvec)
        if any(x < 0 for x in dv):
            raise ValueError("exponent vector entries must be non-negative")
        object.__setattr__(self, "dvec", dv)
        object.__setattr__(self, "a", LinForm.lift(a, rel))
        object.__setattr__(self, "b", LinForm.lift(b, rel))

    @property
    def nvars(self) -> int:
        return len(self.dvec)

    def is_unit(self) -> bool:
        return not any(self.dvec) or self.a == self.b

    def sort_key(self) -> tuple:
        return (self.dvec, self.a.sort_key(), self.b.sort_key())

    def bounds(self, values: Mapping[str, int] | None = None) -> tuple[int, int]:
        lo, hi = _as_int(self.a, values), _as_int(self.b, values)
        if lo > hi:
            raise BoundViolation(f"lower bound {lo} exceeds upper bound {hi} in {self.render()}")
        return lo, hi

    def linear_factors(self, values=None, m: Sequence[int] | None = None) -> list[tuple[tuple[int, ...], int]]:
        """The factors ``sum dvec_k s_k + c`` as ``(dvec, c)`` pairs."""
        lo, hi = self.bounds(values)
        d = self._shift_width(m)
        return [(self.dvec, i + j) for i in range(lo + 1, hi + 1) for j in range(d)]

    def _shift_width(self, m: Sequence[int] | None) -> int:
        if self.nvars == 1:
            return self.dvec[0]
        if m is None or len(m) != self.nvars:
            raise ValueError("an m-tuple of matching length is required for several variables")
        return sum(int(mk) * dk for mk, dk in zip(m, self.dvec))

    def degree(self):
        """``(b - a) * d1`` for one variable; a LinForm in general."""
        return (self.b - self.a) * sum(self.dvec) if self.nvars == 1 else (self.b - self.a)

    def render(self) -> str:
        d = ",".join(str(x) for x in self.dvec)
        return f"[s]^{{{d}}}_{{{self.a.render()},{self.b.render()}}}"

    def to_json(self) -> dict:
        return {"dvec": list(self.dvec), "a": self.a.to_json(), "b": self.b.to_json()}

    def __repr__(self) -> str:
        return self.render()


def _as_int(form: LinForm, values: Mapping[str, int] | None) -> int:
    x = form.evaluate(values or {}) if not form.is_constant() else form.const
    if x.denominator != 1:
        raise BoundViolation(f"bound {form.render()} is not an integer")
    return int(x)


@dataclass(frozen=True)
class FactorProduct:
    factors: tuple[Factor, ...]
    nvars: int = 1

    def __init__(self, factors: Iterable[Factor] = (), nvars: int | None = None):
        fs = tuple(factors)
        if nvars is None:
            nvars = fs[0].nvars if fs else 1
        if any(f.nvars != nvars for f in fs):
            raise ValueError("all factors must share the number of variables")
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "nvars", nvars)

    def __mul__(self, other: "FactorProduct | Factor") -> "FactorProduct":
        if isinstance(other, Factor):
            return FactorProduct(self.factors + (other,), self.nvars)
        return FactorProduct(self.factors + other.factors, self.nvars)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorProduct):
            return NotImplemented
        return self.nvars == other.nvars and signature(self) == signature(other)

    def __hash__(self):
        return hash(signature(self))

    def canonical_factors(self) -> tuple[Factor, ...]:
        return canonicalize(self).factors

    def render(self) -> str:
        fs = canonicalize(self).factors
        return "*".join(f.render() for f in fs) if fs else "1"

    __str__ = render

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "factors": [f.to_json() for f in canonicalize(self).factors]}

    def degree(self):
        total = 0
        for f in self.factors:
            total = total + f.degree()
        return total


def canonicalize(p: FactorProduct) -> FactorProduct:
    """Drop units, merge chains ``[s]_{c,a}[s]_{a,b} = [s]_{c,b}``, then sort.

    When a factor could chain with several partners, the pair whose earlier
    member comes first in the input order is merged, so the result follows
    the order in which a derivation emitted its factors.  The output is sorted
    and has no chainable pair left, hence canonicalizing twice changes nothing.
    """
    fs = [f for f in p.factors if not f.is_unit()]
    while True:
        best = None
        for i, left in enumerate(fs):
            for j, right in enumerate(fs):
                if i != j and left.dvec == right.dvec and left.b == right.a:
                    key = (min(i, j), max(i, j))
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, i, j = best
        merged = Factor(fs[i].dvec, fs[i].a, fs[j].b)
        keep = min(i, j)
        rest = []
        for k, f in enumerate(fs):
            if k == keep:
                if not merged.is_unit():
                    rest.append(merged)
            elif k not in (i, j):
                rest.append(f)
        fs = rest
    return FactorProduct(sorted(fs, key=Factor.sort_key), p.nvars)


def signature(p: FactorProduct) -> frozenset:
    """Order-free invariant: per exponent vector, the signed multiset of bounds.

    ``[s]_{a,b}`` contributes ``+b`` and ``-a``.  Products with the same
    signature expand to the same polynomial wherever every factor has
    ``a <= b``; the merge rule preserves it.
    """
    acc: dict[tuple, Counter] = {}
    for f in p.factors:
        if f.is_unit():
            continue
        c = acc.setdefault(f.dvec, Counter())
        c[f.b] += 1
        c[f.a] -= 1
    return frozenset(
        (dv, frozenset((k, v) for k, v in c.items() if v)) for dv, c in acc.items()
        if any(c.values())
    )


def expand(p: FactorProduct, values: Mapping[str, int] | None = None, m: Sequence[int] | None = None):
    """Multiply out; a coefficient list for one variable, an MPoly otherwise."""
    if p.nvars == 1:
        poly = [Fraction(1)]
        for f in p.factors:
            for dv, c in f.linear_factors(values):
                poly = upoly_mul(poly, [Fraction(c), Fraction(dv[0])])
        return poly
    names = tuple(f"s{k + 1}" for k in range(p.nvars))
    poly = MPoly.constant(names, 1)
    for f in p.factors:
        for dv, c in f.linear_factors(values, m):
            lin = MPoly.constant(names, c)
            for k, dk in enumerate(dv):
                if dk:
                    lin = lin + MPoly.variable(names, names[k]) * dk
            poly = poly * lin
    return poly


def evaluate(p: FactorProduct, s: Sequence, values: Mapping[str, int] | None = None,
             m: Sequence[int] | None = None) -> Fraction:
    """Value of the expanded product at the point ``s`` (one entry per variable)."""
    total = Fraction(1)
    for f in p.factors:
        for dv, c in f.linear_factors(values, m if p.nvars > 1 else None):
            total *= sum(Fraction(dk) * Fraction(sk) for dk, sk in zip(dv, s)) + c
    return total


class RootMultiset(Counter):
    """Rational roots with multiplicities."""

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RootMultiset":
        return cls(Fraction(r) for r in roots)

    def degree(self) -> int:
        return sum(self.values())

    def polynomial(self) -> list[Fraction]:
        return upoly_from_roots(self.elements())

    def sorted_desc(self) -> list[tuple[Fraction, int]]:
        return sorted(self.items(), key=lambda kv: kv[0], reverse=True)

    def render(self) -> str:
        return ", ".join(f"{_fmt(r)}:{k}" for r, k in self.sorted_desc())

    def render_polynomial(self) -> str:
        out = []
        for r, k in sorted(self.items(), key=lambda kv: kv[0], reverse=True):
            shift = -r
            if shift == 0:
                body = "s"
            else:
                body = f"(s + {_fmt(shift)})" if shift > 0 else f"(s - {_fmt(-shift)})"
            out.append(body if k == 1 else f"{body}^{k}")
        return "*".join(out) if out else "1"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def roots(p: FactorProduct, values: Mapping[str, int] | None = None) -> RootMultiset:
    if p.nvars != 1:
        raise ValueError("roots are defined for one variable")
    out = RootMultiset()
    for f in p.factors:
        d = f.dvec[0]
        for _, c in f.linear_factors(values):
            out[Fraction(-c, d)] += 1
    return out


def monic_expand(p: FactorProduct, values: Mapping[str, int] | None = None) -> list[Fraction]:
    return roots(p, values).polynomial()


def render_monic(p: FactorProduct, values: Mapping[str, int] | None = None) -> str:
    return render_upoly(monic_expand(p, values))
