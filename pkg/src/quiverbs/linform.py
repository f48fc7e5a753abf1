"""Affine-linear forms in dimension symbols, reduced modulo linear relations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InconsistentRelations, ParseError
from .linalg import rref

Number = Union[int, Fraction]


class Relations:
    """Linear relations among symbols, solved for the earliest-declared symbols.

    Each relation is given as a LinForm that must vanish.  Gaussian elimination
    runs with columns in declaration order, so the pivot (eliminated) symbol of
    every relation is the first declared symbol it still involves.
    """

    def __init__(self, symbols: Iterable[str] = (), equations: Iterable["LinForm"] = ()):
        self.symbols: tuple[str, ...] = tuple(dict.fromkeys(symbols))
        eqs = [e for e in equations]
        for e in eqs:
            for s in e.coeffs:
                if s not in self.symbols:
                    self.symbols = self.symbols + (s,)
        self.equations: tuple[LinForm, ...] = tuple(LinForm(e.coeffs, e.const) for e in eqs)
        self._index = {s: i for i, s in enumerate(self.symbols)}
        self._solved: dict[str, tuple[dict[str, Fraction], Fraction]] = {}
        n = len(self.symbols)
        rows = []
        for e in self.equations:
            row = [Fraction(0)] * (n + 1)
            for s, c in e.coeffs.items():
                row[self._index[s]] = Fraction(c)
            row[n] = Fraction(e.const)
            rows.append(row)
        if rows:
            red, pivots = rref(rows)
            for i, p in enumerate(pivots):
                if p == n:
                    raise InconsistentRelations("relations imply 0 = nonzero constant")
                sym = self.symbols[p]
                expr = {self.symbols[j]: -red[i][j] for j in range(p + 1, n) if red[i][j]}
                self._solved[sym] = (expr, -red[i][n])

    @property
    def eliminated(self) -> tuple[str, ...]:
        return tuple(s for s in self.symbols if s in self._solved)

    def order_key(self, symbol: str) -> tuple[int, str]:
        return (self._index.get(symbol, len(self.symbols)), symbol)

    def reduce(self, form: "LinForm") -> "LinForm":
        coeffs: dict[str, Fraction] = {}
        const = Fraction(form.const)
        for s, c in form.coeffs.items():
            if s in self._solved:
                expr, k = self._solved[s]
                const += c * k
                for t, d in expr.items():
                    coeffs[t] = coeffs.get(t, Fraction(0)) + c * d
            else:
                coeffs[s] = coeffs.get(s, Fraction(0)) + c
        return LinForm(coeffs, const, self)

    def with_symbols(self, symbols: Iterable[str]) -> "Relations":
        return Relations(tuple(self.symbols) + tuple(symbols), self.equations)

    def holds(self, values: Mapping[str, Number]) -> bool:
        return all(e.evaluate(values) == 0 for e in self.equations)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Relations) and (self.symbols, self.equations) == (
            other.symbols,
            other.equations,
        )

    def __hash__(self) -> int:
        return hash((self.symbols, self.equations))

    def __repr__(self) -> str:
        eqs = ", ".join(f"{e} = 0" for e in self.equations)
        return f"Relations([{', '.join(self.symbols)}]; {eqs})"


NO_RELATIONS = Relations()


def _clean(coeffs: Mapping[str, Number]) -> dict[str, Fraction]:
    return {s: Fraction(c) for s, c in coeffs.items() if c != 0}


@dataclass(frozen=True, eq=False)
class LinForm:
    """``sum(coeffs[s] * s) + const``; stored already reduced when ``rel`` is set."""

    coeffs: Mapping[str, Fraction] = field(default_factory=dict)
    const: Fraction = Fraction(0)
    rel: Relations | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _clean(self.coeffs))
        object.__setattr__(self, "const", Fraction(self.const))

    @classmethod
    def constant(cls, value: Number, rel: Relations | None = None) -> "LinForm":
        return cls({}, Fraction(value), rel)

    @classmethod
    def symbol(cls, name: str, rel: Relations | None = None) -> "LinForm":
        form = cls({name: Fraction(1)}, Fraction(0), rel)
        return rel.reduce(form) if rel is not None else form

    @classmethod
    def lift(cls, value: "LinForm | Number", rel: Relations | None = None) -> "LinForm":
        if isinstance(value, LinForm):
            if rel is not None and value.rel is not rel:
                return rel.reduce(value)
            return value
        return cls.constant(value, rel)

    def _rel_with(self, other: "LinForm") -> Relations | None:
        if self.rel is None:
            return other.rel
        return self.rel

    def _combine(self, other: "LinForm | Number", sign: int) -> "LinForm":
        other = LinForm.lift(other)
        rel = self._rel_with(other)
        coeffs = dict(self.coeffs)
        for s, c in other.coeffs.items():
            coeffs[s] = coeffs.get(s, Fraction(0)) + sign * c
        out = LinForm(coeffs, self.const + sign * other.const, rel)
        if rel is not None and (other.rel is not rel or self.rel is not rel):
            out = rel.reduce(out)
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return LinForm.lift(other, self.rel)._combine(self, -1)

    def __neg__(self):
        return LinForm({s: -c for s, c in self.coeffs.items()}, -self.const, self.rel)

    def __mul__(self, k: Number):
        if isinstance(k, LinForm):
            if k.is_constant():
                k = k.const
            elif self.is_constant():
                return k * self.const
            else:
                raise TypeError("product of two non-constant forms is not linear")
        return LinForm({s: c * k for s, c in self.coeffs.items()}, self.const * k, self.rel)

    __rmul__ = __mul__

    def reduced(self, rel: Relations) -> "LinForm":
        return rel.reduce(self)

    def is_constant(self) -> bool:
        return not self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs and self.const == 0

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        total = Fraction(self.const)
        for s, c in self.coeffs.items():
            if s not in values:
                raise KeyError(f"no value for symbol {s!r}")
            total += c * Fraction(values[s])
        return total

    def substitute(self, values: Mapping[str, Number]) -> "LinForm":
        coeffs = {}
        const = Fraction(self.const)
        for s, c in self.coeffs.items():
            if s in values:
                const += c * Fraction(values[s])
            else:
                coeffs[s] = c
        return LinForm(coeffs, const, self.rel)

    def sort_key(self) -> tuple:
        rel = self.rel or NO_RELATIONS
        items = sorted(self.coeffs.items(), key=lambda kv: rel.order_key(kv[0]))
        return (tuple((rel.order_key(s), c) for s, c in items), self.const)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.const == other
        if not isinstance(other, LinForm):
            return NotImplemented
        a, b = self, other
        rel = a.rel or b.rel
        if rel is not None:
            if a.rel is not rel:
                a = rel.reduce(a)
            if b.rel is not rel:
                b = rel.reduce(b)
        return a.coeffs == b.coeffs and a.const == b.const

    def __hash__(self) -> int:
        return hash((frozenset(self.coeffs.items()), self.const))

    def to_json(self) -> dict:
        return {
            "coeffs": {s: _num_json(c) for s, c in self.coeffs.items()},
            "const": _num_json(self.const),
        }

    def render(self) -> str:
        rel = self.rel or NO_RELATIONS
        parts: list[str] = []
        for s, c in sorted(self.coeffs.items(), key=lambda kv: rel.order_key(kv[0])):
            mag = abs(c)
            term = s if mag == 1 else f"{_fmt(mag)}*{s}"
            parts.append(("- " if c < 0 else "+ ") + term)
        if self.const or not parts:
            parts.append(("- " if self.const < 0 else "+ ") + _fmt(abs(self.const)))
        text = " ".join(parts)
        if text.startswith("+ "):
            return text[2:]
        return "-" + text[2:]

    __str__ = render

    def __repr__(self) -> str:
        return f"LinForm({self.render()!r})"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _num_json(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_']*)?\s*"
)


def parse_linform(text: str, rel: Relations | None = None, line: int | None = None) -> LinForm:
    """Parse sums like ``2*b4 - b1 + 3`` or ``3/2*b5``."""
    s = text.strip()
    if not s:
        raise ParseError("empty linear form", line)
    pos = 0
    coeffs: dict[str, Fraction] = {}
    const = Fraction(0)
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"cannot parse linear form {text!r}", line)
        sign, num, sym = m.groups()
        if not first and sign is None:
            raise ParseError(f"missing operator in {text!r}", line)
        if num is None and sym is None:
            raise ParseError(f"dangling operator in {text!r}", line)
        k = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            k = -k
        if sym is None:
            const += k
        else:
            coeffs[sym] = coeffs.get(sym, Fraction(0)) + k
        pos = m.end()
        first = False
    form = LinForm(coeffs, const)
    return rel.reduce(form) if rel is not None else form
