"""Closed-form b-functions of classical semi-invariants and quiver families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .bfactor import Factor, FactorProduct, RootMultiset, canonicalize, roots
from .errors import BadParameters
from .linform import LinForm, Relations
from .quiver import Quiver
from .slicer import SliceState

FAMILIES = {
    "determinant": ("n",),
    "symmetric_determinant": ("n",),
    "so_pair": ("m", "n"),
    "sp_pfaffian": ("m", "n"),
    "binary_cubic": (),
    "maximal_minors_ideal_power": ("m", "n", "d"),
    "d4_quiver": (),
    "dn_longest": ("n",),
}


@dataclass(frozen=True)
class FormulaId:
    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise BadParameters(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")
        if len(self.params) != len(FAMILIES[self.family]):
            names = ",".join(FAMILIES[self.family]) or "none"
            raise BadParameters(f"{self.family} takes parameters ({names})")
        _check_range(self.family, self.params)


def _check_range(family: str, p: tuple[int, ...]) -> None:
    if any(x < 1 for x in p):
        raise BadParameters("parameters must be positive")
    if family in ("so_pair", "sp_pfaffian") and not p[0] > p[1]:
        raise BadParameters(f"{family} needs m > n")
    if family == "maximal_minors_ideal_power" and p[0] > p[1]:
        raise BadParameters("maximal minors need m <= n")
    if family == "dn_longest" and p[0] < 5:
        raise BadParameters("the longest-root walk needs n >= 5")


@dataclass(frozen=True)
class ClosedForm:
    formula: FormulaId
    roots: RootMultiset | None
    product: FactorProduct | None

    def render(self) -> str:
        parts = []
        if self.product is not None:
            parts.append(canonicalize(self.product).render())
        if self.roots is not None:
            parts.append(self.roots.render_polynomial())
        return "\n".join(parts)


def _from_shifts(shifts) -> RootMultiset:
    return RootMultiset.from_roots(-Fraction(c) for c in shifts)


def _integral_product(ms: RootMultiset) -> FactorProduct | None:
    if any(r.denominator != 1 for r in ms):
        return None
    factors = []
    for r, k in ms.items():
        c = int(-r)
        for _ in range(k):
            factors.append(Factor((1,), LinForm.constant(c - 1), LinForm.constant(c)))
    return canonicalize(FactorProduct(factors, 1))


def catalog_roots(fid: FormulaId) -> RootMultiset:
    f, p = fid.family, fid.params
    if f == "determinant":
        return _from_shifts(range(1, p[0] + 1))
    if f == "symmetric_determinant":
        return _from_shifts(Fraction(i + 1, 2) for i in range(1, p[0] + 1))
    if f == "so_pair":
        m, n = p
        return _from_shifts(
            [Fraction(i + 1, 2) for i in range(1, n + 1)] + [Fraction(m - n + i, 2) for i in range(1, n + 1)]
        )
    if f == "sp_pfaffian":
        m, n = p
        return _from_shifts([2 * i - 1 for i in range(1, n + 1)] + [2 * (m - n + i) for i in range(1, n + 1)])
    if f == "binary_cubic":
        return _from_shifts([1, 1, Fraction(5, 6), Fraction(7, 6)])
    if f == "maximal_minors_ideal_power":
        m, n, d = p
        return _from_shifts(Fraction(i + j, d) for i in range(n - m + 1, n + 1) for j in range(d))
    raise BadParameters(f"{f} is symbolic; give dimension values")


def closed_form(fid: FormulaId, values: Mapping[str, int] | None = None) -> ClosedForm:
    if fid.family == "d4_quiver":
        prod = d4_product()
    elif fid.family == "dn_longest":
        prod = dn_longest_product(fid.params[0])
    else:
        ms = catalog_roots(fid)
        return ClosedForm(fid, ms, _integral_product(ms))
    ms = roots(prod, values) if values else None
    return ClosedForm(fid, ms, prod)


@dataclass(frozen=True)
class LinearFactor:
    """``d*s + n``."""

    d: int
    n: int

    @property
    def root(self) -> Fraction:
        return Fraction(-self.n, self.d)

    def render(self) -> str:
        return f"{self.d}*s + {self.n}" if self.d != 1 else f"s + {self.n}"


def euler_factor(n: int, d: int) -> LinearFactor:
    """The factor contributed by the Euler operator on an ``n``-dimensional space."""
    if n < 1 or d < 1:
        raise BadParameters("ambient dimension and degree must be positive")
    return LinearFactor(d, n)


# ---- quiver families -------------------------------------------------------

def _symbolic_state(q: Quiver, alpha: Mapping[str, int]) -> SliceState:
    syms = [f"b{v}" for v in q.vertices]
    free = Relations(syms)
    pairing = LinForm.constant(0, free)
    for v in q.vertices:
        pairing = pairing + LinForm.symbol(f"b{v}", free) * alpha[v]
    for a in q.arrows:
        pairing = pairing - LinForm.symbol(f"b{a.head}", free) * alpha[a.tail]
    rel = Relations(syms, [pairing])
    beta = {v: LinForm.symbol(f"b{v}", rel) for v in q.vertices}
    return SliceState.build(q, beta, [alpha], rel)


def dn_quiver(n: int) -> Quiver:
    """``1 -> 2 -> ... -> n-2`` with ``n-1`` and ``n`` pointing at ``n-2``."""
    if n < 4:
        raise BadParameters("D_n needs n >= 4")
    edges = [(str(i), str(i + 1)) for i in range(1, n - 2)]
    edges += [(str(n - 1), str(n - 2)), (str(n), str(n - 2))]
    return Quiver.from_edges([str(i) for i in range(1, n + 1)], edges)


def dn_longest_alpha(n: int) -> dict[str, int]:
    ends = {"1", str(n - 1), str(n)}
    return {str(i): 1 if str(i) in ends else 2 for i in range(1, n + 1)}


def dn_longest_state(n: int) -> SliceState:
    """Symbolic dimensions ``b1..bn`` tied by ``<alpha, beta> = 0``."""
    return _symbolic_state(dn_quiver(n), dn_longest_alpha(n))


def d4_quiver() -> Quiver:
    return Quiver.from_edges(["1", "2", "3", "4"], [("1", "4"), ("2", "4"), ("3", "4")])


def d4_state() -> SliceState:
    return _symbolic_state(d4_quiver(), {"1": 1, "2": 1, "3": 1, "4": 1})


def d4_product(rel: Relations | None = None) -> FactorProduct:
    rel = rel or d4_state().rel
    b = {i: LinForm.symbol(f"b{i}", rel) for i in range(1, 5)}
    zero = LinForm.constant(0, rel)
    return FactorProduct([
        Factor((1,), zero, b[4], rel),
        Factor((1,), b[1] + b[2] - b[4], b[2], rel),
        Factor((1,), b[2] + b[3] - b[4], b[3], rel),
        Factor((1,), b[1] + b[3] - b[4], b[1], rel),
    ], 1)


def _dn_head(n: int, rel: Relations):
    b = {i: LinForm.symbol(f"b{i}", rel) for i in range(1, n + 1)}
    f = lambda lo, hi, d=1: Factor((d,), lo, hi, rel)  # noqa: E731
    head = [f(b[2] - b[1], b[2])]
    head += [f(b[i] - b[1], b[i], 2) for i in range(3, n - 1)]
    return b, f, head


def dn_displayed_product(n: int, rel: Relations | None = None) -> FactorProduct:
    """The D_n product in its published display, kept for comparison."""
    rel = rel or dn_longest_state(n).rel
    b, f, head = _dn_head(n, rel)
    middle = [f(b[i] - b[2], b[i] - b[1]) for i in range(3, n - 1)]
    c = b[n - 2] - b[1]
    tail = [f(c - b[n - 1], c), f(c - b[n], c), f(LinForm.constant(0, rel), c)]
    return FactorProduct(head + middle + tail, 1)


def dn_longest_product(n: int, rel: Relations | None = None) -> FactorProduct:
    """The D_n longest-root product.

    The chain walk contributes ``[s]_{b_i-b_2, b_i-b_1}`` for ``3 <= i <= n-3``
    and leaves a D4 with legs ``b2-b1, b_{n-1}, b_n`` around ``b_{n-2}-b1``.
    """
    rel = rel or dn_longest_state(n).rel
    b, f, head = _dn_head(n, rel)
    middle = [f(b[i] - b[2], b[i] - b[1]) for i in range(3, n - 2)]
    c = b[n - 2] - b[1]
    x, y, z = b[2] - b[1], b[n - 1], b[n]
    tail = [f(LinForm.constant(0, rel), c), f(c - z, y), f(c - x, z), f(c - y, x)]
    return FactorProduct(head + middle + tail, 1)
