"""Quivers, the Euler form and the weight/root conversions built on it.

Vectors indexed by vertices are plain dicts.  Entries may be ints,
Fractions or LinForms: every conversion only adds and subtracts, so the
numeric and symbolic cases share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import InputError, NonIntegralRoot
from .linalg import inverse, matmul, transpose

Vec = dict  # vertex id -> int | Fraction | LinForm


@dataclass(frozen=True)
class Arrow:
    id: str
    tail: str
    head: str

    def __iter__(self):
        return iter((self.id, self.tail, self.head))


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __init__(self, vertices: Iterable[str], arrows: Iterable = ()):
        vs = tuple(str(v) for v in vertices)
        arr = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2])) for a in arrows)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", arr)
        self._validate()

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable[tuple]) -> "Quiver":
        """Build with arrow ids generated as ``a1, a2, ...``."""
        return cls(vertices, [(f"a{i}", t, h) for i, (t, h) in enumerate(edges, 1)])

    def _validate(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex id")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise InputError("duplicate arrow id")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vset or a.head not in vset:
                raise InputError(f"arrow {a.id} uses an undeclared vertex")
        self.topological_order()

    def topological_order(self) -> tuple[str, ...]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.head] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        out = []
        succ: dict[str, list[str]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            succ[a.tail].append(a.head)
        while ready:
            v = ready.pop(0)
            out.append(v)
            for h in succ[v]:
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
        if len(out) != len(self.vertices):
            raise InputError("quiver has an oriented cycle")
        return tuple(out)

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    def incoming(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.head == v]

    def outgoing(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == v]

    def incident(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tail == v or a.head == v]

    def degree(self, v: str) -> int:
        return sum((a.tail == v) + (a.head == v) for a in self.arrows)

    def neighbors(self, v: str) -> list[str]:
        out = []
        for a in self.arrows:
            if a.tail == v:
                out.append(a.head)
            elif a.head == v:
                out.append(a.tail)
        return out

    def components(self) -> list[tuple[str, ...]]:
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.neighbors(x):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            order = {x: i for i, x in enumerate(self.vertices)}
            comps.append(tuple(sorted(comp, key=order.__getitem__)))
        return comps

    def is_tree(self) -> bool:
        return len(self.components()) <= 1 and len(self.arrows) == len(self.vertices) - 1

    def restrict(self, keep: Iterable[str]) -> "Quiver":
        ks = set(keep)
        return Quiver(
            [v for v in self.vertices if v in ks],
            [a for a in self.arrows if a.tail in ks and a.head in ks],
        )

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.id, a.head, a.tail) for a in self.arrows])

    def path_counts_from(self, v: str) -> dict[str, int]:
        """Number of paths from ``v`` to each vertex (the projective at ``v``)."""
        counts = {x: 0 for x in self.vertices}
        counts[v] = 1
        for x in self.topological_order():
            if counts[x]:
                for a in self.outgoing(x):
                    counts[a.head] += counts[x]
        return counts


def euler_matrix(q: Quiver) -> list[list[int]]:
    """``E`` with ``<a, b> = a^T E b``."""
    idx = {v: i for i, v in enumerate(q.vertices)}
    n = len(q.vertices)
    e = [[int(i == j) for j in range(n)] for i in range(n)]
    for a in q.arrows:
        e[idx[a.tail]][idx[a.head]] -= 1
    return e


def euler_form(q: Quiver, alpha: Mapping, beta: Mapping):
    total = 0
    for v in q.vertices:
        x, y = alpha.get(v, 0), beta.get(v, 0)
        if _both_nonzero(x, y):
            total = total + x * y
    for a in q.arrows:
        x, y = alpha.get(a.tail, 0), beta.get(a.head, 0)
        if _both_nonzero(x, y):
            total = total - x * y
    return total


def _both_nonzero(x, y) -> bool:
    return not (_is_zero(x) or _is_zero(y))


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def weight_of_root(q: Quiver, alpha: Mapping) -> Vec:
    """``sigma = E^T alpha``: ``sigma(x) = alpha_x - sum of alpha over arrows into x``."""
    sigma = {}
    for v in q.vertices:
        s = alpha.get(v, 0)
        for a in q.incoming(v):
            s = s - alpha.get(a.tail, 0)
        sigma[v] = s
    return sigma


def root_of_weight(q: Quiver, sigma: Mapping) -> Vec:
    """Solve ``E^T alpha = sigma`` in topological order."""
    alpha: Vec = {}
    for v in q.topological_order():
        s = sigma.get(v, 0)
        for a in q.incoming(v):
            s = s + alpha[a.tail]
        alpha[v] = s
    for v, x in alpha.items():
        if isinstance(x, Fraction) and x.denominator != 1:
            raise NonIntegralRoot(f"weight does not come from an integral root at {v}")
    return {v: alpha[v] for v in q.vertices}


def dual_root(q: Quiver, alpha: Mapping) -> Vec:
    """``alpha* = C alpha``, found by solving ``-E alpha* = sigma``."""
    return dual_of_weight(q, weight_of_root(q, alpha))


def dual_of_weight(q: Quiver, sigma: Mapping) -> Vec:
    dual: Vec = {}
    for v in reversed(q.topological_order()):
        s = -sigma.get(v, 0)
        for a in q.outgoing(v):
            s = s + dual[a.head]
        dual[v] = s
    return {v: dual[v] for v in q.vertices}


def weight_of_dual(q: Quiver, dual: Mapping) -> Vec:
    """``sigma = -E alpha*``."""
    sigma = {}
    for v in q.vertices:
        s = -dual.get(v, 0)
        for a in q.outgoing(v):
            s = s + dual.get(a.head, 0)
        sigma[v] = s
    return sigma


def coxeter(q: Quiver) -> list[list[Fraction]]:
    """``C = -E^{-1} E^T``; integral because ``E`` is unitriangular."""
    e = euler_matrix(q)
    c = matmul(inverse(e), transpose(e))
    return [[-x for x in row] for row in c]


def pair_with_weight(q: Quiver, sigma: Mapping, beta: Mapping):
    """``sigma(beta) = sum sigma(x) beta_x``."""
    total = 0
    for v in q.vertices:
        s, b = sigma.get(v, 0), beta.get(v, 0)
        if _both_nonzero(s, b):
            total = total + s * b
    return total


def simple(q: Quiver, v: str) -> dict[str, int]:
    return {x: int(x == v) for x in q.vertices}
