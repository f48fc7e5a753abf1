"""Positive roots and generic (canonical) decompositions for Dynkin quivers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .dynkin import component_type, dynkin_type
from .errors import InputError, NotDynkin, NotTypeD, OrderingFailed, SearchFailed
from .homext import Rep, generic_hom, hom_dim
from .quiver import Quiver, euler_form

Root = tuple[int, ...]


def _as_dict(q: Quiver, vec: Sequence[int] | Mapping[str, int]) -> dict[str, int]:
    if isinstance(vec, Mapping):
        return {v: int(vec.get(v, 0)) for v in q.vertices}
    if len(vec) != len(q.vertices):
        raise InputError("dimension vector has the wrong length")
    return dict(zip(q.vertices, (int(x) for x in vec)))


def _as_tuple(q: Quiver, vec) -> Root:
    d = _as_dict(q, vec)
    return tuple(d[v] for v in q.vertices)


def _form(q: Quiver, a: Root, b: Root) -> int:
    return euler_form(q, dict(zip(q.vertices, a)), dict(zip(q.vertices, b)))


@dataclass(frozen=True)
class RootTable:
    """Positive roots with their pairwise generic hom and ext.

    ``method="euler"`` uses that for a Dynkin quiver Hom or Ext between two
    indecomposables always vanishes, so ``hom = max(<a,b>, 0)``.
    ``method="sampled"`` takes the minimum over random representations.
    """

    quiver: Quiver
    roots: tuple[Root, ...]
    hom: tuple[tuple[int, ...], ...]
    method: str = "euler"

    def index(self, root: Root) -> int:
        return self.roots.index(tuple(root))

    def ext(self, i: int, j: int) -> int:
        return self.hom[i][j] - _form(self.quiver, self.roots[i], self.roots[j])

    def compatible(self, i: int, j: int) -> bool:
        return self.ext(i, j) == 0 and self.ext(j, i) == 0

    def __len__(self) -> int:
        return len(self.roots)


def _closure(q: Quiver) -> list[Root]:
    n = len(q.vertices)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                s = tuple(x + (k == i) for k, x in enumerate(r))
                if s not in seen and _form(q, s, s) == 1:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(seen, key=lambda r: (-sum(r), r))


def positive_roots(q: Quiver, method: str = "euler", seed: int = 0) -> RootTable:
    if not q.vertices or dynkin_type(q) is None:
        raise NotDynkin("quiver is not of Dynkin type")
    return _table(q, method, seed)


@lru_cache(maxsize=256)
def _table(q: Quiver, method: str, seed: int) -> RootTable:
    roots = _closure(q)
    if method == "euler":
        hom = [[max(_form(q, a, b), 0) for b in roots] for a in roots]
    elif method == "sampled":
        hom = [
            [generic_hom(q, dict(zip(q.vertices, a)), dict(zip(q.vertices, b)), seed) for b in roots]
            for a in roots
        ]
    else:
        raise InputError(f"unknown hom method {method!r}")
    return RootTable(q, tuple(roots), tuple(tuple(r) for r in hom), method)


def expected_root_count(kind: str) -> int:
    family, n = kind[0], int(kind[1:])
    if family == "A":
        return n * (n + 1) // 2
    if family == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


# ---- Ext-orthogonal exact cover ---------------------------------------------

def canonical_search(q: Quiver, beta, table: RootTable | None = None) -> Counter:
    """The multiset of pairwise Ext-orthogonal roots summing to ``beta``.

    Every vertex is covered completely before moving to the next, and roots
    at one vertex are taken in increasing table order, so each multiset is
    produced once. The search runs to exhaustion to confirm uniqueness.
    """
    table = table or positive_roots(q)
    target = list(_as_tuple(q, beta))
    if any(x < 0 for x in target):
        raise InputError("dimension vectors must be non-negative")
    n = len(target)
    roots = table.roots
    compat = [
        sum(1 << j for j in range(len(roots)) if j != i and table.compatible(i, j))
        for i in range(len(roots))
    ]
    selfok = [table.ext(i, i) == 0 for i in range(len(roots))]
    by_vertex = [[i for i, r in enumerate(roots) if r[v] > 0 and selfok[i]] for v in range(n)]
    found: list[Counter] = []
    rest = target[:]
    chosen: list[tuple[int, int]] = []

    def fits(i: int, allowed: int) -> int:
        if not (allowed >> i) & 1:
            return 0
        r = roots[i]
        return min(rest[v] // r[v] for v in range(n) if r[v])

    def go(v: int, floor: int, allowed: int) -> None:
        while v < n and rest[v] == 0:
            v, floor = v + 1, -1
        if v == n:
            found.append(Counter({roots[i]: k for i, k in chosen}))
            return
        for i in by_vertex[v]:
            if i <= floor:
                continue
            top = fits(i, allowed)
            for k in range(top, 0, -1):
                r = roots[i]
                for x in range(n):
                    rest[x] -= k * r[x]
                chosen.append((i, k))
                go(v, i, allowed & compat[i])
                chosen.pop()
                for x in range(n):
                    rest[x] += k * r[x]
                if len(found) > 1:
                    return

    go(0, -1, (1 << len(roots)) - 1)
    if not found:
        raise SearchFailed(f"no Ext-orthogonal decomposition of {tuple(target)}")
    if len(found) > 1:
        raise SearchFailed(f"decomposition of {tuple(target)} is not unique")
    return found[0]


# ---- type D diagrammatic procedure -------------------------------------------

def _thin_rep(q: Quiver, dims: Root) -> Rep:
    d = dict(zip(q.vertices, dims))
    maps = {a.id: [[Fraction(1)]] for a in q.arrows if d[a.tail] and d[a.head]}
    return Rep(q, d, maps)


@dataclass
class DnDiagram:
    # vertex playing each role: "1", "2" (branch) and "n"
    labels: dict[str, str]
    flipped: bool
    type_a: Counter
    z_list: list[Root]
    first_class: list[Root]
    second_class: list[Root]
    circles: int
    merges: list[tuple[int, Root | None, Root | None]] = field(default_factory=list)
    stop: str = ""
    lines: tuple[int, int] = (0, 0)
    non_unique: bool = False
    result: Counter = field(default_factory=Counter)

    def render(self) -> str:
        out = [f"roles 1={self.labels['1']} 2={self.labels['2']} n={self.labels['n']}"
               + (" (arrows flipped)" if self.flipped else "")]
        out += [f"outside {r}" for r in self.z_list]
        for row, v, w in self.merges:
            out.append(f"row {row}: first {v} second {w}")
        out.append(f"stopped by ({self.stop})" + (" ; ordering not unique" if self.non_unique else ""))
        return "\n".join(out)


def type_d_roles(q: Quiver) -> dict[str, str]:
    kind = component_type(q)
    if kind is None or kind[0] != "D":
        raise NotTypeD("quiver is not of type D")
    branch = next(v for v in q.vertices if q.degree(v) == 3)
    leaves = [y for y in q.vertices if y in q.neighbors(branch) and q.degree(y) == 1]
    return {"1": leaves[0], "2": branch, "n": leaves[-1]}


def _topological(items: list[Root], before) -> tuple[list[Root], bool]:
    """Order so that ``before(x, y)`` puts ``x`` ahead of ``y``; ties keep input order."""
    left = list(items)
    out: list[Root] = []
    ambiguous = False
    while left:
        ready = [x for x in left if not any(before(y, x) for y in left if y != x)]
        if not ready:
            raise OrderingFailed("hom relation among one class is cyclic")
        ambiguous |= len(ready) > 1
        out.append(ready[0])
        left.remove(ready[0])
    return out, ambiguous


def order_classes(first: Sequence[Root], second: Sequence[Root], hom) -> tuple[list[Root], list[Root], bool]:
    """Order both classes for the merge.

    Within a class, a nonzero map ``x -> y`` between distinct members puts
    ``y`` first. Members of the second class are sorted by how many leading
    first-class copies they map to, with the same rule breaking ties.
    ``first`` and ``second`` list copies, so repeated roots stay adjacent.
    """
    for v in set(first):
        for w in set(second):
            if hom(v, w):
                raise OrderingFailed(f"unexpected map from {v} to {w}")
    vs, amb_v = _topological(sorted(set(first), key=lambda r: (-sum(r), r)),
                             lambda x, y: x != y and hom(y, x) > 0)
    v_copies = [r for r in vs for _ in range(list(first).count(r))]

    # number of leading first-class copies a second-class root maps to
    def reach(w: Root) -> int:
        k = 0
        while k < len(v_copies) and hom(w, v_copies[k]):
            k += 1
        return k

    for w in set(second):
        k = reach(w)
        if any(hom(w, v) for v in v_copies[k:]):
            raise OrderingFailed(f"{w} maps to a first-class root beyond its leading block")
    groups: dict[int, list[Root]] = {}
    for w in sorted(set(second), key=lambda r: (-sum(r), r)):
        groups.setdefault(reach(w), []).append(w)
    ws: list[Root] = []
    amb_w = False
    for k in sorted(groups):
        part, amb = _topological(groups[k], lambda x, y: x != y and hom(y, x) > 0)
        ws += part
        amb_w |= amb
    w_copies = [r for r in ws for _ in range(list(second).count(r))]
    return v_copies, w_copies, amb_v or amb_w


def type_d_decompose(q: Quiver, beta, with_diagram: bool = False):
    roles = type_d_roles(q)
    one, two, top = roles["1"], roles["2"], roles["n"]
    flipped = any(a.tail == top for a in q.arrows)
    work = q.opposite() if flipped else q
    dims = _as_dict(q, beta)
    idx = {v: i for i, v in enumerate(q.vertices)}

    line = [one, two]
    while True:
        nxt = [y for y in work.neighbors(line[-1]) if y not in line and y != top]
        if not nxt:
            break
        line.append(nxt[0])
    arm = work.restrict(line)
    table = positive_roots(arm)
    a_decomp = canonical_search(arm, {v: dims[v] for v in arm.vertices}, table)

    def lift(r: Root) -> Root:
        full = [0] * len(q.vertices)
        for v, x in zip(arm.vertices, r):
            full[idx[v]] = x
        return tuple(full)

    pos = {v: i for i, v in enumerate(arm.vertices)}
    z_list, upper, lower = [], [], []
    for r, k in sorted(a_decomp.items(), key=lambda t: (-sum(t[0]), t[0])):
        if r[pos[two]] == 0:
            z_list += [r] * k
        elif r[pos[one]]:
            lower += [r] * k
        else:
            upper += [r] * k
    # the class that maps to no member of the other class is filled first
    a_to_2 = any(a.tail == one for a in work.arrows if two in (a.tail, a.head))
    first, second = (lower, upper) if a_to_2 else (upper, lower)

    @lru_cache(maxsize=None)
    def hom(x: Root, y: Root) -> int:
        return hom_dim(_thin_rep(arm, x), _thin_rep(arm, y))

    v_copies, w_copies, ambiguous = order_classes(first, second, hom)
    circles = dims[top]
    rows: dict[int, list] = {r: [v_copies[r - 1] if r <= len(v_copies) else None, None]
                             for r in range(1, circles + 1)}
    placed = 0
    stop = "b"
    for w in w_copies:
        row = circles - placed
        if row < 1:
            stop = "a"
            break
        v = rows[row][0]
        if v is not None and hom(w, v):
            stop = "c"
            break
        rows[row][1] = w
        placed += 1
    else:
        if circles - placed < 1 and placed < len(w_copies):
            stop = "a"

    result: Counter = Counter(lift(r) for r in z_list)
    result.update(lift(r) for r in v_copies[circles:])
    result.update(lift(r) for r in w_copies[placed:])
    merges = []
    for r in range(1, circles + 1):
        v, w = rows[r]
        vec = [0] * len(q.vertices)
        for part in (v, w):
            if part is not None:
                vec = [a + b for a, b in zip(vec, lift(part))]
        vec[idx[top]] += 1
        result[tuple(vec)] += 1
        merges.append((r, v, w))
    if not with_diagram:
        return result
    diagram = DnDiagram(
        labels=roles, flipped=flipped, type_a=a_decomp,
        z_list=[lift(r) for r in z_list], first_class=v_copies, second_class=w_copies,
        circles=circles, merges=merges, stop=stop, lines=(1, circles),
        non_unique=ambiguous, result=result,
    )
    return result, diagram


def decompose(q: Quiver, beta) -> Counter:
    """Generic decomposition of a Dynkin quiver, one component at a time."""
    dims = _as_dict(q, beta)
    out: Counter = Counter()
    idx = {v: i for i, v in enumerate(q.vertices)}
    for comp in q.components():
        sub = q.restrict(comp)
        part = canonical_search(sub, {v: dims[v] for v in sub.vertices})
        for r, k in part.items():
            full = [0] * len(q.vertices)
            for v, x in zip(sub.vertices, r):
                full[idx[v]] = x
            out[tuple(full)] += k
    return out


def is_decomposition(q: Quiver, beta, parts: Counter, table: RootTable | None = None) -> bool:
    """Checks the three output properties: sum, membership and Ext-orthogonality."""
    table = table or positive_roots(q)
    target = _as_tuple(q, beta)
    total = [0] * len(target)
    for r, k in parts.items():
        if r not in table.roots:
            return False
        total = [t + k * x for t, x in zip(total, r)]
    if tuple(total) != target:
        return False
    ids = [table.index(r) for r in parts]
    return all(table.compatible(i, j) for i in ids for j in ids if i != j) and all(
        table.ext(i, i) == 0 for i in ids
    )
