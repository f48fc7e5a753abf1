"""Seeded random quivers, roots and dimension vectors shared by the property suites."""

from __future__ import annotations

import random

from quiverbs.linform import LinForm
from quiverbs.quiver import Quiver, euler_form, weight_of_root
from quiverbs.slicer import SliceState


def random_tree(rng: random.Random, n: int) -> Quiver:
    vertices = [str(i) for i in range(1, n + 1)]
    edges = []
    for i in range(2, n + 1):
        j = rng.randint(1, i - 1)
        e = (str(j), str(i))
        edges.append(e if rng.random() < 0.5 else e[::-1])
    rng.shuffle(edges)
    return Quiver.from_edges(vertices, edges)


def random_type_d(rng: random.Random, n: int) -> Quiver:
    """Branch vertex 2 with leaves 1 and n and the chain 2-3-...-(n-1)."""
    vertices = [str(i) for i in range(1, n + 1)]
    edges = [("1", "2"), ("2", str(n))] + [(str(i), str(i + 1)) for i in range(2, n - 1)]
    edges = [e if rng.random() < 0.5 else e[::-1] for e in edges]
    rng.shuffle(edges)
    return Quiver.from_edges(vertices, edges)


def connected_support(rng: random.Random, q: Quiver) -> dict[str, int]:
    """Indicator of a random connected subtree: a 0/1 root of a tree quiver."""
    start = rng.choice(q.vertices)
    chosen = {start}
    target = rng.randint(1, len(q.vertices))
    while len(chosen) < target:
        frontier = sorted({w for v in chosen for w in q.neighbors(v)} - chosen)
        if not frontier:
            break
        chosen.add(rng.choice(frontier))
    return {v: int(v in chosen) for v in q.vertices}


def balanced_beta(rng: random.Random, q: Quiver, alpha, top: int = 6, tries: int = 200):
    """A non-negative beta with ``<alpha, beta> = 0``, or ``None``."""
    sigma = weight_of_root(q, alpha)
    movable = [v for v in q.vertices if sigma[v] != 0]
    for _ in range(tries):
        beta = {v: rng.randint(0, top) for v in q.vertices}
        v = rng.choice(movable)
        rest = sum(sigma[w] * beta[w] for w in q.vertices if w != v)
        if rest % sigma[v]:
            continue
        beta[v] = -rest // sigma[v]
        if 0 <= beta[v] <= 2 * top and euler_form(q, alpha, beta) == 0:
            return beta
    return None


def numeric_state(q: Quiver, beta, alphas) -> SliceState:
    return SliceState.build(q, {v: LinForm.constant(beta[v]) for v in q.vertices}, list(alphas))
