"""Recognition of simply-laced Dynkin underlying graphs."""

from __future__ import annotations

from .quiver import Quiver


def _arms(q: Quiver, center: str) -> list[int]:
    lengths = []
    for start in q.neighbors(center):
        prev, cur, n = center, start, 1
        while True:
            nxt = [y for y in q.neighbors(cur) if y != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def component_type(q: Quiver) -> str | None:
    """``"A5"``, ``"D6"``, ``"E7"``... for a connected quiver, else ``None``."""
    n = len(q.vertices)
    if n == 0 or len(q.components()) != 1 or len(q.arrows) != n - 1:
        return None
    degrees = {v: q.degree(v) for v in q.vertices}
    if any(len(set(q.neighbors(v))) != len(q.neighbors(v)) for v in q.vertices):
        return None
    branch = [v for v, d in degrees.items() if d >= 3]
    if not branch:
        return f"A{n}"
    if len(branch) > 1 or degrees[branch[0]] > 3:
        return None
    arms = _arms(q, branch[0])
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return f"E{n}"
    return None


def dynkin_type(q: Quiver) -> str | None:
    """Types of all components joined by ``+``; ``None`` if any is not Dynkin."""
    parts = []
    for comp in q.components():
        t = component_type(q.restrict(comp))
        if t is None:
            return None
        parts.append(t)
    return "+".join(parts) if parts else ""
