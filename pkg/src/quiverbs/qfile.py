"""The line-oriented quiver file format.

::

    vertex 1 2 3 4
    arrow a1: 1 -> 4
    beta 1 = b1
    relation b1 + b2 + b3 = 2*b4
    alpha[1] 1 = 1
    mtuple 1,1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .errors import InputError, ParseError
from .linform import LinForm, Relations, parse_linform
from .quiver import Arrow, Quiver, root_of_weight
from .slicer import SliceState, numeric_state

_ID = r"[A-Za-z0-9_.']+"
_SYM = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_INT = re.compile(r"^-?\d+$")


@dataclass
class QuiverFile:
    vertices: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    beta: dict[str, int | str] = field(default_factory=dict)
    relations: list[tuple[LinForm, LinForm]] = field(default_factory=list)
    weights: dict[int, tuple[str, dict[str, int]]] = field(default_factory=dict)
    mtuple: tuple[int, ...] | None = None

    @property
    def symbols(self) -> list[str]:
        out: list[str] = []
        for v in self.vertices:
            b = self.beta.get(v)
            if isinstance(b, str) and b not in out:
                out.append(b)
        return out

    def quiver(self) -> Quiver:
        return Quiver(self.vertices, [Arrow(*a) for a in self.arrows])

    def relations_object(self) -> Relations:
        return Relations(self.symbols, [lhs - rhs for lhs, rhs in self.relations])

    def alphas(self) -> list[dict[str, int]]:
        q = self.quiver()
        out = []
        for k in sorted(self.weights):
            kind, vals = self.weights[k]
            full = {v: vals.get(v, 0) for v in q.vertices}
            out.append(full if kind == "alpha" else root_of_weight(q, full))
        return out

    def state(self, values: Mapping[str, int] | None = None) -> SliceState:
        if not self.weights:
            raise InputError("no alpha or sigma block given")
        rel = self.relations_object()
        q = self.quiver()
        beta = {}
        for v in q.vertices:
            b = self.beta[v]
            beta[v] = LinForm.symbol(b, rel) if isinstance(b, str) else LinForm.constant(b, rel)
        st = SliceState.build(q, beta, self.alphas(), rel)
        if values:
            st = numeric_state(st, values)
        return st

    def numeric_beta(self, values: Mapping[str, int] | None = None) -> dict[str, int]:
        """Integer dimensions, substituting ``values`` and checking the relations."""
        values = dict(values or {})
        rel = self.relations_object()
        out = {}
        for v in self.vertices:
            b = self.beta[v]
            if isinstance(b, int):
                out[v] = b
            elif b in values:
                out[v] = int(values[b])
            else:
                raise InputError(f"no value given for {b}")
        if not rel.holds({f"{self.beta[v]}": out[v] for v in self.vertices if isinstance(self.beta[v], str)}):
            raise InputError("numeric values violate the relations")
        return out

    def render(self) -> str:
        order = Relations(self.symbols)
        lines = ["vertex " + " ".join(self.vertices)]
        lines += [f"arrow {a}: {t} -> {h}" for a, t, h in self.arrows]
        lines += [f"beta {v} = {self.beta[v]}" for v in self.vertices if v in self.beta]
        for lhs, rhs in self.relations:
            lines.append(
                f"relation {LinForm(lhs.coeffs, lhs.const, order).render()}"
                f" = {LinForm(rhs.coeffs, rhs.const, order).render()}"
            )
        for k in sorted(self.weights):
            kind, vals = self.weights[k]
            lines += [f"{kind}[{k}] {v} = {vals[v]}" for v in self.vertices if v in vals]
        if self.mtuple is not None:
            lines.append("mtuple " + ",".join(str(x) for x in self.mtuple))
        return "\n".join(lines) + "\n"


def parse_text(text: str) -> QuiverFile:
    qf = QuiverFile()
    declared: set[str] = set()
    pending_relations: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            ids = rest.split()
            if not ids:
                raise ParseError("vertex line lists no ids", lineno)
            for v in ids:
                if not re.fullmatch(_ID, v):
                    raise ParseError(f"bad vertex id {v!r}", lineno)
                if v in declared:
                    raise ParseError(f"vertex {v} declared twice", lineno)
                declared.add(v)
                qf.vertices.append(v)
        elif head == "arrow":
            m = re.fullmatch(rf"({_ID})\s*:\s*({_ID})\s*->\s*({_ID})", rest)
            if not m:
                raise ParseError("expected 'arrow <id>: <tail> -> <head>'", lineno)
            aid, t, h = m.groups()
            for v in (t, h):
                if v not in declared:
                    raise ParseError(f"unknown vertex {v}", lineno)
            if any(a[0] == aid for a in qf.arrows):
                raise ParseError(f"arrow {aid} declared twice", lineno)
            qf.arrows.append((aid, t, h))
        elif head == "beta":
            m = re.fullmatch(rf"({_ID})\s*=\s*(\S+)", rest)
            if not m:
                raise ParseError("expected 'beta <vertex> = <int|symbol>'", lineno)
            v, val = m.groups()
            if v not in declared:
                raise ParseError(f"unknown vertex {v}", lineno)
            if _INT.match(val):
                if int(val) < 0:
                    raise ParseError("dimensions must be non-negative", lineno)
                qf.beta[v] = int(val)
            elif _SYM.match(val):
                qf.beta[v] = val
            else:
                raise ParseError(f"bad dimension {val!r}", lineno)
        elif head == "relation":
            if rest.count("=") != 1:
                raise ParseError("expected 'relation <lin> = <lin>'", lineno)
            lhs, rhs = rest.split("=")
            pending_relations.append((lineno, lhs, rhs))
        elif re.fullmatch(r"(alpha|sigma)\[\d+\]", head):
            kind = head[:5]
            k = int(head[6:-1])
            m = re.fullmatch(rf"({_ID})\s*=\s*(-?\d+)", rest)
            if not m:
                raise ParseError(f"expected '{head} <vertex> = <int>'", lineno)
            v, val = m.group(1), int(m.group(2))
            if v not in declared:
                raise ParseError(f"unknown vertex {v}", lineno)
            prev = qf.weights.setdefault(k, (kind, {}))
            if prev[0] != kind:
                raise ParseError(f"weight block {k} mixes alpha and sigma", lineno)
            prev[1][v] = val
        elif head == "mtuple":
            try:
                qf.mtuple = tuple(int(x) for x in rest.split(","))
            except ValueError:
                raise ParseError("expected 'mtuple <int>,<int>,...'", lineno) from None
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if not qf.vertices:
        raise ParseError("no vertices declared")
    missing = [v for v in qf.vertices if v not in qf.beta]
    if missing:
        raise ParseError(f"no dimension given for vertices {', '.join(missing)}")
    syms = set(qf.symbols)
    for lineno, lhs, rhs in pending_relations:
        forms = (parse_linform(lhs, line=lineno), parse_linform(rhs, line=lineno))
        for f in forms:
            for s in f.coeffs:
                if s not in syms:
                    raise ParseError(f"relation uses undeclared symbol {s}", lineno)
        qf.relations.append(forms)
    try:
        qf.quiver()
        qf.relations_object()
    except InputError as exc:
        raise ParseError(str(exc)) from None
    if qf.mtuple is not None and len(qf.mtuple) != len(qf.weights):
        raise ParseError("mtuple length differs from the number of weight blocks")
    return qf


def parse(path: str | Path) -> QuiverFile:
    return parse_text(Path(path).read_text(encoding="utf-8"))


def parse_assignment(text: str) -> dict[str, int]:
    """``b1=1,b2=2`` as a dict."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        k, sep, v = part.partition("=")
        if not sep or not _INT.match(v.strip()):
            raise InputError(f"bad assignment {part!r}")
        out[k.strip()] = int(v)
    return out
