"""The slice rewriting engine.

A state is a quiver with a (possibly symbolic) dimension vector and one or
more weights.  Rules shrink the state and emit ``[s]^d_{a,b}`` factors; a
derivation that reaches the empty quiver yields the full b-function.

Rule priority for the default policy:
delete dimension-0 vertices, drop zero-weight components, simplify, slice at
the first eligible arrow in declaration order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .bfactor import Factor, FactorProduct, canonicalize
from .errors import InputError, InvariantBreach, NotPendant, NumericInfeasible
from .linalg import zeros
from .linform import LinForm, NO_RELATIONS, Relations
from .quiver import (
    Arrow,
    Quiver,
    dual_of_weight,
    euler_form,
    pair_with_weight,
    root_of_weight,
    weight_of_dual,
    weight_of_root,
)

COMPLETE, NOT_SLICEABLE, INFEASIBLE = "Complete", "NotSliceable", "Infeasible"
SLICE_RULES = ("slice-source", "slice-sink")


@dataclass(frozen=True)
class Weight:
    alpha: Mapping[str, int]
    dual: Mapping[str, int]
    sigma: Mapping[str, int]

    @classmethod
    def from_alpha(cls, q: Quiver, alpha: Mapping[str, int]) -> "Weight":
        a = {v: int(alpha.get(v, 0)) for v in q.vertices}
        s = weight_of_root(q, a)
        return cls(a, dual_of_weight(q, s), s)

    @classmethod
    def from_sigma(cls, q: Quiver, sigma: Mapping[str, int]) -> "Weight":
        s = {v: int(sigma.get(v, 0)) for v in q.vertices}
        return cls(root_of_weight(q, s), dual_of_weight(q, s), s)

    @classmethod
    def from_dual(cls, q: Quiver, dual: Mapping[str, int]) -> "Weight":
        d = {v: int(dual.get(v, 0)) for v in q.vertices}
        s = weight_of_dual(q, d)
        return cls(root_of_weight(q, s), d, s)


@dataclass(frozen=True)
class SliceState:
    quiver: Quiver
    beta: Mapping[str, LinForm]
    weights: tuple[Weight, ...]
    rel: Relations = NO_RELATIONS

    @classmethod
    def build(cls, quiver: Quiver, beta: Mapping[str, object], alphas: Sequence[Mapping[str, int]],
              rel: Relations = NO_RELATIONS) -> "SliceState":
        b = {v: LinForm.lift(beta.get(v, 0), rel) for v in quiver.vertices}
        return cls(quiver, b, tuple(Weight.from_alpha(quiver, a) for a in alphas), rel)

    @property
    def nweights(self) -> int:
        return len(self.weights)

    def is_empty(self) -> bool:
        return not self.quiver.vertices

    def numeric_beta(self) -> dict[str, int] | None:
        if all(b.is_constant() for b in self.beta.values()):
            return {v: int(b.const) for v, b in self.beta.items()}
        return None

    def describe(self) -> str:
        vs = ", ".join(
            f"{v}[{self.beta[v].render()}; "
            + "/".join(str(w.alpha[v]) for w in self.weights)
            + "]"
            for v in self.quiver.vertices
        )
        arr = ", ".join(f"{a.id}:{a.tail}->{a.head}" for a in self.quiver.arrows)
        return f"vertices {{{vs}}} arrows {{{arr}}}"


@dataclass(frozen=True)
class SideCondition:
    lhs: LinForm
    relation: str
    rhs: LinForm

    def render(self) -> str:
        return f"{self.lhs.render()} {self.relation} {self.rhs.render()}"


@dataclass(frozen=True)
class Step:
    index: int
    rule: str
    site: str
    before: SliceState
    after: SliceState
    factor: Factor | None = None
    conditions: tuple[SideCondition, ...] = ()
    data: Mapping = field(default_factory=dict)

    def render(self) -> str:
        emit = self.factor.render() if self.factor is not None else "1"
        cond = "; ".join(c.render() for c in self.conditions) or "none"
        return f"{self.index} {self.rule} @ {self.site} | emit {emit} | conditions {cond}"


@dataclass(frozen=True)
class Derivation:
    initial: SliceState
    steps: tuple[Step, ...]
    status: str
    message: str = ""
    unsound: bool = False

    @property
    def final(self) -> SliceState:
        return self.steps[-1].after if self.steps else self.initial

    @property
    def factors(self) -> FactorProduct:
        fs = [s.factor for s in self.steps if s.factor is not None]
        return canonicalize(FactorProduct(fs, self.initial.nweights))

    @property
    def side_conditions(self) -> list[SideCondition]:
        out: list[SideCondition] = []
        for s in self.steps:
            for c in s.conditions:
                if c not in out:
                    out.append(c)
        return out

    @property
    def slice_points(self) -> list[Mapping]:
        return [s.data for s in self.steps if s.rule.startswith("slice")]

    def trace(self) -> str:
        lines = [s.render() for s in self.steps]
        lines.append(f"status {self.status}" + (f" ({self.message})" if self.message else ""))
        return "\n".join(lines)


# ---- entry checks -----------------------------------------------------------

def entry_check(state: SliceState, dynkin: bool | None = None) -> None:
    q = state.quiver
    for k, w in enumerate(state.weights, 1):
        if not any(w.alpha.values()):
            continue  # the constant semi-invariant
        if euler_form(q, w.alpha, w.alpha) != 1:
            raise InputError(f"weight {k}: <alpha, alpha> must be 1 for a real Schur root")
        pairing = state.rel.reduce(LinForm.lift(pair_with_weight(q, w.sigma, state.beta)))
        if not pairing.is_zero():
            raise InputError(f"weight {k}: <alpha, beta> = {pairing.render()} must vanish")
        if dynkin is None:
            from .dynkin import dynkin_type

            dynkin = dynkin_type(q) is not None
        if dynkin and any(x < 0 for x in w.alpha.values()):
            raise InputError(f"weight {k}: alpha is not a positive root")


def check_invariants(state: SliceState) -> None:
    q = state.quiver
    for w in state.weights:
        if dict(weight_of_root(q, w.alpha)) != dict(w.sigma):
            raise InvariantBreach("sigma differs from E^T alpha")
        if dict(dual_of_weight(q, w.sigma)) != dict(w.dual):
            raise InvariantBreach("alpha* differs from C alpha")
        pairing = state.rel.reduce(LinForm.lift(pair_with_weight(q, w.sigma, state.beta)))
        if not pairing.is_zero():
            raise InvariantBreach(f"<alpha, beta> = {pairing.render()} after a rule")


# ---- comparisons ---------------------------------------------------------------

def _sign(form: LinForm) -> int | None:
    """Sign of a constant form, ``None`` when it depends on free symbols."""
    if not form.is_constant():
        return None
    return (form.const > 0) - (form.const < 0)


# ---- rule: delete dimension-0 vertices and drop components ----------------------

def _remove_vertices(state: SliceState, drop: set[str], keep_sigma: bool = True) -> SliceState:
    q = state.quiver
    nq = Quiver([v for v in q.vertices if v not in drop],
                [a for a in q.arrows if a.tail not in drop and a.head not in drop])
    weights = tuple(Weight.from_sigma(nq, {v: w.sigma[v] for v in nq.vertices}) for w in state.weights)
    beta = {v: state.beta[v] for v in nq.vertices}
    return SliceState(nq, beta, weights, state.rel)


def delete_vertex(state: SliceState, v: str) -> tuple[SliceState, dict]:
    if not state.beta[v].is_zero():
        raise InputError(f"vertex {v} does not have dimension 0")
    removed = [a.id for a in state.quiver.incident(v)]
    return _remove_vertices(state, {v}), {"vertex": v, "arrows": removed}


def zero_weight_components(state: SliceState) -> list[tuple[str, ...]]:
    return [
        c for c in state.quiver.components()
        if all(w.sigma[v] == 0 for w in state.weights for v in c)
    ]


def drop_component(state: SliceState, comp: Sequence[str]) -> tuple[SliceState, dict]:
    cs = set(comp)
    arrows = [a.id for a in state.quiver.arrows if a.tail in cs]
    return _remove_vertices(state, cs), {"vertices": tuple(comp), "arrows": arrows}


def isolated_obstruction(state: SliceState) -> str | None:
    q = state.quiver
    for v in q.vertices:
        if q.degree(v) == 0 and not state.beta[v].is_zero():
            if any(w.sigma[v] != 0 for w in state.weights):
                return v
    return None


def negative_root(state: SliceState) -> tuple[int, str] | None:
    """A weight whose root is not a dimension vector has no semi-invariants."""
    for k, w in enumerate(state.weights, 1):
        for v in state.quiver.vertices:
            if w.alpha[v] < 0:
                return k, v
    return None


# ---- rule: simplification ----------------------------------------------------------

def _fresh(name: str, taken: set[str]) -> str:
    out = name
    while out in taken:
        out += "'"
    taken.add(out)
    return out


def simplify_applicable(state: SliceState, v: str, variant: str) -> bool:
    q = state.quiver
    if variant == "a":
        if any(w.alpha[v] != 0 for w in state.weights):
            return False
        return bool(q.outgoing(v)) or len(q.incoming(v)) != 1
    if any(w.dual[v] != 0 for w in state.weights):
        return False
    return bool(q.incoming(v)) or len(q.outgoing(v)) != 1


def apply_simplify(state: SliceState, v: str, variant: str) -> tuple[SliceState, dict]:
    """Variant ``a`` (alpha = 0) or its dual ``b`` (alpha* = 0) at vertex ``v``."""
    q = state.quiver
    if variant not in ("a", "b"):
        raise ValueError("variant must be 'a' or 'b'")
    field_name = "alpha" if variant == "a" else "dual"
    if any(getattr(w, field_name)[v] != 0 for w in state.weights):
        raise InputError(f"simplification {variant} needs {field_name} = 0 at {v} for every weight")
    if variant == "a":
        drop = [a for a in q.outgoing(v)]
        split_along = q.incoming(v)
    else:
        drop = [a for a in q.incoming(v)]
        split_along = q.outgoing(v)
    names = set(q.vertices) - {v}
    copies: dict[str, str] = {}
    for a in split_along:
        copies[a.id] = _fresh(v if len(split_along) == 1 else f"{v}.{len(copies) + 1}", names)
    new_vertices: list[str] = []
    for x in q.vertices:
        if x == v:
            new_vertices.extend(copies[a.id] for a in split_along)
        else:
            new_vertices.append(x)
    dropped = {a.id for a in drop}
    new_arrows = []
    for a in q.arrows:
        if a.id in dropped:
            continue
        if a.id in copies:
            if variant == "a":
                new_arrows.append(Arrow(a.id, a.tail, copies[a.id]))
            else:
                new_arrows.append(Arrow(a.id, copies[a.id], a.head))
        else:
            new_arrows.append(a)
    nq = Quiver(new_vertices, new_arrows)
    beta = {x: state.beta[x] for x in q.vertices if x != v}
    for c in copies.values():
        beta[c] = state.beta[v]
    beta = {x: beta[x] for x in nq.vertices}
    weights = []
    for w in state.weights:
        if variant == "a":
            alpha = {x: w.alpha[x] for x in q.vertices if x != v}
            alpha.update({c: 0 for c in copies.values()})
            weights.append(Weight.from_alpha(nq, alpha))
        else:
            dual = {x: w.dual[x] for x in q.vertices if x != v}
            dual.update({c: 0 for c in copies.values()})
            weights.append(Weight.from_dual(nq, dual))
    data = {"vertex": v, "variant": variant, "dropped": sorted(dropped), "copies": dict(copies)}
    return SliceState(nq, beta, tuple(weights), state.rel), data


# ---- rule: slice -----------------------------------------------------------------

def pendant_kinds(q: Quiver, arrow: Arrow) -> list[str]:
    kinds = []
    if q.degree(arrow.tail) == 1:
        kinds.append("source")
    if q.degree(arrow.head) == 1:
        kinds.append("sink")
    return kinds


def _roles(arrow: Arrow, kind: str) -> tuple[str, str]:
    return (arrow.tail, arrow.head) if kind == "source" else (arrow.head, arrow.tail)


def check_sliceable(state: SliceState, arrow_id: str, kind: str | None = None) -> list[bool]:
    """Condition (c) for each weight at a pendant arrow."""
    q = state.quiver
    arrow = q.arrow(arrow_id)
    kinds = pendant_kinds(q, arrow)
    if not kinds:
        raise NotPendant(f"arrow {arrow_id} is neither a 1-source nor a 1-sink")
    kind = kind or kinds[0]
    if kind not in kinds:
        raise NotPendant(f"arrow {arrow_id} is not a 1-{kind}")
    p, o = _roles(arrow, kind)
    out = []
    for w in state.weights:
        if kind == "source":
            out.append(w.alpha[p] == w.alpha[o] or w.dual[p] == 0)
        else:
            out.append(w.alpha[p] == 0 or w.dual[p] == w.dual[o])
    return out


def closed_form_alpha(q_new: Quiver, w: Weight, kind: str, p: str, o: str) -> dict[str, int]:
    """The slice formulas for the new root, with ``P`` the projective at ``p`` in ``q_new``."""
    paths = q_new.path_counts_from(p)
    a1, a2 = w.alpha[p], w.alpha[o]
    out = dict(w.alpha)
    for x in q_new.vertices:
        if kind == "source":
            out[x] += (a2 - a1) * paths[x] - a1 * (x == o)
        else:
            out[x] += a1 * paths[x] - a1 * (x == p)
    return out


def apply_slice(state: SliceState, arrow_id: str, kind: str | None = None) -> tuple[SliceState, Factor, dict]:
    q = state.quiver
    arrow = q.arrow(arrow_id)
    kinds = pendant_kinds(q, arrow)
    if not kinds:
        raise NotPendant(f"arrow {arrow_id} is neither a 1-source nor a 1-sink")
    kind = kind or kinds[0]
    if kind not in kinds:
        raise NotPendant(f"arrow {arrow_id} is not a 1-{kind}")
    p, o = _roles(arrow, kind)
    b1, b2 = state.beta[p], state.beta[o]
    gap = b2 - b1
    if _sign(gap) == -1:
        raise NumericInfeasible(f"dimension {b1.render()} at {p} exceeds {b2.render()} at {o}")
    # arrows moved onto the pendant vertex take the sliced arrow's place in
    # the declaration order
    taken = {a.id for a in q.arrows}
    moved_arrows: list[Arrow] = []
    moved: dict[str, str] = {}
    for b in q.arrows:
        if b.id == arrow.id:
            continue
        if b.tail == o:
            nid = _fresh(b.id + "'", taken)
            moved_arrows.append(Arrow(nid, p, b.head))
            moved[nid] = b.id
        elif b.head == o:
            nid = _fresh(b.id + "'", taken)
            moved_arrows.append(Arrow(nid, b.tail, p))
            moved[nid] = b.id
    new_arrows: list[Arrow] = []
    for b in q.arrows:
        if b.id == arrow.id:
            new_arrows.extend(moved_arrows)
        else:
            new_arrows.append(b)
    nq = Quiver(q.vertices, new_arrows)
    beta = dict(state.beta)
    beta[o] = gap
    weights = []
    dvec = []
    identity_checks = []
    for w in state.weights:
        sigma = dict(w.sigma)
        sigma[p] = w.sigma[p] + w.sigma[o]
        nw = Weight.from_sigma(nq, sigma)
        if closed_form_alpha(nq, w, kind, p, o) != dict(nw.alpha):
            raise InvariantBreach(f"slice formulas disagree with the recomputed root at {arrow_id}")
        old_norm = euler_form(q, w.alpha, w.alpha)
        new_norm = euler_form(nq, nw.alpha, nw.alpha)
        if kind == "source":
            predicted = old_norm - (w.alpha[o] - w.alpha[p]) * w.dual[p]
        else:
            predicted = old_norm - (w.dual[o] - w.dual[p]) * w.alpha[p]
        identity_checks.append((old_norm, new_norm, predicted))
        if new_norm != predicted:
            raise InvariantBreach(f"slice-step identity fails at {arrow_id}")
        weights.append(nw)
        dvec.append(abs(w.sigma[p]))
    factor = Factor(tuple(dvec), gap, b2, state.rel)
    data = {
        "arrow": arrow.id,
        "kind": kind,
        "pendant": p,
        "other": o,
        "moved": moved,
        "identity": identity_checks,
    }
    return SliceState(nq, beta, tuple(weights), state.rel), factor, data


# ---- the driver ----------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    rule: str
    site: str
    arg: object = None


def _slice_moves(state: SliceState, assume_mf: bool) -> list[Move]:
    q = state.quiver
    moves = []
    for a in q.arrows:
        kinds = pendant_kinds(q, a)
        for kind in kinds:
            if assume_mf or all(check_sliceable(state, a.id, kind)):
                moves.append(Move("slice-" + kind, a.id, kind))
    return moves


def _simplify_moves(state: SliceState) -> list[Move]:
    moves = []
    for v in state.quiver.vertices:
        for variant in ("a", "b"):
            if simplify_applicable(state, v, variant):
                moves.append(Move("simplify-" + variant, v, variant))
    return moves


def legal_moves(state: SliceState, assume_mf: bool = False) -> list[Move]:
    return _simplify_moves(state) + _slice_moves(state, assume_mf)


def _slice_feasibility(state: SliceState, move: Move) -> str:
    """``ok``, ``skip`` (cannot be used) or ``zero`` (semi-invariant vanishes)."""
    a = state.quiver.arrow(move.site)
    p, o = _roles(a, move.arg)
    s = _sign(state.beta[o] - state.beta[p])
    if s is None or s >= 0:
        return "ok"
    if any(w.sigma[p] != 0 for w in state.weights):
        return "zero"
    return "skip"


def _choose_slice(state: SliceState, moves: list[Move]) -> tuple[Move | None, str]:
    """First slice in arrow order; an isolated arrow prefers the 1-source reading."""
    zero_hit = None
    for mv in moves:
        verdict = _slice_feasibility(state, mv)
        if verdict == "ok":
            return mv, "ok"
        if verdict == "zero" and zero_hit is None:
            zero_hit = mv
    if zero_hit is not None:
        return zero_hit, "zero"
    return None, "none"


def run(initial: SliceState, policy: str | random.Random = "priority", assume_mf: bool = False,
        check: bool = True, max_steps: int = 10_000) -> Derivation:
    """Rewrite until the quiver is empty or no rule applies.

    ``policy`` is ``"priority"`` or a ``random.Random`` used to pick uniformly
    among all legal simplifications and slices (cleanup rules stay eager).
    """
    if check:
        entry_check(initial)
    state = initial
    steps: list[Step] = []
    unsound = False

    def record(rule, site, after, factor=None, conditions=(), data=None):
        nonlocal state
        if check:
            check_invariants(after)
        steps.append(Step(len(steps) + 1, rule, site, state, after, factor, tuple(conditions), data or {}))
        state = after

    while len(steps) < max_steps:
        if state.is_empty():
            return Derivation(initial, tuple(steps), COMPLETE, unsound=unsound)
        zero = next((v for v in state.quiver.vertices if state.beta[v].is_zero()), None)
        if zero is not None:
            after, data = delete_vertex(state, zero)
            record("delete-dim0", zero, after, data=data)
            continue
        comps = zero_weight_components(state)
        if comps:
            after, data = drop_component(state, comps[0])
            record("drop-component", ",".join(comps[0]), after, data=data)
            continue
        bad = isolated_obstruction(state)
        if bad is not None:
            return Derivation(initial, tuple(steps), INFEASIBLE,
                              f"isolated vertex {bad} carries a nonzero weight", unsound)
        neg = negative_root(state)
        if neg is not None:
            return Derivation(initial, tuple(steps), INFEASIBLE,
                              f"weight {neg[0]} has a negative root entry at vertex {neg[1]}", unsound)
        simp = _simplify_moves(state)
        slices = _slice_moves(state, assume_mf)
        if isinstance(policy, random.Random):
            usable = simp + [m for m in slices if _slice_feasibility(state, m) == "ok"]
            if not usable:
                mv, verdict = _choose_slice(state, slices)
                if verdict == "zero":
                    return Derivation(initial, tuple(steps), INFEASIBLE,
                                      f"dimension bound fails at arrow {mv.site}", unsound)
                return Derivation(initial, tuple(steps), NOT_SLICEABLE, "no rule applies", unsound)
            mv = policy.choice(usable)
        elif simp:
            mv = simp[0]
        else:
            mv, verdict = _choose_slice(state, slices)
            if verdict == "zero":
                return Derivation(initial, tuple(steps), INFEASIBLE,
                                  f"dimension bound fails at arrow {mv.site}", unsound)
            if mv is None:
                return Derivation(initial, tuple(steps), NOT_SLICEABLE, "no rule applies", unsound)
        if mv.rule.startswith("simplify"):
            after, data = apply_simplify(state, mv.site, mv.arg)
            record(mv.rule, mv.site, after, data=data)
            continue
        if assume_mf and not all(check_sliceable(state, mv.site, mv.arg)):
            unsound = True
        a = state.quiver.arrow(mv.site)
        p, o = _roles(a, mv.arg)
        conds = []
        if _sign(state.beta[o] - state.beta[p]) is None:
            conds.append(SideCondition(state.beta[p], "<=", state.beta[o]))
        after, factor, data = apply_slice(state, mv.site, mv.arg)
        site = f"{a.id} ({a.tail}->{a.head})"
        record(mv.rule, site, after, None if factor.is_unit() else factor, conds, data)
    raise InvariantBreach("derivation did not terminate")


def run_multi(initial: SliceState, m: Sequence[int] | None = None, **kwargs) -> Derivation:
    """Several weights at once; every rule must be legal for all of them."""
    if m is not None and len(m) != initial.nweights:
        raise InputError("m-tuple length differs from the number of weights")
    return run(initial, **kwargs)


def replay(d: Derivation) -> SliceState:
    """Re-apply the recorded steps from the initial state."""
    state = d.initial
    for s in d.steps:
        if s.rule == "delete-dim0":
            state, _ = delete_vertex(state, s.site)
        elif s.rule == "drop-component":
            state, _ = drop_component(state, s.site.split(","))
        elif s.rule.startswith("simplify"):
            state, _ = apply_simplify(state, s.site, s.rule[-1])
        else:
            state, _, _ = apply_slice(state, s.data["arrow"], s.data["kind"])
    return state


def numeric_state(state: SliceState, values: Mapping[str, int]) -> SliceState:
    """Substitute symbol values, checking the relations."""
    needed = {s for b in state.beta.values() for s in b.coeffs} | {
        s for e in state.rel.equations for s in e.coeffs}
    missing = sorted(needed - set(values))
    if missing:
        raise InputError(f"no value given for {', '.join(missing)}")
    if not state.rel.holds(values):
        raise InputError("numeric values violate the relations")
    beta = {}
    for v, b in state.beta.items():
        try:
            x = b.evaluate(values)
        except KeyError as exc:
            raise InputError(f"no value given for {exc.args[0]}") from None
        if x.denominator != 1 or x < 0:
            raise InputError(f"dimension at {v} evaluates to {x}")
        beta[v] = LinForm.constant(int(x))
    return SliceState(state.quiver, beta, state.weights, NO_RELATIONS)


# ---- locally semi-simple reconstruction ------------------------------------------

def _blank_rep(q: Quiver, dims: Mapping[str, int]) -> dict[str, list]:
    return {a.id: zeros(dims[a.head], dims[a.tail]) for a in q.arrows}


def _identity_block(rows: int, cols: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(cols)] for i in range(rows)]


def _hstack(left: list, right: list, rows: int) -> list:
    return [list(left[i]) + list(right[i]) for i in range(rows)]


def reconstruct(d: Derivation):
    """The representation assembled by undoing each step.

    At a slice the split vertex carries the pendant part first and the
    complement second: the sliced arrow becomes an identity block, and each
    arrow that was copied onto the pendant vertex is stacked with its original.
    Arrows removed by a simplification, a deletion or a dropped component are
    zero.
    """
    from .homext import Rep

    if d.status != COMPLETE:
        raise InputError("reconstruction needs a complete derivation")
    if d.initial.numeric_beta() is None:
        raise InputError("reconstruction needs numeric dimensions")
    maps: dict[str, list] = {}
    for s in reversed(d.steps):
        q = s.before.quiver
        dims = s.before.numeric_beta()
        new = _blank_rep(q, dims)
        if s.rule in SLICE_RULES:
            p, o = s.data["pendant"], s.data["other"]
            origin = {old: nid for nid, old in s.data["moved"].items()}
            for a in q.arrows:
                if a.id == s.data["arrow"]:
                    new[a.id] = (_identity_block(dims[o], dims[p]) if s.data["kind"] == "source"
                                 else _identity_block(dims[p], dims[o]))
                elif a.id in origin:
                    moved, rest = maps[origin[a.id]], maps[a.id]
                    new[a.id] = (_hstack(moved, rest, dims[a.head]) if a.tail == o
                                 else [list(r) for r in moved] + [list(r) for r in rest])
                else:
                    new[a.id] = maps[a.id]
        else:
            for a in q.arrows:
                if a.id in maps:
                    new[a.id] = maps[a.id]
        maps = new
    q = d.initial.quiver
    return Rep(q, d.initial.numeric_beta(), {a.id: maps.get(a.id) for a in q.arrows})


def locally_semisimple(d: Derivation, seed: int = 0):
    """Summands of the reconstructed locally semi-simple representation."""
    from .homext import fitting_decompose

    return fitting_decompose(reconstruct(d), seed=seed)
