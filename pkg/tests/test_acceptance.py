"""One test per acceptance criterion; the summary prints a PASS/FAIL line for each."""

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from quiverbs.bfactor import Factor, FactorProduct, canonicalize, monic_expand, roots
from quiverbs.candecomp import canonical_search, positive_roots, type_d_decompose
from quiverbs.classical import FormulaId, catalog_roots, dn_displayed_product, dn_longest_state
from quiverbs.homext import hom_ext, interval_dims, random_rep
from quiverbs.linform import LinForm
from quiverbs.mpoly import upoly_from_roots
from quiverbs.qfile import parse
from quiverbs.oracle import (
    bfunction_oracle, binary_cubic_discriminant, build_cV, det_poly, sum_of_squares, symdet_poly,
    verify_ideal_power,
)
from quiverbs.quiver import Quiver, euler_form
from quiverbs.slicer import COMPLETE, INFEASIBLE, NOT_SLICEABLE, SLICE_RULES, run, run_multi

from conftest import GOLDEN
from instances import balanced_beta, connected_support, numeric_state, random_tree, random_type_d

RESULTS: dict[int, tuple[bool, float, str, str]] = {}


class Criterion:
    """Times one criterion (or one case of it) and folds the outcome into ``RESULTS``."""

    def __init__(self, num: int, label: str, budget: float):
        self.num, self.label, self.budget = num, label, budget
        self.notes: list[str] = []
        self.failures: list[str] = []

    def check(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        if elapsed > self.budget:
            self.failures.append(f"over budget ({self.budget}s)")
        ok, total, _, note = RESULTS.get(self.num, (True, 0.0, self.label, ""))
        mine = "; ".join(self.failures + self.notes)
        RESULTS[self.num] = (ok and not self.failures, total + elapsed, self.label,
                             "; ".join(x for x in (note, mine) if x))
        if exc_type is None and self.failures:
            pytest.fail("; ".join(self.failures))
        return False


def symbols(rel, n):
    return {i: LinForm.symbol(f"b{i}", rel) for i in range(1, n + 1)}


def literal(*factors):
    return canonicalize(FactorProduct(factors)).factors


def test_criterion_1_d4_symbolic():
    with Criterion(1, "D4 symbolic slice product", 1.0) as c:
        d = run(parse(GOLDEN / "d4.q").state())
        rel = d.initial.rel
        b = symbols(rel, 4)
        expected = literal(
            Factor(1, 0, b[4], rel), Factor(1, b[1] + b[2] - b[4], b[2], rel),
            Factor(1, b[2] + b[3] - b[4], b[3], rel), Factor(1, b[1] + b[3] - b[4], b[1], rel),
        )
        c.check(d.status == COMPLETE and d.factors.factors == expected, "factor multiset differs")


@pytest.mark.parametrize("n", [5, 6, 7])
def test_criterion_2_dn_longest_root(n):
    label = "D_n longest root against the displayed product, n=5,6,7"
    with Criterion(2, label, 5.0) as c:
        state = dn_longest_state(n)
        d = run(state)
        shown = canonicalize(dn_displayed_product(n, state.rel)).factors
        c.check(d.status == COMPLETE, f"n={n} incomplete")
        c.check(d.factors.factors == shown, f"n={n} differs from the display")


def test_criterion_3_extended_d4():
    with Criterion(3, "extended D4 symbolic product", 1.0) as c:
        d = run(parse(GOLDEN / "d4tilde.q").state())
        rel = d.initial.rel
        b = symbols(rel, 5)
        expected = FactorProduct([
            Factor(2, b[5] - b[1], b[5], rel), Factor(1, b[1] + b[2] - b[5], b[2], rel),
            Factor(1, b[1] + b[3] - b[5], b[3], rel), Factor(1, b[1] + b[4] - b[5], b[4], rel),
            Factor(1, 0, b[1], rel),
        ])
        c.check(d.status == COMPLETE and d.factors == expected, "product differs")


def test_criterion_4_e6_not_sliceable():
    with Criterion(4, "E6 longest root is not sliceable", 1.0) as c:
        d = run(parse(GOLDEN / "e6.q").state())
        c.check(d.status == NOT_SLICEABLE, f"status {d.status}")


def test_criterion_5_d5_two_weights():
    with Criterion(5, "D5 two-weight product", 1.0) as c:
        qf = parse(GOLDEN / "d5multi.q")
        d = run_multi(qf.state(), qf.mtuple)
        rel = d.initial.rel
        b = symbols(rel, 5)
        zero = LinForm.constant(0, rel)
        expected = canonicalize(FactorProduct([
            Factor((1, 1), b[1], b[2], rel), Factor((0, 1), zero, b[1], rel),
            Factor((1, 0), zero, b[3], rel), Factor((1, 0), b[2] - b[3], b[2], rel),
        ], 2)).factors
        c.check(d.status == COMPLETE and d.factors.factors == expected, "factor multiset differs")


def test_criterion_6_oracle_against_catalog():
    with Criterion(6, "oracle b-functions against the catalog", 180.0) as c:
        def catalog(family, *params):
            return catalog_roots(FormulaId(family, params)).polynomial()

        for n in (2, 3):
            c.check(bfunction_oracle(det_poly(n)) == catalog("determinant", n), f"determinant {n}")
            f, scale = symdet_poly(n)
            c.check(bfunction_oracle(f, scale) == catalog("symmetric_determinant", n), f"symmetric {n}")
        f, scale = binary_cubic_discriminant()
        c.check(bfunction_oracle(f, scale) == catalog("binary_cubic"), "binary cubic")
        for m in (2, 3):
            got = bfunction_oracle(sum_of_squares(m))
            c.check(got == catalog("so_pair", m, 1), f"sum of {m} squares")
            c.check(got == upoly_from_roots([-1, Fraction(-m, 2)]), f"sum of {m} squares, direct")


def test_criterion_7_slicer_oracle_agreement():
    with Criterion(7, "D4 at (1,1,2,2): slicer, oracle and (s+1)^2(s+2)^2", 120.0) as c:
        qf = parse(GOLDEN / "d4.q")
        values = {"b1": 1, "b2": 1, "b3": 2, "b4": 2}
        sliced = monic_expand(run(qf.state()).factors, values)
        f = build_cV(qf.quiver(), qf.numeric_beta(values), qf.alphas()[0])
        target = upoly_from_roots([-1, -1, -2, -2])
        c.check(sliced == target, "slicer")
        c.check(bfunction_oracle(f) == target, "oracle")


def test_criterion_8_ideal_powers():
    with Criterion(8, "maximal-minor ideal powers", 120.0) as c:
        cases = {
            (2, 3, 1): [(1, 0, 0), (1, 1, 0), (0, 1, 2), (2, 1, 1)],
            (2, 2, 2): [(1,), (2,), (3,)],
            (1, 3, 1): [(1, 0, 0), (0, 2, 1), (1, 1, 1)],
        }
        for (m, n, d), tuples in cases.items():
            c.check(verify_ideal_power(m, n, d, tuples), f"{(m, n, d)}")


A5 = Quiver.from_edges("12345", [("1", "2"), ("3", "2"), ("3", "4"), ("4", "5")])

WORKED_DIAGRAMS = {
    "d6.q": Counter({(1, 1, 1, 0, 0, 1): 1, (1, 1, 1, 1, 1, 1): 1, (1, 2, 2, 1, 1, 1): 1,
                     (0, 1, 0, 0, 0, 1): 1, (0, 0, 0, 0, 1, 0): 2, (0, 0, 1, 1, 1, 0): 1}),
    "d5decomp.q": Counter({(1, 1, 1, 1, 0): 1, (0, 1, 1, 1, 1): 2, (1, 2, 1, 0, 1): 1, (1, 1, 1, 0, 1): 1}),
}


@pytest.mark.parametrize("name", ["d6.q", "d5decomp.q", "A5"])
def test_criterion_9_worked_diagrams(name):
    with Criterion(9, "generic decompositions of the worked diagrams", 1.0) as c:
        if name == "A5":
            span = lambda i, j: interval_dims(A5, i, j)  # noqa: E731
            want = Counter({span(2, 3): 2, span(5, 5): 2, span(1, 3): 1, span(1, 5): 2, span(3, 5): 1})
            c.check(canonical_search(A5, (3, 5, 6, 3, 5)) == want, "A5")
        else:
            qf = parse(GOLDEN / name)
            got = type_d_decompose(qf.quiver(), qf.numeric_beta())
            c.check(got == WORKED_DIAGRAMS[name], f"{name}: got {dict(got)}")


def _tree_instance(rng, top=5):
    while True:
        q = random_tree(rng, rng.randint(2, 7))
        alpha = connected_support(rng, q)
        beta = balanced_beta(rng, q, alpha, top)
        if beta is not None:
            return q, alpha, beta


def _type_d_instance(rng):
    while True:
        q = random_type_d(rng, rng.randint(4, 7))
        table = positive_roots(q)
        alpha = dict(zip(q.vertices, rng.choice(table.roots)))
        beta = balanced_beta(rng, q, alpha, 5)
        if beta is not None:
            return q, alpha, beta


def _identity_holds(d):
    return all(new == predicted for s in d.steps if s.rule in SLICE_RULES for _, new, predicted in s.data["identity"])


def test_criterion_10_property_suites():
    with Criterion(10, "property suites", 300.0) as c:
        rng = random.Random(2024)
        derivations = []

        for _ in range(500):
            q = random_tree(rng, rng.randint(1, 5))
            a = {v: rng.randint(0, 2) for v in q.vertices}
            b = {v: rng.randint(0, 2) for v in q.vertices}
            h, e = hom_ext(random_rep(q, a, rng), random_rep(q, b, rng))
            c.check(h - e == euler_form(q, a, b), "hom - ext")

        confluent = 0
        while confluent < 50:
            q, alpha, beta = _tree_instance(rng) if confluent % 2 else _type_d_instance(rng)
            ref = run(numeric_state(q, beta, [alpha]))
            if ref.status != COMPLETE:
                continue
            derivations.append(ref)
            target = monic_expand(ref.factors)
            for k in range(5):
                d = run(numeric_state(q, beta, [alpha]), policy=random.Random(k))
                derivations.append(d)
                c.check(d.status == COMPLETE and monic_expand(d.factors) == target, f"confluence {beta}")
            confluent += 1

        trees = 0
        while trees < 100:
            q, alpha, beta = _tree_instance(rng)
            d = run(numeric_state(q, beta, [alpha]))
            if d.status == INFEASIBLE:
                continue
            derivations.append(d)
            c.check(d.status == COMPLETE, f"tree {beta} {d.status}")
            c.check(all(r.denominator == 1 and r < 0 for r in roots(d.factors)), f"tree roots {beta}")
            trees += 1

        for _ in range(200):
            q = random_type_d(rng, rng.randint(4, 8))
            beta = tuple(rng.randint(0, 9) for _ in q.vertices)
            c.check(type_d_decompose(q, beta) == canonical_search(q, beta), f"type D {beta}")

        c.check(all(_identity_holds(d) for d in derivations), "slice-step identity")
        c.notes.append(f"{len(derivations)} derivations")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
