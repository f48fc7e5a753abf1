import random
from collections import Counter

import pytest

from quiverbs.candecomp import (
    canonical_search, decompose, expected_root_count, is_decomposition, order_classes, positive_roots,
    type_d_decompose, type_d_roles,
)
from quiverbs.errors import NotDynkin, NotTypeD
from quiverbs.homext import interval_dims
from quiverbs.quiver import Quiver, euler_form

from instances import random_type_d

A5 = Quiver.from_edges("12345", [("1", "2"), ("3", "2"), ("3", "4"), ("4", "5")])


def test_a2_roots():
    q = Quiver.from_edges("12", [("1", "2")])
    assert set(positive_roots(q).roots) == {(1, 0), (0, 1), (1, 1)}


@pytest.mark.parametrize("edges,kind", [
    ([("1", "2"), ("3", "2"), ("3", "4"), ("4", "5")], "A5"),
    ([("1", "4"), ("2", "4"), ("3", "4")], "D4"),
    ([("1", "2"), ("2", "6"), ("3", "2"), ("3", "4"), ("4", "5")], "D6"),
    ([("1", "2"), ("2", "3"), ("3", "4"), ("5", "3"), ("6", "5")], "E6"),
])
def test_root_counts(edges, kind):
    vs = sorted({v for e in edges for v in e})
    table = positive_roots(Quiver.from_edges(vs, edges))
    assert len(table) == expected_root_count(kind)
    q = table.quiver
    assert all(euler_form(q, dict(zip(q.vertices, r)), dict(zip(q.vertices, r))) == 1 for r in table.roots)


def test_d4_has_longest_root():
    q = Quiver.from_edges("1234", [("1", "4"), ("2", "4"), ("3", "4")])
    assert (1, 1, 1, 2) in positive_roots(q).roots


def test_sampled_hom_matches_shortcut():
    q = Quiver.from_edges("12345", [("2", "1"), ("2", "5"), ("3", "2"), ("3", "4")])
    a, b = positive_roots(q), positive_roots(q, method="sampled", seed=2)
    assert a.roots == b.roots and a.hom == b.hom


def test_not_dynkin():
    q = Quiver.from_edges("12345", [("1", "5"), ("2", "5"), ("3", "5"), ("4", "5")])
    with pytest.raises(NotDynkin):
        positive_roots(q)


def test_single_root():
    assert canonical_search(A5, (0, 1, 1, 1, 0)) == Counter({(0, 1, 1, 1, 0): 1})
    assert canonical_search(A5, (0, 0, 0, 0, 0)) == Counter()


def test_a5_intervals():
    got = canonical_search(A5, (3, 5, 6, 3, 5))
    span = lambda i, j: interval_dims(A5, i, j)  # noqa: E731
    assert got == Counter({span(2, 3): 2, span(5, 5): 2, span(1, 3): 1, span(1, 5): 2, span(3, 5): 1})


def test_d5_diagram(golden):
    qf = golden("d5decomp.q")
    q, beta = qf.quiver(), qf.numeric_beta()
    expected = Counter({(1, 1, 1, 1, 0): 1, (0, 1, 1, 1, 1): 2, (1, 2, 1, 0, 1): 1, (1, 1, 1, 0, 1): 1})
    assert type_d_decompose(q, beta) == expected
    assert canonical_search(q, beta) == expected


def test_d6_diagram(golden):
    qf = golden("d6.q")
    q, beta = qf.quiver(), qf.numeric_beta()
    parts, diagram = type_d_decompose(q, beta, with_diagram=True)
    assert parts == canonical_search(q, beta)
    assert is_decomposition(q, beta, parts)
    assert parts == Counter({(1, 1, 1, 0, 0, 1): 1, (1, 1, 1, 1, 1, 1): 1, (1, 2, 2, 1, 1, 1): 1,
                             (0, 1, 1, 0, 0, 1): 1, (0, 0, 0, 0, 1, 0): 2, (0, 0, 1, 1, 1, 0): 1})
    assert diagram.circles == beta["6"]
    assert diagram.stop in ("a", "b", "c")
    assert "roles 1=1 2=2 n=6" in diagram.render()


def test_opposite_orientation_gives_same_multiset(golden):
    qf = golden("d6.q")
    q, beta = qf.quiver(), qf.numeric_beta()
    assert type_d_decompose(q.opposite(), beta) == type_d_decompose(q, beta)


def test_type_d_roles_and_errors():
    assert type_d_roles(Quiver.from_edges("1234", [("1", "2"), ("2", "4"), ("3", "2")]))["2"] == "2"
    with pytest.raises(NotTypeD):
        type_d_roles(A5)


def test_zero_vector():
    q = random_type_d(random.Random(0), 5)
    assert type_d_decompose(q, dict.fromkeys(q.vertices, 0)) == Counter()


def test_single_class_ordering_is_identity():
    hom = lambda x, y: 0  # noqa: E731
    first = [(1, 1, 0), (1, 0, 0)]
    v, w, _ = order_classes(first, [], hom)
    assert v == first and w == []


def test_ordering_respects_hom_on_a4():
    q = Quiver.from_edges("1234", [("1", "2"), ("2", "3"), ("4", "3")])
    table = positive_roots(q)
    hom = lambda x, y: table.hom[table.index(x)][table.index(y)]  # noqa: E731
    first = [r for r in table.roots if r[0] == 1]
    ordered, _, _ = order_classes(first, [], hom)
    for i, x in enumerate(ordered):
        for y in ordered[i + 1:]:
            assert not (x != y and hom(x, y) > 0 and not hom(y, x))


def test_decompose_handles_components():
    q = Quiver.from_edges("1234", [("1", "2"), ("3", "4")])
    assert decompose(q, (1, 2, 0, 1)) == Counter({(1, 1, 0, 0): 1, (0, 1, 0, 0): 1, (0, 0, 0, 1): 1})
