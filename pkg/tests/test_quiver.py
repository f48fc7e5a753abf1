import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverbs.dynkin import component_type, dynkin_type
from quiverbs.errors import InputError
from quiverbs.quiver import (
    Quiver, coxeter, dual_of_weight, dual_root, euler_form, euler_matrix, root_of_weight,
    weight_of_dual, weight_of_root,
)


def d4():
    return Quiver.from_edges("1234", [("1", "4"), ("2", "4"), ("3", "4")])


def test_euler_form_on_d4():
    q = d4()
    ones = dict.fromkeys("1234", 1)
    assert euler_form(q, ones, ones) == 1
    assert euler_form(q, ones, {"1": 1, "2": 1, "3": 2, "4": 2}) == 0


def test_weight_and_root_round_trip():
    q = d4()
    sigma = weight_of_root(q, dict.fromkeys("1234", 1))
    assert sigma == {"1": 1, "2": 1, "3": 1, "4": -2}
    assert root_of_weight(q, sigma) == dict.fromkeys("1234", 1)


def test_dual_root_is_coxeter_image():
    q = d4()
    alpha = {"1": 1, "2": 0, "3": 1, "4": 1}
    c = coxeter(q)
    vec = [alpha[v] for v in q.vertices]
    image = [sum(c[i][j] * vec[j] for j in range(4)) for i in range(4)]
    assert [dual_root(q, alpha)[v] for v in q.vertices] == image


def test_dual_weight_round_trip():
    q = d4()
    sigma = {"1": 1, "2": -1, "3": 0, "4": 2}
    assert weight_of_dual(q, dual_of_weight(q, sigma)) == sigma


def test_euler_matrix_is_unitriangular_in_topological_order():
    q = Quiver.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    e = euler_matrix(q)
    assert [e[i][i] for i in range(3)] == [1, 1, 1]
    assert e[0][2] == -1


def test_cycle_rejected():
    with pytest.raises(InputError):
        Quiver.from_edges("ab", [("a", "b"), ("b", "a")]).topological_order()


@pytest.mark.parametrize("edges,kind", [
    ([("1", "2")], "A2"),
    ([("1", "4"), ("2", "4"), ("3", "4")], "D4"),
    ([("1", "2"), ("2", "3"), ("3", "4"), ("5", "3"), ("6", "5")], "E6"),
    ([("1", "5"), ("2", "5"), ("3", "5"), ("4", "5")], None),
])
def test_component_type(edges, kind):
    vs = sorted({v for e in edges for v in e})
    assert component_type(Quiver.from_edges(vs, edges)) == kind


def test_disconnected_type():
    q = Quiver.from_edges("abcd", [("a", "b"), ("c", "d")])
    assert dynkin_type(q) == "A2+A2"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5))
def test_sigma_pairs_like_euler_form(alpha_list):
    q = Quiver.from_edges("12345", [("1", "2"), ("3", "2"), ("3", "4"), ("4", "5")])
    alpha = dict(zip("12345", alpha_list))
    sigma = weight_of_root(q, alpha)
    for v in q.vertices:
        e_v = {x: int(x == v) for x in q.vertices}
        assert euler_form(q, alpha, e_v) == sigma[v]
    assert root_of_weight(q, sigma) == alpha
