from fractions import Fraction

import pytest

from quiverbs.bfactor import monic_expand, roots
from quiverbs.classical import (
    FormulaId, catalog_roots, closed_form, d4_product, d4_state, dn_displayed_product, dn_longest_product,
    dn_longest_state, euler_factor,
)
from quiverbs.errors import BadParameters
from quiverbs.slicer import run


def rs(*xs):
    return sorted(Fraction(x) for x in xs)


def test_determinant_roots():
    assert sorted(catalog_roots(FormulaId("determinant", (3,))).elements()) == rs(-3, -2, -1)


def test_symmetric_determinant_one():
    assert list(catalog_roots(FormulaId("symmetric_determinant", (1,))).elements()) == [-1]


def test_minors_ideal():
    assert sorted(catalog_roots(FormulaId("maximal_minors_ideal_power", (2, 3, 1))).elements()) == rs(-3, -2)


def test_integral_families_have_products():
    cf = closed_form(FormulaId("sp_pfaffian", (3, 1)))
    assert cf.product is not None
    assert roots(cf.product) == cf.roots
    assert closed_form(FormulaId("binary_cubic")).product is None


@pytest.mark.parametrize("family,params", [
    ("so_pair", (2, 3)), ("sp_pfaffian", (2, 2)), ("determinant", (0,)), ("determinant", ()),
    ("maximal_minors_ideal_power", (3, 2, 1)), ("dn_longest", (4,)), ("nonsense", ()),
])
def test_bad_parameters(family, params):
    with pytest.raises(BadParameters):
        FormulaId(family, params)


def test_euler_factor():
    assert euler_factor(4, 4).root == -1
    assert euler_factor(7, 1).root == -7
    assert euler_factor(9, 3).root == -3
    with pytest.raises(BadParameters):
        euler_factor(0, 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_symmetric_recursion(n):
    cur = catalog_roots(FormulaId("symmetric_determinant", (n,)))
    prev = catalog_roots(FormulaId("symmetric_determinant", (n - 1,))) if n > 1 else None
    diff = cur - prev
    assert diff == {Fraction(-(n + 1), 2): 1}


@pytest.mark.parametrize("m,n", [(3, 2), (4, 2), (5, 3), (6, 4)])
def test_orthogonal_recursion(m, n):
    cur = catalog_roots(FormulaId("so_pair", (m, n)))
    prev = catalog_roots(FormulaId("so_pair", (m - 1, n - 1))) if n > 1 else type(cur)()
    assert cur == prev + type(cur).from_roots([Fraction(-(n + 1), 2), Fraction(-m, 2)])


@pytest.mark.parametrize("m,n", [(3, 2), (4, 2), (5, 3), (6, 4)])
def test_symplectic_recursion(m, n):
    cur = catalog_roots(FormulaId("sp_pfaffian", (m, n)))
    prev = catalog_roots(FormulaId("sp_pfaffian", (m - 1, n - 1)))
    assert cur == prev + type(cur).from_roots([-(2 * n - 1), -2 * m])


def test_d4_product_matches_slicer():
    assert run(d4_state()).factors == d4_product()


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_dn_corrected_product_matches_slicer(n):
    d = run(dn_longest_state(n))
    assert d.factors.factors == dn_longest_product(n).canonical_factors()


def test_dn_display_overshoots_degree():
    state = dn_longest_state(5)
    values = {"b1": 1, "b2": 1, "b3": 2, "b4": 1, "b5": 1}
    true = monic_expand(dn_longest_product(5, state.rel), values)
    shown = monic_expand(dn_displayed_product(5, state.rel), values)
    assert len(true) - 1 == 5
    assert len(shown) - 1 == 6


def test_dn_roots_with_values():
    cf = closed_form(FormulaId("dn_longest", (5,)), {"b1": 1, "b2": 1, "b3": 2, "b4": 1, "b5": 1})
    assert cf.roots == type(cf.roots).from_roots([-1, -1, -1, -1, Fraction(-3, 2)])
