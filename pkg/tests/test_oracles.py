import random
from fractions import Fraction as F

from starclass import oracles
from starclass.groups import Z, Zloc, make_cut, parse_group
from starclass.oracles import CutGrid, RawCut, class_number_by_forms, reduced_forms
from starclass.quadratic import QuadraticOrder, random_ideal
from starclass.valuation import multiply_cuts


def test_reduced_forms():
    assert reduced_forms(-20) == [(1, 0, 5), (2, 2, 3)]
    assert class_number_by_forms(-4) == 1
    assert class_number_by_forms(-3) == 1
    assert class_number_by_forms(-12) == 1
    assert class_number_by_forms(-23) == 3
    assert class_number_by_forms(-20) == 2


def test_grid_agrees_with_dyadic_square_of_m():
    G = Zloc(2)
    grid = CutGrid(G, 3, 4)
    m = RawCut((F(0),), True, 1)
    M = make_cut(G, [0], open=True)
    assert grid.disagreement(multiply_cuts(M, M).contains, grid.product_pred(m, m)) is None


def test_grid_catches_wrong_product():
    G = Z
    grid = CutGrid(G, 2, 4)
    a, b = RawCut((F(1),), False, 1), RawCut((F(2),), False, 1)
    wrong = make_cut(G, [2])
    assert grid.disagreement(wrong.contains, grid.product_pred(a, b)) is not None


def test_large_grid_uses_minima():
    G = parse_group("lex(Z, Z[1/2])")
    grid = CutGrid(G, 6, 8)
    assert grid.size > oracles.ENUMERATION_LIMIT
    a, b = RawCut((F(0), F(1, 3)), False, 2), RawCut((F(1), F(0)), True, 2)
    A, B = make_cut(G, a.point, a.open, a.depth), make_cut(G, b.point, b.open, b.depth)
    assert grid.disagreement(multiply_cuts(A, B).contains, grid.product_pred(a, b)) is None
    assert grid.disagreement(A.contains, grid.product_pred(a, b)) is not None


def test_span_oracles_match_implementation():
    rng = random.Random(2)
    O = QuadraticOrder(-20)
    d0 = O.fundamental_disc
    for _ in range(20):
        I, J = random_ideal(O, rng), random_ideal(O, rng)
        A, B = oracles.span_of(I.basis()), oracles.span_of(J.basis())
        assert oracles.span_product(A, B, d0) == oracles.span_of((I * J).basis())
        assert oracles.span_colon(A, B, d0) == oracles.span_of(I.colon(J).basis())


def test_span_intersect():
    L1 = oracles.SpanLattice([(F(2), F(0)), (F(0), F(1))])
    L2 = oracles.SpanLattice([(F(3), F(0)), (F(0), F(2))])
    both = oracles.span_intersect(L1, L2)
    assert both == oracles.SpanLattice([(F(6), F(0)), (F(0), F(2))])
