from fractions import Fraction as F

import pytest

from starclass import star
from starclass.groups import parse_group
from starclass.quadratic import QuadraticOrder
from starclass.valuation import ValuationDomain

O = QuadraticOrder(-12)
P = O.ideal(1, 2, 1, 1)
OMAX = O.maximal()


def V(text):
    return ValuationDomain(parse_group(text))


def test_identity():
    assert star.close(star.d_op(O), P) == P


def test_meet_with_maximal_order_is_semistar():
    op = star.meet_op(O, [OMAX])
    PO = star.close(op, P)
    assert PO.order == OMAX and PO == OMAX.unit().scale(OMAX.elem(2))
    assert op.is_semistar_only
    assert star.star_unit(op) == OMAX.unit()
    assert not op.is_stable


def test_v_on_dense_maximal_ideal():
    D = V("Z[1/2]")
    assert star.close(star.v_op(D), D.maximal_ideal()) == D.unit()


def test_finite_type():
    D = V("lex(Z, Z[1/2])")
    assert star.finite_type_of(star.v_op(D)) == star.d_op(D)
    assert star.finite_type_of(star.v_op(O)) == star.v_op(O)
    assert star.finite_type_of(star.d_op(O)) == star.d_op(O)
    assert not star.v_op(D).is_finite_type and star.v_op(V("Z")).is_finite_type


def test_quasi_versus_star_invertible():
    op = star.meet_op(O, [OMAX])
    assert star.is_quasi_star_invertible(op, P)
    assert not star.is_star_invertible(op, P)
    x = O.principal(O.elem(3, 1))
    for o in (op, star.v_op(O), star.d_op(O)):
        assert star.is_quasi_star_invertible(o, x) and star.is_star_invertible(o, x)


def test_compare():
    D = V("Q")
    M = D.maximal_ideal()
    d, v = star.d_op(D), star.v_op(D)
    r = star.compare(d, v, [M, D.unit(), D.principal((F(2),))])
    assert r["leq"] and not r["geq"] and r["witnesses"]["geq"] == [M]
    assert star.compare(v, v, [M]) == {"leq": True, "geq": True, "witnesses": {"leq": [], "geq": []}}


def test_w_approx():
    D = V("Z")
    fam = [D.unit()]
    I = D.ideal((3,))
    assert star.close(star.w_op(D, fam), I) == I
    # on an order, any family sits between I and I^v
    fam = [O.unit(), O.principal(O.elem(2)).colon(O.principal(O.elem(2)))]
    w = star.w_op(O, fam)
    J = O.principal(O.elem(2)) + O.principal(O.elem(1, 1))
    assert J <= star.close(w, J) <= J.v_closure()


def test_bad_ops_rejected():
    with pytest.raises(star.StarOpError):
        star.StarOp("u", O)
    with pytest.raises(star.StarOpError):
        star.w_op(O, [])
    with pytest.raises(star.StarOpError):
        star.w_op(O, [P])  # P^v = P, not O
    with pytest.raises(star.StarOpError):
        star.w_op(V("Q"), [V("Q").maximal_ideal()])  # not finitely generated
    with pytest.raises(star.StarOpError):
        star.meet_op(O, [QuadraticOrder(-48)])  # a suborder, not an overring
    with pytest.raises(star.StarOpError):
        star.close(star.v_op(O), V("Z").unit())


def test_axioms_and_h_domain():
    D = V("lex(Z, Z[1/2])")
    E, Fi = D.ideal((0, F(1, 3))), D.maximal_ideal()
    for op in (star.d_op(D), star.v_op(D), star.t_op(D), star.meet_op(D, [1])):
        assert star.axiom_failures(op, E, Fi, (F(1), F(-1, 2))) == []
    assert star.h_domain_check(star.v_op(O), 20)["holds"]
    assert star.h_domain_check(star.v_op(QuadraticOrder(-4)), 20)["holds"]
    assert star.h_domain_check(star.v_op(O), 1) == {"holds": True, "maximal_checked": 0, "witnesses": []}


def test_w_verdict():
    D = V("Z[1/2]")
    assert star.w_invertibility_verdict([D.unit()], D.ideal((F(1, 3),))) == "agree"
    assert star.w_invertibility_verdict([O.unit()], P) == "agree"
