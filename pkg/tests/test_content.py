import random
from fractions import Fraction as F

from starclass import star
from starclass.content import (
    FieldPoly,
    MonomialSum,
    cancelling_pair,
    content,
    dedekind_mertens_check,
    gauss_check,
    pstarmd_check,
    random_pair,
)
from starclass.groups import parse_group
from starclass.parsing import parse_poly
from starclass.quadratic import QuadraticOrder
from starclass.valuation import ValuationDomain

O = QuadraticOrder(-12)
P = O.ideal(1, 2, 1, 1)
f = parse_poly("2+(1+sqrt(-3))X", O)
g = parse_poly("2+(1-sqrt(-3))X", O)


def test_content_examples():
    assert content(O, f) == P
    D = ValuationDomain(parse_group("Z[1/2]"))
    h = parse_poly("t^(1/2) + t^(2)X", D)
    assert content(D, h) == D.ideal((F(1, 2),))
    assert content(O, FieldPoly.make([O.elem(F(3, 2))])) == O.principal(O.elem(F(3, 2)))


def test_monomial_sums_cancel():
    one = MonomialSum.monomial(1, (0,))
    t = MonomialSum.monomial(1, (F(1, 2),))
    prod = (one + t) * (one - t)
    assert prod == one - t * t
    assert prod.omega() == (0,)
    assert (t - t).is_zero()


def test_dedekind_mertens_example():
    r = dedekind_mertens_check(O, f, g)
    assert r["m"] == 1 and r["holds"]
    assert r["lhs"] == r["rhs"] == P.scale(O.elem(4))


def test_dedekind_mertens_constant_g():
    c = FieldPoly.make([O.elem(F(5, 3), 1)])
    assert dedekind_mertens_check(O, f, c)["holds"]


def test_gauss_non_pruefer():
    plain = gauss_check(O, f, g)
    assert plain["lhs"] == O.unit().scale(O.elem(4)) and plain["rhs"] == P.scale(O.elem(2))
    assert not plain["equal"]
    assert not gauss_check(O, f, g, star.v_op(O))["equal"]
    meet = gauss_check(O, f, g, star.meet_op(O, [O.maximal()]))
    assert meet["equal"] and meet["lhs"] == O.maximal().unit().scale(O.elem(4))


def test_pstarmd():
    assert not pstarmd_check(star.v_op(O), [P])["allInvertible"]
    r = pstarmd_check(star.meet_op(O, [O.maximal()]), [O.unit(), P])
    assert not r["allInvertible"] and r["witness"] == P and r["checked"] == 2
    D = ValuationDomain(parse_group("lex(Q, Z)"))
    assert pstarmd_check(star.v_op(D), [D.ideal((1, 3)), D.maximal_ideal()])["allInvertible"]


def test_valuation_random_pairs():
    rng = random.Random(9)
    for name in ("Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)"):
        D = ValuationDomain(parse_group(name))
        for _ in range(20):
            a, b = random_pair(D, rng, engineered=0.5)
            assert dedekind_mertens_check(D, a, b)["holds"]
            assert gauss_check(D, a, b, star.v_op(D))["equal"]


def test_cancelling_pair_kills_x_term():
    rng = random.Random(1)
    D = ValuationDomain(parse_group("Q"))
    seen = False
    for _ in range(10):
        a, b = cancelling_pair(D, rng)
        prod = a * b
        seen |= any(c.is_zero() for c in prod.coeffs)
        assert gauss_check(D, a, b)["equal"]
    assert seen
