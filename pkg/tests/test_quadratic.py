import random
from fractions import Fraction as F

import pytest

from starclass.quadratic import (
    LatticeIdeal,
    QuadraticOrder,
    fundamental_part,
    integral_ideals_up_to,
    maximal_ideals_up_to,
    random_ideal,
)

O = QuadraticOrder(-12)
SQRT_M3 = O.elem(0, 1)  # elem(x, y) = x + y*sqrt(fundamental disc)
P = O.ideal(1, 2, 1, 1)


def test_orders():
    assert fundamental_part(-12) == (-3, 2)
    assert O.conductor == 2 and not O.is_maximal and not O.integrally_closed
    assert O.maximal() == QuadraticOrder(-3)
    assert QuadraticOrder(-20).is_maximal
    with pytest.raises(ValueError):
        QuadraticOrder(-13)
    with pytest.raises(ValueError):
        QuadraticOrder(16)


def test_hnf_from_generators():
    I = LatticeIdeal.from_generators(O, [O.elem(2), O.elem(1) + SQRT_M3])
    assert I.hnf() == (1, 2, 1, 1) and I == P
    assert LatticeIdeal.from_generators(O, [O.elem(1)]) == O.unit()
    half = LatticeIdeal.from_generators(O, [O.elem(F(1, 2))])
    assert half == O.unit().scale(O.elem(F(1, 2)))
    assert half.hnf()[0] == 2


def test_arithmetic():
    assert P * P == P.scale(O.elem(2))
    assert O.unit().colon(P) == P.scale(O.elem(F(1, 2)))
    assert P.v_closure() == P
    four, twoP = O.unit().scale(O.elem(4)), P.scale(O.elem(2))
    assert four.v_closure() == four and four != twoP.v_closure()
    x = O.elem(3) + SQRT_M3
    assert O.principal(x).v_closure() == O.principal(x)


def test_invertibility():
    assert not P.is_invertible and not P.is_v_invertible
    assert O.principal(O.elem(5)).is_invertible
    Om = O.maximal()
    rng = random.Random(0)
    for _ in range(30):
        assert random_ideal(Om, rng).is_invertible


def test_norm_and_principality():
    Z5 = QuadraticOrder(-20)
    p2 = LatticeIdeal.from_generators(Z5, [Z5.elem(2), Z5.elem(1, F(1, 2))])
    assert p2.norm() == 2 and not p2.is_principal
    assert (p2 * p2).is_principal


def test_enumeration():
    maxes = maximal_ideals_up_to(O, 5)
    assert P in maxes
    assert maximal_ideals_up_to(O, 1) == []
    Zi = QuadraticOrder(-4)
    one_plus_i = Zi.principal(Zi.elem(1, F(1, 2)))
    assert one_plus_i in maximal_ideals_up_to(Zi, 2)
    ideals = integral_ideals_up_to(O, 12)
    assert all(I.is_integral and I.norm() <= 12 for I in ideals)
    assert len(set(ideals)) == len(ideals)


def test_field_elements():
    w = SQRT_M3
    assert w * w == O.elem(-3)
    z = O.elem(F(2, 3)) + w
    assert z * z.inverse() == O.elem(1)
    assert z.norm() == F(4, 9) + 3
