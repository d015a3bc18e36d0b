from fractions import Fraction as F

import pytest

from starclass.groups import parse_group, point
from starclass.valuation import (
    ContainmentError,
    ValPrime,
    ValuationDomain,
    lift_ideal,
    localization_module,
    localize_at_prime,
    maximal_ideal_profile,
    phi,
    push_ideal,
    quotient_by_prime,
)


def V(text):
    return ValuationDomain(parse_group(text))


def test_dense_maximal_ideal_idempotent():
    D = V("Z[1/2]")
    M = D.maximal_ideal()
    assert M * M == M
    assert D.unit().colon(M) == D.unit()
    assert M.v_closure() == D.unit()


def test_products_and_torsion():
    D = V("Z")
    assert D.ideal((1,)) * D.ideal((2,)) == D.ideal((3,))
    E = V("Z[1/2]")
    third = E.ideal((F(1, 3),))
    # values in I^3 are sums of three values above 1/3, so 1 itself is never reached
    assert third**3 == E.ideal((1,), open=True)
    assert not (third**3).is_principal
    assert (third**3).v_closure() == E.principal((1,))


def test_inverse_and_flags():
    E = V("Z[1/2]")
    third = E.ideal((F(1, 3),))
    assert third.inverse() == E.ideal((F(-1, 3),))
    assert third.v_closure() == third
    assert (third.is_principal, third.is_divisorial, third.is_v_invertible) == (False, True, True)
    one = V("Z").ideal((1,))
    assert one.is_principal and one.is_divisorial and one.is_invertible and one.is_v_invertible
    Mq = V("Q").maximal_ideal()
    assert not Mq.is_principal and not Mq.is_divisorial and Mq.is_v_invertible


def test_colon_of_principal():
    D = V("lex(Z, Q)")
    x = point(2, F(-3, 7))
    assert D.unit().colon(D.principal(x)) == D.principal(point(-2, F(3, 7)))


def test_push_and_lift():
    D = V("lex(Z, Z[1/2])")
    P = ValPrime(D, 1)
    I = D.ideal((0, F(1, 3)))
    W = quotient_by_prime(D, P)
    assert str(W.group) == "Z[1/2]"
    J = push_ideal(I, P)
    assert J == W.ideal((F(1, 3),))
    assert lift_ideal(J, D, P) == I
    assert push_ideal(D.maximal_ideal(), P) == W.maximal_ideal()
    with pytest.raises(ContainmentError):
        push_ideal(D.ideal((1, 0)), P)


def test_localization():
    D = V("lex(Q, Z)")
    P = ValPrime(D, 1)
    assert str(localize_at_prime(D, P).group) == "Q"
    VP = localization_module(D, P)
    assert D.unit() < VP
    assert VP.contains_value(point(0, -1000)) and not VP.contains_value(point(F(-1, 9), 0))
    with pytest.raises(ValueError):
        localize_at_prime(D, ValPrime(D, 0))


def test_profiles():
    p = maximal_ideal_profile(V("lex(Q, Z)"))
    assert p["principal"] and p["prime_directly_below"].k == 1
    p = maximal_ideal_profile(V("lex(Z, Z[1/2])"))
    assert not p["principal"] and p["idempotent"] and p["branched"]
    assert maximal_ideal_profile(V("Z"))["prime_directly_below"].is_zero


def test_phi_rank_one_only():
    assert phi(V("Z[1/2]").ideal((F(1, 3),))) == point(F(1, 3))
    with pytest.raises(ValueError):
        phi(V("lex(Z, Z)").unit())
