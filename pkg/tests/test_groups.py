from fractions import Fraction as F

import pytest

from starclass.groups import (
    Q,
    Z,
    Zloc,
    add,
    compare,
    convex_subgroups,
    has_min_positive,
    lex,
    make_cut,
    member,
    parse_group,
    point,
    quotient_group,
    subgroup_group,
)


def test_lex_compare():
    G = lex(Z, Z)
    assert compare(point(1, -5), point(0, 100)) == 1
    assert compare(point(0, 0), point(0, 0)) == 0
    assert compare(point(F(1, 3)), point(F(1, 2))) == -1


def test_membership():
    assert not member(point(F(1, 3)), Zloc(2))
    assert member(point(F(5, 8)), Zloc(2))
    assert not member(point(F(1, 2), 3), lex(Z, Z))
    assert member(point(F(1, 2), 3), lex(Q, Z))


def test_add():
    assert add(point(F(1, 3)), point(F(-1, 3))) == point(0)
    assert add(point(1, 2), point(0, -2)) == point(1, 0)
    assert add(point(F(1, 4)), point(F(1, 4))) == point(F(1, 2))


def test_min_positive():
    assert has_min_positive(Z) == point(1)
    assert has_min_positive(lex(Q, Z)) == point(0, 1)
    assert has_min_positive(Zloc(2)) is None
    assert has_min_positive(lex(Z, Q)) is None


def test_convex_subgroups():
    G = lex(Z, Zloc(2))
    H0, H1, H2 = convex_subgroups(G)
    assert subgroup_group(G, H1) == Zloc(2)
    assert quotient_group(G, H1) == Z
    assert subgroup_group(G, H0) is None and quotient_group(G, H0) == G
    assert subgroup_group(Q, convex_subgroups(Q)[1]) == Q
    assert quotient_group(Q, convex_subgroups(Q)[1]) is None


@pytest.mark.parametrize("text", ["Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)", "lex(Z, Z, Z, Q)"])
def test_parse_round_trip(text):
    assert str(parse_group(text)) == text


@pytest.mark.parametrize("bad", ["", "R", "Z[1/4]", "Z[1/1]", "lex(Z,", "lex(Z, Z, Z, Z, Z)", "Z Z"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_group(bad)


def test_cut_canonical_forms():
    # no least element above 1/3 in a dyadic group: closed and open coincide
    G = Zloc(2)
    assert make_cut(G, [F(1, 3)], open=True) == make_cut(G, [F(1, 3)], open=False)
    # over Z, the open cut at 0 is the closed cut at 1
    assert make_cut(Z, [0], open=True) == make_cut(Z, [1])
    assert make_cut(Z, [F(1, 2)]) == make_cut(Z, [1])
    c = make_cut(G, [0], open=True)
    assert not c.contains(point(0)) and c.contains(point(F(1, 1024)))
