"""Fractional ideals of a valuation domain presented by its value group.

An ideal is stored through its value set, an upper set of the value group
(a :class:`~starclass.groups.Cut`).  Products, colons and divisorial
closures are computed on cuts by the rule tables below; the grid oracle in
:mod:`starclass.oracles` checks them against brute-force set arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import groups
from .groups import ConvexSubgroup, Cut, OrderedGroup, make_cut


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True)
class ValuationDomain:
    group: OrderedGroup

    @property
    def rank(self) -> int:
        return self.group.rank

    def unit(self) -> ValIdeal:
        return self.principal(groups.zero(self.group))

    def principal(self, value) -> ValIdeal:
        value = groups.point(*value)
        if not groups.member(value, self.group):
            raise ValueError(f"{value} is not a value of {self.group}")
        return ValIdeal(self, make_cut(self.group, value))

    def ideal(self, pt, open: bool = False, depth: int | None = None) -> ValIdeal:
        return ValIdeal(self, make_cut(self.group, pt, open, depth))

    def maximal_ideal(self) -> ValIdeal:
        return self.ideal(groups.zero(self.group), open=True)

    def prime(self, k: int) -> ValPrime:
        return ValPrime(self, k)

    def __str__(self) -> str:
        return f"V({self.group})"


@dataclass(frozen=True)
class ValIdeal:
    domain: ValuationDomain
    cut: Cut

    def _check(self, other: ValIdeal):
        if self.domain != other.domain:
            raise ValueError("ideals live in different domains")

    def __mul__(self, other: ValIdeal) -> ValIdeal:
        self._check(other)
        return ValIdeal(self.domain, multiply_cuts(self.cut, other.cut))

    def colon(self, other: ValIdeal) -> ValIdeal:
        """``(self : other)``."""
        self._check(other)
        return ValIdeal(self.domain, colon_cuts(self.cut, other.cut))

    def inverse(self) -> ValIdeal:
        return self.domain.unit().colon(self)

    def v_closure(self) -> ValIdeal:
        return ValIdeal(self.domain, v_closure_cut(self.cut))

    def __pow__(self, n: int) -> ValIdeal:
        if n < 0:
            return self.inverse() ** (-n)
        out = self.domain.unit()
        for _ in range(n):
            out = out * self
        return out

    def __le__(self, other: ValIdeal) -> bool:
        self._check(other)
        return self.cut <= other.cut

    def __lt__(self, other: ValIdeal) -> bool:
        return self <= other and self != other

    def __and__(self, other: ValIdeal) -> ValIdeal:
        self._check(other)
        return self if self.cut <= other.cut else other

    def __add__(self, other: ValIdeal) -> ValIdeal:
        self._check(other)
        return other if self.cut <= other.cut else self

    def scale(self, value) -> ValIdeal:
        """``x * I`` for an element ``x`` of value ``value``."""
        return ValIdeal(self.domain, self.cut.shift(groups.point(*value)))

    def contains_value(self, value) -> bool:
        return self.cut.contains(value)

    @property
    def is_principal(self) -> bool:
        return self.cut.has_min

    @property
    def is_divisorial(self) -> bool:
        return self.v_closure() == self

    @property
    def is_invertible(self) -> bool:
        return self * self.inverse() == self.domain.unit()

    @property
    def is_v_invertible(self) -> bool:
        return (self * self.inverse()).v_closure() == self.domain.unit()

    @property
    def is_integral(self) -> bool:
        return self <= self.domain.unit()

    def to_dict(self) -> dict:
        return {"group": str(self.domain.group), "cut": self.cut.to_dict()}

    def __str__(self) -> str:
        return str(self.cut)


def multiply_cuts(a: Cut, b: Cut) -> Cut:
    """Value set of a product: ``{x + y : x in a, y in b}``.

    The shallower cut decides the depth.  The result excludes its boundary
    exactly when one of the cuts at that depth excludes its own.
    """
    d = min(a.depth, b.depth)
    s = groups.add(a.point[:d], b.point[:d])
    strict = any(c.depth == d and c.strict for c in (a, b))
    return make_cut(a.group, s + a.point[d:], strict, d)


def colon_cuts(a: Cut, b: Cut) -> Cut:
    """Value set of ``(a : b) = {z : z + b ⊆ a}``.

    Case table (``e`` = depth of ``b``):

    ======================  ===========================  ================
    depths                  ``b``                        result openness
    ======================  ===========================  ================
    ``b`` deeper than ``a``  any                         as ``a``
    equal                   boundary attained            as ``a``
    equal                   boundary not attained        closed
    ``b`` shallower         boundary attained            open
    ``b`` shallower         boundary not attained        closed
    ======================  ===========================  ================

    In every case the depth is ``min(depth a, depth b)`` and the point is
    the difference of the points truncated there.
    """
    da, db = a.depth, b.depth
    d = min(da, db)
    diff = groups.sub(a.point[:d], b.point[:d])
    if db > da:
        open = a.open
    elif db == da:
        open = False if b.strict else a.open
    else:
        open = not b.strict
    return make_cut(a.group, diff + (0,) * (a.group.rank - d), open, d)


def v_closure_cut(c: Cut) -> Cut:
    """Only a full-depth open cut at a group element fails to be divisorial."""
    if c.depth == c.group.rank and c.open:
        return make_cut(c.group, c.point, False)
    return c


def phi(I: ValIdeal):
    """``sup{ω(x) : I ⊆ xV}`` for a rank-one valuation domain."""
    if I.domain.rank != 1:
        raise ValueError("phi is defined for rank-one valuation domains only")
    return I.cut.point


# -- primes, quotients and localizations -------------------------------------


@dataclass(frozen=True)
class ValPrime:
    """Prime ``P_H`` for the convex subgroup ``H`` made of the last ``k`` factors.

    ``k = 0`` is the maximal ideal, ``k = rank`` the zero ideal.
    """

    domain: ValuationDomain
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.domain.rank:
            raise ValueError(f"prime index {self.k} out of range")

    @property
    def subgroup(self) -> ConvexSubgroup:
        return ConvexSubgroup(self.domain.group, self.k)

    @property
    def is_zero(self) -> bool:
        return self.k == self.domain.rank

    @property
    def is_maximal(self) -> bool:
        return self.k == 0

    def ideal(self) -> ValIdeal:
        if self.is_zero:
            raise ValueError("the zero prime is not a fractional ideal")
        G = self.domain.group
        return self.domain.ideal(groups.zero(G), open=True, depth=G.rank - self.k)

    def __str__(self) -> str:
        return f"P_k{self.k}"


def quotient_by_prime(V: ValuationDomain, P: ValPrime) -> ValuationDomain:
    if P.is_maximal:
        raise ValueError("quotient by the maximal ideal is not a valuation domain")
    if P.is_zero:
        return V
    return ValuationDomain(groups.subgroup_group(V.group, P.subgroup))


def push_ideal(I: ValIdeal, P: ValPrime) -> ValIdeal:
    """``I/P`` as a fractional ideal of ``V/P``; needs ``P ⊊ I ⊊ V_P``."""
    V = I.domain
    if P.is_maximal:
        raise ValueError("quotient by the maximal ideal is not a valuation domain")
    if P.is_zero:
        return I
    lead = V.rank - P.k
    c = I.cut
    if c.depth <= lead or any(x != 0 for x in c.point[:lead]):
        raise ContainmentError(f"{c} does not lie strictly between {P} and V_P")
    W = quotient_by_prime(V, P)
    return W.ideal(c.point[lead:], c.open, c.depth - lead)


def lift_ideal(J: ValIdeal, V: ValuationDomain, P: ValPrime) -> ValIdeal:
    """Inverse of :func:`push_ideal`."""
    if P.is_zero:
        return J
    lead = V.rank - P.k
    c = J.cut
    return V.ideal((0,) * lead + c.point, c.open, c.depth + lead)


def localize_at_prime(V: ValuationDomain, P: ValPrime) -> ValuationDomain:
    if P.is_maximal:
        raise ValueError("localizing at the maximal ideal returns V itself; pass a smaller prime")
    if P.is_zero:
        raise ValueError("localizing at the zero prime gives the quotient field")
    return ValuationDomain(groups.quotient_group(V.group, P.subgroup))


def localization_module(V: ValuationDomain, P: ValPrime) -> ValIdeal:
    """``V_P`` as a ``V``-submodule of the quotient field."""
    if P.is_zero:
        raise ValueError("localizing at the zero prime gives the quotient field")
    if P.is_maximal:
        return V.unit()
    return V.ideal(groups.zero(V.group), open=False, depth=V.rank - P.k)


def maximal_ideal_profile(V: ValuationDomain) -> dict:
    principal = groups.has_min_positive(V.group) is not None
    return {
        "principal": principal,
        "idempotent": not principal,
        # finite lex products always have a smallest nonzero convex subgroup
        "branched": True,
        "prime_directly_below": ValPrime(V, 1),
    }
