"""Polynomials over the quotient field of either backend, and their content ideals.

Over a quadratic order the coefficients are :class:`FieldElement` values.
Over a valuation domain with value group ``G`` the quotient field is modelled
by the group algebra ``Q[t^G]``: a coefficient is a finite sum
``sum q_i t^{g_i}`` (:class:`MonomialSum`) valued by its least exponent.
Products of such sums genuinely cancel, so ``c(fg)`` is computed, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import groups
from .quadratic import FieldElement, LatticeIdeal, QuadraticOrder
from .star import close, is_valuation, star_unit, unit_of
from .valuation import ValuationDomain


@dataclass(frozen=True)
class MonomialSum:
    """``terms``: sorted tuple of ``(exponent, coefficient)``, no zero coefficients."""

    terms: tuple

    @classmethod
    def make(cls, pairs) -> MonomialSum:
        acc: dict = {}
        for e, q in pairs:
            e = groups.point(*e)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(q)
        return cls(tuple(sorted((e, q) for e, q in acc.items() if q != 0)))

    @classmethod
    def monomial(cls, q, e) -> MonomialSum:
        return cls.make([(e, q)])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: MonomialSum) -> MonomialSum:
        return MonomialSum.make(self.terms + other.terms)

    def __neg__(self) -> MonomialSum:
        return MonomialSum(tuple((e, -q) for e, q in self.terms))

    def __sub__(self, other: MonomialSum) -> MonomialSum:
        return self + (-other)

    def __mul__(self, other: MonomialSum) -> MonomialSum:
        return MonomialSum.make(
            (groups.add(e1, e2), q1 * q2) for e1, q1 in self.terms for e2, q2 in other.terms
        )

    def omega(self):
        if not self.terms:
            raise ValueError("the zero element has no value")
        return self.terms[0][0]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, q in self.terms:
            ex = ",".join(str(c) for c in e)
            parts.append(f"{q}*t^({ex})")
        return " + ".join(parts)


def zero_like(c):
    if isinstance(c, MonomialSum):
        return MonomialSum(())
    return FieldElement(Fraction(0), Fraction(0), c.d0)


@dataclass(frozen=True)
class FieldPoly:
    """Coefficients in increasing degree, trailing zeros stripped."""

    coeffs: tuple

    @classmethod
    def make(cls, coeffs) -> FieldPoly:
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        return cls(tuple(coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial")
        return len(self.coeffs) - 1

    def __mul__(self, other: FieldPoly) -> FieldPoly:
        if self.is_zero() or other.is_zero():
            return FieldPoly(())
        out = [zero_like(self.coeffs[0])] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return FieldPoly.make(out)

    def scale(self, x) -> FieldPoly:
        return FieldPoly.make(x * c for c in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else "X" if i == 1 else f"X^{i}"
            parts.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(parts) or "0"


# -- content and the identities -------------------------------------------------------


def content(domain, f: FieldPoly):
    """The ``D``-module generated by the coefficients of ``f``."""
    if f.is_zero():
        raise ValueError("content of the zero polynomial")
    nz = [c for c in f.coeffs if not c.is_zero()]
    if is_valuation(domain):
        return domain.principal(min(c.omega() for c in nz))
    return LatticeIdeal.from_generators(domain, nz)


def dedekind_mertens_check(domain, f: FieldPoly, g: FieldPoly) -> dict:
    """``c(f)^m c(fg) = c(f)^(m+1) c(g)`` with ``m = deg g``."""
    m = g.degree
    cf, cg, cfg = content(domain, f), content(domain, g), content(domain, f * g)
    lhs = cf**m * cfg
    rhs = cf ** (m + 1) * cg
    return {"m": m, "lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


def gauss_check(domain, f: FieldPoly, g: FieldPoly, op=None) -> dict:
    """``c(fg)^*`` against ``(c(f)c(g))^*`` (plain equality when ``op`` is None)."""
    lhs = content(domain, f * g)
    rhs = content(domain, f) * content(domain, g)
    if op is not None:
        lhs, rhs = close(op, lhs), close(op, rhs)
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def pstarmd_check(op, samples) -> dict:
    """``(F F^-1)^* = D^*`` over the sample ideals; stops at the first failure."""
    D = unit_of(op.domain)
    Ds = star_unit(op)
    checked = 0
    for F in samples:
        checked += 1
        if close(op, F * D.colon(F)) != Ds:
            return {"allInvertible": False, "checked": checked, "witness": F}
    return {"allInvertible": True, "checked": checked, "witness": None}


# -- random polynomials ------------------------------------------------------------------


def _random_value(rng, G, box: int = 2, den: int = 4):
    coords = []
    for comp in G.components:
        while True:
            x = Fraction(rng.randint(-box * den, box * den), rng.choice((1, 2, den)))
            if comp.contains_rational(x):
                break
        coords.append(x)
    return tuple(coords)


def random_coefficient(domain, rng, height: int = 10):
    if is_valuation(domain):
        n = rng.randint(1, 3)
        return MonomialSum.make(
            (_random_value(rng, domain.group), rng.randint(-height, height) or 1)
            for _ in range(n)
        )
    O: QuadraticOrder = domain
    return O.from_coords(
        Fraction(rng.randint(-height, height), rng.choice((1, 1, 2))),
        Fraction(rng.randint(-height, height), rng.choice((1, 1, 2))),
    )


def random_poly(domain, rng, max_degree: int = 4, height: int = 10) -> FieldPoly:
    while True:
        deg = rng.randint(0, max_degree)
        coeffs = [random_coefficient(domain, rng, height) for _ in range(deg + 1)]
        f = FieldPoly.make(coeffs)
        if not f.is_zero():
            return f


def cancelling_pair(domain: ValuationDomain, rng) -> tuple[FieldPoly, FieldPoly]:
    """A pair whose product loses terms to cancellation.

    ``f = a + bX``, ``g = c - (bc/a)X`` kills the ``X`` coefficient, and a
    factor ``(1 + t^e)`` against ``(1 - t^e)`` cancels inside a coefficient.
    """
    G = domain.group
    a, b, c = (_random_value(rng, G) for _ in range(3))
    e = groups.zero(G)
    while e == groups.zero(G):
        e = _random_value(rng, G)
    q = rng.randint(1, 5)
    A = MonomialSum.monomial(1, a)
    B = MonomialSum.monomial(q, b)
    C = MonomialSum.monomial(1, c)
    BC_A = MonomialSum.monomial(q, groups.sub(groups.add(b, c), a))
    one = MonomialSum.monomial(1, groups.zero(G))
    te = MonomialSum.monomial(1, e)
    f = FieldPoly.make([A * (one + te), B * (one + te)])
    g = FieldPoly.make([C * (one - te), -(BC_A * (one - te))])
    if rng.random() < 0.5:
        f = f * FieldPoly.make([one, MonomialSum.monomial(rng.randint(1, 3), _random_value(rng, G))])
    return f, g


def random_pair(domain, rng, engineered: float = 0.3):
    if is_valuation(domain) and rng.random() < engineered:
        return cancelling_pair(domain, rng)
    return random_poly(domain, rng), random_poly(domain, rng)
