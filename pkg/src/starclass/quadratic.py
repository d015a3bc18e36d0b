"""Fractional ideals of quadratic orders as rank-2 lattices in Hermite form.

Field elements are ``x + y*sqrt(D0)`` with ``D0`` the fundamental
discriminant.  Internally every lattice is kept in Hermite normal form with
respect to the basis ``(1, w0)`` of the maximal order, ``w0 = (D0 + sqrt(D0))/2``,
so equality of fractional ideals is equality of that form, whichever order
the ideal is regarded over.  :meth:`LatticeIdeal.hnf` gives the form relative
to the ideal's own order ``Z[w]``, ``w = (D + sqrt(D))/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _squarefree_split(n: int) -> tuple[int, int]:
    """``n = s * k**2`` with ``s`` squarefree (sign kept on ``s``)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, k = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1
    return sign * s * n, k


def fundamental_part(disc: int) -> tuple[int, int]:
    """``(D0, f)`` with ``disc = f**2 * D0``."""
    s, k = _squarefree_split(disc)
    if s % 4 == 1:
        return s, k
    return 4 * s, k // 2


# -- field elements ------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    x: Fraction
    y: Fraction
    d0: int

    @classmethod
    def make(cls, x, y, d0: int) -> FieldElement:
        return cls(Fraction(x), Fraction(y), d0)

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.d0 != self.d0:
                raise ValueError("elements of different quadratic fields")
            return other
        return FieldElement(Fraction(other), Fraction(0), self.d0)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.x + o.x, self.y + o.y, self.d0)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.x, -self.y, self.d0)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(
            self.x * o.x + self.y * o.y * self.d0, self.x * o.y + self.y * o.x, self.d0
        )

    __rmul__ = __mul__

    def conj(self) -> FieldElement:
        return FieldElement(self.x, -self.y, self.d0)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d0 * self.y * self.y

    def inverse(self) -> FieldElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conj()
        return FieldElement(c.x / n, c.y / n, self.d0)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        out = FieldElement(Fraction(1), Fraction(0), self.d0)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def to_max(self) -> tuple[Fraction, Fraction]:
        """Coordinates in the basis ``(1, w0)`` of the maximal order."""
        return self.x - self.y * self.d0, 2 * self.y

    @classmethod
    def from_max(cls, u, v, d0: int) -> FieldElement:
        u, v = Fraction(u), Fraction(v)
        return cls(u + v * d0 / 2, v / 2, d0)

    def __str__(self) -> str:
        rad = f"sqrt({self.d0})"
        if self.y == 0:
            return str(self.x)
        ys = "" if self.y == 1 else "-" if self.y == -1 else f"{self.y}*"
        if self.x == 0:
            return f"{ys}{rad}"
        sign = "+" if self.y > 0 else "-"
        ya = abs(self.y)
        ys = "" if ya == 1 else f"{ya}*"
        return f"{self.x}{sign}{ys}{rad}"


# -- orders ------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticOrder:
    disc: int

    def __post_init__(self):
        if self.disc % 4 not in (0, 1):
            raise ValueError(f"discriminant {self.disc} is not 0 or 1 mod 4")
        if self.disc >= 0 and isqrt(self.disc) ** 2 == self.disc:
            raise ValueError(f"discriminant {self.disc} is a perfect square")

    @cached_property
    def _fund(self) -> tuple[int, int]:
        return fundamental_part(self.disc)

    @property
    def fundamental_disc(self) -> int:
        return self._fund[0]

    @property
    def conductor(self) -> int:
        return self._fund[1]

    @property
    def is_maximal(self) -> bool:
        return self.conductor == 1

    @property
    def integrally_closed(self) -> bool:
        return self.is_maximal

    @property
    def is_imaginary(self) -> bool:
        return self.disc < 0

    def maximal(self) -> QuadraticOrder:
        return QuadraticOrder(self.fundamental_disc)

    def with_conductor(self, f: int) -> QuadraticOrder:
        return QuadraticOrder(f * f * self.fundamental_disc)

    def contains_order(self, other: QuadraticOrder) -> bool:
        return (
            self.fundamental_disc == other.fundamental_disc
            and other.conductor % self.conductor == 0
        )

    def elem(self, x, y=0) -> FieldElement:
        return FieldElement.make(x, y, self.fundamental_disc)

    @property
    def omega(self) -> FieldElement:
        """``(D + sqrt(D))/2``."""
        return self.elem(Fraction(self.disc, 2), Fraction(self.conductor, 2))

    def from_coords(self, u, v) -> FieldElement:
        return self.omega * Fraction(v) + Fraction(u)

    def to_coords(self, z: FieldElement) -> tuple[Fraction, Fraction]:
        f = self.conductor
        return z.x - z.y * self.disc / f, 2 * z.y / f

    def contains(self, z: FieldElement) -> bool:
        u, v = self.to_coords(z)
        return u.denominator == 1 and v.denominator == 1

    def unit(self) -> LatticeIdeal:
        return _unit(self)

    def principal(self, z) -> LatticeIdeal:
        z = z if isinstance(z, FieldElement) else self.elem(z)
        return LatticeIdeal.from_generators(self, [z])

    def ideal(self, den: int, a: int, b: int, c: int) -> LatticeIdeal:
        """``(1/den)(aZ + (b + c w)Z)`` in this order's own coordinates."""
        gens = [self.from_coords(Fraction(a, den), 0), self.from_coords(Fraction(b, den), Fraction(c, den))]
        I = LatticeIdeal.from_elements(self, gens)
        if I.hnf() != (den, a, b, c):
            raise ValueError(f"({den}, {a}, {b}, {c}) is not in canonical Hermite form")
        return I

    def __str__(self) -> str:
        return f"O({self.disc})"


@lru_cache(maxsize=256)
def _unit(O: QuadraticOrder) -> LatticeIdeal:
    return LatticeIdeal.from_elements(O, [O.elem(1), O.omega])


def _order_for_conductor(like: QuadraticOrder, f: int) -> QuadraticOrder:
    return like if like.conductor == f else like.with_conductor(f)


# -- lattices in maximal-order coordinates -----------------------------------------------


def _int_hnf(vecs) -> tuple[int, int, int]:
    """Rows ``(a, 0), (b, c)`` spanning the integer vectors ``vecs``."""
    acc = None
    for u, v in vecs:
        if acc is None:
            acc = (u, v)
            continue
        g, s, t = xgcd(acc[1], v)
        if g == 0:
            continue
        acc = (s * acc[0] + t * u, g)
    if acc is None or acc[1] == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    b0, c = acc
    if c < 0:
        b0, c = -b0, -c
    a = 0
    for u, v in vecs:
        a = gcd(a, u - (v // c) * b0)
    if a == 0:
        raise ValueError("vectors do not span a rank-2 lattice")
    return a, b0 % a, c


def rational_hnf(vecs) -> tuple[int, int, int, int]:
    """Canonical ``(den, a, b, c)`` of the Z-span of rational vectors."""
    vecs = [(Fraction(u), Fraction(v)) for u, v in vecs]
    L = 1
    for u, v in vecs:
        L = lcm(L, lcm(u.denominator, v.denominator))
    a, b, c = _int_hnf([(int(u * L), int(v * L)) for u, v in vecs])
    A, B, C = Fraction(a, L), Fraction(b, L), Fraction(c, L)
    den = lcm(lcm(A.denominator, B.denominator), C.denominator)
    return den, int(A * den), int(B * den), int(C * den)


def _rows(lat) -> list[tuple[Fraction, Fraction]]:
    den, a, b, c = lat
    return [(Fraction(a, den), Fraction(0)), (Fraction(b, den), Fraction(c, den))]


def _dual(lat) -> tuple[int, int, int, int]:
    (A, _), (B, C) = _rows(lat)
    return rational_hnf([(1 / A, -B / (A * C)), (Fraction(0), 1 / C)])


@lru_cache(maxsize=1 << 14)
def _basis(lat, d0: int) -> tuple[FieldElement, ...]:
    return tuple(FieldElement.from_max(u, v, d0) for u, v in _rows(lat))


@lru_cache(maxsize=1 << 14)
def _colon_lat(lat_a, lat_b, d0: int):
    """``{z : z B ⊆ A}`` as the intersection of ``beta^-1 A`` over a basis of ``B``."""
    duals = []
    for beta in _basis(lat_b, d0):
        inv = beta.inverse()
        part = rational_hnf([(inv * z).to_max() for z in _basis(lat_a, d0)])
        duals.extend(_rows(_dual(part)))
    return _dual(rational_hnf(duals))


def _lat_contains(lat, vec) -> bool:
    (A, _), (B, C) = _rows(lat)
    y = vec[1] / C
    if y.denominator != 1:
        return False
    return ((vec[0] - y * B) / A).denominator == 1


@dataclass(frozen=True)
class LatticeIdeal:
    """A fractional ideal, regarded as a module over ``order``.

    ``lat = (den, a, b, c)`` is the Hermite form in maximal-order coordinates
    and alone decides equality; ``order`` records the ring the ideal is a
    module over (the tag rules below keep it correct under every operation).
    """

    order: QuadraticOrder = field(compare=False)
    lat: tuple[int, int, int, int]

    def __post_init__(self):
        for z in self.basis():
            if not self.contains(self.order.omega * z):
                raise ValueError(f"lattice {self.lat} is not a module over {self.order}")

    @classmethod
    def from_elements(cls, order: QuadraticOrder, elems) -> LatticeIdeal:
        """Checked constructor: the span must be a module over ``order``."""
        vecs = [z.to_max() for z in elems if not z.is_zero()]
        if not vecs:
            raise ValueError("zero module")
        return cls(order, rational_hnf(vecs))

    @classmethod
    def _trusted(cls, order: QuadraticOrder, lat) -> LatticeIdeal:
        # results of module operations are modules; skip the check
        obj = object.__new__(cls)
        object.__setattr__(obj, "order", order)
        object.__setattr__(obj, "lat", lat)
        return obj

    @classmethod
    def _span(cls, order: QuadraticOrder, elems) -> LatticeIdeal:
        vecs = [z.to_max() for z in elems if not z.is_zero()]
        if not vecs:
            raise ValueError("zero module")
        return cls._trusted(order, rational_hnf(vecs))

    @classmethod
    def from_generators(cls, order: QuadraticOrder, gens) -> LatticeIdeal:
        gens = [g if isinstance(g, FieldElement) else order.elem(g) for g in gens]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise ValueError("zero module")
        w = order.omega
        return cls._span(order, [z for g in gens for z in (g, g * w)])

    @property
    def field_disc(self) -> int:
        return self.order.fundamental_disc

    def basis(self) -> list[FieldElement]:
        return list(_basis(self.lat, self.order.fundamental_disc))

    def hnf(self) -> tuple[int, int, int, int]:
        """``(den, a, b, c)`` relative to ``Z[w]`` of this ideal's own order."""
        return rational_hnf([self.order.to_coords(z) for z in self.basis()])

    def contains(self, z: FieldElement) -> bool:
        return _lat_contains(self.lat, z.to_max())

    def __contains__(self, z) -> bool:
        return self.contains(z)

    def _same_field(self, other: LatticeIdeal):
        if self.field_disc != other.field_disc:
            raise ValueError("ideals of different quadratic fields")

    def __le__(self, other: LatticeIdeal) -> bool:
        self._same_field(other)
        return all(other.contains(z) for z in self.basis())

    def __lt__(self, other: LatticeIdeal) -> bool:
        return self <= other and self != other

    def __ge__(self, other: LatticeIdeal) -> bool:
        return other <= self

    def __mul__(self, other: LatticeIdeal) -> LatticeIdeal:
        if not isinstance(other, LatticeIdeal):
            return self.scale(other)
        self._same_field(other)
        f = gcd(self.order.conductor, other.order.conductor)
        prods = [x * y for x in self.basis() for y in other.basis()]
        return LatticeIdeal._span(_order_for_conductor(self.order, f), prods)

    def __add__(self, other: LatticeIdeal) -> LatticeIdeal:
        self._same_field(other)
        f = lcm(self.order.conductor, other.order.conductor)
        return LatticeIdeal._span(_order_for_conductor(self.order, f), self.basis() + other.basis())

    def __and__(self, other: LatticeIdeal) -> LatticeIdeal:
        self._same_field(other)
        f = lcm(self.order.conductor, other.order.conductor)
        d = _dual(rational_hnf(_rows(_dual(self.lat)) + _rows(_dual(other.lat))))
        return LatticeIdeal._trusted(_order_for_conductor(self.order, f), d)

    def scale(self, z) -> LatticeIdeal:
        z = z if isinstance(z, FieldElement) else self.order.elem(z)
        return LatticeIdeal._span(self.order, [z * b for b in self.basis()])

    def colon(self, other: LatticeIdeal) -> LatticeIdeal:
        """``(self : other) = {z : z*other ⊆ self}``."""
        self._same_field(other)
        f = gcd(self.order.conductor, other.order.conductor)
        order = _order_for_conductor(self.order, f)
        return LatticeIdeal._trusted(order, _colon_lat(self.lat, other.lat, self.field_disc))

    def inverse(self) -> LatticeIdeal:
        return self.order.unit().colon(self)

    def v_closure(self) -> LatticeIdeal:
        O = self.order.unit()
        return O.colon(O.colon(self))

    def __pow__(self, n: int) -> LatticeIdeal:
        if n < 0:
            return self.inverse() ** (-n)
        out = self.order.unit()
        for _ in range(n):
            out = out * self
        return out

    def over(self, order: QuadraticOrder) -> LatticeIdeal:
        """Same lattice, regarded over another order (must be a module over it)."""
        return LatticeIdeal(order, self.lat)

    def norm(self) -> Fraction:
        """Generalized index ``[O : I]`` relative to this ideal's order."""
        den, a, _, c = self.lat
        return Fraction(a * c, den * den * self.order.conductor)

    @property
    def is_integral(self) -> bool:
        return self <= self.order.unit()

    @property
    def is_invertible(self) -> bool:
        return self * self.inverse() == self.order.unit()

    @property
    def is_v_invertible(self) -> bool:
        return (self * self.inverse()).v_closure() == self.order.unit()

    @property
    def is_divisorial(self) -> bool:
        return self.v_closure() == self

    def generator(self, search: int = 30) -> FieldElement | None:
        """A generator of ``self`` as an ``order``-module, if one is found.

        Complete for imaginary orders (a Gauss-reduced basis carries the
        minimum of the norm form); a bounded box search for real ones.
        """
        N = self.norm()
        b1, b2 = self.basis()
        if self.order.is_imaginary:
            b1, b2 = _gauss_reduce(b1, b2)
            box = 2
        else:
            box = search
        for x in range(-box, box + 1):
            for y in range(0, box + 1):
                if y == 0 and x <= 0:
                    continue
                alpha = b1 * x + b2 * y
                if abs(alpha.norm()) == N and self.order.principal(alpha) == self:
                    return alpha
        return None

    @property
    def is_principal(self) -> bool:
        return self.generator() is not None

    def to_dict(self) -> dict:
        den, a, b, c = self.hnf()
        return {"disc": self.order.disc, "den": den, "a": a, "b": b, "c": c}

    def __str__(self) -> str:
        den, a, b, c = self.hnf()
        body = f"[{a}, {b}+{c}w]"
        return body if den == 1 else f"(1/{den}){body}"


def _gauss_reduce(b1: FieldElement, b2: FieldElement):
    # Lagrange reduction for the positive definite form |N(x b1 + y b2)|
    def n(z):
        return z.norm()

    if n(b1) > n(b2):
        b1, b2 = b2, b1
    while True:
        # nearest-integer projection coefficient: Re(b2 * conj(b1)) / N(b1)
        t = (b2 * b1.conj()).x / n(b1)
        q = round(t)
        b2 = b2 - b1 * q
        if n(b2) >= n(b1):
            return b1, b2
        b1, b2 = b2, b1


def extend_to_order(I: LatticeIdeal, target: QuadraticOrder) -> LatticeIdeal:
    """``I * O'`` for an order ``O' ⊇ O`` of the same field."""
    if not target.contains_order(I.order):
        raise ValueError(f"{target} does not contain {I.order}")
    return LatticeIdeal._span(target, [x * y for x in I.basis() for y in target.unit().basis()])


def _primes_up_to(n: int) -> list[int]:
    sieve = [True] * (n + 1)
    out = []
    for p in range(2, n + 1):
        if sieve[p]:
            out.append(p)
            for q in range(p * p, n + 1, p):
                sieve[q] = False
    return out


def maximal_ideals_up_to(O: QuadraticOrder, bound: int) -> list[LatticeIdeal]:
    """Maximal ideals of norm at most ``bound``.

    ``O = Z[w]`` with ``w`` a root of ``X^2 - D X + (D^2 - D)/4``, so the
    maximal ideals over ``p`` are ``(p, w - r)`` for the roots ``r`` mod ``p``,
    or ``pO`` when there is none.
    """
    D = O.disc
    const = (D * D - D) // 4
    out = []
    for p in _primes_up_to(bound):
        roots = [r for r in range(p) if (r * r - D * r + const) % p == 0]
        if roots:
            for r in roots:
                out.append(LatticeIdeal.from_generators(O, [O.elem(p), O.omega - r]))
        elif p * p <= bound:
            out.append(O.principal(p))
    return out


def integral_ideals_up_to(O: QuadraticOrder, bound: int) -> list[LatticeIdeal]:
    """Every integral ideal of norm at most ``bound``, by Hermite form enumeration."""
    out = []
    for a in range(1, bound + 1):
        for c in range(1, a + 1):
            if a % c or a * c > bound:
                continue
            for b in range(0, a, c):
                try:
                    out.append(O.ideal(1, a, b, c))
                except ValueError:
                    continue
    return out


def random_ideal(O: QuadraticOrder, rng, height: int = 6, den: int = 3) -> LatticeIdeal:
    ngens = rng.choice((1, 2, 2))
    gens = []
    while len(gens) < ngens:
        z = O.from_coords(
            Fraction(rng.randint(-height, height), rng.randint(1, den)),
            Fraction(rng.randint(-height, height), rng.randint(1, den)),
        )
        if not z.is_zero():
            gens.append(z)
    return LatticeIdeal.from_generators(O, gens)
