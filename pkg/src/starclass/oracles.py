"""Independent brute-force oracles.

Nothing here calls the rule tables it is meant to check.  The cut oracle
works on raw ``(point, open, depth)`` descriptions through their defining
predicate, and on finite grids of group elements.  The lattice oracle works
on generator lists and decides equality by rational linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .groups import OrderedGroup

# -- valuation cuts ----------------------------------------------------------------


@dataclass(frozen=True)
class RawCut:
    """Uncanonicalized upper set ``{g : g[:depth] (>|>=) point[:depth]}``."""

    point: tuple[Fraction, ...]
    open: bool
    depth: int

    def contains(self, g) -> bool:
        head, ref = tuple(g[: self.depth]), self.point[: self.depth]
        return head > ref if self.open else head >= ref


class _Axis:
    """Members of a rank-one group on ``step*Z ∩ [-bound, bound]``, as a lazy sorted sequence."""

    def __init__(self, G: OrderedGroup, step: Fraction, bound):
        den = step.denominator
        if G.kind == "Z":
            g = den
        elif G.kind == "Q":
            g = 1
        else:
            g = den
            while g % G.p == 0:
                g //= G.p
        # members are the multiples of step*g (the part of den prime to p must cancel)
        self.step = step * g
        self.n = int(Fraction(bound) / self.step)

    def __len__(self):
        return 2 * self.n + 1

    def __getitem__(self, i):
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self.step * (i - self.n)

    def __iter__(self):
        return (self[i] for i in range(len(self)))


def _axis(G: OrderedGroup, step: Fraction, bound) -> _Axis:
    return _Axis(G, step, bound)


# full enumeration of the test grid up to this many points; past it, two upper
# sets of the (totally ordered) grid are compared through their least elements
ENUMERATION_LIMIT = 5000


class CutGrid:
    """Truncated grids ``Γ ∩ (step·Z)^rank ∩ [-B, B]^rank``.

    Each factor has a radix ``b`` (``p`` for ``Z[1/p]``, else 2) and an
    auxiliary prime ``q != b``.  Test points sit on the grid of step ``b^-k``.
    Witnesses come from a finer grid of step ``1/(q·b^(k+2))`` on a wider box;
    cut points sampled with denominators dividing ``q·b^k`` keep every
    boundary gap larger than the witness step, which is what makes the
    truncation exact.
    """

    def __init__(self, G: OrderedGroup, k: int, B: int):
        if k > 12 or B > 8:
            raise ValueError("grid oracle caps: k <= 12, B <= 8")
        self.G, self.k, self.B = G, k, B
        comps = G.components
        wbox = 3 * B + 2
        self.test_axes, self.wit_axes, self.fine_axes = [], [], []
        for g in comps:
            b, q = radix(g)
            wstep = Fraction(1, q * b ** (k + 2))
            self.test_axes.append(_axis(g, Fraction(1, b**k), B))
            self.wit_axes.append(_axis(g, wstep, wbox))
            self.fine_axes.append(_axis(g, wstep / b**2, 2 * wbox))

    @property
    def size(self) -> int:
        n = 1
        for ax in self.test_axes:
            n *= len(ax)
        return n

    def test_points(self):
        return product(*self.test_axes)

    @staticmethod
    def _min(pred, axes):
        # lex-least element of an upper set on a product grid
        # monotone along each axis once the tail is pinned to its top,
        # so a bisection over the sorted axis finds the first hit
        prefix: list[Fraction] = []
        for i, axis in enumerate(axes):
            top = [ax[-1] for ax in axes[i + 1:]]
            j = _first_true(axis, lambda x: pred(tuple(prefix + [x] + top)))
            if j == len(axis):
                return None
            prefix.append(axis[j])
        return tuple(prefix)

    @staticmethod
    def _max_outside(pred, axes):
        # lex-greatest element outside an upper set
        prefix: list[Fraction] = []
        for i, axis in enumerate(axes):
            bottom = [ax[0] for ax in axes[i + 1:]]
            j = _first_true(axis, lambda x: pred(tuple(prefix + [x] + bottom)))
            if j == 0:
                return None
            prefix.append(axis[j - 1])
        return tuple(prefix)

    def grid_min(self, c: RawCut):
        return self._min(c.contains, self.wit_axes)

    def has_min(self, c: RawCut) -> bool:
        return self._min(c.contains, self.wit_axes) == self._min(c.contains, self.fine_axes)

    # membership predicates of the brute-force results

    def product_pred(self, a: RawCut, b: RawCut):
        m = self.grid_min(a)
        return lambda g: b.contains(tuple(x - y for x, y in zip(g, m)))

    def colon_pred(self, a: RawCut, b: RawCut):
        m = self.grid_min(b)
        return lambda g: a.contains(tuple(x + y for x, y in zip(g, m)))

    def v_closure_pred(self, a: RawCut):
        # intersection of the principal ideals zV containing I
        if self.has_min(a):
            bound = self.grid_min(a)
        else:
            bound = self._max_outside(a.contains, self.wit_axes)
        return lambda g: tuple(g) >= bound

    def restrict(self, pred) -> frozenset:
        return frozenset(g for g in self.test_points() if pred(g))

    def product_set(self, a: RawCut, b: RawCut) -> frozenset:
        return self.restrict(self.product_pred(a, b))

    def colon_set(self, a: RawCut, b: RawCut) -> frozenset:
        return self.restrict(self.colon_pred(a, b))

    def v_closure_set(self, a: RawCut) -> frozenset:
        return self.restrict(self.v_closure_pred(a))

    def disagreement(self, pred, oracle):
        """``None`` when two upper-set predicates agree on the test grid, else a witness point."""
        if self.size <= ENUMERATION_LIMIT:
            for g in self.test_points():
                if pred(g) != oracle(g):
                    return g
            return None
        m1, m2 = self._min(pred, self.test_axes), self._min(oracle, self.test_axes)
        if m1 == m2:
            return None
        return min(m for m in (m1, m2) if m is not None)


def _first_true(axis, pred) -> int:
    lo, hi = 0, len(axis)
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(axis[mid]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def radix(g: OrderedGroup) -> tuple[int, int]:
    """Grid radix of a rank-one factor and an auxiliary prime different from it."""
    b = g.p if g.kind == "Zloc" else 2
    return b, 3 if b == 2 else 2


def random_raw_cut(rng, G: OrderedGroup, k: int, B: int) -> RawCut:
    """A cut point with coordinates in ``(1/(q·b^k))Z ∩ [-B/2, B/2]``, per factor."""
    n = G.rank
    coords = []
    for g in G.components:
        b, q = radix(g)
        den = q * b**k
        half = (B * den) // 2
        r = rng.random()
        if r < 0.2:
            coords.append(Fraction(0))
        elif r < 0.6:
            coords.append(Fraction(rng.randint(-half, half) // q * q, den))
        else:
            coords.append(Fraction(rng.randint(-half, half), den))
    depth = n if rng.random() < 0.6 else rng.randint(1, n)
    return RawCut(tuple(coords), rng.random() < 0.5, depth)


# -- quadratic lattices ------------------------------------------------------------


def solve2(rows, v):
    """Coordinates of ``v`` in the rational basis ``rows`` (2x2 Cramer)."""
    (a, b), (c, d) = rows
    det = a * d - b * c
    if det == 0:
        raise ZeroDivisionError("degenerate basis")
    x = (v[0] * d - v[1] * c) / det
    y = (a * v[1] - b * v[0]) / det
    return x, y


class SpanLattice:
    """A full-rank lattice in Q^2 given by any list of generators.

    Keeps a basis by repeated 2x2 reduction of the generator list; membership
    and equality go through rational linear solves only.
    """

    def __init__(self, gens):
        gens = [(Fraction(u), Fraction(v)) for u, v in gens]
        self.gens = gens
        self.basis = _naive_basis(gens)

    def __contains__(self, vec) -> bool:
        x, y = solve2(self.basis, vec)
        return x.denominator == 1 and y.denominator == 1

    def __le__(self, other: SpanLattice) -> bool:
        return all(b in other for b in self.basis)

    def __eq__(self, other) -> bool:
        return self <= other and other <= self

    def index_det(self) -> Fraction:
        (a, b), (c, d) = self.basis
        return abs(a * d - b * c)


def _naive_basis(gens):
    # pick two independent generators, then absorb the rest one at a time:
    # the span of a basis and an extra vector is found from the 3x2 relation
    basis = None
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            (a, b), (c, d) = gens[i], gens[j]
            if a * d - b * c != 0:
                basis = [gens[i], gens[j]]
                break
        if basis:
            break
    if basis is None:
        raise ValueError("generators do not span a full-rank lattice")
    for g in gens:
        x, y = solve2(basis, g)
        if x.denominator == 1 and y.denominator == 1:
            continue
        # new lattice = span(e1, e2, g) where g = x e1 + y e2;
        # with L = lcm of denominators, it is (1/L)·span of an integer relation
        L = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
        X, Y = int(x * L), int(y * L)
        # span_Z{L·e1, L·e2, X e1 + Y e2} in coordinates of e1, e2 (scaled by 1/L)
        e = _int_basis2([(L, 0), (0, L), (X, Y)])
        e1, e2 = basis
        basis = [
            tuple(Fraction(p * e1[t] + q * e2[t], L) for t in range(2)) for p, q in e
        ]
    return basis


def _int_basis2(vecs):
    # plain Euclid on the second column, then on the first
    vecs = [list(v) for v in vecs if v != (0, 0)]
    while sum(1 for v in vecs if v[1] != 0) > 1:
        nz = sorted((v for v in vecs if v[1] != 0), key=lambda v: abs(v[1]))
        piv = nz[0]
        for v in nz[1:]:
            q = v[1] // piv[1]
            v[0] -= q * piv[0]
            v[1] -= q * piv[1]
        vecs = [v for v in vecs if v != [0, 0]]
    top = [v for v in vecs if v[1] != 0]
    flat = [abs(v[0]) for v in vecs if v[1] == 0]
    g = 0
    for x in flat:
        g = gcd(g, x)
    return [(g, 0), tuple(top[0])]


# -- binary quadratic forms --------------------------------------------------------


def reduced_forms(disc: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms ``(a, b, c)`` of discriminant ``disc < 0``."""
    if disc >= 0:
        raise ValueError("reduced form count needs a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (b < 0 and c == a):
                continue
            if gcd(gcd(a, abs(b)), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


def class_number_by_forms(disc: int) -> int:
    return len(reduced_forms(disc))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# -- ideal arithmetic by naive spans --------------------------------------------------


def span_of(elems) -> SpanLattice:
    return SpanLattice([z.to_max() for z in elems if not z.is_zero()])


def module_span(order, gens) -> SpanLattice:
    w = order.omega
    return span_of([z for g in gens for z in (g, g * w)])


def _basis_elems(lat: SpanLattice, d0: int):
    from .quadratic import FieldElement

    return [FieldElement.from_max(u, v, d0) for u, v in lat.basis]


def span_product(A: SpanLattice, B: SpanLattice, d0: int) -> SpanLattice:
    return span_of([x * y for x in _basis_elems(A, d0) for y in _basis_elems(B, d0)])


def _int_kernel(rows):
    """Integer kernel of an integer matrix (list of rows) by unimodular column moves."""
    m, n = len(rows), len(rows[0])
    cols = [[rows[r][c] for r in range(m)] + [int(r == c) for r in range(n)] for c in range(n)]
    piv = 0
    for r in range(m):
        live = cols[piv:]
        while sum(1 for c in live if c[r]) > 1:
            live.sort(key=lambda c: (c[r] == 0, abs(c[r])))
            head = live[0]
            for c in live[1:]:
                q = c[r] // head[r]
                for t in range(m + n):
                    c[t] -= q * head[t]
        live.sort(key=lambda c: c[r] == 0)
        cols[piv:] = live
        if cols[piv][r]:
            piv += 1
    return [c[m:] for c in cols[piv:]]


def span_intersect(L1: SpanLattice, L2: SpanLattice) -> SpanLattice:
    """``L1 ∩ L2``: solve ``x·basis1 = y·basis2`` over the integers."""
    vecs = list(L1.basis) + list(L2.basis)
    den = 1
    for v in vecs:
        for c in v:
            den = den * c.denominator // gcd(den, c.denominator)
    e1, e2 = L1.basis
    f1, f2 = L2.basis
    rows = [[int(e1[t] * den), int(e2[t] * den), -int(f1[t] * den), -int(f2[t] * den)] for t in range(2)]
    gens = [
        tuple(x1 * e1[t] + x2 * e2[t] for t in range(2))
        for x1, x2, _, _ in _int_kernel(rows)
    ]
    return SpanLattice(gens)


def span_colon(A: SpanLattice, B: SpanLattice, d0: int) -> SpanLattice:
    """``{z : zB ⊆ A}`` as the intersection of ``b^-1 A`` over a basis of ``B``."""
    out = None
    a_elems = _basis_elems(A, d0)
    for b in _basis_elems(B, d0):
        inv = b.inverse()
        lam = span_of([inv * a for a in a_elems])
        out = lam if out is None else span_intersect(out, lam)
    return out
