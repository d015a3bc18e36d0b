"""Totally ordered abelian groups of finite rank, their divisible hulls and cuts.

A group is a lexicographic product of rank-one factors, each one of
``Z``, ``Q`` or ``Z[1/p]``.  Elements and hull points are plain tuples of
:class:`fractions.Fraction`, one coordinate per rank-one factor, leftmost
most significant, so Python's tuple ordering *is* the group order.

A :class:`Cut` describes an upper set of the group.  Besides the point and
the open flag it carries a ``depth``: only the leading ``depth`` coordinates
take part in the comparison.  Cuts of full depth are the usual
``{g >= point}`` / ``{g > point}``; shallower cuts describe sets such as
``{g : g[0] > 0}`` (a non-maximal prime of the valuation ring), which no
full-depth point can express.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

MAX_NESTING = 4
MAX_RANK = 4

INF = float("inf")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class OrderedGroup:
    """``kind`` is one of ``"Z"``, ``"Q"``, ``"Zloc"`` (with ``p``) or ``"lex"``."""

    kind: str
    p: int | None = None
    factors: tuple[OrderedGroup, ...] = ()

    def __post_init__(self):
        if self.kind == "Zloc":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"Z[1/p] needs a prime p, got {self.p}")
        elif self.kind == "lex":
            if len(self.factors) < 2:
                raise ValueError("lex product needs at least two factors")
            if self.nesting > MAX_NESTING:
                raise ValueError(f"lex nesting deeper than {MAX_NESTING}")
            if self.rank > MAX_RANK:
                raise ValueError(f"rank {self.rank} exceeds cap {MAX_RANK}")
        elif self.kind not in ("Z", "Q"):
            raise ValueError(f"unknown group kind {self.kind!r}")

    @property
    def nesting(self) -> int:
        if self.kind != "lex":
            return 0
        return 1 + max(f.nesting for f in self.factors)

    @property
    def components(self) -> tuple[OrderedGroup, ...]:
        """The rank-one factors, most significant first."""
        if self.kind != "lex":
            return (self,)
        out: list[OrderedGroup] = []
        for f in self.factors:
            out.extend(f.components)
        return tuple(out)

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def is_discrete(self) -> bool:
        # discrete at the bottom: the least significant factor is Z
        return self.components[-1].kind == "Z"

    def contains_rational(self, x: Fraction) -> bool:
        """Membership of a single rational in a rank-one group."""
        if self.kind == "Z":
            return x.denominator == 1
        if self.kind == "Q":
            return True
        if self.kind == "Zloc":
            return _is_power_of(x.denominator, self.p)
        raise TypeError("contains_rational needs a rank-one group")

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Q":
            return "Q"
        if self.kind == "Zloc":
            return f"Z[1/{self.p}]"
        return "lex(" + ", ".join(str(f) for f in self.factors) + ")"


Z = OrderedGroup("Z")
Q = OrderedGroup("Q")


def Zloc(p: int) -> OrderedGroup:
    return OrderedGroup("Zloc", p=p)


def lex(*factors: OrderedGroup) -> OrderedGroup:
    return OrderedGroup("lex", factors=tuple(factors))


def from_components(components) -> OrderedGroup:
    components = tuple(components)
    if not components:
        raise ValueError("empty group")
    if len(components) == 1:
        return components[0]
    return lex(*components)


_TOKEN = re.compile(r"\s*(lex|Z\[1/(\d+)\]|Z|Q|\(|\)|,)")


def parse_group(text: str) -> OrderedGroup:
    """Parse ``Z``, ``Q``, ``Z[1/p]`` or ``lex(A, B, ...)``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad group descriptor at position {pos}: {text!r}")
        tokens.append((m.group(1), m.group(2), pos))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def expect(i, tok):
        if i >= len(tokens) or tokens[i][0] != tok:
            where = tokens[i][2] if i < len(tokens) else len(text)
            raise ValueError(f"expected {tok!r} at position {where}: {text!r}")
        return i + 1

    def group(i):
        if i >= len(tokens):
            raise ValueError(f"unexpected end of group descriptor: {text!r}")
        tok, p, where = tokens[i]
        if tok == "Z":
            return Z, i + 1
        if tok == "Q":
            return Q, i + 1
        if p is not None:
            return Zloc(int(p)), i + 1
        if tok == "lex":
            i = expect(i + 1, "(")
            parts = []
            g, i = group(i)
            parts.append(g)
            while i < len(tokens) and tokens[i][0] == ",":
                g, i = group(i + 1)
                parts.append(g)
            i = expect(i, ")")
            return lex(*parts), i
        raise ValueError(f"unexpected {tok!r} at position {where}: {text!r}")

    g, i = group(0)
    if i != len(tokens):
        raise ValueError(f"trailing input at position {tokens[i][2]}: {text!r}")
    return g


# -- elements and hull points ------------------------------------------------


def point(*coords) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) for c in coords)


def _check_rank(a, b):
    if len(a) != len(b):
        raise ValueError(f"rank mismatch: {len(a)} vs {len(b)}")


def compare(a, b) -> int:
    """-1, 0 or 1 according to the lexicographic order."""
    _check_rank(a, b)
    return (a > b) - (a < b)


def member(x, G: OrderedGroup) -> bool:
    comps = G.components
    if len(x) != len(comps):
        return False
    return all(g.contains_rational(Fraction(c)) for g, c in zip(comps, x))


def add(a, b):
    _check_rank(a, b)
    return tuple(x + y for x, y in zip(a, b))


def negate(a):
    return tuple(-x for x in a)


def sub(a, b):
    return add(a, negate(b))


def zero(G: OrderedGroup):
    return (Fraction(0),) * G.rank


def has_min_positive(G: OrderedGroup):
    """Least positive element, or ``None`` when the group is dense at the bottom."""
    if not G.is_discrete:
        return None
    return (Fraction(0),) * (G.rank - 1) + (Fraction(1),)


# -- convex subgroups ----------------------------------------------------------


@dataclass(frozen=True)
class ConvexSubgroup:
    """The elements whose leading ``rank - k`` coordinates vanish."""

    group: OrderedGroup
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.group.rank:
            raise ValueError(f"convex subgroup index {self.k} out of range")

    def contains(self, x) -> bool:
        lead = self.group.rank - self.k
        return all(c == 0 for c in x[:lead]) and member(x, self.group)


def convex_subgroups(G: OrderedGroup) -> list[ConvexSubgroup]:
    return [ConvexSubgroup(G, k) for k in range(G.rank + 1)]


def subgroup_group(G: OrderedGroup, H: ConvexSubgroup) -> OrderedGroup | None:
    """``H`` itself as an ordered group (``None`` for the trivial subgroup)."""
    if H.k == 0:
        return None
    return from_components(G.components[G.rank - H.k:])


def quotient_group(G: OrderedGroup, H: ConvexSubgroup) -> OrderedGroup | None:
    """``G/H`` (``None`` when ``H`` is all of ``G``)."""
    if H.k == G.rank:
        return None
    return from_components(G.components[: G.rank - H.k])


# -- cuts ------------------------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    """Upper set ``{g : g[:depth] > point[:depth]}`` (open) or ``>=`` (closed).

    Always build through :func:`make_cut`, which canonicalizes: one
    representation per upper set.  In canonical form the leading
    ``depth - 1`` coordinates are group members, coordinates past ``depth``
    are zero, the last significant coordinate is a non-member only over a
    dense factor, and ``open`` is only set on a member coordinate of a dense
    factor.
    """

    group: OrderedGroup
    point: tuple[Fraction, ...]
    open: bool
    depth: int

    def contains(self, g) -> bool:
        d = self.depth
        head, ref = tuple(g[:d]), self.point[:d]
        return head > ref if self.open else head >= ref

    @property
    def strict(self) -> bool:
        """True when no element sits exactly on the boundary."""
        G = self.group.components[self.depth - 1]
        return self.open or not G.contains_rational(self.point[self.depth - 1])

    @property
    def has_min(self) -> bool:
        return self.depth == self.group.rank and not self.strict

    def key(self) -> tuple:
        """Sort key: larger key means smaller upper set."""
        head = self.point[: self.depth]
        if self.depth == self.group.rank:
            return head + ((INF,) if self.open else ())
        if self.open:
            return head + (INF,)
        if self.strict:
            return head + (Fraction(0),)
        return head + (-INF,)

    def __le__(self, other: Cut) -> bool:
        """Inclusion of upper sets."""
        return self.key() >= other.key()

    def __lt__(self, other: Cut) -> bool:
        return self.key() > other.key()

    def __ge__(self, other: Cut) -> bool:
        return other <= self

    def __gt__(self, other: Cut) -> bool:
        return other < self

    def shift(self, g) -> Cut:
        """``g + self`` for a group element ``g``."""
        return make_cut(self.group, add(self.point, g), self.open, self.depth)

    def to_dict(self) -> dict:
        out = {"point": [str(c) for c in self.point], "open": self.open}
        if self.depth != self.group.rank:
            out["depth"] = self.depth
        return out

    def __str__(self) -> str:
        pts = ", ".join(str(c) for c in self.point[: self.depth])
        tail = "" if self.depth == self.group.rank else ", *"
        return f"cut(({pts}{tail}), {'open' if self.open else 'closed'})"


def make_cut(G: OrderedGroup, pt, open: bool = False, depth: int | None = None) -> Cut:
    comps = G.components
    n = len(comps)
    pt = [Fraction(c) for c in pt]
    if len(pt) != n:
        raise ValueError(f"cut point of length {len(pt)} in a rank-{n} group")
    depth = n if depth is None else depth
    if not 1 <= depth <= n:
        raise ValueError(f"cut depth {depth} out of range 1..{n}")
    for i in range(depth):
        if comps[i].contains_rational(pt[i]):
            continue
        # boundary falls between group elements at level i
        if comps[i].kind == "Z":
            pt[i] = Fraction(ceil(pt[i]))
        depth = i + 1
        open = False
        break
    else:
        last = comps[depth - 1]
        if open and last.kind == "Z":
            pt[depth - 1] += 1
            open = False
    for i in range(depth, n):
        pt[i] = Fraction(0)
    return Cut(G, tuple(pt), open, depth)
