"""Text and JSON literals: rationals, field elements, polynomials, ideals, star operations.

Polynomial grammar (whitespace ignored, juxtaposition multiplies)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/')? unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    atom   := number | 'sqrt' '(' integer ')' | 'X' | 't' | '(' expr ')'

``sqrt(n)`` needs ``n / D0`` to be a rational square (``D0`` the fundamental
discriminant): ``sqrt(-1)`` is ``sqrt(-4)/2``.  ``t^(a, b, ...)`` is the
monomial of value ``(a, b, ...)`` over a valuation backend; ``t^e`` with a
single exponent is fine in rank one.  ``X`` takes non-negative integer powers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

from . import groups
from .content import FieldPoly, MonomialSum
from .groups import make_cut, parse_group
from .quadratic import FieldElement, LatticeIdeal, QuadraticOrder
from .star import StarOp, StarOpError
from .valuation import ValIdeal, ValuationDomain


MAX_POWER = 64  # largest X degree / exponent accepted in polynomial text


class ParseError(ValueError):
    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        where = "" if pos is None else f" at position {pos}"
        super().__init__(f"{msg}{where}: {text!r}" if text else msg)
        self.pos = pos


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ParseError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str) and re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", s):
        try:
            return Fraction(s.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {s!r}") from None
    raise ParseError(f"rational must be an integer or a 'p/q' string, got {s!r}")


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


# -- polynomial expressions ------------------------------------------------------------

_TOKENS = re.compile(r"\s*(?:(\d+)|(sqrt)|([Xt])|([-+*/^(),]))")


def _tokenize(text: str):
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKENS.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        kind = "num" if m.group(1) else "sqrt" if m.group(2) else "var" if m.group(3) else "op"
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    return out


class _PolyParser:
    """Builds a dict ``degree -> coefficient`` for one backend."""

    def __init__(self, text: str, domain):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.domain = domain
        self.valuation = isinstance(domain, ValuationDomain)

    # coefficient constructors
    def const(self, q: Fraction):
        if self.valuation:
            return MonomialSum.make([(groups.zero(self.domain.group), q)])
        return FieldElement(Fraction(q), Fraction(0), self.domain.fundamental_disc)

    def zero(self):
        return self.const(Fraction(0))

    # token helpers
    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self, value=None):
        kind, val, pos = self.peek()
        if kind is None or (value is not None and val != value):
            want = value or "a token"
            raise ParseError(f"expected {want!r}", self.text, pos)
        self.i += 1
        return kind, val, pos

    def parse(self) -> dict:
        if not self.toks:
            raise ParseError("empty expression", self.text, 0)
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError("trailing input", self.text, self.peek()[2])
        return p

    # polynomial arithmetic on dicts
    def add(self, p, q, sign=1):
        out = dict(p)
        for d, c in q.items():
            c = c if sign > 0 else -c
            out[d] = out[d] + c if d in out else c
        return {d: c for d, c in out.items() if not c.is_zero()}

    def mul(self, p, q):
        out: dict = {}
        for d1, c1 in p.items():
            for d2, c2 in q.items():
                c = c1 * c2
                out[d1 + d2] = out[d1 + d2] + c if d1 + d2 in out else c
        return {d: c for d, c in out.items() if not c.is_zero()}

    def div(self, p, q, pos):
        if list(q) != [0]:
            raise ParseError("can only divide by a nonzero constant", self.text, pos)
        c = q[0]
        if c.is_zero():
            raise ParseError("division by zero", self.text, pos)
        if self.valuation:
            if len(c.terms) != 1:
                raise ParseError("can only divide by a single monomial", self.text, pos)
            (e, a), = c.terms
            inv = MonomialSum.make([(groups.negate(e), 1 / a)])
        else:
            inv = c.inverse()
        return self.mul(p, {0: inv})

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            p = self.add(p, self.term(), 1 if op == "+" else -1)
        return p

    def _starts_atom(self):
        kind, val, _ = self.peek()
        return kind in ("num", "sqrt", "var") or val in ("(", "-")

    def term(self):
        p = self.unary()
        while True:
            kind, val, pos = self.peek()
            if val == "*":
                self.take()
                p = self.mul(p, self.unary())
            elif val == "/":
                self.take()
                p = self.div(p, self.unary(), pos)
            elif kind is not None and val != "-" and self._starts_atom():
                p = self.mul(p, self.unary())
            else:
                return p

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return self.add({}, self.unary(), -1)
        return self.power()

    def power(self):
        kind, val, pos = self.peek()
        if kind == "var":
            self.take()
            if val == "X":
                n = 1
                if self.peek()[1] == "^":
                    self.take()
                    _, num, npos = self.take()
                    if not num.isdigit():
                        raise ParseError("X takes a non-negative integer power", self.text, npos)
                    n = int(num)
                    if n > MAX_POWER:
                        raise ParseError(f"degree above {MAX_POWER}", self.text, npos)
                return {n: self.const(Fraction(1))}
            return {0: self.monomial(pos)}
        base = self.atom()
        if self.peek()[1] == "^":
            _, _, ppos = self.take()
            _, num, npos = self.take()
            if not num.isdigit():
                raise ParseError("expected an integer exponent", self.text, npos)
            if int(num) > MAX_POWER:
                raise ParseError(f"exponent above {MAX_POWER}", self.text, npos)
            out = {0: self.const(Fraction(1))}
            for _ in range(int(num)):
                out = self.mul(out, base)
            return out
        return base

    def monomial(self, pos):
        if not self.valuation:
            raise ParseError("'t' is only meaningful over a valuation backend", self.text, pos)
        rank = self.domain.group.rank
        if self.peek()[1] != "^":
            raise ParseError("'t' needs an exponent", self.text, pos)
        self.take("^")
        coords = []
        if self.peek()[1] == "(":
            self.take("(")
            while True:
                coords.append(self.signed_rational())
                if self.peek()[1] == ",":
                    self.take(",")
                    continue
                self.take(")")
                break
        else:
            coords.append(self.signed_rational())
        if len(coords) != rank:
            raise ParseError(f"exponent of rank {len(coords)} in a rank-{rank} group", self.text, pos)
        if not groups.member(coords, self.domain.group):
            raise ParseError(f"exponent {tuple(map(str, coords))} is not in {self.domain.group}", self.text, pos)
        return MonomialSum.make([(coords, 1)])

    def signed_rational(self) -> Fraction:
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        _, num, pos = self.take()
        if not num.isdigit():
            raise ParseError("expected a number", self.text, pos)
        q = Fraction(int(num))
        if self.peek()[1] == "/":
            self.take()
            _, den, dpos = self.take()
            if not den.isdigit() or int(den) == 0:
                raise ParseError("expected a nonzero denominator", self.text, dpos)
            q /= int(den)
        return sign * q

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return {0: self.const(Fraction(int(val)))}
        if kind == "sqrt":
            self.take("(")
            n = self.signed_rational()
            self.take(")")
            return {0: self.sqrt(n, pos)}
        if val == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r}", self.text, pos)

    def sqrt(self, n: Fraction, pos):
        if self.valuation:
            raise ParseError("sqrt is only meaningful over a quadratic order", self.text, pos)
        d0 = self.domain.fundamental_disc
        r2 = Fraction(n) / d0
        num, den = r2.numerator, r2.denominator
        if r2 < 0 or isqrt(num) ** 2 != num or isqrt(den) ** 2 != den:
            raise ParseError(f"sqrt({n}) is not in the field of discriminant {d0}", self.text, pos)
        return FieldElement(Fraction(0), Fraction(isqrt(num), isqrt(den)), d0)


def parse_poly(text: str, domain) -> FieldPoly:
    p = _PolyParser(text, domain).parse()
    if not p:
        return FieldPoly(())
    zero = _PolyParser("0", domain).zero()
    return FieldPoly.make(p.get(d, zero) for d in range(max(p) + 1))


def parse_element(text: str, domain):
    f = parse_poly(text, domain)
    if f.is_zero():
        return _PolyParser("0", domain).zero()
    if f.degree != 0:
        raise ParseError("expected a field element, got a polynomial in X", text)
    return f.coeffs[0]


def format_poly(f: FieldPoly) -> str:
    return str(f)


# -- JSON literals -----------------------------------------------------------------------


def parse_backend(obj):
    """``{"disc": -12}`` or ``{"group": "lex(Z, Z[1/2])"}`` (an optional ``"type"`` is checked)."""
    if isinstance(obj, (int, str)):
        obj = {"disc": obj} if isinstance(obj, int) else {"group": obj}
    if not isinstance(obj, dict):
        raise ParseError(f"backend must be an object, got {obj!r}")
    kind = obj.get("type")
    if "disc" in obj and kind in (None, "order"):
        d = obj["disc"]
        if not isinstance(d, int) or isinstance(d, bool):
            raise ParseError(f"disc must be an integer, got {d!r}")
        try:
            return QuadraticOrder(d)
        except ValueError as e:
            raise ParseError(str(e)) from None
    if "group" in obj and kind in (None, "valuation"):
        try:
            return ValuationDomain(parse_group(obj["group"]))
        except ValueError as e:
            raise ParseError(str(e)) from None
    raise ParseError(f"backend needs 'disc' (order) or 'group' (valuation): {obj!r}")


def backend_dict(domain) -> dict:
    if isinstance(domain, ValuationDomain):
        return {"group": str(domain.group)}
    return {"disc": domain.disc}


def parse_ideal(obj, domain):
    if not isinstance(obj, dict):
        raise ParseError(f"ideal literal must be an object, got {obj!r}")
    try:
        if isinstance(domain, ValuationDomain):
            if "group" in obj and parse_group(obj["group"]) != domain.group:
                raise ParseError(f"ideal over {obj['group']} in a domain over {domain.group}")
            if "value" in obj:
                return domain.principal([parse_rational(c) for c in obj["value"]])
            cut = obj.get("cut", obj)
            pt = [parse_rational(c) for c in cut["point"]]
            return ValIdeal(domain, make_cut(domain.group, pt, bool(cut.get("open", False)), cut.get("depth")))
        if "disc" in obj and obj["disc"] != domain.disc:
            # a module over an overring of the base order (a semistar value)
            over = QuadraticOrder(obj["disc"])
            if over.fundamental_disc != domain.fundamental_disc:
                raise ParseError(f"ideal of discriminant {obj['disc']} in {domain}")
            domain = over
        if "gens" in obj:
            return LatticeIdeal.from_generators(domain, [parse_element(g, domain) for g in obj["gens"]])
        return domain.ideal(obj.get("den", 1), obj["a"], obj["b"], obj["c"])
    except KeyError as e:
        raise ParseError(f"ideal literal is missing {e}: {obj!r}") from None
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e)) from None


def ideal_dict(I) -> dict:
    if isinstance(I, ValIdeal):
        return I.cut.to_dict()
    den, a, b, c = I.hnf()
    return {"disc": I.order.disc, "den": den, "a": a, "b": b, "c": c}


def parse_star(obj, domain) -> StarOp:
    if isinstance(obj, str):
        obj = {"op": obj}
    if not isinstance(obj, dict) or "op" not in obj:
        raise ParseError(f"star operation literal needs 'op': {obj!r}")
    kind = obj["op"]
    try:
        if kind == "w":
            fam = tuple(parse_ideal(h, domain) for h in obj.get("family", []))
            return StarOp("w", domain, family=fam)
        if kind == "meet":
            overs = []
            for T in obj.get("overrings", []):
                if isinstance(domain, ValuationDomain):
                    overs.append(T["prime"] if isinstance(T, dict) else T)
                else:
                    overs.append(QuadraticOrder(T["disc"] if isinstance(T, dict) else T))
            return StarOp("meet", domain, overrings=tuple(overs))
        return StarOp(kind, domain)
    except (StarOpError, KeyError, TypeError) as e:
        raise ParseError(f"bad star operation {obj!r}: {e}") from None
    except ValueError as e:
        raise ParseError(str(e)) from None
