"""Star and semistar operations, interpreted on both ideal backends.

A :class:`StarOp` is a descriptor bound to a base domain: a
:class:`~starclass.valuation.ValuationDomain` or a
:class:`~starclass.quadratic.QuadraticOrder`.  :func:`close` evaluates it on
a fractional ideal (``ValIdeal`` / ``LatticeIdeal``).  Both ideal types share
the same small protocol: ``*``, ``+``, ``&``, ``<=``, ``colon``, ``scale``.

Kinds:

``d``     identity
``v``     ``(D : (D : E))``
``t``     finite-type part of ``v``
``w``     ``E + sum (E : H)`` over a finite test family (a lower bound for ``w``)
``meet``  ``E -> intersection of E*T`` over a finite family of overrings
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import valuation as val
from .quadratic import LatticeIdeal, QuadraticOrder, extend_to_order
from .valuation import ValIdeal, ValPrime, ValuationDomain

KINDS = ("d", "v", "t", "w", "meet")


class StarOpError(ValueError):
    pass


def is_valuation(domain) -> bool:
    return isinstance(domain, ValuationDomain)


def unit_of(domain):
    return domain.unit()


@dataclass(frozen=True)
class StarOp:
    """``overrings`` holds prime indices ``k`` (valuation) or orders (quadratic)."""

    kind: str
    domain: object
    family: tuple = ()
    overrings: tuple = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise StarOpError(f"unknown star operation {self.kind!r}")
        if self.kind == "w":
            if not self.family:
                raise StarOpError("w needs a nonempty test family")
            for H in self.family:
                _check_test_ideal(H)
        if self.kind == "meet":
            if not self.overrings:
                raise StarOpError("meet needs at least one overring")
            for T in self.overrings:
                _check_overring(self.domain, T)

    @property
    def label(self) -> str:
        return self.name or self.kind

    @property
    def is_finite_type(self) -> bool:
        if self.kind == "v":
            # on a valuation domain v = t = d exactly when M is principal;
            # quadratic orders are Noetherian
            if is_valuation(self.domain):
                return val.maximal_ideal_profile(self.domain)["principal"]
            return True
        return True

    @property
    def is_stable(self) -> bool:
        """Declared, not inferred (see README)."""
        if self.kind == "meet":
            if is_valuation(self.domain):
                return True
            return all(T == self.domain for T in self.overrings)
        # d, t, w are stable; v is stable on chains of ideals and on
        # quadratic orders, where every fractional ideal is divisorial
        return True

    @property
    def is_semistar_only(self) -> bool:
        D = unit_of(self.domain)
        return close(self, D) != D

    def to_dict(self) -> dict:
        out = {"op": self.kind}
        if self.kind == "w":
            out["family"] = [H.to_dict() for H in self.family]
        if self.kind == "meet":
            out["overrings"] = [_overring_dict(self.domain, T) for T in self.overrings]
        return out


def _check_test_ideal(H):
    D = H.domain.unit() if isinstance(H, ValIdeal) else H.order.unit()
    if not H <= D:
        raise StarOpError(f"test ideal {H} is not integral")
    # finitely generated: automatic over an order, principal over a valuation ring
    if isinstance(H, ValIdeal) and not H.is_principal:
        raise StarOpError(f"test ideal {H} is not finitely generated")
    if H.v_closure() != D:
        raise StarOpError(f"test ideal {H} has H^v != D")


def _check_overring(domain, T):
    if is_valuation(domain):
        if not isinstance(T, int) or not 0 <= T < domain.rank:
            raise StarOpError(f"valuation overrings are prime indices 0..rank-1, got {T!r}")
    else:
        if not isinstance(T, QuadraticOrder) or not T.contains_order(domain):
            raise StarOpError(f"{T} is not an overring order of {domain}")


def _overring_dict(domain, T):
    if is_valuation(domain):
        return {"prime": T}
    return {"disc": T.disc}


def d_op(domain) -> StarOp:
    return StarOp("d", domain)


def v_op(domain) -> StarOp:
    return StarOp("v", domain)


def t_op(domain) -> StarOp:
    return StarOp("t", domain)


def w_op(domain, family) -> StarOp:
    return StarOp("w", domain, family=tuple(family))


def meet_op(domain, overrings) -> StarOp:
    return StarOp("meet", domain, overrings=tuple(overrings))


# -- closures -------------------------------------------------------------------


def _check_ideal(op: StarOp, I):
    if is_valuation(op.domain):
        if not isinstance(I, ValIdeal) or I.domain != op.domain:
            raise StarOpError(f"{op.label} over {op.domain} cannot act on {I}")
    else:
        if not isinstance(I, LatticeIdeal) or I.field_disc != op.domain.fundamental_disc:
            raise StarOpError(f"{op.label} over {op.domain} cannot act on {I}")


def v_closure(domain, I):
    """``(D : (D : I))`` for the base domain ``D`` (not the ring ``I`` lives over)."""
    D = unit_of(domain)
    return D.colon(D.colon(I))


def overring_module(domain, T):
    """The overring ``T`` as a fractional ideal of the base domain."""
    if is_valuation(domain):
        return val.localization_module(domain, ValPrime(domain, T))
    return T.unit()


def extend(domain, I, T):
    """``I * T``."""
    if is_valuation(domain):
        return I * overring_module(domain, T)
    if T.contains_order(I.order):
        return extend_to_order(I, T)
    # I is already a module over a larger ring than T
    return I * T.unit()


def close(op: StarOp, I):
    _check_ideal(op, I)
    k = op.kind
    if k == "d":
        return I
    if k == "v":
        return v_closure(op.domain, I)
    if k == "t":
        # valuation: finitely generated = principal, so v_f = d;
        # quadratic orders are Noetherian, so t = v
        if is_valuation(op.domain):
            return I
        return v_closure(op.domain, I)
    if k == "w":
        return w_approx_close(op.family, I)
    out = None
    for T in op.overrings:
        part = extend(op.domain, I, T)
        out = part if out is None else out & part
    return out


def w_approx_close(family, I):
    """``I + sum (I : H)`` over the family; each ``H`` integral with ``H^v = D``."""
    if not family:
        raise StarOpError("empty test family")
    out = I
    for H in family:
        _check_test_ideal(H)
        out = out + I.colon(H)
    return out


def finite_type_of(op: StarOp) -> StarOp:
    if op.kind in ("v", "t"):
        if is_valuation(op.domain):
            return d_op(op.domain)
        return v_op(op.domain)
    return op


def star_unit(op: StarOp):
    """``D^*``."""
    return close(op, unit_of(op.domain))


def is_quasi_star_invertible(op: StarOp, I) -> bool:
    Ds = star_unit(op)
    return close(op, I * Ds.colon(I)) == Ds


def is_star_invertible(op: StarOp, I) -> bool:
    D = unit_of(op.domain)
    return close(op, I * D.colon(I)) == star_unit(op)


def is_star_ideal(op: StarOp, I) -> bool:
    return close(op, I) == I


def compare(op1: StarOp, op2: StarOp, samples) -> dict:
    """Sampled verdict on ``op1 <= op2`` and ``op2 <= op1``."""
    if op1.domain != op2.domain:
        raise StarOpError("operations over different domains")
    leq_w, geq_w = [], []
    for I in samples:
        a, b = close(op1, I), close(op2, I)
        if not a <= b:
            leq_w.append(I)
        if not b <= a:
            geq_w.append(I)
    return {
        "leq": not leq_w,
        "geq": not geq_w,
        "witnesses": {"leq": leq_w[:1], "geq": geq_w[:1]},
    }


# -- property checks --------------------------------------------------------------


def axiom_failures(op: StarOp, E, F, x) -> list[str]:
    """Names of the axioms/basic formulas that fail on ``(E, F)`` and scalar ``x``.

    ``x`` is a value (valuation) or a nonzero field element (orders).
    """
    bad = []
    cE, cF = close(op, E), close(op, F)
    if close(op, E.scale(x)) != cE.scale(x):
        bad.append("star1")
    small = E & F
    if not close(op, small) <= cE:
        bad.append("star2")
    if not E <= cE:
        bad.append("star3-extensive")
    if close(op, cE) != cE:
        bad.append("star3-idempotent")
    EF = close(op, E * F)
    if close(op, cE * F) != EF or close(op, cE * cF) != EF:
        bad.append("product-formula")
    return bad


def quasi_invertible_closure_check(op: StarOp, I) -> bool | None:
    """When ``I`` is quasi-*-invertible, ``I^*`` must be ``(D^* : (D^* : I))``.

    ``None`` when the hypothesis does not hold.
    """
    if not is_quasi_star_invertible(op, I):
        return None
    Ds = star_unit(op)
    return close(op, I) == Ds.colon(Ds.colon(I))


def w_invertibility_verdict(family, I) -> str:
    """Compare w-approx invertibility with t-invertibility of ``I``.

    ``w-approx <= w <= t``, so reaching ``D`` through the family certifies
    both; failing to reach it while ``t`` succeeds is only inconclusive.
    """
    D = I.domain.unit() if isinstance(I, ValIdeal) else I.order.unit()
    domain = I.domain if isinstance(I, ValIdeal) else I.order
    J = I * D.colon(I)
    w_ok = w_approx_close(family, J) == D
    t_ok = close(t_op(domain), J) == D
    if w_ok and t_ok:
        return "agree"
    if not w_ok and not t_ok:
        return "agree"
    if w_ok and not t_ok:
        return "disagree"
    return "inconclusive"


def h_domain_check(op: StarOp, bound: int) -> dict:
    """Maximal ``*_f``-ideals up to norm ``bound`` are ``*``-ideals; v- vs t-invertibility agree."""
    from .quadratic import integral_ideals_up_to, maximal_ideals_up_to

    O = op.domain
    if is_valuation(O):
        raise StarOpError("h_domain_check enumerates ideals; it needs an order backend")
    opf = finite_type_of(op)
    maximal, not_star = [], []
    for M in maximal_ideals_up_to(O, bound) if bound >= 2 else []:
        if close(opf, M) != M:
            continue
        maximal.append(M)
        if close(op, M) != M:
            not_star.append(M)
    mismatch = []
    v, t = v_op(O), t_op(O)
    for I in integral_ideals_up_to(O, bound) if bound >= 1 else []:
        if is_star_invertible(v, I) != is_star_invertible(t, I):
            mismatch.append(I)
    return {
        "holds": not not_star and not mismatch,
        "maximal_checked": len(maximal),
        "witnesses": [str(I) for I in not_star + mismatch][:1],
    }
