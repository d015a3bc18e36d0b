"""Divisorial class groups of valuation domains and Picard groups of quadratic orders.

Valuation side: a v-invertible v-ideal either is principal or is a cut at a
point whose last coordinate misses a dense last factor ``G``.  Its class is
that coordinate modulo ``G``; the second route goes through ``V/P`` for the
prime ``P`` directly below ``M`` and reads the class off ``phi`` there.

Order side: ideals up to a norm bound are bucketed by principality of
``(I (D : J))^*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import groups
from .groups import OrderedGroup
from .oracles import class_number_by_forms
from .quadratic import QuadraticOrder, integral_ideals_up_to
from .star import close, is_star_invertible, t_op, v_op
from .valuation import (
    ValIdeal,
    ValPrime,
    ValuationDomain,
    maximal_ideal_profile,
    phi,
    push_ideal,
)

CLASS_ORDER_BOUND = 10**4


class ClassError(ValueError):
    pass


@dataclass(frozen=True)
class ClassGroupDescriptor:
    """``Trivial`` (with a reason) or ``RModG`` (the group R/G, presented by G)."""

    kind: str
    group: OrderedGroup | None = None
    reason: str = ""
    provenance: str = ""

    @property
    def is_trivial(self) -> bool:
        return self.kind == "Trivial"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "provenance": self.provenance}
        if self.group is not None:
            out["group"] = str(self.group)
        if self.reason:
            out["reason"] = self.reason
        return out

    def __str__(self) -> str:
        if self.is_trivial:
            return f"Trivial({self.reason})"
        return f"RModG({self.group})"


def cl_v_descriptor(V: ValuationDomain) -> ClassGroupDescriptor:
    prof = maximal_ideal_profile(V)
    if prof["principal"]:
        reason = "DVR" if V.rank == 1 else "principal-M"
        return ClassGroupDescriptor("Trivial", reason=reason, provenance="principal maximal ideal")
    G = V.group.components[-1]
    prov = "rank one" if V.rank == 1 else "quotient by the prime directly below M"
    return ClassGroupDescriptor("RModG", group=G, provenance=prov)


# -- classes of a rank-one modulus ----------------------------------------------------


def reduce_mod(r: Fraction, G: OrderedGroup) -> Fraction:
    """Canonical representative of ``r + G`` for a rank-one ``G``."""
    r = Fraction(r)
    if G.kind == "Q":
        return Fraction(0)
    if G.kind == "Z":
        return r - (r.numerator // r.denominator)
    # Z[1/p]: write the denominator as p^k * m with p not dividing m
    p = G.p
    m, pk = r.denominator, 1
    while m % p == 0:
        m //= p
        pk *= p
    if m == 1:
        return Fraction(0)
    c = r.numerator * pow(pk, -1, m) % m
    return Fraction(c, m)


@dataclass(frozen=True)
class IdealClass:
    """``rep + G``, with ``rep`` already reduced."""

    rep: Fraction
    modulus: OrderedGroup

    @classmethod
    def make(cls, r, G: OrderedGroup) -> IdealClass:
        if G.rank != 1:
            raise ClassError("class modulus must be a rank-one group")
        return cls(reduce_mod(r, G), G)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 0

    def to_dict(self) -> dict:
        return {"rep": str(self.rep), "modulus": str(self.modulus)}

    def __str__(self) -> str:
        return f"[{self.rep}] mod {self.modulus}"


def _same_modulus(a: IdealClass, b: IdealClass):
    if a.modulus != b.modulus:
        raise ClassError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def class_mul(a: IdealClass, b: IdealClass) -> IdealClass:
    _same_modulus(a, b)
    return IdealClass.make(a.rep + b.rep, a.modulus)


def class_eq(a: IdealClass, b: IdealClass) -> bool:
    _same_modulus(a, b)
    return groups.member((a.rep - b.rep,), a.modulus)


def class_order(a: IdealClass, bound: int = CLASS_ORDER_BOUND) -> int | None:
    for n in range(1, bound + 1):
        if groups.member((n * a.rep,), a.modulus):
            return n
    return None


def _require_class_input(I: ValIdeal):
    if not I.is_divisorial:
        raise ClassError(f"{I} is not divisorial")
    if not I.is_v_invertible:
        raise ClassError(f"{I} is not v-invertible")


def class_of(I: ValIdeal) -> IdealClass:
    """Class of a v-invertible v-ideal: last coordinate mod the last factor."""
    _require_class_input(I)
    G = I.domain.group.components[-1]
    return IdealClass.make(I.cut.point[-1], G)


def class_via_quotient(I: ValIdeal) -> IdealClass:
    """Same class, through ``V/P`` with ``P`` directly below ``M``.

    ``I`` is first moved by a principal ideal into the band between ``P``
    and ``V_P``, then pushed down, where the class is ``phi`` mod the group.
    """
    _require_class_input(I)
    V = I.domain
    if V.rank == 1:
        return IdealClass.make(phi(I)[0], V.group)
    lead = I.cut.point[: V.rank - 1]
    shift = groups.negate(tuple(lead) + (Fraction(0),))
    J = I.scale(shift)
    W = push_ideal(J, ValPrime(V, 1))
    return IdealClass.make(phi(W)[0], W.domain.group)


def nontrivial_witness(V: ValuationDomain) -> ValIdeal | None:
    """A v-invertible v-ideal with nontrivial class, when the descriptor is ``RModG(G)``, ``G != Q``."""
    desc = cl_v_descriptor(V)
    if desc.is_trivial or desc.group.kind == "Q":
        return None
    G = desc.group
    # a rational outside G: 1/q for a prime q not in G's denominators
    q = 3 if G.kind != "Zloc" or G.p != 3 else 5
    pt = (Fraction(0),) * (V.rank - 1) + (Fraction(1, q),)
    return V.ideal(pt)


def cl_transport_check(V: ValuationDomain, P: ValPrime, samples) -> dict:
    """Classes in ``V`` against classes of the pushed ideals in ``V/P``."""
    if P.is_maximal or P.is_zero:
        raise ClassError("transport needs a nonzero prime other than M")
    rows, failures = [], []
    for I in samples:
        try:
            a = class_of(I)
            pushed = push_ideal(I, P)
            _require_class_input(pushed)
            b = IdealClass.make(phi(pushed)[0], pushed.domain.group) if pushed.domain.rank == 1 else class_of(pushed)
        except (ClassError, ValueError) as e:
            failures.append({"ideal": str(I), "reason": str(e)})
            continue
        if push_ideal(I.v_closure(), P) != pushed.v_closure():
            failures.append({"ideal": str(I), "reason": "push does not commute with v"})
        if a.rep != b.rep or a.modulus != b.modulus:
            failures.append({"ideal": str(I), "reason": f"class {a} maps to {b}"})
        rows.append((I, pushed, a, b))
    # injectivity and multiplicativity on pairs
    for i, (I, pI, a, b) in enumerate(rows):
        for J, pJ, c, d in rows[i + 1:]:
            if class_eq(a, c) != class_eq(b, d):
                failures.append({"ideal": f"{I}, {J}", "reason": "not injective"})
            if push_ideal(I * J, P) != pI * pJ:
                failures.append({"ideal": f"{I}, {J}", "reason": "push not multiplicative"})
            if class_of((I * J).v_closure()) != class_mul(a, c):
                failures.append({"ideal": f"{I}, {J}", "reason": "class map not multiplicative"})
    return {
        "checked": len(rows),
        "consistent": not failures,
        "witness": failures[0] if failures else None,
    }


# -- quadratic orders -----------------------------------------------------------------------


def _bucket(op, ideals):
    """Partition by ``I ~ J  <=>  (I (D : J))^*`` principal."""
    D = op.domain.unit()
    reps: list = []
    members: list[list] = []
    for I in ideals:
        for k, R in enumerate(reps):
            if close(op, I * D.colon(R)).is_principal:
                members[k].append(I)
                break
        else:
            reps.append(I)
            members.append([I])
    return reps, members


def order_class_survey(O: QuadraticOrder, bound: int) -> dict:
    if bound < 2:
        raise ValueError("survey needs a norm bound of at least 2")
    ideals = integral_ideals_up_to(O, bound)
    v, t = v_op(O), t_op(O)
    invertible = [I for I in ideals if I.is_invertible]
    v_ideals = [I for I in ideals if close(v, I) == I and is_star_invertible(v, I)]
    t_ideals = [I for I in ideals if close(t, I) == I and is_star_invertible(t, I)]
    not_v_inv = [I for I in ideals if not is_star_invertible(v, I)]
    pic_reps, _ = _bucket_pic(O, invertible)
    v_reps, v_members = _bucket(v, v_ideals)
    t_reps, t_members = _bucket(t, t_ideals)
    same = sorted(sorted(m.lat for m in grp) for grp in v_members) == sorted(
        sorted(m.lat for m in grp) for grp in t_members
    )
    bad_t = [I for I in t_ideals if not I.is_invertible]
    out = {
        "disc": O.disc,
        "normBound": bound,
        "idealsEnumerated": len(ideals),
        "picClasses": len(pic_reps),
        "picRepresentatives": [str(I) for I in pic_reps],
        "vInvertibleVIdealClasses": len(v_reps),
        "tInvertibleTIdealClasses": len(t_reps),
        "clT_equals_clV": same,
        "everyTInvertibleInvertible": not bad_t,
        "notVInvertible": [str(I) for I in not_v_inv],
        "witness": str(bad_t[0]) if bad_t else None,
    }
    if O.is_imaginary:
        h = class_number_by_forms(O.disc)
        out["formClassNumber"] = h
        out["agreesWithForms"] = h == len(pic_reps)
    else:
        out["note"] = "real quadratic: principality by bounded search, best effort"
    return out


def _bucket_pic(O: QuadraticOrder, invertible):
    reps: list = []
    members: list[list] = []
    for I in invertible:
        for k, R in enumerate(reps):
            if (I * R.inverse()).is_principal:
                members[k].append(I)
                break
        else:
            reps.append(I)
            members.append([I])
    return reps, members


def gcd_criterion_check(domain, samples) -> dict:
    """If every sampled class is trivial, every sampled ``I^v`` must be principal."""
    samples = list(samples)
    not_v_inv = [I for I in samples if not I.is_v_invertible]
    if not_v_inv:
        return {
            "vDomainOnSample": False,
            "holds": False,
            "witness": str(not_v_inv[0]),
        }
    if isinstance(domain, ValuationDomain):
        classes = [class_of(I.v_closure()) for I in samples]
        trivial = all(c.is_trivial for c in classes)
        desc = cl_v_descriptor(domain)
    else:
        trivial = all(I.v_closure().is_principal for I in samples)
        desc = None
    nonprincipal = [I for I in samples if not I.v_closure().is_principal]
    out = {
        "vDomainOnSample": True,
        "classesTrivial": trivial,
        "holds": (not trivial) or not nonprincipal,
        "witness": str(nonprincipal[0]) if trivial and nonprincipal else None,
    }
    if desc is not None:
        out["descriptor"] = str(desc)
        out["representabilityCaveat"] = trivial and not desc.is_trivial
    return out
