"""Seeded property suites.

Every suite turns a seed into a list of JSON-serializable *cases* and checks
each case independently.  A config may carry an explicit ``"cases"`` list,
which replaces the random draw: that is how a failure report's repro config
reruns exactly the failing case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import classgroups as cg
from . import content as ct
from . import groups
from . import oracles
from . import star
from . import valuation as val
from .groups import make_cut, parse_group
from .oracles import CutGrid, RawCut
from .parsing import ideal_dict, parse_backend, parse_ideal, parse_poly, parse_rational, parse_star
from .quadratic import QuadraticOrder, random_ideal
from .valuation import ValIdeal, ValPrime, ValuationDomain

VALUATION_KINDS = ["Z", "Q", "Z[1/2]", "lex(Z, Z[1/2])", "lex(Q, Z)"]
ORDER_DISCS = [-12, -20, -4, -3, 40]


@dataclass
class SuiteResult:
    name: str
    seed: int
    checked: int = 0
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def repro(self) -> dict | None:
        if not self.failures:
            return None
        return {
            "command": "propsuite",
            "suite": self.name,
            "seed": self.seed,
            "params": self.params,
            "cases": [self.failures[0]["case"]],
        } if not self.failures[0].get("global") else {
            # a failed global check: rerun only the globals, narrowed to its input
            "command": "propsuite",
            "suite": self.name,
            "seed": self.seed,
            "params": {**self.params, **_narrow(self.failures[0]["case"]), "globals": True},
            "cases": [],
        }

    def to_dict(self) -> dict:
        out = {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "checked": self.checked,
            "failed": len(self.failures),
            "warnings": self.warnings,
        }
        if self.failures:
            out["witness"] = self.failures[0]
            out["repro"] = self.repro()
        return out


# -- shared serialization helpers ------------------------------------------------------


def _q(x) -> str:
    return str(Fraction(x))


def raw_dict(c: RawCut) -> dict:
    return {"point": [_q(x) for x in c.point], "open": c.open, "depth": c.depth}


def raw_from(d: dict) -> RawCut:
    return RawCut(tuple(parse_rational(x) for x in d["point"]), bool(d["open"]), int(d["depth"]))


def _pt(xs) -> list[str]:
    return [_q(x) for x in xs]


def _fail(case, what, **detail) -> dict:
    out = {"case": case, "check": what}
    out.update({k: str(v) for k, v in detail.items()})
    return out


def _global_fail(case, what, **detail) -> dict:
    out = _fail(case, what, **detail)
    out["global"] = True
    return out


def _narrow(case: dict) -> dict:
    if "backend" in case:
        return {"backends": [case["backend"]]}
    return {"groups": [case["group"]]}


def grid_params(G, params) -> tuple[int, int]:
    """Default grid: finer in rank one, coarser as the rank grows."""
    if "k" in params or "B" in params:
        return int(params.get("k", 3)), int(params.get("B", 4))
    return {1: (3, 4), 2: (1, 2)}.get(G.rank, (0, 2))


# -- cut oracle ----------------------------------------------------------------------------


def _cut_cases(rng, params):
    out = []
    for name in params.get("groups", VALUATION_KINDS):
        G = parse_group(name)
        k, B = grid_params(G, params)
        for _ in range(int(params.get("pairs", 500))):
            a = oracles.random_raw_cut(rng, G, k, B)
            b = oracles.random_raw_cut(rng, G, k, B)
            out.append({"group": name, "k": k, "B": B, "a": raw_dict(a), "b": raw_dict(b)})
    return out


_grids: dict = {}


def _grid(G, k, B) -> CutGrid:
    key = (G, k, B)
    if key not in _grids:
        _grids[key] = CutGrid(G, k, B)
    return _grids[key]


def _cut_check(case, params):
    G = parse_group(case["group"])
    grid = _grid(G, case["k"], case["B"])
    a, b = raw_from(case["a"]), raw_from(case["b"])
    A = make_cut(G, a.point, a.open, a.depth)
    Bc = make_cut(G, b.point, b.open, b.depth)
    out = []
    w = grid.disagreement(A.contains, a.contains)
    if w is not None:
        out.append(_fail(case, "canonical form", at=_pt(w), cut=A))
    checks = [
        ("multiply", val.multiply_cuts(A, Bc), grid.product_pred(a, b)),
        ("colon", val.colon_cuts(A, Bc), grid.colon_pred(a, b)),
        ("v_closure", val.v_closure_cut(A), grid.v_closure_pred(a)),
    ]
    for what, cut, oracle in checks:
        w = grid.disagreement(cut.contains, oracle)
        if w is not None:
            out.append(_fail(case, what, at=_pt(w), computed=cut))
    return out


# -- lattice oracle ---------------------------------------------------------------------------


def _lattice_cases(rng, params):
    out = []
    for disc in params.get("discs", ORDER_DISCS):
        O = QuadraticOrder(disc)
        for _ in range(int(params.get("pairs", 500))):
            I, J = random_ideal(O, rng), random_ideal(O, rng)
            out.append({"disc": disc, "I": ideal_dict(I), "J": ideal_dict(J)})
    return out


def _lattice_check(case, params):
    O = QuadraticOrder(case["disc"])
    d0 = O.fundamental_disc
    I, J = parse_ideal(case["I"], O), parse_ideal(case["J"], O)
    A, B = oracles.span_of(I.basis()), oracles.span_of(J.basis())
    U = oracles.span_of(O.unit().basis())
    out = []
    if oracles.span_product(A, B, d0) != oracles.span_of((I * J).basis()):
        out.append(_fail(case, "multiply", computed=I * J))
    if oracles.span_colon(A, B, d0) != oracles.span_of(I.colon(J).basis()):
        out.append(_fail(case, "colon", computed=I.colon(J)))
    vv = oracles.span_colon(U, oracles.span_colon(U, A, d0), d0)
    if vv != oracles.span_of(I.v_closure().basis()):
        out.append(_fail(case, "v_closure", computed=I.v_closure()))
    # canonical form does not depend on the generating set
    b1, b2 = I.basis()
    regen = type(I).from_generators(O, [b2 * 3, b1 + b2, b1 * -1])
    if regen != I or regen.hnf() != I.hnf():
        out.append(_fail(case, "canonical form", computed=regen))
    if I.is_invertible and J.is_invertible and (I * J).norm() != I.norm() * J.norm():
        out.append(_fail(case, "norm multiplicativity"))
    return out


# -- polynomial content ----------------------------------------------------------------------


def _backends(params, default):
    return [parse_backend(b) for b in params.get("backends", default)]


def _poly_cases(rng, params, default, engineered=0.3):
    out = []
    for D in _backends(params, default):
        for _ in range(int(params.get("pairs", 200))):
            f, g = ct.random_pair(D, rng, engineered)
            out.append({"backend": _backend_key(D), "f": str(f), "g": str(g)})
    return out


def _backend_key(D):
    return {"group": str(D.group)} if isinstance(D, ValuationDomain) else {"disc": D.disc}


DM_DEFAULT = [{"group": g} for g in VALUATION_KINDS] + [{"disc": d} for d in (-12, -3, -20)]


def _dm_check(case, params):
    D = parse_backend(case["backend"])
    f, g = parse_poly(case["f"], D), parse_poly(case["g"], D)
    out = []
    r = ct.dedekind_mertens_check(D, f, g)
    if not r["holds"]:
        out.append(_fail(case, "dedekind-mertens", lhs=r["lhs"], rhs=r["rhs"]))
    cfg, prod = ct.content(D, f * g), ct.content(D, f) * ct.content(D, g)
    if not cfg <= prod:
        out.append(_fail(case, "c(fg) within c(f)c(g)", lhs=cfg, rhs=prod))
    # homogeneity, scaling by the constant term of g
    x = next(c for c in g.coeffs if not c.is_zero())
    if isinstance(D, ValuationDomain):
        ok = ct.content(D, f.scale(x)) == ct.content(D, f).scale(x.omega())
    else:
        ok = ct.content(D, f.scale(x)) == ct.content(D, f).scale(x)
    if not ok:
        out.append(_fail(case, "content homogeneity"))
    return out


GAUSS_V_DEFAULT = [{"group": g} for g in VALUATION_KINDS] + [{"disc": -3}]


def _gauss_check_case(case, params):
    D = parse_backend(case["backend"])
    f, g = parse_poly(case["f"], D), parse_poly(case["g"], D)
    op = parse_star(params.get("op", "v"), D)
    r = ct.gauss_check(D, f, g, op)
    if not r["equal"]:
        return [_fail(case, f"gauss under {op.kind}", lhs=r["lhs"], rhs=r["rhs"])]
    return []


# -- star axioms ---------------------------------------------------------------------------------


def constructible_ops(D) -> list[dict]:
    """Every star operation literal the suite exercises on ``D``."""
    ops: list[dict] = [{"op": "d"}, {"op": "v"}, {"op": "t"}]
    if isinstance(D, ValuationDomain):
        ops.append({"op": "w", "family": [{"point": ["0"] * D.rank, "open": False}]})
        for k in range(D.rank):
            ops.append({"op": "meet", "overrings": [{"prime": k}]})
        if D.rank > 1:
            ops.append({"op": "meet", "overrings": [{"prime": k} for k in range(D.rank)]})
    else:
        ops.append({"op": "w", "family": [{"den": 1, "a": 1, "b": 0, "c": 1}]})
        Om = D.maximal()
        if Om != D:
            ops.append({"op": "meet", "overrings": [{"disc": Om.disc}]})
            ops.append({"op": "meet", "overrings": [{"disc": D.disc}, {"disc": Om.disc}]})
        else:
            ops.append({"op": "meet", "overrings": [{"disc": D.disc}]})
    return ops


STAR_DEFAULT = [{"group": g} for g in VALUATION_KINDS] + [{"disc": d} for d in (-12, -3, -20)]


def _random_val_ideal(rng, V: ValuationDomain) -> ValIdeal:
    c = oracles.random_raw_cut(rng, V.group, 1, 4)
    return V.ideal(c.point, c.open, c.depth)


def _random_value(rng, G):
    return ct._random_value(rng, G)


def _star_cases(rng, params):
    out = []
    n = int(params.get("samples", 200))
    for D in _backends(params, STAR_DEFAULT):
        for opd in constructible_ops(D):
            for _ in range(n):
                if isinstance(D, ValuationDomain):
                    E, F = _random_val_ideal(rng, D), _random_val_ideal(rng, D)
                    x = _pt(_random_value(rng, D.group))
                else:
                    E, F = random_ideal(D, rng, 4, 2), random_ideal(D, rng, 4, 2)
                    x = str(ct.random_coefficient(D, rng, 5) or D.elem(1))
                out.append({
                    "backend": _backend_key(D), "op": opd,
                    "E": ideal_dict(E), "F": ideal_dict(F), "x": x,
                })
    return out


def _star_check(case, params):
    from .parsing import parse_element

    D = parse_backend(case["backend"])
    op = parse_star(case["op"], D)
    E, F = parse_ideal(case["E"], D), parse_ideal(case["F"], D)
    if isinstance(D, ValuationDomain):
        x = tuple(parse_rational(c) for c in case["x"])
    else:
        x = parse_element(case["x"], D)
    out = [_fail(case, name) for name in star.axiom_failures(op, E, F, x)]
    if star.quasi_invertible_closure_check(op, E) is False:
        out.append(_fail(case, "quasi-invertible closure is the v of D^*"))
    # d <= op <= v when op is a star operation (D^* = D)
    if not op.is_semistar_only:
        c = star.close(op, E)
        if not (E <= c and c <= star.close(star.v_op(D), E)):
            out.append(_fail(case, "d <= op <= v"))
    if op.kind == "t" and isinstance(D, ValuationDomain) and star.close(op, E) != E:
        out.append(_fail(case, "t = d on a valuation domain"))
    return out


def star_global_checks(D) -> list[dict]:
    """Facts about the operation lattice that need no sampling."""
    out = []
    key = _backend_key(D)
    v, d = star.v_op(D), star.d_op(D)
    if isinstance(D, ValuationDomain):
        if star.finite_type_of(v) != d:
            out.append(_global_fail({"backend": key}, "finite_type_of(v) = d"))
        M = D.maximal_ideal()
        principal = val.maximal_ideal_profile(D)["principal"]
        differs = star.close(v, M) != star.close(d, M)
        if differs == principal:
            out.append(_global_fail({"backend": key}, "v and d differ exactly when M is not principal", M=M))
    else:
        if star.finite_type_of(v) != v:
            out.append(_global_fail({"backend": key}, "finite_type_of(v) = v on a Noetherian domain"))
    return out


# -- phi, transport and class calculus -----------------------------------------------------------


def _phi_cases(rng, params):
    out = []
    for name in params.get("groups", ["Z", "Q", "Z[1/2]", "Z[1/3]"]):
        G = parse_group(name)
        for _ in range(int(params.get("samples", 200))):
            I, J = _random_val_ideal(rng, ValuationDomain(G)), _random_val_ideal(rng, ValuationDomain(G))
            out.append({"group": name, "I": ideal_dict(I), "J": ideal_dict(J),
                        "x": _pt(_random_value(rng, G))})
    return out


def _phi_check(case, params):
    V = ValuationDomain(parse_group(case["group"]))
    I, J = parse_ideal(case["I"], V), parse_ideal(case["J"], V)
    x = tuple(parse_rational(c) for c in case["x"])
    out = []
    phi = val.phi
    if (phi(I) == phi(J)) != (I.v_closure() == J.v_closure()):
        out.append(_fail(case, "phi separates v-closures"))
    Iv, Jv = I.v_closure(), J.v_closure()
    if phi((Iv * Jv).v_closure()) != groups.add(phi(Iv), phi(Jv)):
        out.append(_fail(case, "phi is additive on v-products"))
    if Iv.is_principal != groups.member(phi(Iv), V.group):
        out.append(_fail(case, "phi lands in G exactly on principals"))
    if phi(V.principal(x)) != x:
        out.append(_fail(case, "phi(xV) = w(x)"))
    if I.is_invertible and not I.is_principal:
        out.append(_fail(case, "invertible implies principal"))
    if val.maximal_ideal_profile(V)["principal"] and not I.is_divisorial:
        out.append(_fail(case, "principal M makes every ideal divisorial"))
    # every rational phi value is attained by a divisorial ideal
    r = phi(I)
    K = V.ideal(r)
    if phi(K) != r or not K.is_divisorial:
        out.append(_fail(case, "phi attains rational values"))
    # class calculus on v-invertible v-ideals
    if Iv.is_v_invertible and Jv.is_v_invertible:
        a, b = cg.class_of(Iv), cg.class_of(Jv)
        if cg.class_of((Iv * Jv).v_closure()) != cg.class_mul(a, b):
            out.append(_fail(case, "class_of is multiplicative"))
        desc = cg.cl_v_descriptor(V)
        if desc.is_trivial and not a.is_trivial:
            out.append(_fail(case, "trivial descriptor, nontrivial class"))
    return out


def _transport_cases(rng, params):
    out = []
    for name in params.get("groups", ["lex(Z, Z[1/2])", "lex(Q, Z[1/3])", "lex(Z, Z)"]):
        G = parse_group(name)
        V = ValuationDomain(G)
        for _ in range(int(params.get("samples", 20))):
            # a cut strictly between P and V_P, and a v-invertible v-ideal anywhere
            c = oracles.random_raw_cut(rng, G, 1, 4)
            pt = (Fraction(0),) * (G.rank - 1) + (c.point[-1],)
            band = V.ideal(pt, c.open)
            lead = [_random_value(rng, G)[i] for i in range(G.rank - 1)]
            anywhere = V.ideal(tuple(lead) + (c.point[-1],))
            out.append({"group": name, "I": ideal_dict(band), "J": ideal_dict(anywhere)})
    return out


def _transport_check(case, params):
    V = ValuationDomain(parse_group(case["group"]))
    P = ValPrime(V, 1)
    I, J = parse_ideal(case["I"], V), parse_ideal(case["J"], V)
    out = []
    pI = val.push_ideal(I, P)
    if val.push_ideal(I.v_closure(), P) != pI.v_closure():
        out.append(_fail(case, "push commutes with v"))
    if I.is_divisorial != pI.is_divisorial:
        out.append(_fail(case, "divisoriality preserved and reflected"))
    if I.is_v_invertible != pI.is_v_invertible:
        out.append(_fail(case, "v-invertibility preserved and reflected"))
    if val.lift_ideal(pI, V, P) != I:
        out.append(_fail(case, "lift inverts push"))
    if J.is_divisorial and J.is_v_invertible:
        if cg.class_of(J) != cg.class_via_quotient(J):
            out.append(_fail(case, "class routes agree", direct=cg.class_of(J), quotient=cg.class_via_quotient(J)))
    if I.is_divisorial and I.is_v_invertible:
        r = cg.cl_transport_check(V, P, [I, J] if J.is_divisorial and J.is_v_invertible and J.cut.point[0] == 0 else [I])
        if not r["consistent"]:
            out.append(_fail(case, "transport", witness=r["witness"]))
    return out


# -- group order -------------------------------------------------------------------------------


def _group_cases(rng, params):
    out = []
    for name in params.get("groups", VALUATION_KINDS + ["Z[1/3]", "lex(Z, Z)"]):
        G = parse_group(name)
        for _ in range(int(params.get("triples", 1000))):
            a, b, c = (_pt(_random_value(rng, G)) for _ in range(3))
            out.append({"group": name, "a": a, "b": b, "c": c})
    return out


def _group_check(case, params):
    G = parse_group(case["group"])
    a, b, c = (tuple(parse_rational(x) for x in case[k]) for k in "abc")
    out = []
    if groups.compare(a, b) < 0 and not groups.compare(groups.add(a, c), groups.add(b, c)) < 0:
        out.append(_fail(case, "order compatibility"))
    if not (groups.member(groups.add(a, b), G) and groups.member(groups.negate(a), G)):
        out.append(_fail(case, "membership closure"))
    return out


def group_global_checks(names) -> list[dict]:
    """``has_min_positive`` against brute-force positives ``(0, ..., 0, i/m)``.

    Anything with a nonzero leading coordinate is larger than all of these,
    so the least positive element, when it exists, is among them.
    """
    out = []
    for name in names:
        G = parse_group(name)
        lead = (Fraction(0),) * (G.rank - 1)
        cands = sorted(
            {Fraction(i, m) for m in range(1, 1001) for i in range(1, 4)}
        )
        pos = [x for x in cands if groups.member(lead + (x,), G)]
        hm = groups.has_min_positive(G)
        if hm is None:
            # dense at the bottom: some sampled positive lies below every eps tried
            ok = all(any(x < eps for x in pos) for eps in (Fraction(1, 10), Fraction(1, 100)))
        else:
            ok = bool(pos) and lead + (pos[0],) == hm
        if not ok:
            out.append(_global_fail({"group": name}, "has_min_positive", computed=hm, least_sampled=pos[:1]))
    return out


# -- w versus t ---------------------------------------------------------------------------------


def _w_cases(rng, params):
    out = []
    for D in _backends(params, [{"disc": -12}, {"disc": -20}, {"disc": -3}, {"group": "Z[1/2]"}, {"group": "lex(Z, Z[1/2])"}]):
        for _ in range(int(params.get("samples", 100))):
            I = _random_val_ideal(rng, D) if isinstance(D, ValuationDomain) else random_ideal(D, rng, 4, 2)
            out.append({"backend": _backend_key(D), "I": ideal_dict(I)})
    return out


def _w_check(case, params):
    D = parse_backend(case["backend"])
    I = parse_ideal(case["I"], D)
    fam = [D.unit()]
    verdict = star.w_invertibility_verdict(fam, I)
    if verdict == "disagree":
        return [_fail(case, "w-approx invertible but not t-invertible")]
    c = star.w_approx_close(fam, I)
    if not (I <= c and c <= star.close(star.v_op(D), I)):
        return [_fail(case, "I <= w-approx(I) <= I^v")]
    return []


# -- registry -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    cases: object
    check: object
    global_checks: object = None
    doc: str = ""


SUITES = {
    s.name: s
    for s in [
        Suite("cut-oracle", _cut_cases, _cut_check, None,
              "valuation multiply/colon/v_closure and canonical cuts against the grid oracle"),
        Suite("lattice-oracle", _lattice_cases, _lattice_check, None,
              "order multiply/colon/v_closure against naive spans"),
        Suite("dedekind-mertens", lambda rng, p: _poly_cases(rng, p, DM_DEFAULT), _dm_check, None,
              "content identity c(f)^m c(fg) = c(f)^(m+1) c(g)"),
        Suite("gauss-v", lambda rng, p: _poly_cases(rng, p, GAUSS_V_DEFAULT, 0.4), _gauss_check_case, None,
              "c(fg)^v = (c(f)c(g))^v on integrally closed backends"),
        Suite("gauss-star", lambda rng, p: _poly_cases(rng, p, [{"disc": -12}], 0.0), _gauss_check_case, None,
              "Gauss under the meet with the maximal order"),
        Suite("star-axioms", _star_cases, _star_check,
              lambda p: [c for D in _backends(p, STAR_DEFAULT) for c in star_global_checks(D)],
              "closure axioms and the product formula for every constructible operation"),
        Suite("phi-map", _phi_cases, _phi_check, None,
              "phi on rank-one valuation domains, classes, Pic = 0"),
        Suite("transport", _transport_cases, _transport_check, None,
              "push to V/P against v-closure, v-invertibility and classes"),
        Suite("group-order", _group_cases, _group_check,
              lambda p: group_global_checks(p.get("groups", VALUATION_KINDS + ["Z[1/3]", "lex(Z, Z)"])),
              "ordered-group laws and least positive elements"),
        Suite("w-vs-t", _w_cases, _w_check, None,
              "w-approximation sandwich and invertibility verdicts"),
    ]
}

SUITE_DEFAULT_PARAMS = {
    "gauss-star": {"op": {"op": "meet", "overrings": [{"disc": -3}]}, "pairs": 100},
    "gauss-v": {"pairs": 100},
}


def run_suite(name: str, seed: int, params: dict | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    suite = SUITES[name]
    p = dict(SUITE_DEFAULT_PARAMS.get(name, {}))
    p.update(params or {})
    cases = p.pop("cases", None)
    force_globals = bool(p.pop("globals", False))
    res = SuiteResult(name, seed, params=p)
    if cases is None or force_globals:
        cases = suite.cases(random.Random(seed), p)
        if suite.global_checks is not None:
            res.failures.extend(suite.global_checks(p))
    if not cases:
        res.warnings.append("empty sample: vacuous pass")
    for case in cases:
        res.checked += 1
        res.failures.extend(suite.check(case, p))
    return res
