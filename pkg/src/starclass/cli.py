"""Command-line driver: JSON config in, deterministic JSON report out.

Exit status: 0 when every check passed, 1 when a mathematical check failed
(the report then carries a witness and a config reproducing it), 2 for a
configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import classgroups as cg
from . import content as ct
from . import star
from . import suites
from . import valuation as val
from .classgroups import ClassGroupDescriptor, IdealClass
from .groups import OrderedGroup
from .parsing import (
    ideal_dict,
    parse_backend,
    parse_ideal,
    parse_poly,
    parse_star,
)
from .quadratic import LatticeIdeal, QuadraticOrder
from .star import StarOp
from .valuation import ValIdeal, ValPrime, ValuationDomain

COMMANDS = ("closure", "invert", "gauss", "mertens", "pstarmd", "classgroup", "transport", "survey", "propsuite")
CAPS = {"k": 12, "B": 8, "norm": 10**4}


class ConfigError(ValueError):
    pass


def jsonable(x):
    """Exact values to JSON: rationals as ``"p/q"`` strings, ideals as literals."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, ValIdeal):
        return {"cut": x.cut.to_dict(), "text": str(x)}
    if isinstance(x, LatticeIdeal):
        out = ideal_dict(x)
        out["text"] = str(x)
        return out
    if isinstance(x, (IdealClass, ClassGroupDescriptor, StarOp)):
        return x.to_dict()
    if isinstance(x, ValPrime):
        return {"prime": x.k}
    if isinstance(x, (OrderedGroup, QuadraticOrder, ValuationDomain)):
        return str(x)
    if isinstance(x, ct.FieldPoly):
        return str(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _need(cfg, key):
    if key not in cfg:
        raise ConfigError(f"config is missing {key!r}")
    return cfg[key]


def _check_caps(bounds: dict):
    for k, cap in CAPS.items():
        if k in bounds:
            v = bounds[k]
            if not isinstance(v, int) or isinstance(v, bool) or v < 0 or v > cap:
                raise ConfigError(f"bound {k}={v!r} outside 0..{cap}")


# -- commands ----------------------------------------------------------------------------------


def _domain(cfg):
    return parse_backend(_need(cfg, "backend"))


def cmd_closure(cfg):
    D = _domain(cfg)
    op = parse_star(cfg.get("op", "d"), D)
    I = parse_ideal(_need(cfg, "ideal"), D)
    out = star.close(op, I)
    checks = {"contains input": I <= out, "idempotent": star.close(op, out) == out}
    return {"op": op, "input": I, "output": out, "fixed": out == I}, checks


def cmd_invert(cfg):
    D = _domain(cfg)
    I = parse_ideal(_need(cfg, "ideal"), D)
    res = {
        "ideal": I,
        "inverse": I.inverse(),
        "v_closure": I.v_closure(),
        "is_principal": I.is_principal,
        "is_divisorial": I.is_divisorial,
        "is_invertible": I.is_invertible,
        "is_v_invertible": I.is_v_invertible,
    }
    if isinstance(D, ValuationDomain) and D.rank == 1:
        res["phi"] = list(val.phi(I))
    return res, {}


def _polys(cfg, D):
    return parse_poly(_need(cfg, "f"), D), parse_poly(_need(cfg, "g"), D)


def cmd_gauss(cfg):
    D = _domain(cfg)
    f, g = _polys(cfg, D)
    op = parse_star(cfg["op"], D) if "op" in cfg else None
    r = ct.gauss_check(D, f, g, op)
    return {"f": f, "g": g, "fg": f * g, "op": op, **r}, {"c(fg) within c(f)c(g)": ct.content(D, f * g) <= ct.content(D, f) * ct.content(D, g)}


def cmd_mertens(cfg):
    D = _domain(cfg)
    f, g = _polys(cfg, D)
    r = ct.dedekind_mertens_check(D, f, g)
    return {"f": f, "g": g, **r}, {"dedekind-mertens": r["holds"]}


def _ideals(cfg, D):
    return [parse_ideal(x, D) for x in cfg.get("ideals", [])]


def cmd_pstarmd(cfg):
    D = _domain(cfg)
    op = parse_star(cfg.get("op", "v"), D)
    r = ct.pstarmd_check(op, _ideals(cfg, D))
    return {"op": op, **r}, {}


def cmd_classgroup(cfg):
    D = _domain(cfg)
    if isinstance(D, QuadraticOrder):
        return cmd_survey(cfg)
    res = {"descriptor": cg.cl_v_descriptor(D), "classes": []}
    checks = {}
    for I in _ideals(cfg, D):
        try:
            c = cg.class_of(I)
        except cg.ClassError as e:
            res["classes"].append({"ideal": I, "error": str(e)})
            continue
        via = cg.class_via_quotient(I)
        res["classes"].append({"ideal": I, "class": c, "order": cg.class_order(c), "trivial": c.is_trivial})
        checks[f"class routes agree on {I}"] = c == via
    return res, checks


def cmd_transport(cfg):
    D = _domain(cfg)
    if not isinstance(D, ValuationDomain):
        raise ConfigError("transport needs a valuation backend")
    P = ValPrime(D, int(cfg.get("prime", 1)))
    r = cg.cl_transport_check(D, P, _ideals(cfg, D))
    return {"prime": P, **r}, {"transport consistent": r["consistent"]}


def cmd_survey(cfg):
    D = _domain(cfg)
    if isinstance(D, ValuationDomain):
        prof = val.maximal_ideal_profile(D)
        return {"profile": prof, "descriptor": cg.cl_v_descriptor(D)}, {}
    bound = int(cfg.get("bounds", {}).get("norm", cfg.get("norm", 25)))
    r = cg.order_class_survey(D, bound)
    checks = {"clT_equals_clV": r["clT_equals_clV"]}
    if "agreesWithForms" in r:
        checks["pic agrees with reduced forms"] = r["agreesWithForms"]
    return r, checks


def _suite_params(cfg) -> dict:
    params = dict(cfg.get("params", {}))
    params.update(cfg.get("bounds", {}))
    if "cases" in cfg:
        params["cases"] = cfg["cases"]
    return params


def cmd_propsuite(cfg):
    name = _need(cfg, "suite")
    seed = cfg.get("seed")
    if seed is None:
        raise ConfigError("randomized suites need a seed (config 'seed' or --seed)")
    names = sorted(suites.SUITES) if name == "all" else [name]
    results, checks = [], {}
    for n in names:
        if n not in suites.SUITES:
            raise ConfigError(f"unknown suite {n!r}; known: {', '.join(sorted(suites.SUITES))}")
        r = suites.run_suite(n, int(seed), _suite_params(cfg))
        results.append(r.to_dict())
        checks[n] = r.passed
    return {"suites": results}, checks


HANDLERS = {
    "closure": cmd_closure,
    "invert": cmd_invert,
    "gauss": cmd_gauss,
    "mertens": cmd_mertens,
    "pstarmd": cmd_pstarmd,
    "classgroup": cmd_classgroup,
    "transport": cmd_transport,
    "survey": cmd_survey,
    "propsuite": cmd_propsuite,
}


def _expectations(cfg, results) -> dict:
    checks = {}
    for key, want in cfg.get("expect", {}).items():
        got = jsonable(results.get(key))
        checks[f"expect {key}"] = got == want
    return checks


def run(cfg: dict, timing: bool = False) -> tuple[dict, int]:
    """Execute one config; returns ``(report, exit status)``."""
    t0 = time.perf_counter()
    try:
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        command = _need(cfg, "command")
        if command not in HANDLERS:
            raise ConfigError(f"unknown command {command!r}; known: {', '.join(COMMANDS)}")
        _check_caps(cfg.get("bounds", {}))
        _check_caps(cfg.get("params", {}))
        results, checks = HANDLERS[command](cfg)
        checks.update(_expectations(cfg, results))
    except ValueError as e:
        # ConfigError, ParseError, StarOpError, ClassError, ContainmentError and
        # the domain-precondition errors are all ValueErrors
        return {"error": str(e), "inputs": cfg}, 2
    passed = all(checks.values())
    report = {
        "command": command,
        "inputs": cfg,
        "results": jsonable(results),
        "checks": [{"name": k, "passed": v} for k, v in checks.items()],
        "passed": passed,
    }
    if "seed" in cfg:
        report["seed"] = cfg["seed"]
    if not passed:
        report["witness"], report["repro"] = _witness(cfg, report)
    if timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    return report, 0 if passed else 1


def _witness(cfg, report):
    if cfg["command"] == "propsuite":
        for s in report["results"]["suites"]:
            if not s["passed"]:
                return s["witness"], s["repro"]
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    # a single-operation config is already minimal
    return {"failed": failed, "results": report["results"]}, cfg


def render_summary(report: dict) -> str:
    if "error" in report:
        return f"CONFIG ERROR: {report['error']}\n"
    lines = [f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for c in report["checks"]:
        lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
    if not report["passed"]:
        lines.append("  repro: " + json.dumps(report["repro"], sort_keys=True))
    return "\n".join(lines) + "\n"


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e.msg} at line {e.lineno}, column {e.colno}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="starclass",
        description="Ideal arithmetic, star operations, content identities and class groups "
        "over valuation domains and quadratic orders.",
    )
    p.add_argument("--config", help="JSON job config")
    p.add_argument("--seed", type=int, help="seed for randomized suites (overrides the config)")
    p.add_argument("--suite", help="run a property suite (or 'all') without a config")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("report", "summary"), default="report")
    p.add_argument("--timing", action="store_true", help="add wall-clock timing (breaks byte-stability)")
    p.add_argument("--list-suites", action="store_true", help="list suite names and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_suites:
        for name, s in sorted(suites.SUITES.items()):
            print(f"{name:18s} {s.doc}")
        return 0
    try:
        if args.config:
            cfg = load_config(args.config)
        elif args.suite:
            cfg = {"command": "propsuite"}
        else:
            raise ConfigError("need --config FILE or --suite NAME")
        if args.suite:
            cfg["suite"] = args.suite
            cfg.setdefault("command", "propsuite")
        if args.seed is not None:
            cfg["seed"] = args.seed
    except ConfigError as e:
        report, status = {"error": str(e)}, 2
    else:
        report, status = run(cfg, timing=args.timing)
    text = render_summary(report) if args.format == "summary" else dumps(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if status == 2:
        print(f"starclass: {report['error']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
