"""Command line front end: load algebras or racks from JSON, run check batteries,
write a JSON report.  Exit status 0 iff every check passed.

    rackbialg rack-check --input catalog:sq2 --degree-cap 2
    rackbialg report --input algebra.json --output report.json
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from types import SimpleNamespace

from .errors import ParseError, RackBialgError
from .foundation import CheckResult, HPoly, _jsonable, coeff_to_json, parse_scalar
from .leibniz import (LeibnizAlgebra, catalog, catalog_names, is_two_sided_ideal, jacobi_violations,
                      leibniz_violations, left_center, quotient, squares_ideal)

COMMANDS = ("validate", "ideals", "rack-check", "star", "cohomology", "lp-check", "report")


# ---------------------------------------------------------------------------
# ingest

def _algebra_from_json(data, pointer="") -> LeibnizAlgebra:
    if isinstance(data, str):
        return _catalog_entry(data, pointer)
    if not isinstance(data, dict):
        raise ParseError("algebra must be an object", pointer)
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("'dim' must be a positive integer", f"{pointer}/dim")
    names = data.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != dim):
        raise ParseError(f"'names' must be a list of {dim} strings", f"{pointer}/names")
    entries = data.get("c", [])
    if not isinstance(entries, list):
        raise ParseError("'c' must be a list of [i, j, k, coeff]", f"{pointer}/c")
    c = {}
    for t, item in enumerate(entries):
        p = f"{pointer}/c/{t}"
        if not isinstance(item, list) or len(item) != 4:
            raise ParseError("structure constant must be [i, j, k, coeff]", p)
        for s, idx in enumerate(item[:3]):
            if not isinstance(idx, int) or isinstance(idx, bool) or not 1 <= idx <= dim:
                raise ParseError(f"index must be an integer in 1..{dim}", f"{p}/{s}")
        try:
            v = parse_scalar(item[3])
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient: {exc}", f"{p}/3") from None
        key = (item[0] - 1, item[1] - 1, item[2] - 1)
        c[key] = c.get(key, 0) + v
    # the identity is checked by the battery, not at load time
    return LeibnizAlgebra(dim, c, names, check=False)


def _catalog_entry(spec: str, pointer=""):
    name = spec.split(":", 1)[1] if spec.startswith("catalog:") else spec
    if name not in catalog_names():
        raise ParseError(f"unknown catalog algebra {name!r}", pointer)
    return catalog(name)


def _rack_from_json(data, pointer=""):
    size = data.get("size")
    if not isinstance(size, int) or size < 1:
        raise ParseError("'size' must be a positive integer", f"{pointer}/size")
    unit = data.get("unit")
    if not isinstance(unit, int) or not 0 <= unit < size:
        raise ParseError(f"'unit' must be an integer in 0..{size - 1}", f"{pointer}/unit")
    op = data.get("op")
    if not isinstance(op, list) or len(op) != size:
        raise ParseError(f"'op' must be a {size}x{size} table", f"{pointer}/op")
    for i, row in enumerate(op):
        if not isinstance(row, list) or len(row) != size:
            raise ParseError(f"row must have {size} entries", f"{pointer}/op/{i}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < size:
                raise ParseError(f"entry must be in 0..{size - 1}", f"{pointer}/op/{i}/{j}")
    # not yet a FiniteRack: the axioms are a check, not a parse error
    return SimpleNamespace(kind="rack", size=size, unit=unit, op=op, names=[str(i) for i in range(size)])


def _star_from_json(data):
    from .starprod import PolyFun
    h = _algebra_from_json(data["algebra"], "/algebra")
    out = SimpleNamespace(kind="star", algebra=h)
    for key in ("f", "g"):
        if key not in data:
            raise ParseError(f"missing polynomial {key!r}", f"/{key}")
        setattr(out, key, PolyFun.from_json(h.dim, data[key], f"/{key}"))
    return out


def ingest(spec: str):
    """Parse ``catalog:NAME`` or a JSON file into an algebra, rack or star input."""
    if spec.startswith("catalog:"):
        return _catalog_entry(spec)
    try:
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {spec}: {exc.strerror}", "") from None
    try:
        data = json.loads(text, parse_float=lambda s: (_ for _ in ()).throw(ValueError(s)))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", "") from None
    except ValueError as exc:
        raise ParseError(f"floats are not allowed, write {exc} as a \"p/q\" string", "") from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", "")
    if "algebra" in data:
        return _star_from_json(data)
    if "op" in data:
        return _rack_from_json(data)
    if "dim" in data:
        return _algebra_from_json(data)
    raise ParseError("cannot tell the input kind (need 'dim', 'op' or 'algebra')", "")


def _algebra_of(obj):
    return obj.algebra if getattr(obj, "kind", None) == "star" else obj


def _is_rack(obj):
    return getattr(obj, "kind", None) == "rack"


# ---------------------------------------------------------------------------
# tasks: module-level so they pickle for --parallel; each returns (checks, data)

def task_validate(h):
    res = CheckResult("Leibniz identity")
    bad = leibniz_violations(h)
    res.checked = h.dim ** 3
    res.nfailed = len(bad)
    res.failures = [{"triple": list(t[:3]), "lhs": list(t[3]), "rhs": list(t[4])} for t in bad[:5]]
    return [res], {"dim": h.dim, "is_lie": h.is_lie() if not bad else False}


def task_ideals(h):
    Q, Z = squares_ideal(h), left_center(h)
    checks = []
    inc = CheckResult("Q(h) ⊆ z(h)")
    inc.record(Q <= Z, {"Q": Q.basis, "z": Z.basis})
    checks.append(inc)
    data = {"Q": Q.basis, "z": Z.basis}
    for label, sub in (("Q(h)", Q), ("z(h)", Z)):
        r = CheckResult(f"{label} two-sided ideal")
        r.record(is_two_sided_ideal(h, sub), sub.basis)
        checks.append(r)
        q = quotient(h, sub)
        lie = CheckResult(f"h/{label} is a Lie algebra")
        bad = jacobi_violations(q.lie)
        lie.checked = q.lie.dim ** 3
        lie.nfailed = len(bad)
        lie.failures = bad[:5]
        checks.append(lie)
        data[f"quotient by {label}"] = q.lie.to_json()
    return checks, data


def task_uar(h, k, filtration):
    from .rackcore import induced_rack_product, uar, verify_augmented, verify_rack_axioms, yd_check
    A = uar(h, k, filtration=filtration)
    B = A.stored()
    checks = []
    for rep in (verify_rack_axioms(B), verify_augmented(A), yd_check(A)):
        checks.extend(rep.checks)
    same = CheckResult("induced product matches the formula table")
    same.record(induced_rack_product(A).table_equal(B))
    checks.append(same)
    zc = CheckResult("product independent of z (Q(h) vs z(h))")
    Az = uar(h, k, z=left_center(h), filtration=filtration)
    zc.record(induced_rack_product(Az).table_equal(B))
    checks.append(zc)
    return checks, {"basis": [list(m) for m in B.labels], "degree_cap": k}


def task_yang_baxter(h, k):
    from .rackcore import uar_rack, yang_baxter_check
    return yang_baxter_check(uar_rack(h, k)).checks, {}


def _finite_rack(X):
    from .rackcore import FiniteRack
    return FiniteRack(X.size, X.op, X.unit)


def task_rack(X):
    from .rackcore import from_finite_rack, rack_violations, verify_rack_axioms, yang_baxter_check
    ax = CheckResult("rack axioms of the table")
    bad = rack_violations(X)
    ax.checked = 1
    ax.nfailed = len(bad)
    ax.failures = bad[:5]
    if bad:
        return [ax], {}
    B = from_finite_rack(_finite_rack(X))
    return [ax] + verify_rack_axioms(B).checks + yang_baxter_check(B).checks, {"size": X.size}


def task_star(h, f, g, order):
    from .starprod import poisson, star
    r = star(h, f, g)
    pb = poisson(h, f, g)
    chk = CheckResult("ħ¹ coefficient of f▷g equals -{f,g}")
    lhs = r.hbar_coefficient(1)
    chk.record(lhs == -pb, {"hbar1": lhs.to_json(), "poisson": pb.to_json()})
    return [chk], {"result": r.to_json()["terms"], "poisson": pb.to_json()["terms"]}


def task_star_battery(h, order, seed):
    from .starprod import exp_compat_check, intertwining_check, poisson_relation_check, scaling_check
    checks = []
    checks += poisson_relation_check(h, samples=100, seed=seed).checks
    checks += intertwining_check(h, 3).checks
    checks += scaling_check(h, 3, 3).checks
    n = h.dim
    exp = CheckResult(f"exponential compatibility, basis pairs, M = D = {order}")
    for i in range(n):
        for j in range(n):
            x = [int(t == i) for t in range(n)]
            y = [int(t == j) for t in range(n)]
            rep = exp_compat_check(h, x, y, order, order)
            exp.record(rep.passed, (i + 1, j + 1))
    checks.append(exp)
    return checks, {"seed": seed, "samples": 100}


def _cohomology_target(obj, k):
    from .rackcore import from_finite_rack, uar_rack
    if _is_rack(obj):
        return from_finite_rack(_finite_rack(obj))
    return uar_rack(obj, k)


def task_cohomology(obj, k, n):
    from .defcohom import cohomology, coderivation_space, verify_relations
    R = _cohomology_target(obj, k)
    rep = verify_relations(R, n)
    checks = [CheckResult(f"n={n}: {c.name}", c.checked, c.failures) for c in rep.checks]
    for c, src in zip(checks, rep.checks):
        c.nfailed = src.nfailed
    z, b, hn = cohomology(R, n)
    return checks, {f"n={n}": {"coderivations": len(coderivation_space(R, n)), "cocycles": z,
                               "coboundaries": b, "H": hn}}


def task_mu_n(obj, k):
    from .defcohom import mu_n_properties
    return mu_n_properties(_cohomology_target(obj, k), 3).checks, {}


def task_lp(h, filtration):
    from .lodpir import (TensorRack, f_identity_check, gamma_checks, lp_submodule_check,
                         primitive_bracket_check, tensor_rack_bialgebra)
    from .rackcore import verify_rack_axioms
    T = TensorRack(h)
    checks = []
    checks += f_identity_check(T.g, filtration).checks
    checks += gamma_checks(h, 2, min(filtration, 2)).checks
    checks += primitive_bracket_check(h).checks
    checks += lp_submodule_check(h, 1).checks
    B = tensor_rack_bialgebra(T, 1)
    checks += [CheckResult(f"B ⊗ U(g): {c.name}", c.checked, c.failures) for c in verify_rack_axioms(B).checks]
    return checks, {"dim_g": T.g.dim}


def battery(command, obj, cfg):
    """List of (label, function, args) for one input."""
    k, M, fil, seed = cfg.degree_cap, cfg.hbar_order, cfg.filtration_cap, cfg.seed
    if _is_rack(obj):
        plan = {
            "rack-check": [("rack", task_rack, (obj,))],
            "cohomology": [("cohomology", task_cohomology, (obj, k, n)) for n in (1, 2)],
        }
        plan["report"] = plan["rack-check"] + plan["cohomology"]
        if command not in plan:
            raise ParseError(f"command {command!r} needs an algebra, got a rack", "")
        return plan[command]
    h = _algebra_of(obj)
    if command == "star":
        from .starprod import PolyFun
        f = getattr(obj, "f", None) or PolyFun.coord(h.dim, 0)
        g = getattr(obj, "g", None) or PolyFun.coord(h.dim, 0)
        return [("star", task_star, (h, f, g, M)), ("star battery", task_star_battery, (h, M, seed))]
    plans = {
        "validate": [],
        "ideals": [("ideals", task_ideals, (h,))],
        "rack-check": [("uar", task_uar, (h, k, fil)), ("yang-baxter", task_yang_baxter, (h, min(k, 2)))],
        "cohomology": [("cohomology", task_cohomology, (h, k, n)) for n in (1, 2)]
                      + [("mu_n", task_mu_n, (h, k))],
        "lp-check": [("lp", task_lp, (h, fil))],
    }
    if command == "report":
        from .starprod import PolyFun
        a = PolyFun.coord(h.dim, 0)
        tail = (plans["ideals"] + plans["rack-check"]
                + [("star", task_star, (h, a, a, M)), ("star battery", task_star_battery, (h, M, seed))]
                + plans["cohomology"] + plans["lp-check"])
    else:
        tail = plans[command]
    return [("validate", task_validate, (h,))] + tail


def _check_record(c: CheckResult, wall, label):
    first = _jsonable_tree(c.failures[0]) if c.failures else None
    return {"name": c.name, "group": label, "status": "pass" if c.passed else "fail",
            "count": c.checked, "failed": c.nfailed, "counterexample": first, "wall_time": wall}


def _run_task(item):
    label, fn, args = item
    t = time.perf_counter()
    try:
        checks, data = fn(*args)
    except RackBialgError as exc:
        bad = CheckResult(f"{label} raised {type(exc).__name__}")
        bad.record(False, str(exc))
        checks, data = [bad], {}
    return checks, data, time.perf_counter() - t


def run(cfg) -> dict:
    """Run the configured command on every input; returns the report dict."""
    checks, results = [], {}
    for spec in cfg.inputs:
        obj = ingest(spec)
        plan = battery(cfg.command, obj, cfg)
        first, rest = (plan[:1], plan[1:]) if plan and plan[0][0] == "validate" else ([], plan)
        outs = [_run_task(it) for it in first]
        # an algebra that is not Leibniz gets no further checks
        if all(all(c.passed for c in o[0]) for o in outs):
            if cfg.parallel and len(rest) > 1:
                with ProcessPoolExecutor() as pool:
                    outs += list(pool.map(_run_task, rest))
            else:
                outs += [_run_task(it) for it in rest]
        data = {}
        for (label, _, _), (cs, d, wall) in zip(first + rest, outs):
            w = round(wall, 4) if cfg.timings else None
            checks += [dict(_check_record(c, w, label), input=spec) for c in cs]
            for key, v in d.items():
                data[f"{label}: {key}"] = v
        results[spec] = _jsonable_tree(data)
    ok = all(c["status"] == "pass" for c in checks)
    return {
        "command": cfg.command,
        "config": {"degree_cap": cfg.degree_cap, "hbar_order": cfg.hbar_order,
                   "filtration_cap": cfg.filtration_cap, "seed": cfg.seed, "inputs": list(cfg.inputs)},
        "status": "pass" if ok else "fail",
        "checks": checks,
        "results": results,
        "warning": None if checks else "empty battery: no checks ran",
    }


def _jsonable_tree(x):
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: _jsonable_tree(v) for k, v in x.items()}
        return _jsonable(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable_tree(v) for v in x]
    if isinstance(x, (Fraction, HPoly)):
        return coeff_to_json(x)
    return x


def emit_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="rackbialg", description="rack bialgebra checks for Leibniz algebras")
    p.add_argument("cmd", nargs="?", choices=COMMANDS, help="command (or use --command)")
    p.add_argument("--command", choices=COMMANDS)
    p.add_argument("--input", action="append", default=None,
                   help="JSON file or catalog:NAME; repeatable (default catalog:sq2)")
    p.add_argument("--degree-cap", type=int, default=1)
    p.add_argument("--hbar-order", type=int, default=4)
    p.add_argument("--filtration-cap", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--output")
    p.add_argument("--timings", action="store_true", help="record wall times (breaks byte-for-byte determinism)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command or args.cmd
    if command is None:
        parser.error("a command is required")
    for flag in ("degree_cap", "hbar_order", "filtration_cap"):
        if getattr(args, flag) < 1:
            parser.error(f"--{flag.replace('_', '-')} must be at least 1")
    cfg = SimpleNamespace(command=command, inputs=args.input or ["catalog:sq2"],
                          degree_cap=args.degree_cap, hbar_order=args.hbar_order,
                          filtration_cap=args.filtration_cap, seed=args.seed,
                          parallel=args.parallel, timings=args.timings)
    random.seed(cfg.seed)
    try:
        report = run(cfg)
        code = 0 if report["status"] == "pass" else 1
    except ParseError as exc:
        report = {"command": command, "status": "fail", "checks": [],
                  "error": {"type": "ParseError", "message": exc.message,
                            "pointer": getattr(exc, "pointer", "")}}
        code = 2
    text = emit_report(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == 2:
        print(f"error: {report['error']['pointer'] or '/'}: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
