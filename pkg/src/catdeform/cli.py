"""Batch command-line interface: validate, cohomology, deform, bicomplex, oracle, gen.

Every command prints one JSON report (or a plain table with ``--pretty``).
Exit codes: 0 ok, 1 mathematical or validation failure, 2 input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import FieldError, field_from_spec
from .category import (
    BitensorDatum,
    CocycleError,
    DatumError,
    GroupError,
    ParseError,
    ValidationError,
    category_to_json,
    gen_function_bitensor,
    gen_grouplike_bitensor,
    gen_pointed,
    load_category,
    load_group,
    parse_category,
    validate,
)
from .category.io import dumps, read_json

OK, FAIL, INPUT = 0, 1, 2


class InputError(Exception):
    pass


class MathFailure(Exception):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


def _sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _field(args):
    if args.field is None:
        return None
    try:
        return field_from_spec(args.field)
    except FieldError as e:
        raise InputError(str(e)) from None


def _load(path, args, check=True):
    try:
        return load_category(path, field=_field(args), validate=check)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except ValidationError as e:
        raise MathFailure(str(e), {"validation": _validation_json(e.report)}) from None
    except ParseError as e:
        raise InputError(str(e)) from None
    except DatumError as e:
        raise MathFailure(f"{path}: {e}") from None


def _validation_json(rep):
    out = {"ok": rep["ok"]}
    for key in ("pentagon", "triangle"):
        if key in rep:
            out[key] = rep[key]
    if "bitensor" in rep:
        out["bitensor"] = rep["bitensor"]
    return out


def _matrix_json(field, M):
    return {
        "rows": M.rows,
        "cols": M.cols,
        "entries": [[r, c, field.format(v)] for (r, c), v in sorted(M.entries.items())],
    }


def _dump(args, payload):
    if args.dump:
        Path(args.dump).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


# -- commands ----------------------------------------------------------------

def cmd_validate(args):
    d = _load(args.path, args, check=False)
    rep = validate(d)
    result = {"kind": "bitensor" if isinstance(d, BitensorDatum) else "fusion", **_validation_json(rep)}
    if args.dump:
        base = d.base if isinstance(d, BitensorDatum) else d
        F = base.field
        _dump(args, {"F": [{"key": list(k), "matrix": [[F.format(v) for v in row] for row in blk]}
                           for k, blk in sorted(base.F.items())]})
    if not rep["ok"]:
        raise MathFailure("category fails its coherence axioms", result)
    return {"path_inputs": {"category": args.path}, "result": result}


def cmd_cohomology(args):
    from .coherence import TreeEngine
    from .complex import MAX_DEGREE, TensorComplex, cohomology

    if not 1 <= args.max_degree <= MAX_DEGREE:
        raise InputError(f"--max-degree must be in 1..{MAX_DEGREE}")
    d = _load(args.path, args)
    base = d.base if isinstance(d, BitensorDatum) else d
    cx = TensorComplex(TreeEngine(base), threads=args.threads)
    entries = cohomology(cx, args.max_degree, representatives=args.emit_representatives)
    sq = []
    for n in range(1, args.max_degree):
        sq.append({"degree": n, "zero": (cx.delta(n + 1) @ cx.delta(n)).is_zero()})
    out = []
    written = []
    for e in entries:
        row = {k: v for k, v in e.items() if k != "representatives"}
        if args.emit_representatives:
            reps = [r.to_json() for r in e["representatives"]]
            row["representatives"] = reps
            if args.out:
                Path(args.out).mkdir(parents=True, exist_ok=True)
                for i, r in enumerate(reps):
                    p = Path(args.out) / f"rep_degree{e['degree']}_{i}.json"
                    p.write_text(json.dumps(r, indent=1) + "\n", encoding="utf-8")
                    written.append(p.name)
        out.append(row)
    _dump(args, {f"delta_{n}": _matrix_json(cx.field, cx.delta(n)) for n in range(1, args.max_degree + 1)})
    result = {
        "field": cx.field.spec(),
        "degrees": out,
        "delta_squared_zero": all(s["zero"] for s in sq),
        "delta_squared": sq,
    }
    if written:
        result["files"] = written
    if not result["delta_squared_zero"]:
        raise MathFailure("delta squared is not zero", result)
    return {"path_inputs": {"category": args.path}, "result": result}


def cmd_deform(args):
    from .coherence import TreeEngine
    from .complex import (
        TensorComplex,
        cohomology,
        deformation_to_json,
        extend_to_order,
        load_cochain,
        pentagon_residual,
    )

    if args.order < 1:
        raise InputError("--order must be at least 1")
    if (args.cocycle is None) == (args.class_index is None):
        raise InputError("give exactly one of --cocycle and --class")
    d = _load(args.path, args)
    base = d.base if isinstance(d, BitensorDatum) else d
    cx = TensorComplex(TreeEngine(base), threads=args.threads)
    inputs = {"category": args.path}
    if args.cocycle is not None:
        inputs["cocycle"] = args.cocycle
        try:
            a1 = load_cochain(cx.space(3), args.cocycle)
        except FileNotFoundError:
            raise InputError(f"{args.cocycle}: no such file") from None
    else:
        reps = cohomology(cx, 3)[2]["representatives"]
        if not 0 <= args.class_index < len(reps):
            raise InputError(f"--class {args.class_index}: H^3 has {len(reps)} basis classes")
        a1 = reps[args.class_index]
    if not cx.coboundary(a1).is_zero():
        raise MathFailure("input cochain is not a cocycle", {"closed": False})
    ext = extend_to_order(cx, a1, args.order)
    cand = ext["candidate"]
    res = pentagon_residual(cand)
    obs = []
    for rep in ext["reports"]:
        obs.append({
            "order": rep["order"],
            "obstruction": rep["obstruction"].to_json(),
            "closed": rep["closed"],
            "exact": rep["exact"],
        })
    deformed = deformation_to_json(cand)
    result = {
        "requested_order": args.order,
        "reached_order": cand.order,
        "extended": ext["ok"],
        "stopped_at": ext["stopped_at"],
        "residual": res["orders"],
        "obstructions": obs,
    }
    if args.out:
        Path(args.out).write_text(dumps(deformed), encoding="utf-8")
        result["file"] = Path(args.out).name
    else:
        result["deformed"] = deformed
    _dump(args, {"a": [a.to_json() for a in cand.terms]})
    return {"path_inputs": inputs, "result": result}


def cmd_bicomplex(args):
    from .bicomplex import (
        BiComplex,
        BicomplexError,
        solve_D1,
        solve_D2,
        total_cohomology,
        verify_bicomplex,
        verify_triple,
    )

    d = _load(args.path, args)
    if not isinstance(d, BitensorDatum):
        raise InputError(f"{args.path}: not a bitensor category (no 'delta')")
    mi, mj = args.max
    if mi < 1 or mj < 1:
        raise InputError("--max needs positive bounds")
    cx = BiComplex(d, threads=args.threads)
    lo = 0 if d.biunital else 1
    try:
        dims = [{"bidegree": [i, j], "dim": cx.space(i, j).dim}
                for i in range(lo, mi + 1) for j in range(lo, mj + 1) if (i, j) != (0, 0)]
        ident = verify_bicomplex(cx, mi, mj)
        result = {"field": cx.field.spec(), "biunital": d.biunital, "dims": dims, "identities": ident}
        if args.total:
            tc = total_cohomology(cx, args.total)
            rows = []
            for e in tc:
                row = {k: v for k, v in e.items() if k != "representatives"}
                if "representatives" in e:
                    row["representatives"] = [
                        {"a": a.to_json(), "k": k.to_json(), "b": b.to_json(), "verdict": verify_triple(cx, a, k, b)}
                        for a, k, b in e["representatives"]
                    ]
                rows.append(row)
            result["total"] = rows
        for eq in args.solve or []:
            rep = solve_D1(cx) if eq == "d1" else solve_D2(cx)
            result[eq] = {
                "bidegree": rep["bidegree"],
                "dim": rep["dim"],
                "basis": [s.to_json() for s in rep["basis"]],
                "candidates": [
                    {"triple": [t.to_json() for t in c["triple"]], "verdict": c["verdict"]} for c in rep["candidates"]
                ],
            }
    except BicomplexError as e:
        raise InputError(str(e)) from None
    _dump(args, {
        f"{name}_{i}_{j}": _matrix_json(cx.field, M)
        for name, cache in (("tensor", cx._dt), ("coprod", cx._dc))
        for (i, j), M in sorted(cache.items())
    })
    bad = not ident["ok"] or any(not r["D_squared_zero"] for r in result.get("total", []))
    if bad:
        raise MathFailure("bicomplex identities fail", result)
    return {"path_inputs": {"category": args.path}, "result": result}


def _group(path):
    try:
        return load_group(path)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    except GroupError as e:
        raise InputError(f"{path}: {e}") from None


def cmd_oracle(args):
    from .oracle import group_cohomology

    g = _group(args.group)
    F = _field(args)
    if F is None:
        raise InputError("oracle needs --field")
    if not 1 <= args.max_degree <= 6:
        raise InputError("--max-degree must be in 1..6")
    rows = group_cohomology(g, F, args.max_degree)
    return {
        "path_inputs": {"group": args.group},
        "result": {"group_order": g.order, "field": F.spec(), "degrees": rows, "dims_H": [r["dim_H"] for r in rows]},
    }


def _omega(path, g, F):
    data = read_json(path)
    try:
        if data.get("group_order", g.order) != g.order:
            raise InputError(f"{path}: omega is for a group of order {data['group_order']}")
        table = {(int(v["g"]), int(v["h"]), int(v["k"])): F.parse(v["value"]) for v in data["values"]}
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise InputError(f"{path}: bad omega table ({e})") from None
    missing = [t for t in _triples(g.order) if t not in table]
    if missing:
        raise InputError(f"{path}: omega missing value at {list(missing[0])}")
    return table


def _triples(n):
    import itertools

    return itertools.product(range(n), repeat=3)


def cmd_gen(args):
    g = _group(args.group)
    F = _field(args)
    if F is None:
        raise InputError("gen needs --field")
    inputs = {"group": args.group}
    try:
        if args.kind == "pointed":
            omega = None
            if args.omega:
                inputs["omega"] = args.omega
                omega = _omega(args.omega, g, F)
            d = gen_pointed(g, F, omega, name=args.name)
        elif args.omega:
            raise InputError("--omega applies to pointed categories only")
        elif args.kind == "grouplike":
            d = gen_grouplike_bitensor(g, F, name=args.name)
        else:
            d = gen_function_bitensor(g, F, name=args.name)
    except CocycleError as e:
        raise MathFailure(f"omega is not a 3-cocycle: {e}") from None
    except ParseError as e:
        raise InputError(str(e)) from None
    data = category_to_json(d)
    # round trip through the parser so the emitted file is exactly what reloads
    d2 = parse_category(json.loads(json.dumps(data)), where="generated")
    rep = validate(d2)
    if not rep["ok"]:
        raise MathFailure("generated category fails validation", _validation_json(rep))
    text = dumps(data)
    result = {"kind": args.kind, "simples": len(d2.simples if not isinstance(d2, BitensorDatum) else d2.base.simples),
              "valid": True}
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        result["file"] = Path(args.out).name
    else:
        result["category"] = data
    return {"path_inputs": inputs, "result": result}


# -- plumbing --------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field override: Q, F<p>, Q(zeta<n>)")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--pretty", action="store_true", help="plain-text tables instead of JSON")
    common.add_argument("--out", help="output file or directory for emitted data")
    common.add_argument("--dump", help="write debug matrix dumps to this file")

    p = argparse.ArgumentParser(prog="catdeform", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"catdeform {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check coherence axioms")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("cohomology", parents=[common], help="deformation cohomology of a tensor category")
    s.add_argument("path")
    s.add_argument("--max-degree", type=int, default=3)
    s.add_argument("--emit-representatives", action="store_true")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("deform", parents=[common], help="extend a cocycle order by order")
    s.add_argument("path")
    s.add_argument("--cocycle", help="degree-3 cochain file")
    s.add_argument("--class", dest="class_index", type=int, help="index of an H^3 basis class")
    s.add_argument("--order", type=int, default=1)
    s.set_defaults(func=cmd_deform)

    s = sub.add_parser("bicomplex", parents=[common], help="bicomplex of a bitensor category")
    s.add_argument("path")
    s.add_argument("--max", type=int, nargs=2, default=[3, 3], metavar=("I", "J"))
    s.add_argument("--solve", action="append", choices=["d1", "d2"])
    s.add_argument("--total", type=int, default=0, metavar="N", help="total cohomology through degree N")
    s.set_defaults(func=cmd_bicomplex)

    s = sub.add_parser("oracle", parents=[common], help="group cohomology from the bar complex")
    s.add_argument("group")
    s.add_argument("--max-degree", type=int, default=3)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", parents=[common], help="generate a category file from a group")
    s.add_argument("kind", choices=["pointed", "grouplike", "function"])
    s.add_argument("group")
    s.add_argument("--omega", help="3-cocycle file for pointed categories")
    s.add_argument("--name")
    s.set_defaults(func=cmd_gen)
    return p


def _command_echo(args):
    skip = {"func", "threads", "pretty", "out", "dump"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _pretty(report):
    lines = [f"{report['command']['command']}: {report['status']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")

    def walk(obj, prefix):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(v, f"{prefix}.{k}" if prefix else str(k))
        elif isinstance(obj, list) and obj and all(isinstance(x, dict) for x in obj):
            keys = [k for k in obj[0] if all(not isinstance(x.get(k), dict) for x in obj)]
            cell = lambda v: json.dumps(v) if isinstance(v, list) else str(v)
            if keys:
                lines.append(f"{prefix}:")
                lines.append("  " + "\t".join(keys))
                for x in obj:
                    lines.append("  " + "\t".join(cell(x.get(k)) for k in keys))
            else:
                lines.append(f"{prefix}: {len(obj)} items")
        elif isinstance(obj, list):
            lines.append(f"{prefix}: {json.dumps(obj)[:200]}")
        else:
            lines.append(f"{prefix}: {obj}")

    walk(report.get("result", {}), "")
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None):
    """Run the CLI; returns ``(exit_code, report)``."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else INPUT), None
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    t0 = time.perf_counter()
    report = {"command": _command_echo(args), "version": __version__}
    code = OK
    try:
        out = args.func(args)
        report["status"] = "ok"
        report["inputs"] = {role: _sha256(p) for role, p in out["path_inputs"].items()}
        report["result"] = out["result"]
    except MathFailure as e:
        code = FAIL
        report["status"] = "failed"
        report["error"] = str(e)
        if e.result is not None:
            report["result"] = e.result
    except (InputError, ParseError, FieldError, GroupError) as e:
        code = INPUT
        report["status"] = "input error"
        report["error"] = str(e)
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    if args.pretty:
        stdout.write(_pretty(report))
    else:
        stdout.write(json.dumps(report, indent=1) + "\n")
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
