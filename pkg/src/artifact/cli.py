"""Command-line front end. Every subcommand prints one JSON document on stdout.

Exit codes: 0 when all checks pass, 1 when a verification fails (the report
explains which check), 2 when an input file or argument does not match its
schema (the report carries a JSON pointer to the offending value).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import jsonschema

from . import catalog as cat
from .export import CHART_NAMES, ExportError, export_obj
from .rohn22 import (BiForm22, RohnError, classify_E, classify_real, pinch_points,
                     singular_normal_form, symmetrize, to_normal_form)
from .scalar_poly import (HOM, PolyError, homog_degree, is_homogeneous, parse_poly, poly_from_json,
                          poly_str, rat, rat_str)
from .singular_analysis import (U, SingularityError, classify_tc_case, plane_section, singular_symbol,
                                witness_multiplicity)

OK, FAILED, SCHEMA = 0, 1, 2

RATIONAL = {"oneOf": [{"type": "integer"},
                      {"type": "string", "pattern": r"^\s*[-+]?\d+(\s*/\s*[1-9]\d*)?\s*$"}]}
POLY = {"type": "object", "required": ["vars", "terms"],
        "properties": {"vars": {"type": "array", "minItems": 1, "items": {"type": "string"}},
                       "terms": {"type": "array", "items": {
                           "type": "object", "required": ["c", "e"],
                           "properties": {"c": RATIONAL,
                                          "e": {"type": "array",
                                                "items": {"type": "integer", "minimum": 0}}}}}}}
POINT = {"type": "array", "minItems": 4, "maxItems": 4, "items": RATIONAL}
UPOLY = {"oneOf": [RATIONAL, {"type": "string"}, POLY]}

EQUATION_SCHEMA = POLY
WITNESS_SCHEMA = {
    "type": "object", "required": ["witnesses"],
    "properties": {"witnesses": {"type": "array", "minItems": 1, "items": {
        "type": "object", "required": ["kind"],
        "oneOf": [
            {"properties": {"kind": {"const": "line"},
                            "span": {"type": "array", "minItems": 2, "maxItems": 2, "items": POINT}},
             "required": ["span"]},
            {"properties": {"kind": {"enum": ["conic", "curve"]},
                            "param": {"type": "array", "minItems": 4, "maxItems": 4, "items": UPOLY},
                            "degree": {"type": "integer", "minimum": 1}},
             "required": ["param"]},
            {"properties": {"kind": {"const": "tc"}}},
        ]}}}}
BIFORM_SCHEMA = {"type": "object", "required": ["c"],
                 "properties": {"c": {"type": "array", "minItems": 3, "maxItems": 3, "items": {
                     "type": "array", "minItems": 3, "maxItems": 3, "items": RATIONAL}}}}


class SchemaError(Exception):
    def __init__(self, message: str, pointer: str = ""):
        super().__init__(message)
        self.pointer = pointer


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def _load(path: str, schema: dict):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not JSON: {exc.msg} at line {exc.lineno}") from exc
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(schema).iter_errors(obj))
    if err is not None:
        raise SchemaError(f"{path}: {err.message}", _pointer(err.absolute_path))
    return obj


def _emit(obj, code: int = OK) -> int:
    json.dump(obj, sys.stdout, indent=1, ensure_ascii=False)
    sys.stdout.write("\n")
    return code


def _params(pairs) -> dict:
    out = {}
    for item in pairs or ():
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise SchemaError(f"parameter {item!r} is not of the form name=value", "/param")
        try:
            out[name.strip()] = rat(value.strip())
        except (PolyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise SchemaError(f"parameter {name}: {exc}", f"/param/{name.strip()}") from exc
    return out


# -------------------------------------------------------------- catalog

def _cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for eid in cat.list_entries():
            e = cat.instantiate(eid)
            rows.append({"id": eid, "title": e.title, "status": e.status,
                         "symbol": e.expected.symbol})
        return _emit({"entries": rows})
    if args.id is None:
        raise SchemaError(f"catalog {args.action} needs an entry id", "/id")
    entry = cat.instantiate(args.id, _params(args.param))
    obj = entry.to_json()
    if args.action == "show":
        if obj["equation"] is None and entry.family is not None:
            obj["equation"] = poly_str(cat.entry_equation(entry))
        H = entry.data.get("H")
        if H is not None and "tc_case" in entry.expected.extra:
            obj["classification"] = classify_tc_case(H)
    return _emit(obj)


# ---------------------------------------------------------- verification

def _verify_one(eid: str) -> dict:
    return cat.verify_entry(eid).to_json()


def _cmd_verify(args) -> int:
    rep = cat.verify_entry(args.id, _params(args.param))
    return _emit(rep.to_json(), OK if rep.passed else FAILED)


def _cmd_verify_all(args) -> int:
    ids = cat.list_entries()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, ids))
    else:
        reports = [_verify_one(eid) for eid in ids]
    ok = all(r["pass"] for r in reports)
    summary = {"entries": len(reports), "passed": sum(r["pass"] for r in reports),
               "failed": [r["id"] for r in reports if not r["pass"]]}
    return _emit({"pass": ok, "summary": summary, "reports": reports}, OK if ok else FAILED)


def _cmd_dual(args) -> int:
    rep = cat.duality_check(args.id, _params(args.param))
    return _emit(rep.to_json(), OK if rep.passed else FAILED)


# ------------------------------------------------------ equation tools

def _equation(path: str):
    obj = _load(path, EQUATION_SCHEMA)
    if len(obj["vars"]) != 4:
        raise SchemaError("a surface equation needs four variables", "/vars")
    for k, term in enumerate(obj["terms"]):
        if len(term["e"]) != 4:
            raise SchemaError("exponent vector must have four entries", f"/terms/{k}/e")
        try:
            rat(term["c"])
        except (PolyError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(str(exc), f"/terms/{k}/c") from exc
    F = poly_from_json(obj)
    if not F:
        raise SchemaError("the equation is the zero polynomial", "/terms")
    if not is_homogeneous(F):
        raise SchemaError("the equation is not homogeneous", "/terms")
    # variables are matched to t1..t4 by position
    return sum((c * _hom_mono(m) for m, c in F.terms()), HOM.zero)


def _hom_mono(m):
    out = HOM.one
    for g, k in zip(HOM.gens, m):
        out *= g**k
    return out


def _witnesses(path: str) -> list[dict]:
    obj = _load(path, WITNESS_SCHEMA)
    out = []
    for k, w in enumerate(obj["witnesses"]):
        at = f"/witnesses/{k}"
        try:
            if w["kind"] == "line":
                out.append({"kind": "line", "span": [tuple(rat(c) for c in p) for p in w["span"]]})
            elif w["kind"] in ("conic", "curve"):
                param = [parse_poly(p, U) if isinstance(p, str) and not _is_rational(p)
                         else (poly_from_json(p) if isinstance(p, dict) else U(rat(p)))
                         for p in w["param"]]
                out.append({k2: v for k2, v in (("kind", w["kind"]), ("param", param),
                                                ("degree", w.get("degree"))) if v is not None})
            else:
                out.append({"kind": "tc"})
        except (PolyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise SchemaError(str(exc), at) from exc
    return out


def _is_rational(s: str) -> bool:
    try:
        rat(s)
    except (PolyError, ValueError, TypeError, ZeroDivisionError):
        return False
    return True


def _cmd_singular(args) -> int:
    F = _equation(args.equation)
    ws = _witnesses(args.witness)
    report = {"degree": homog_degree(F), "witnesses": []}
    for w in ws:
        try:
            r = witness_multiplicity(F, w)
            report["witnesses"].append({"kind": r.kind, "degree": r.degree,
                                        "multiplicity": r.multiplicity})
        except (PolyError, SingularityError) as exc:
            report["witnesses"].append({"kind": w["kind"], "error": str(exc)})
    try:
        sym = singular_symbol(F, ws)
    except (PolyError, SingularityError) as exc:
        report.update({"pass": False, "error": str(exc)})
        return _emit(report, FAILED)
    report.update({"pass": True, "symbol": sym.ascii(), "display": str(sym)})
    return _emit(report)


def _plane(text: str) -> tuple:
    parts = [p for p in text.split(",")]
    if len(parts) != 4:
        raise SchemaError("--plane needs four comma-separated rationals a,b,c,d", "/plane")
    try:
        c = tuple(rat(p.strip()) for p in parts)
    except (PolyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(f"--plane: {exc}", "/plane") from exc
    if not any(c):
        raise SchemaError("--plane must be nonzero", "/plane")
    return c


def _cmd_genus(args) -> int:
    F = _equation(args.equation)
    plane = _plane(args.plane)
    try:
        sec = plane_section(F, plane)
    except SingularityError as exc:
        return _emit({"pass": False, "plane": [rat_str(c) for c in plane], "error": str(exc)},
                     FAILED)
    return _emit({"pass": True, "plane": [rat_str(c) for c in plane], "degree": sec.degree,
                  "genus": sec.genus,
                  "points": [{"label": p.label, "delta": p.delta, "orbit_degree": p.orbit_degree,
                              "minpoly": p.minpoly} for p in sec.points]})


# ---------------------------------------------------------------- rohn

def _biform(path: str) -> BiForm22:
    obj = _load(path, BIFORM_SCHEMA)
    for i, row in enumerate(obj["c"]):
        for j, v in enumerate(row):
            try:
                rat(v)
            except (PolyError, ValueError, ZeroDivisionError) as exc:
                raise SchemaError(str(exc), f"/c/{i}/{j}") from exc
    try:
        return BiForm22.from_json(obj)
    except RohnError as exc:
        raise SchemaError(str(exc), "/c") from exc


def _cmd_rohn(args) -> int:
    F = _biform(args.biform)
    try:
        if args.action == "classify":
            e = classify_E(F)
            out = {"kind": e.kind, "pinch": list(pinch_points(F))}
            if e.points:
                key, l0, m0 = e.points[0]
                out["point"] = {"chart": list(key), "l": rat_str(l0), "m": rat_str(m0)}
            if e.kind not in ("smooth", "reducible-or-nonreduced"):
                out["normal_form"] = singular_normal_form(F).to_json()
            return _emit(out)
        if args.action == "symmetrize":
            return _emit(symmetrize(F).to_json())
        if args.action == "normal-form":
            sym = symmetrize(F)
            if not sym.exact or sym.sign != 1:
                return _emit({"pass": False, "symmetrize": sym.to_json(),
                              "error": "no exact symmetric form over the rationals"}, FAILED)
            nf = to_normal_form(sym.G)
            return _emit({"symmetrize": sym.to_json(), "normal_form": nf.to_json()})
        return _emit(classify_real(F).to_json())
    except RohnError as exc:
        return _emit({"pass": False, "error": str(exc)}, FAILED)


# -------------------------------------------------------------- export

def _cmd_export(args) -> int:
    chart = None
    if args.chart is not None:
        chart = CHART_NAMES.index(args.chart)
    try:
        mesh = export_obj(args.id, _params(args.param), args.samples, chart, args.clip, args.out)
    except ExportError as exc:
        return _emit({"pass": False, "id": args.id, "error": str(exc)}, FAILED)
    return _emit({"pass": True, "id": mesh.entry_id, "out": args.out,
                  "segments": len(mesh.segments), "samples": mesh.samples,
                  "chart": f"{mesh.chart_name}=1", "clip": mesh.clip,
                  "max_residual": mesh.max_residual})


# -------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ruledquartic",
                                description="Exact tools for ruled cubic and quartic surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_params(sp):
        sp.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="override a catalog parameter (repeatable)")

    c = sub.add_parser("catalog", help="list, show or instantiate catalog entries")
    c.add_argument("action", choices=("list", "show", "instantiate"))
    c.add_argument("id", nargs="?")
    with_params(c)
    c.set_defaults(func=_cmd_catalog)

    v = sub.add_parser("verify", help="run every check for one entry")
    v.add_argument("id")
    with_params(v)
    v.set_defaults(func=_cmd_verify)

    va = sub.add_parser("verify-all", help="verify every catalog entry")
    va.add_argument("--jobs", type=int, default=1, help="worker processes")
    va.set_defaults(func=_cmd_verify_all)

    d = sub.add_parser("dual", help="compare the dual surface with its catalog partner")
    d.add_argument("id")
    with_params(d)
    d.set_defaults(func=_cmd_dual)

    s = sub.add_parser("singular", help="certify a singular locus from witnesses")
    s.add_argument("--equation", required=True)
    s.add_argument("--witness", required=True)
    s.set_defaults(func=_cmd_singular)

    g = sub.add_parser("genus", help="genus of a plane section")
    g.add_argument("--equation", required=True)
    g.add_argument("--plane", required=True, metavar="a,b,c,d")
    g.set_defaults(func=_cmd_genus)

    r = sub.add_parser("rohn", help="(2,2) biform tools")
    r.add_argument("action", choices=("classify", "symmetrize", "normal-form", "real-case"))
    r.add_argument("--biform", required=True)
    r.set_defaults(func=_cmd_rohn)

    e = sub.add_parser("export-obj", help="write sampled ruling lines as OBJ")
    e.add_argument("id")
    e.add_argument("--samples", type=int, default=64)
    e.add_argument("--out", required=True)
    e.add_argument("--chart", choices=CHART_NAMES)
    e.add_argument("--clip", type=float, default=2.0)
    with_params(e)
    e.set_defaults(func=_cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return SCHEMA if exc.code else OK
    try:
        return args.func(args)
    except SchemaError as exc:
        return _emit({"error": str(exc), "pointer": exc.pointer}, SCHEMA)
    except cat.ConstraintError as exc:
        return _emit({"error": str(exc), "pointer": "/param"}, SCHEMA)
    except cat.CatalogError as exc:
        return _emit({"error": str(exc), "pointer": "/id"}, SCHEMA)


if __name__ == "__main__":
    sys.exit(main())
