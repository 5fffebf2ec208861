"""Command-line front end: JSON documents in, JSON or SVG out.

Exit codes: 0 success, 1 constraint or domain failure, 2 usage or parse
failure.

A pants document looks like::

    {"schema_version": "1", "mode": "lr", "values": [l1, l2, l3, r1, r2, r3]}

with ``"mode": "la"`` taking ``[l1, l2, l3, a1, a2, a3]`` instead.
``schema_version`` may be omitted and defaults to ``"1"``.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np
from jsonschema import Draft202012Validator

from . import assembly, development, metric, params, teich

SCHEMA_VERSION = "1"

PANTS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "mode": {"enum": ["lr", "la"]},
        "values": {"type": "array", "items": {"type": "number"}, "minItems": 6, "maxItems": 6},
    },
    "required": ["mode", "values"],
    "additionalProperties": False,
}

_SLOT = {
    "type": "array",
    "prefixItems": [{"type": "integer", "minimum": 0}, {"type": "integer", "minimum": 1, "maximum": 3}],
    "minItems": 2,
    "maxItems": 2,
}
GLUING_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "pants": {"type": "array", "items": PANTS_SCHEMA, "minItems": 1},
        "pairings": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_SLOT, _SLOT], "minItems": 2, "maxItems": 2},
        },
    },
    "required": ["pants", "pairings"],
    "additionalProperties": False,
}

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


def canon(x):
    """Shortest round-trip form; integral floats print as integers."""
    x = float(x)
    if x.is_integer() and abs(x) < 2 ** 53:
        return int(x)
    return x


def _dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as f:
                text = f.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc


def _check_schema(doc, schema, what):
    errors = sorted(Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        lines = [f"{'/'.join(map(str, e.path)) or '<root>'}: {e.message}" for e in errors[:20]]
        raise UsageError(f"invalid {what} document:\n  " + "\n  ".join(lines))


def _check_values(values):
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"values must be finite, got {values}")


def canonical_pants(doc):
    return {"schema_version": SCHEMA_VERSION, "mode": doc["mode"], "values": [canon(v) for v in doc["values"]]}


def load_pants(path):
    doc = _read_json(path)
    _check_schema(doc, PANTS_SCHEMA, "pants")
    _check_values(doc["values"])
    return canonical_pants(doc)


def _to_lr(doc, eps):
    """LengthRadiusParams from a canonical pants document, raising DomainError if invalid."""
    if doc["mode"] == "lr":
        return params.LengthRadiusParams.from_values(doc["values"])
    p = params.DistanceParams.from_values(doc["values"])
    verdict = params.validate_la(p, eps)
    if not verdict:
        raise DomainError("invalid distance parameters", {"violations": _violations(verdict)})
    return params.la_to_lr(p, eps)


def _violations(verdict):
    return [{"code": v.code, "message": v.message} for v in verdict.violations]


def _degeneracy(rep):
    return {
        "triangle_degenerate": rep.triangle_degenerate,
        "triangle_index": rep.triangle_index,
        "degenerate_rectangles": sorted(rep.degenerate_rectangles),
        "pants_degenerate": rep.pants_degenerate,
    }


def _location(rep):
    out = {"kind": rep.singularity_location}
    if rep.boundary_index is not None:
        out["boundary"] = rep.boundary_index
    return out


def _build_lr(doc, eps):
    """Validated, non-degenerate LengthRadiusParams or DomainError."""
    p = _to_lr(doc, eps)
    rep = params.classify(p, eps)
    verdict = params.validate_lr(p, eps)
    if rep.pants_degenerate:
        raise DomainError(rep.describe(), {"violations": _violations(verdict), "degeneracy": _degeneracy(rep)})
    if not verdict:
        raise DomainError("invalid parameters", {"violations": _violations(verdict)})
    return p


# --- commands --------------------------------------------------------------


def cmd_validate(args):
    doc = load_pants(args.input)
    out = {"schema_version": SCHEMA_VERSION, "input": doc}
    if doc["mode"] == "lr":
        p = params.LengthRadiusParams.from_values(doc["values"])
        verdict = params.validate_lr(p, args.eps)
    else:
        la = params.DistanceParams.from_values(doc["values"])
        verdict = params.validate_la(la, args.eps)
        p = params.LengthRadiusParams.from_values(params.la_to_lr_array(la.values, args.eps)[0])
    rep = params.classify(p, args.eps)
    out.update(valid=verdict.valid, violations=_violations(verdict),
               degeneracy=_degeneracy(rep), singularity=_location(rep))
    return out, EXIT_OK if verdict else EXIT_DOMAIN


def cmd_convert(args):
    doc = load_pants(args.input)
    if doc["mode"] == "lr":
        p = params.LengthRadiusParams.from_values(doc["values"])
        verdict = params.validate_lr(p, args.eps)
        if not verdict:
            raise DomainError("invalid parameters", {"violations": _violations(verdict)})
        result = {"mode": "la", "values": list(params.lr_to_la(p, args.eps).values)}
    else:
        p = params.DistanceParams.from_values(doc["values"])
        verdict = params.validate_la(p, args.eps)
        if not verdict:
            raise DomainError("invalid parameters", {"violations": _violations(verdict)})
        result = {"mode": "lr", "values": list(params.la_to_lr(p, args.eps).values)}
    return {"schema_version": SCHEMA_VERSION, "input": doc, **canonical_pants(result)}, EXIT_OK


def _pt(q):
    return [canon(float(c)) for c in q]


def development_dump(dev):
    cone = development.cone_angle(dev)
    pt = _pt
    return {
        "triangle": [pt(s) for s in dev.triangle],
        "rectangles": [
            {"index": R.index, "corners": [pt(c) for c in R.corners],
             "width": canon(R.width), "height": canon(R.height), "collapsed": R.collapsed}
            for R in dev.rectangles
        ],
        "identifications": [
            {"index": I.index, "first": [pt(c) for c in I.first], "second": [pt(c) for c in I.second],
             "length": canon(I.length), "collapsed": I.collapsed}
            for I in dev.identifications
        ],
        "cone_angle": canon(cone.total_angle),
        "cone_angle_over_pi": canon(cone.total_angle / math.pi),
        "curvature": canon(cone.curvature),
        "location": {"kind": cone.location, **({"boundary": cone.boundary_index} if cone.boundary_index else {})},
    }


def cmd_build(args):
    doc = load_pants(args.input)
    p = _build_lr(doc, args.eps)
    dev = development.build(p, args.eps)
    out = {"schema_version": SCHEMA_VERSION, "input": doc, "development": development_dump(dev)}
    if args.svg:
        _write(args.svg, development.emit_svg(dev))
    if args.json:
        _write(args.json, _dump(out))
    return out, EXIT_OK


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _positive(name):
    def parse(text):
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be a number, got {text!r}")
        if not (math.isfinite(value) and value > 0):
            raise argparse.ArgumentTypeError(f"{name} must be positive and finite, got {text!r}")
        return value
    return parse


def _triangle_audit(g, n_triples, seed):
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, g.n_nodes, size=n_triples) for _ in range(3))
    src = np.unique(np.concatenate([x, y]))
    table = g.distances_from(src)
    row = {int(s): k for k, s in enumerate(src)}
    dx = table[[row[int(i)] for i in x]]
    dy = table[[row[int(i)] for i in y]]
    idx = np.arange(n_triples)
    lhs = dx[idx, z]
    rhs = dx[idx, y] + dy[idx, z]
    bad = int(np.sum(lhs > rhs * (1 + 1e-12)))
    return {"triples": n_triples, "seed": seed, "violations": bad}


def cmd_measure(args):
    doc = load_pants(args.input)
    p = _build_lr(doc, args.eps)
    try:
        g = metric.build_graph(development.build(p, args.eps), args.h)
    except ValueError as exc:
        raise UsageError(f"--h: {exc}") from exc
    rep = metric.measure_graph(g)
    ok = rep.within(args.tol)
    out = {
        "schema_version": SCHEMA_VERSION,
        "input": doc,
        "h": canon(rep.h),
        "tolerance": canon(args.tol),
        "cone_to_boundary": [
            {"boundary": i + 1, "declared": canon(rep.declared_r[i]),
             "measured": canon(rep.measured_r[i]), "relative_error": canon(rep.r_errors[i])}
            for i in range(3)
        ],
        "boundary_to_boundary": [
            {"pair": [(i + 1) % 3 + 1, (i + 2) % 3 + 1], "declared": canon(rep.declared_a[i]),
             "measured": canon(rep.measured_a[i]), "relative_error": canon(rep.a_errors[i])}
            for i in range(3)
        ],
        "graph": {"nodes": g.n_nodes, "edges": int(g.adjacency.nnz // 2)},
        "triangle_audit": _triangle_audit(g, args.triples, args.seed),
        "within_tolerance": ok,
    }
    return out, EXIT_OK if ok else EXIT_DOMAIN


def cmd_distance(args):
    a, b = load_pants(args.first), load_pants(args.second)
    p, q = _build_lr(a, args.eps), _build_lr(b, args.eps)
    try:
        value = metric.structure_distance(p, q, n_pairs=args.pairs, seed=args.seed, h=args.h, rel_eps=args.eps)
    except params.ConstraintError as exc:
        raise DomainError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = {"schema_version": SCHEMA_VERSION, "input": [a, b], "pairs": args.pairs,
           "seed": args.seed, "structure_distance": canon(value)}
    return out, EXIT_OK


def _six(values, what):
    if len(values) != 6:
        raise UsageError(f"{what} needs 6 numbers, got {len(values)}")
    _check_values(values)
    return [canon(v) for v in values]


def cmd_teich(args):
    out = {"schema_version": SCHEMA_VERSION}
    if args.teich_cmd in ("membership", "stratum"):
        x = _six(args.values, args.teich_cmd)
        out["input"] = x
        m = teich.membership(x, args.eps)
        if args.teich_cmd == "membership":
            out.update(status=m.status, stratum=m.stratum.as_dict(), violations=_violations(m))
        else:
            out.update(m.stratum.as_dict(), status=m.status)
        return out, EXIT_OK if m.is_member else EXIT_DOMAIN

    if args.teich_cmd == "segment":
        if len(args.values) != 12:
            raise UsageError(f"segment needs 12 numbers (two 6-tuples), got {len(args.values)}")
        x, y = _six(args.values[:6], "x"), _six(args.values[6:], "y")
        out["input"] = {"x": x, "y": y, "n": args.n}
        try:
            ok = teich.segment_in_B(x, y, args.n, args.eps)
        except params.ConstraintError as exc:
            raise DomainError(str(exc), {"violations": _violations(exc)}) from exc
        out["in_B"] = ok
        return out, EXIT_OK if ok else EXIT_DOMAIN

    x = _six(args.values, "contract")
    base = _six(args.base, "base") if args.base else list(teich.BASEPOINT)
    out["input"] = {"x": x, "t": canon(args.t), "base": [canon(b) for b in base]}
    try:
        y = teich.contract(x, args.t, base, args.eps)
    except params.ConstraintError as exc:
        raise DomainError(str(exc), {"violations": _violations(exc)}) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    m = teich.membership(y, args.eps)
    out.update(point=[canon(v) for v in y], status=m.status)
    return out, EXIT_OK if m.is_member else EXIT_DOMAIN


def cmd_glue(args):
    doc = _read_json(args.input)
    _check_schema(doc, GLUING_SCHEMA, "gluing")
    for pdoc in doc["pants"]:
        _check_values(pdoc["values"])
    pants_docs = [canonical_pants(d) for d in doc["pants"]]
    canonical = {"schema_version": SCHEMA_VERSION, "pants": pants_docs,
                 "pairings": [[list(a), list(b)] for a, b in doc["pairings"]]}
    pants = [_build_lr(d, args.eps) for d in pants_docs]
    spec = assembly.GluingSpec(pants, doc["pairings"])
    try:
        glued = assembly.glue(spec, args.eps)
    except assembly.GluingError as exc:
        raise DomainError(str(exc)) from exc
    genus = glued.surface.genus
    feas = assembly.decomposition_feasible(genus, len(glued.cone_angles)) if genus >= 2 else None
    ok = abs(glued.residual) < args.residual_tol
    out = {
        "schema_version": SCHEMA_VERSION,
        "input": canonical,
        "genus": genus,
        "cone_angles": [canon(t) for t in glued.cone_angles],
        "cone_angles_over_pi": [canon(t / math.pi) for t in glued.cone_angles],
        "gauss_bonnet_residual": canon(glued.residual),
        "feasibility": None if feas is None else {"verdict": feas.verdict.value, "reason": feas.reason},
    }
    return out, EXIT_OK if ok else EXIT_DOMAIN


def make_parser():
    parser = argparse.ArgumentParser(
        prog="flatpants",
        description="Flat pairs of pants with one cone point. "
        "Values are ordered (l1,l2,l3,r1,r2,r3) in lr mode and (l1,l2,l3,a1,a2,a3) in la mode.",
    )
    parser.add_argument("--eps", type=_positive("--eps"), default=params.REL_EPS,
                        help="relative equality tolerance (default %(default)g)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a pants document against all constraints")
    p.add_argument("input", help="pants JSON document, '-' for stdin")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", help="convert between lr and la parameters")
    p.add_argument("input")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("build", help="build the planar development")
    p.add_argument("input")
    p.add_argument("--svg", help="write the development as SVG to this path")
    p.add_argument("--json", help="write the development dump as JSON to this path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("measure", help="measure distances on a sampled graph")
    p.add_argument("input")
    p.add_argument("--h", type=_positive("--h"), default=None,
                   help="sample spacing (default min(l, positive r)/20)")
    p.add_argument("--seed", type=int, default=0, help="seed for the triangle-inequality audit")
    p.add_argument("--triples", type=int, default=200, help="number of audited node triples")
    p.add_argument("--tol", type=_positive("--tol"), default=metric.MESH_TOLERANCE,
                   help="relative mesh tolerance (default %(default)g)")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("distance", help="sup-distance estimate between two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--h", type=_positive("--h"), default=None)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("teich", help="queries on the parameter set B")
    tsub = p.add_subparsers(dest="teich_cmd", required=True)
    for name in ("membership", "stratum"):
        t = tsub.add_parser(name)
        t.add_argument("values", type=float, nargs="+", help="l1 l2 l3 a1 a2 a3")
    t = tsub.add_parser("segment")
    t.add_argument("values", type=float, nargs="+", help="x (6 numbers) then y (6 numbers)")
    t.add_argument("--n", type=int, default=100)
    t = tsub.add_parser("contract")
    t.add_argument("values", type=float, nargs="+", help="l1 l2 l3 a1 a2 a3")
    t.add_argument("--t", type=float, required=True)
    t.add_argument("--base", type=float, nargs=6, default=None)
    p.set_defaults(func=cmd_teich)

    p = sub.add_parser("glue", help="glue pants into a closed surface and audit Gauss-Bonnet")
    p.add_argument("input")
    p.add_argument("--residual-tol", type=_positive("--residual-tol"), default=1e-9)
    p.set_defaults(func=cmd_glue)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return exc.code
    try:
        out, code = args.func(args)
    except UsageError as exc:
        print(f"flatpants: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(_dump({"schema_version": SCHEMA_VERSION, "error": str(exc), **exc.payload}), end="")
        print(f"flatpants: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (params.ConstraintError, assembly.GluingError) as exc:
        print(f"flatpants: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(_dump(out), end="")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
