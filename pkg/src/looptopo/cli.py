"""Command-line interface: ``looptopo eval | table | geom``.

Exit codes: 0 success, 2 malformed input (parse errors, unreadable files),
3 contract violations (even n, arity mismatch, bad parameters), 4 loops not
in generic position.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

import sympy

from . import geometry as geo
from .errors import ContractError, DegenerateGeometryError, ParseError
from .serialize import degree_note, format_label, format_value, parse_expression, value_to_json
from .sphere import CONVENTIONS, SphereContext, cohomology_monomial

EXIT_OK, EXIT_PARSE, EXIT_CONTRACT, EXIT_DEGENERATE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def _odd_n(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"--n expects an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="looptopo",
                description="String topology of odd spheres and polygonal loops.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate an algebraic expression")
    ev.add_argument("expr")
    ev.add_argument("--n", type=_odd_n, default=3, help="odd sphere dimension >= 3")
    ev.add_argument("--convention", choices=CONVENTIONS, default="alg")
    ev.add_argument("--k", type=int, default=None, help="default arity for copk")
    ev.add_argument("--unlifted", action="store_true",
                    help="use the unlifted cohomology product (undefined on E0, EN)")
    ev.add_argument("--json", action="store_true")

    tb = sub.add_parser("table", help="degrees and levels of the basis classes")
    tb.add_argument("--n", type=_odd_n, default=3)
    tb.add_argument("--max-level", type=int, default=3)
    tb.add_argument("--json", action="store_true")

    gm = sub.add_parser("geom", help="polygonal loop computations (JSON report)")
    gm.add_argument("action", choices=["census", "cut", "rotcop", "product", "length", "retract"])
    gm.add_argument("loop", help="loop file")
    gm.add_argument("other", nargs="?", help="second loop file (product)")
    gm.add_argument("--s", default=None, help="rational parameter in [0, 1)")
    gm.add_argument("--eps", default="1/4", help="stick cutoff")
    gm.add_argument("--lifted", action="store_true", help="add the constant-loop terms")
    gm.add_argument("--json", action="store_true", help="accepted for symmetry; output is JSON")
    return p


# -- eval / table -----------------------------------------------------------------

def cmd_eval(args) -> str:
    ctx = SphereContext(args.n)
    v = parse_expression(args.expr, ctx, convention=args.convention, k=args.k,
                         lifted=not args.unlifted)
    if args.json:
        return _dump({"n": args.n, "convention": args.convention, **value_to_json(v)})
    return f"{format_value(v)}\n{degree_note(v)}"


def cmd_table(args) -> str:
    if args.max_level < 1:
        raise ContractError("--max-level must be at least 1")
    ctx = SphereContext(args.n)
    rows = ctx.level_table(args.max_level)
    if args.json:
        return _dump({"n": args.n, "levels": [
            {"level": m,
             "homology": [{"name": format_label(b), "degree": b.degree} for b in hom],
             "cohomology": [{"name": format_label(b), "monomial": cohomology_monomial(b),
                             "degree": b.degree} for b in coh]}
            for m, hom, coh in rows]})
    lines = [f"n = {args.n}", "level | homology (degree)            | cohomology (degree)"]
    for m, hom, coh in rows:
        h = ", ".join(f"{format_label(b)} ({b.degree})" for b in hom)
        c = ", ".join(f"{cohomology_monomial(b)} ({b.degree})" for b in coh)
        lines.append(f"{m:5d} | {h} | {c}")
    return "\n".join(lines)


# -- geometry ---------------------------------------------------------------------

def _load_loop(path: str) -> geo.PolyLoop:
    try:
        with open(path, encoding="utf-8") as fh:
            record = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc.msg}") from exc
    return geo.PolyLoop.from_record(record)


def _exact(expr) -> dict:
    return {"exact": str(expr), "float": float(sympy.N(expr, 20))}


def _label_json(label):
    return list(label) if isinstance(label, tuple) else label


def _needs(value, flag):
    if value is None:
        raise ContractError(f"this action needs {flag}")
    return value


def cmd_geom(args) -> str:
    loop = _load_loop(args.loop)
    report = {"action": args.action, "input": loop.to_record()}
    if args.action == "length":
        ell, energy = geo.length_energy(loop)
        report.update(length=_exact(ell), energy=_exact(energy))
    elif args.action == "census":
        census = geo.basepoint_self_intersections(loop)
        report["basepoint_returns"] = [
            {"edge": lp.edge, "frac": str(lp.frac), "s": _exact(t)}
            for lp, t in zip(census.points, census.times)]
        report["fold"] = census.fold
        report["winding"] = _label_json(geo.component_label(loop))
        try:
            report["crossings"] = [
                {"point": [str(c.point[0]), str(c.point[1])],
                 "t": _exact(loop.time(c.first)), "t_other": _exact(loop.time(c.second))}
                for c in geo.self_crossings(loop)]
        except DegenerateGeometryError as exc:
            # basepoint returns are still meaningful; only the double-point list is not
            report["crossings"] = None
            report["crossings_note"] = f"not in generic position: {exc}"
    elif args.action == "cut":
        s = _needs(args.s, "--s")
        first, second = geo.cut(loop, s)
        report["pieces"] = [first.to_record(), second.to_record()]
    elif args.action == "rotcop":
        terms = []
        for r in geo.rotation_terms(loop):
            x, y = r.pair
            terms.append({"t": _exact(r.t), "s": _exact(r.s), "sign": r.sign,
                          "labels": [_label_json(geo.component_label(x)),
                                     _label_json(geo.component_label(y))],
                          "pieces": [x.to_record(), y.to_record()]})
        report["terms"] = terms
        chain = geo.rotation_coproduct(loop, lifted=args.lifted)
        report["lifted"] = args.lifted
        report["classes"] = [{"labels": [_label_json(a), _label_json(b)], "coefficient": c}
                             for (a, b), c in geo.pair_chain_class(chain).items()]
    elif args.action == "product":
        other = _load_loop(_needs(args.other, "a second loop file"))
        result = geo.cs_product_geometric(loop, other, args.eps)
        report["eps"] = str(geo.as_fraction(args.eps))
        report["result"] = None if result is None else result.to_record()
        if result is not None:
            report["winding"] = _label_json(geo.component_label(result))
    elif args.action == "retract":
        s = _needs(args.s, "--s")
        out, lp = geo.stick_retraction_gh(loop, s, args.eps)
        report["result"] = out.to_record()
        report["incidence"] = {"edge": lp.edge, "frac": str(lp.frac), "s": _exact(out.time(lp))}
    return _dump(report)


def _dump(obj) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True)
    # keep coordinate pairs on one line
    return re.sub(r'\[\s+("[^"]*"),\s+("[^"]*")\s+\]', r"[\1, \2]", text)


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "geom": cmd_geom}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateGeometryError as exc:
        print(f"error: degenerate geometry: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
