"""Command line entry point: ``quiverbs <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Sequence

from . import oracle as oracle_mod
from .bfactor import canonicalize, monic_expand, roots
from .candecomp import canonical_search, decompose, type_d_decompose
from .classical import FAMILIES, FormulaId, closed_form
from .dynkin import component_type
from .errors import (
    BadParameters, DecompositionFailed, DegreeMismatch, IdentityFailed, InputError, InvariantBreach,
    NotDynkin, NotProportional, NotSquare, NotTypeD, NumericInfeasible, OrderingFailed, QuiverBSError,
    SearchFailed, SizeGuard, WeightObstruction,
)
from .mpoly import render_upoly
from .qfile import parse, parse_assignment
from .slicer import COMPLETE, INFEASIBLE, NOT_SLICEABLE, locally_semisimple, run, run_multi

EXIT_OK, EXIT_NOT_SLICEABLE, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_VERIFY = 0, 2, 3, 4, 5

_VERIFY_ERRORS = (InvariantBreach, NotProportional, DegreeMismatch, IdentityFailed, SearchFailed,
                  OrderingFailed, DecompositionFailed)
_INPUT_ERRORS = (InputError, BadParameters, NotDynkin, NotTypeD, NotSquare, SizeGuard)
_INFEASIBLE_ERRORS = (NumericInfeasible, WeightObstruction)


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        print(text)


def _status_code(status: str) -> int:
    return {COMPLETE: EXIT_OK, NOT_SLICEABLE: EXIT_NOT_SLICEABLE, INFEASIBLE: EXIT_INFEASIBLE}[status]


def _values(args) -> dict[str, int]:
    return parse_assignment(args.numeric) if getattr(args, "numeric", None) else {}


def _render_counter(parts: Counter) -> str:
    items = sorted(parts.items(), key=lambda t: (-sum(t[0]), t[0]))
    return " + ".join(f"({','.join(map(str, r))})" + (f"^{k}" if k > 1 else "") for r, k in items) or "0"


def _counter_json(parts: Counter) -> list:
    return [{"dims": list(r), "multiplicity": k} for r, k in sorted(parts.items())]


def cmd_slice(args) -> int:
    qf = parse(args.file)
    values = _values(args)
    state = qf.state(values or None)
    d = run(state, assume_mf=args.assume_multiplicity_free)
    prod = canonicalize(d.factors)
    lines = [prod.render()]
    payload = {"status": d.status, "factors": prod.to_json(),
               "side_conditions": [c.render() for c in d.side_conditions]}
    if d.status != COMPLETE:
        lines.append(f"status {d.status}" + (f": {d.message}" if d.message else ""))
    if args.trace:
        lines.append(d.trace())
        payload["trace"] = [s.render() for s in d.steps]
    if args.roots and d.status == COMPLETE:
        if state.numeric_beta() is None:
            raise InputError("--roots needs numeric dimensions")
        ms = roots(d.factors)
        lines.append(ms.render())
        payload["roots"] = [[str(r), k] for r, k in ms.sorted_desc()]
    if args.llss and d.status == COMPLETE:
        if state.numeric_beta() is None:
            raise InputError("--llss needs numeric dimensions")
        parts = locally_semisimple(d, seed=args.seed)
        lines.append("locally semi-simple: " + _render_counter(parts))
        payload["locally_semisimple"] = _counter_json(parts)
    _emit(args, "\n".join(lines), payload)
    return _status_code(d.status)


def cmd_multi(args) -> int:
    qf = parse(args.file)
    m = tuple(int(x) for x in args.mtuple.split(",")) if args.mtuple else qf.mtuple
    d = run_multi(qf.state(_values(args) or None), m)
    prod = canonicalize(d.factors)
    lines = [prod.render()]
    if d.status != COMPLETE:
        lines.append(f"status {d.status}" + (f": {d.message}" if d.message else ""))
    if args.trace:
        lines.append(d.trace())
    _emit(args, "\n".join(lines), {"status": d.status, "factors": prod.to_json(),
                                    "mtuple": list(m) if m else None})
    return _status_code(d.status)


def cmd_oracle(args) -> int:
    saved = oracle_mod.SIZE_LIMIT
    if args.max_monomials is not None:
        oracle_mod.SIZE_LIMIT = args.max_monomials
    try:
        return _oracle(args)
    finally:
        oracle_mod.SIZE_LIMIT = saved


def _oracle(args) -> int:
    qf = parse(args.file)
    values = _values(args)
    beta = qf.numeric_beta(values)
    q = qf.quiver()
    lines, payload = [], {"weights": []}
    code = EXIT_OK
    for k, alpha in enumerate(qf.alphas(), 1):
        f = oracle_mod.build_cV(q, beta, alpha, seed=args.seed)
        if not f:
            lines.append(f"weight {k}: semi-invariant vanishes")
            payload["weights"].append({"weight": k, "zero": True})
            code = EXIT_INFEASIBLE
            continue
        b = oracle_mod.bfunction_oracle(f)
        entry = {"weight": k, "degree": f.degree(), "b": [str(c) for c in b]}
        lines.append(f"weight {k}: {render_upoly(b)}")
        if len(qf.weights) == 1:
            d = run(qf.state(values or None))
            if d.status == COMPLETE:
                agree = monic_expand(d.factors) == b
                entry["slicer_agrees"] = agree
                lines.append("slicer agrees" if agree else "slicer DISAGREES: " + render_upoly(monic_expand(d.factors)))
                if not agree:
                    code = EXIT_VERIFY
        payload["weights"].append(entry)
    _emit(args, "\n".join(lines), payload)
    return code


def cmd_decomp(args) -> int:
    qf = parse(args.file)
    beta = qf.numeric_beta(_values(args))
    q = qf.quiver()
    kind = component_type(q)
    if kind is not None and kind.startswith("D"):
        parts, diagram = type_d_decompose(q, beta, with_diagram=True)
        method = "type D diagram"
    else:
        parts, diagram = decompose(q, beta), None
        method = "Ext-orthogonal search"
    lines = [_render_counter(parts)]
    payload = {"method": method, "summands": _counter_json(parts)}
    if diagram is not None and args.trace:
        lines.append(diagram.render())
    code = EXIT_OK
    if args.oracle_check:
        other = canonical_search(q, beta) if diagram is not None else parts
        agree = other == parts
        payload["search_agrees"] = agree
        lines.append("search agrees" if agree else "search DISAGREES: " + _render_counter(other))
        code = EXIT_OK if agree else EXIT_VERIFY
    _emit(args, "\n".join(lines), payload)
    return code


def cmd_classical(args) -> int:
    try:
        params = tuple(int(x) for x in args.params)
    except ValueError:
        raise BadParameters("parameters must be integers") from None
    cf = closed_form(FormulaId(args.family, params), _values(args) or None)
    payload = {"family": args.family, "params": list(params)}
    if cf.product is not None:
        payload["factors"] = canonicalize(cf.product).to_json()
    if cf.roots is not None:
        payload["roots"] = [[str(r), k] for r, k in cf.roots.sorted_desc()]
    _emit(args, cf.render(), payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    parser = argparse.ArgumentParser(prog="quiverbs", description="b-functions of quiver semi-invariants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("slice", parents=[common], help="run the slice method")
    p.add_argument("file")
    p.add_argument("--numeric", metavar="k=v,...")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--roots", action="store_true")
    p.add_argument("--llss", action="store_true", help="locally semi-simple summands")
    p.add_argument("--assume-multiplicity-free", action="store_true")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("multi", parents=[common], help="several weights at once")
    p.add_argument("file")
    p.add_argument("--mtuple")
    p.add_argument("--numeric", metavar="k=v,...")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_multi)

    p = sub.add_parser("oracle", parents=[common], help="exact b-function from the polynomial")
    p.add_argument("file")
    p.add_argument("--numeric", metavar="k=v,...")
    p.add_argument("--max-monomials", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("decomp", parents=[common], help="generic decomposition")
    p.add_argument("file")
    p.add_argument("--numeric", metavar="k=v,...")
    p.add_argument("--oracle-check", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("classical", parents=[common], help="closed-form catalog")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--numeric", metavar="k=v,...")
    p.set_defaults(func=cmd_classical)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _VERIFY_ERRORS as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except _INFEASIBLE_ERRORS as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QuiverBSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
