"""Command-line front end.

Loads serialized objects, runs computations and verification suites,
and emits deterministic plain-text or JSON reports.

Exit codes: 0 success/verified, 1 verification failure (with witness),
2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import jsonio
from .acceptance import run_all
from .complexes import (
    default_probe_family,
    homology_H,
    hom_complex,
    identity_map,
)
from .cones import NotProtosplit, cokernel_protosplit, mapping_cone
from .dgcat import (
    cauchy_naturality_failures,
    verify_cauchy_data,
    weighted_colimit,
)
from .jsonio import InputError
from .monoidal import tensor
from .totals import SupportExceedsWindow, tot_via_weighted_colimit, total_complex
from .zlinalg import FPAbGroup


def _emit(args, payload: dict, text_lines: List[str]):
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _homology_report(cx) -> dict:
    groups = homology_H(cx)
    return {f"H_{n}": groups.at(n).describe() for n in groups.support()}


def _ranks(cx) -> dict:
    return {str(n): cx.rank(n) for n in cx.degrees()}


def cmd_homology(args) -> int:
    cx = jsonio.complex_from_json(jsonio.load(args.complex))
    groups = homology_H(cx)
    lines = [f"H_{n} = {groups.at(n).describe()}" for n in groups.support()] or ["H = 0"]
    _emit(args, {"homology": _homology_report(cx)}, lines)
    return 0


def cmd_tensor(args) -> int:
    a = jsonio.complex_from_json(jsonio.load(args.left))
    b = jsonio.complex_from_json(jsonio.load(args.right))
    t = tensor(a, b)
    if args.out:
        jsonio.dump(jsonio.complex_to_json(t), args.out)
    _emit(args, {"ranks": _ranks(t)},
          [f"tensor ranks: {_ranks(t)}"] + ([f"written to {args.out}"] if args.out else []))
    return 0


def cmd_hom(args) -> int:
    a = jsonio.complex_from_json(jsonio.load(args.source))
    b = jsonio.complex_from_json(jsonio.load(args.target))
    h = hom_complex(a, b)
    if args.out:
        jsonio.dump(jsonio.complex_to_json(h), args.out)
    _emit(args, {"ranks": _ranks(h)},
          [f"hom ranks: {_ranks(h)}"] + ([f"written to {args.out}"] if args.out else []))
    return 0


def cmd_cone(args) -> int:
    if args.map_cone_of_identity:
        cx = jsonio.complex_from_json(jsonio.load(args.map_cone_of_identity))
        f = identity_map(cx)
    elif args.f:
        f = jsonio.proto_from_json(jsonio.load(args.f), chain_map=True)
    else:
        raise InputError("cone needs --f or --map-cone-of-identity")
    res = mapping_cone(f)
    if args.out:
        jsonio.dump(jsonio.complex_to_json(res.cone), args.out)
    groups = homology_H(res.cone)
    lines = [f"cone ranks: {_ranks(res.cone)}"]
    lines += [f"H_{n} = {groups.at(n).describe()}" for n in groups.support()] or ["H = 0"]
    _emit(args, {"ranks": _ranks(res.cone), "homology": _homology_report(res.cone)}, lines)
    return 0


def cmd_cokernel_protosplit(args) -> int:
    f = jsonio.proto_from_json(jsonio.load(args.f), chain_map=True)
    t = jsonio.proto_from_json(jsonio.load(args.t))
    probes = None
    if args.probe_depth is not None:
        probes = [cx for _, cx in default_probe_family(f.target)[: args.probe_depth]]
    try:
        res = cokernel_protosplit(f, t, probes=probes)
    except NotProtosplit as exc:
        _emit(args, {"verified": False, "witness": str(exc)},
              [f"FAIL: {exc}"])
        return 1
    if args.out:
        jsonio.dump(jsonio.complex_to_json(res.quotient), args.out)
    _emit(args, {"verified": True, "ranks": _ranks(res.quotient),
                 "homology": _homology_report(res.quotient)},
          [f"cokernel ranks: {_ranks(res.quotient)}", "universal property verified"])
    return 0


def cmd_tot(args) -> int:
    a = jsonio.double_complex_from_json(jsonio.load(args.double_complex))
    tot = total_complex(a)
    payload = {"ranks": _ranks(tot), "homology": _homology_report(tot)}
    lines = [f"Tot ranks: {_ranks(tot)}"]
    groups = homology_H(tot)
    lines += [f"H_{n} = {groups.at(n).describe()}" for n in groups.support()] or ["H = 0"]
    if args.compare_colim:
        try:
            cmp = tot_via_weighted_colimit(a, window=args.window)
        except SupportExceedsWindow as exc:
            raise InputError(str(exc))
        ok = (cmp.iso @ cmp.inverse) == identity_map(cmp.tot)
        payload["colim_comparison"] = ok
        lines.append(f"colim comparison iso: {'ok' if ok else 'FAIL'}")
        if not ok:
            _emit(args, payload, lines)
            return 1
    if args.out:
        jsonio.dump(jsonio.complex_to_json(tot), args.out)
    _emit(args, payload, lines)
    return 0


def cmd_colim(args) -> int:
    cat = jsonio.category_from_json(jsonio.load(args.category))
    weight = jsonio.right_module_from_json(jsonio.load(args.weight), cat)
    diagram = jsonio.left_module_from_json(jsonio.load(args.diagram), cat)
    wc = weighted_colimit(weight, diagram)
    if args.out:
        jsonio.dump(jsonio.complex_to_json(wc.colimit), args.out)
    _emit(args, {"ranks": _ranks(wc.colimit), "homology": _homology_report(wc.colimit)},
          [f"colimit ranks: {_ranks(wc.colimit)}"])
    return 0


def cmd_verify_cauchy(args) -> int:
    cd = jsonio.cauchy_data_from_json(jsonio.load(args.data))
    report = verify_cauchy_data(cd)
    naturality = cauchy_naturality_failures(cd) if args.naturality else []
    ok = report.ok and not naturality
    payload = {"verified": ok}
    lines = []
    if report.ok:
        lines.append("snake identity holds")
    else:
        payload["witness"] = report.witness
        lines.append(f"FAIL: {report.witness}")
    if naturality:
        payload["naturality_failures"] = naturality
        lines.append(f"FAIL: {naturality[0]}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_verify_category(args) -> int:
    cat = jsonio.category_from_json(jsonio.load(args.category))
    failures = cat.validate()
    payload = {"verified": not failures, "failures": failures}
    if failures:
        _emit(args, payload, [f"FAIL: {f}" for f in failures])
        return 1
    _emit(args, payload, ["category verified: axioms hold"])
    return 0


def cmd_suite(args) -> int:
    results = run_all(seed=args.seed)
    payload = {"criteria": [{"number": r.number, "name": r.name,
                             "passed": r.passed, "detail": r.detail}
                            for r in results],
               "passed": all(r.passed for r in results)}
    _emit(args, payload, [r.line() for r in results])
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgkernel",
        description="Exact computations with chain complexes and small DG-categories.")
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON report")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("homology", help="canonical homology of a complex")
    p.add_argument("complex")
    p.set_defaults(fn=cmd_homology)

    p = sub.add_parser("tensor", help="tensor product of two complexes")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_tensor)

    p = sub.add_parser("hom", help="internal hom complex")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_hom)

    p = sub.add_parser("cone", help="mapping cone of a chain map")
    p.add_argument("--f", help="serialized chain map")
    p.add_argument("--map-cone-of-identity", metavar="COMPLEX",
                   help="use the identity of this complex")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_cone)

    p = sub.add_parser("cokernel-protosplit",
                       help="cokernel of a protosplit chain map")
    p.add_argument("--f", required=True, help="serialized chain map")
    p.add_argument("--t", required=True, help="serialized protosplitting")
    p.add_argument("--probe-depth", type=int, default=None,
                   help="number of probe targets for the universal property")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_cokernel_protosplit)

    p = sub.add_parser("tot", help="total complex of a double complex")
    p.add_argument("double_complex")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--compare-colim", action="store_true",
                   help="also compute the weighted colimit and compare")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_tot)

    p = sub.add_parser("colim", help="weighted colimit of a diagram of complexes")
    p.add_argument("--category", required=True)
    p.add_argument("--weight", required=True, help="right module (the weight)")
    p.add_argument("--diagram", required=True, help="left module (the diagram)")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_colim)

    p = sub.add_parser("verify-cauchy", help="check the snake identity")
    p.add_argument("data")
    p.add_argument("--naturality", action="store_true",
                   help="also check counit naturality in both variables")
    p.set_defaults(fn=cmd_verify_cauchy)

    p = sub.add_parser("verify-category", help="check the DG-category axioms")
    p.add_argument("category")
    p.set_defaults(fn=cmd_verify_category)

    p = sub.add_parser("suite", help="run the full acceptance suite")
    p.add_argument("--seed", type=int, default=20260809)
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
