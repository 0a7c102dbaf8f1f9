"""Command-line interface.

Subcommands: list, verify, sweep, bijection, parity, motion-check,
enumerate, series, trace.  Exit code 0 means everything requested passed,
1 means at least one mismatch, 2 means a usage or parameter error.

Machine output (json/csv) goes to stdout only; diagnostics go to stderr.
By default reports carry elapsedMs = 0 so identical invocations are
byte-identical; pass --timings for wall-clock values.  The default
truncation order is 40, overridable with the QPARITY_ORDER environment
variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, families, motion, verify
from .partitions import FrequencySequence, multipartition_weight
from .series import csv_rows


def _default_order() -> int:
    try:
        return int(os.environ.get("QPARITY_ORDER", "40"))
    except ValueError:
        return 40


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    for name in ("k", "a", "b", "j", "r", "u"):
        p.add_argument(f"--{name}", type=int, default=None)


def _params_from(args: argparse.Namespace, names: tuple[str, ...]) -> dict:
    params = {}
    for name in names:
        val = getattr(args, name, None)
        if val is None:
            raise ValueError(f"missing required parameter --{name}")
        params[name] = val
    return params


def _emit_reports(reports, args) -> int:
    with_timing = bool(getattr(args, "timings", False))
    dicts = [r.to_json_dict(with_timing) for r in reports]
    fmt = args.format
    if fmt == "json":
        payload = dicts[0] if len(dicts) == 1 else dicts
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        print("subject,params,order,maxWeight,status,mismatchAt,left,right,elapsedMs")
        for d in dicts:
            mm = d.get("firstMismatch") or {}
            at = mm.get("exponent", mm.get("weight", ""))
            params = ";".join(f"{k}={v}" for k, v in sorted(d["params"].items()))
            print(
                f"{d['subject']},{params},{d.get('order','')},"
                f"{d.get('maxWeight','')},{d['status']},{at},"
                f"{mm.get('left','')},{mm.get('right','')},{d['elapsedMs']}"
            )
    else:
        for d in dicts:
            params = " ".join(f"{k}={v}" for k, v in sorted(d["params"].items()))
            scope = (
                f"order={d['order']}" if "order" in d
                else f"maxWeight={d.get('maxWeight','-')}"
            )
            line = f"{d['status'].upper():4} {d['subject']} {params} {scope}"
            mm = d.get("firstMismatch")
            if mm:
                line += f"  first mismatch: {mm}"
            print(line)
    return 0 if all(d["status"] == "pass" for d in dicts) else 1


def _freq_text(f: FrequencySequence) -> str:
    return "[" + ", ".join(f"{i}^{c}" for i, c in f.items()) + "]"


def _cmd_list(args) -> int:
    reg = catalog.registry_json()
    if args.format == "json":
        print(json.dumps(reg, indent=2))
    else:
        for row in reg:
            print(
                f"{row['id']:18} params={','.join(row['params'])}  "
                f"[{row['constraint']}]  sides={','.join(row['sides'])}"
            )
    return 0


def _cmd_verify(args) -> int:
    ident = catalog.IDENTITIES.get(args.id)
    if ident is None:
        raise ValueError(f"unknown identity id {args.id!r}")
    params = _params_from(args, ident.param_names)
    sides = args.sides.split(",") if args.sides else ["sum", "product"]
    for s in sides:
        if s not in ident.sides:
            raise ValueError(f"{args.id} has no side {s!r} (has {ident.sides})")
    rep = verify.verify_identity(args.id, params, args.order, sides)
    return _emit_reports([rep], args)


def _cmd_sweep(args) -> int:
    ids = None
    if args.id and args.id != "all":
        if args.id not in catalog.IDENTITIES:
            raise ValueError(f"unknown identity id {args.id!r}")
        ids = [args.id]
    sides = args.sides.split(",") if args.sides else None
    reports = verify.sweep(
        ids=ids, k_max=args.kmax, order=args.order, sides=sides,
        jobs=args.jobs, seed=args.seed,
    )
    return _emit_reports(reports, args)


def _cmd_bijection(args) -> int:
    params = _params_from(args, ("j", "r", "k", "u"))
    rep = verify.bijection_suite(max_weight=args.max_weight, **params)
    return _emit_reports([rep], args)


def _cmd_parity(args) -> int:
    params = _params_from(args, ("k", "u"))
    rep = verify.parity_suite(params["k"], params["u"], args.max_weight)
    return _emit_reports([rep], args)


def _cmd_motion_check(args) -> int:
    rep = verify.explicit_motion_suite(
        span=args.span, max_entry=args.max_entry, max_h=args.max_h,
        max_m=args.max_m,
    )
    return _emit_reports([rep], args)


def _cmd_enumerate(args) -> int:
    names = families.FAMILY_PARAMS.get(args.family)
    if names is None:
        raise ValueError(
            f"unknown family {args.family!r}; known: {sorted(families.FAMILY_PARAMS)}"
        )
    spec = families.SetSpec(args.family, **_params_from(args, names))
    elements = families.enumerate_set(spec, args.max_weight)
    if args.format == "json":
        rows = []
        for el in elements:
            w = families.element_weight(spec, el)
            if isinstance(el, FrequencySequence):
                rows.append({"weight": w, "entries": [list(t) for t in el.items()]})
            else:
                bla, frame = el
                rows.append(
                    {
                        "weight": w,
                        "components": [list(c) for c in bla],
                        "frame": [list(t) for t in frame.items()],
                    }
                )
        print(json.dumps(rows, indent=2))
    else:
        for el in elements:
            w = families.element_weight(spec, el)
            if isinstance(el, FrequencySequence):
                print(f"{w}: {_freq_text(el)}")
            else:
                bla, frame = el
                comps = ",".join("(" + ",".join(map(str, c)) + ")" for c in bla)
                print(f"{w}: components=[{comps}] frame={_freq_text(frame)}")
    return 0


def _cmd_series(args) -> int:
    ident = catalog.IDENTITIES.get(args.id)
    if ident is None:
        raise ValueError(f"unknown identity id {args.id!r}")
    if args.side not in ident.sides:
        raise ValueError(f"{args.id} has no side {args.side!r} (has {ident.sides})")
    params = _params_from(args, ident.param_names)
    s = catalog.side_evaluator(args.id, args.side)(params, args.order)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "id": args.id,
                    "side": args.side,
                    "params": params,
                    "order": args.order,
                    "coefficients": [
                        [e, s.coefficient(e)] for e in range(0, args.order + 1)
                    ],
                },
                indent=2,
            )
        )
    else:
        print("exponent,coefficient")
        for row in csv_rows(s):
            print(row)
    return 0


def _cmd_trace(args) -> int:
    if args.example == "figure1":
        f = FrequencySequence({1: 4, 3: 2, 4: 1, 5: 3, 6: 1})
        steps = motion.ppm_trace(f, 1, 5)
    elif args.bla is not None:
        try:
            bla = tuple(tuple(comp) for comp in json.loads(args.bla))
        except json.JSONDecodeError as exc:
            raise ValueError(f"--bla must be JSON like [[2,0],[1]]: {exc}")
        u = args.u if args.u is not None else 0
        trace = motion.theta_chain(bla, u)
        print(f"frame {_freq_text(trace.stages[0])}")
        for t in range(len(trace.parts)):
            print(
                f"{motion.MOTION} insert {trace.parts[t]} at {trace.starts[t]}"
                f" -> {_freq_text(trace.stages[t + 1])}"
                f" (weight {trace.stages[t + 1].weight},"
                f" focus {trace.foci[t]})"
            )
        print(
            f"image {_freq_text(trace.stages[-1])} of weight"
            f" {trace.stages[-1].weight} for tuple weight"
            f" {multipartition_weight(bla)}"
        )
        return 0
    else:
        raise ValueError("trace needs --example figure1 or --bla '[[...],...]'")
    first = True
    for arrow, state, focus in steps:
        prefix = "  " if first else arrow + " "
        first = False
        print(f"{prefix}{_freq_text(state)}  (focus {focus})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="qparity",
        description="exact verification of parity-restricted q-series "
        "identities and their particle-motion bijections",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, order=False, weight=False):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock elapsedMs in reports")
        if order:
            p.add_argument("--order", type=int, default=_default_order())
        if weight:
            p.add_argument("--max-weight", type=int, default=14)

    p = sub.add_parser("list", help="dump the identity registry")
    common(p)
    p.set_defaults(fn=_cmd_list)

    p = sub.add_parser("verify", help="verify one identity")
    p.add_argument("--id", required=True)
    p.add_argument("--sides", default=None,
                   help="comma list from sum,product,set-Z,set-X,set-Y")
    _add_param_flags(p)
    common(p, order=True)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("sweep", help="verify a parameter grid")
    p.add_argument("--id", default="all")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--sides", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    common(p, order=True)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("bijection", help="exhaustive bijection suite")
    _add_param_flags(p)
    common(p, weight=True)
    p.set_defaults(fn=_cmd_bijection)

    p = sub.add_parser("parity", help="stagewise parity-lemma suite")
    _add_param_flags(p)
    common(p, weight=True)
    p.set_defaults(fn=_cmd_parity)

    p = sub.add_parser("motion-check", help="explicit-motion equivalence grid")
    p.add_argument("--span", type=int, default=8)
    p.add_argument("--max-entry", type=int, default=4)
    p.add_argument("--max-h", type=int, default=4)
    p.add_argument("--max-m", type=int, default=12)
    common(p)
    p.set_defaults(fn=_cmd_motion_check)

    p = sub.add_parser("enumerate", help="dump a family's members by weight")
    p.add_argument("--family", required=True)
    _add_param_flags(p)
    common(p, weight=True)
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("series", help="dump one side's coefficients")
    p.add_argument("--id", required=True)
    p.add_argument("--side", default="sum")
    _add_param_flags(p)
    common(p, order=True)
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("trace", help="print a particle-motion trace")
    p.add_argument("--example", choices=("figure1",), default=None)
    p.add_argument("--bla", default=None,
                   help="JSON tuple of partitions, e.g. [[2,0],[1]]")
    p.add_argument("--u", type=int, default=None)
    common(p)
    p.set_defaults(fn=_cmd_trace)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
