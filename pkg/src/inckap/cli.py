"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 the
request exceeds the exhaustive-enumeration limits.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

from .algscale import build_ordering, compute_constants
from .evaluator import competitive_ratio
from .flows import FlowInstance, PotentialInstance, flow_ratio, potential_to_xos, quickest_increment
from .instances import GeneratorConfig, generate
from .objective import ENUMERATION_LIMIT, CapabilityError, Instance, InputError, validate
from .verify import SUITES, run_suite

log = logging.getLogger("inckap")


def _setup_logging() -> None:
    level = os.environ.get("INCKAP_LOG", "off").lower()
    if level == "off":
        logging.getLogger("inckap").addHandler(logging.NullHandler())
        return
    logging.basicConfig(
        level=logging.DEBUG if level == "debug" else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_instance(args) -> Instance:
    inst = Instance.from_json(_read(args.input))
    report = validate(inst)
    if not report.ok:
        raise InputError("invalid instance: " + "; ".join(report.violations))
    if inst.m > args.limit_m:
        raise CapabilityError(f"instance has m={inst.m}, above --limit-m {args.limit_m}")
    return inst


def _num(x: float):
    return "inf" if math.isinf(x) else x


def cmd_solve(args) -> int:
    inst = _load_instance(args)
    ordering = build_ordering(inst)
    curve = competitive_ratio(inst, ordering)
    rho = compute_constants().rho(inst.M)
    doc = json.loads(ordering.to_json(inst))
    doc.update(
        M=inst.M,
        ratio=_num(curve.overall),
        worst_capacity=curve.worst_capacity,
        rho=rho,
        within_bound=curve.overall <= rho + 1e-6,
    )
    _write(args.output, json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_curve(args) -> int:
    inst = _load_instance(args)
    curve = competitive_ratio(inst, build_ordering(inst))
    if args.format == "json":
        rows = [
            {"capacity": c, "opt": o, "alg": a, "ratio": _num(r)}
            for c, o, a, r in curve.rows()
            if o > 0
        ]
        _write(args.output, json.dumps({"rows": rows, "ratio": _num(curve.overall)}, indent=2) + "\n")
    else:
        _write(args.output, curve.to_csv())
    return 0


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, seed=args.seed)
    failed = 0
    for check in checks:
        print(check.line())
        failed += not check.passed
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_flow(args) -> int:
    fi = FlowInstance.parse(_read(args.input))
    trace = quickest_increment(fi)
    curve = flow_ratio(fi, trace.order)
    if args.format == "json":
        doc = {
            "order": [list(fi.edges[i]) for i in trace.order],
            "batch_sizes": list(trace.sizes),
            "c": list(trace.c),
            "ratio": _num(curve.overall),
        }
        _write(args.output, json.dumps(doc, indent=2) + "\n")
    else:
        _write(args.output, curve.to_csv(label="k", skip_empty=False))
    log.info("edge order %s, ratio %s", trace.order, curve.overall)
    return 0


def cmd_gen(args) -> int:
    config = GeneratorConfig(
        kind=args.kind, seed=args.seed, m=args.m, k=args.k, M=args.M, universe_size=args.universe
    )
    _write(args.output, generate(config).to_json())
    return 0


def cmd_potential(args) -> int:
    try:
        data = json.loads(_read(args.input))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid potential JSON: {exc}") from None
    _write(args.output, potential_to_xos(PotentialInstance.from_dict(data)).to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="input file (default: stdin)")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="worker count (work is currently sequential)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--limit-m", type=int, default=ENUMERATION_LIMIT, help="largest m for exhaustive modes")

    parser = argparse.ArgumentParser(prog="inckap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="build the scaling ordering and report its ratio")
    p.set_defaults(func=cmd_solve)
    p = sub.add_parser("curve", parents=[common], help="write the ratio curve of the scaling ordering")
    p.set_defaults(func=cmd_curve)
    p = sub.add_parser("verify", parents=[common], help="run certification suites")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("flow", parents=[common], help="Quickest-Increment on an edge-list graph")
    p.set_defaults(func=cmd_flow)
    p = sub.add_parser("gen", parents=[common], help="write a generated instance as JSON")
    p.add_argument("kind", choices=("m_bound", "sqrt6", "random_xos", "coverage"))
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--M", type=float, default=1.0)
    p.add_argument("--universe", type=int, default=6)
    p.set_defaults(func=cmd_gen)
    p = sub.add_parser("potential", parents=[common], help="compile a parallel-edge potential instance")
    p.set_defaults(func=cmd_potential)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
