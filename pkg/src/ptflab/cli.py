"""Command-line entry points.

Subcommands mirror the library surface: build truth tables, dump the snake
enumeration, verify witness gates, compute sign-degrees and minimal
weights for stored truth tables, certify coefficient lemmas, and reproduce
experiment presets.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .boolfun import BoolFun, make_hard
from .harness import PRESET_NAMES, preset, run
from .polynomial import witness_gate
from .shapes import make_shape
from .threshold_analysis import (
    BudgetError,
    certify_coefficient_lemma,
    check_sign_representation,
    min_weight,
    sign_degree,
)
from .tuple_order import OrderContext, enumerate_ordered


def _parse_ks(text: str) -> tuple[int, ...]:
    return tuple(int(p) for p in text.replace(" ", "").split(","))


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_build(args) -> int:
    shape = make_shape(args.variant, _parse_ks(args.ks))
    fn = make_hard(shape)
    _write_out(json.dumps(fn.to_json(), indent=2) + "\n", args.out)
    return 0


def _cmd_order(args) -> int:
    shape = make_shape(args.variant, _parse_ks(args.ks))
    ctx = OrderContext(shape)
    rows = enumerate_ordered(ctx)
    buf = []
    header = ["rank"] + [f"a{i}" for i in range(1, shape.d + 1)]
    buf.append(",".join(header))
    for rank, alpha in enumerate(rows, start=1):
        buf.append(",".join([str(rank)] + [str(v) for v in alpha]))
    _write_out("\n".join(buf) + "\n", args.out)
    return 0


def _cmd_verify_gate(args) -> int:
    shape = make_shape(args.variant, _parse_ks(args.ks))
    fn = make_hard(shape)
    gate = witness_gate(shape)
    cx = check_sign_representation(gate, fn)
    if cx is None:
        print(f"PASS {shape.describe()}: gate of weight {gate.weight} on all 2^{shape.n} inputs")
        return 0
    print(f"FAIL {shape.describe()}: input {cx.assignment} gives p={cx.poly_value}, f={cx.fun_value}")
    return 1


def _load_fun(path: str) -> BoolFun:
    return BoolFun.from_json(json.loads(Path(path).read_text()))


def _cmd_signdeg(args) -> int:
    fn = _load_fun(args.fn)
    res = sign_degree(fn, args.dmax)
    if res.value is None:
        print(f"sign degree > {args.dmax}")
        return 1
    print(f"sign degree = {res.value}")
    for d, (_, out) in sorted(res.outcomes.items()):
        if out.status == "infeasible":
            print(f"  degree {d}: infeasible (Farkas certificate, {len(out.farkas)} rows)")
    return 0


def _cmd_minweight(args) -> int:
    fn = _load_fun(args.fn)
    mode = "exact" if args.exact else "lp"
    try:
        res = min_weight(fn, args.degree, mode=mode, node_budget=args.budget_nodes)
    except BudgetError as exc:
        print(f"SKIPPED: {exc}")
        return 2
    if res.value is None:
        print(f"no degree-{args.degree} gate exists")
        return 1
    print(f"minimal weight ({mode}) at degree {args.degree}: {res.value}")
    if args.out and res.witness is not None:
        payload = {"degree": args.degree, "weight": str(res.value), "gate": res.witness.to_json()}
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_check_lemma(args) -> int:
    res = certify_coefficient_lemma(args.name, args.k)
    for chk in res.checks:
        print(f"{chk.status}: {chk.description}")
    print(f"{res.status}: {args.name} at k={args.k}")
    return 0 if res.status == "CERTIFIED" else 1


def _cmd_reproduce(args) -> int:
    spec = preset(args.preset)
    if args.budget_nodes:
        spec.node_budget = args.budget_nodes
    rows, status = run(spec, args.out, workers=args.workers, seed=args.seed)
    for row in rows:
        print(",".join(row.as_list()[:-1]))
    print(f"wrote {args.out}/{spec.name}.csv ({len(rows)} rows)")
    return status


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ptflab",
        description="Hard threshold-function families and exact weight/degree verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a hard function's truth table as JSON")
    p.add_argument("variant", choices=["weak", "strong"])
    p.add_argument("ks", help="comma-separated group sizes, e.g. 2,3")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("order", help="print the snake enumeration as CSV")
    p.add_argument("variant", choices=["weak", "strong"])
    p.add_argument("ks")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser("verify-gate", help="check the witness gate exhaustively")
    p.add_argument("ks")
    p.add_argument("--variant", choices=["weak", "strong"], default="weak")
    p.set_defaults(handler=_cmd_verify_gate)

    p = sub.add_parser("signdeg", help="sign-degree of a stored truth table")
    p.add_argument("fn", help="BoolFun JSON file")
    p.add_argument("--dmax", type=int, required=True)
    p.set_defaults(handler=_cmd_signdeg)

    p = sub.add_parser("minweight", help="minimal gate weight of a stored truth table")
    p.add_argument("fn", help="BoolFun JSON file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--budget-nodes", type=int, default=2000)
    p.add_argument("--out", default=None, help="write the witness gate JSON here")
    p.set_defaults(handler=_cmd_minweight)

    p = sub.add_parser("check-lemma", help="certify a coefficient lemma by LP infeasibility")
    p.add_argument("name", choices=["gt_exp", "gt_step", "g1_pos", "g1_mono", "g0_all"])
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(handler=_cmd_check_lemma)

    p = sub.add_parser("reproduce", help="run a named experiment preset")
    p.add_argument("preset", choices=list(PRESET_NAMES))
    p.add_argument("--out", default="results")
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="scheduling shuffle only")
    p.set_defaults(handler=_cmd_reproduce)

    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
