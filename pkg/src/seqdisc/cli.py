"""Command line front end.

Subcommands map one-to-one onto the library: `optimize` and `curves` are
purely analytic, `simulate` and `b92` run seeded Monte Carlo, `neumark`
builds the unitary realization and checks it against the Kraus form.  All
numeric output is formatted with 12 significant digits and JSON keys are
sorted, so runs with the same arguments and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import b92, neumark, reporting, sequential, strategies
from .linalg import dagger
from .povm import build_intermediate_ud
from .states import make_state_pair


def _emit(text: str, out_path) -> None:
    sys.stdout.write(text)
    if out_path:
        reporting.write_text(out_path, text)


def _cmd_optimize(args) -> int:
    result = sequential.optimize_two_observer(args.s)
    report = {
        "s": args.s,
        "n": args.n,
        "t_star": result.t_star,
        "q_star": result.q_star,
        "p_star": result.p_star,
        "p_star_closed_form": (1.0 - math.sqrt(args.s)) ** 2,
        "p_all_n": sequential.optimal_n_observer(args.s, args.n),
    }
    if args.format == "csv":
        header = sorted(report)
        text = reporting.csv_text(header, [[report[k] for k in header]])
    else:
        text = reporting.dumps_json(report)
    _emit(text, args.out)
    return 0


def _cmd_curves(args) -> int:
    curve = strategies.make_curve(args.s_min, args.s_max, args.steps)
    text = strategies.curve_csv(curve)
    _emit(text, args.out)
    if args.svg:
        reporting.write_text(args.svg, strategies.curve_svg(curve))
    return 0


def _cmd_simulate(args) -> int:
    if args.kind == "seq":
        chain = sequential.build_chain(args.s, args.n)
        tally = sequential.simulate_chain(chain, args.trials, args.seed)
    else:
        if args.n != 2:
            raise ValueError(f"--n applies only to kind 'seq', got n={args.n}")
        tally = strategies.simulate_strategy(args.kind, args.s, args.trials, args.seed)
    report = {
        "params": {
            "kind": args.kind,
            "s": args.s,
            "n": args.n if args.kind == "seq" else 2,
            "trials": args.trials,
            "seed": args.seed,
        },
        "tally": tally.as_dict(),
    }
    _emit(reporting.dumps_json(report), args.out)
    return 0


def _cmd_neumark(args) -> int:
    dilation = neumark.build_dilation(args.s)
    rs = math.sqrt(args.s)
    meas = build_intermediate_ud(make_state_pair(args.s), rs, rs)
    unitarity = float(np.linalg.norm(dagger(dilation.u) @ dilation.u - np.eye(6)))
    wrong = 0.0
    for i in (1, 2):
        probs, _ = neumark.dilation_statistics(dilation, i)
        wrong = max(wrong, probs[3 - i])
    report = {
        "s": args.s,
        "theta": dilation.theta,
        "theta_prime": dilation.theta_prime,
        "unitarity_residual": unitarity,
        "equivalence_residual": neumark.povm_equivalence(dilation, meas),
        "max_wrong_outcome_probability": wrong,
    }
    _emit(reporting.dumps_json(report), args.out)
    if args.matrix:
        header = []
        for j in range(neumark.TOTAL_DIM):
            header.extend([f"re{j}", f"im{j}"])
        reporting.write_text(
            args.matrix, reporting.csv_text(header, neumark.unitary_csv_rows(dilation))
        )
    return 0


def _cmd_b92(args) -> int:
    raw = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("config file must hold a JSON object")
    # explicit flags win over config-file values
    for field in ("s", "rounds", "mode", "eve", "seed"):
        value = getattr(args, field)
        if value is not None:
            raw[field] = value
    config = b92.session_config_from_dict(raw)
    run = b92.run_session(config)
    payload = {
        "config": {
            "s": config.s,
            "rounds": config.rounds,
            "mode": config.mode,
            "eve": config.eve,
            "seed": config.seed,
        },
        "report": run.as_dict(),
    }
    _emit(reporting.dumps_json(payload), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqdisc",
        description="Sequential unambiguous discrimination of two qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="optimal failure probabilities and joint rate")
    p.add_argument("--s", type=float, required=True, help="overlap of the state pair")
    p.add_argument("--n", type=int, default=2, help="number of observers (default 2)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("curves", help="joint-rate table for all strategies")
    p.add_argument("--s-min", type=float, default=0.0)
    p.add_argument("--s-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out", help="also write the CSV to this file")
    p.add_argument("--svg", help="write a line plot to this file")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("simulate", help="Monte Carlo a strategy or chain")
    p.add_argument("--kind", choices=strategies.KINDS, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--n", type=int, default=2, help="chain length for kind 'seq'")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("neumark", help="unitary realization of the first stage")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--matrix", help="write the 6x6 unitary as CSV to this file")
    p.set_defaults(func=_cmd_neumark)

    p = sub.add_parser("b92", help="two-receiver key distribution session")
    p.add_argument("--config", help="JSON file with session settings")
    p.add_argument("--s", type=float, help="override: overlap")
    p.add_argument("--rounds", type=int, help="override: number of rounds")
    p.add_argument("--mode", choices=b92.MODES, help="override: transport")
    p.add_argument("--eve", choices=b92.EVE_POLICIES, help="override: eavesdropper")
    p.add_argument("--seed", type=int, help="override: RNG seed")
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=_cmd_b92)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
