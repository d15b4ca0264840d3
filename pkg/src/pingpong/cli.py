"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 enumeration capacity, 4 efficiency premise.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable, Sequence

from .audit import ALICE as TABLE_ALICE, PATTERN as TABLE_PATTERN, audit_csv_lines, audit_records, audit_table
from .bits import (
    AttackPattern,
    BitString,
    PingPongError,
    format_rational,
    pair_counts,
    parse_rational,
    qber_attainable,
    terminating_decimal,
)
from .channel import (
    CapacityError,
    asymptotic_frequencies,
    asymptotic_operating_point,
    conditional_json,
    enumerate_outcomes,
    expected_statistics,
)
from .infotheory import mutual_information_from_counts, single_bit_mutual_information, surface_csv_lines
from .montecarlo import (
    ALICE_POLICIES,
    PATTERN_POLICIES,
    TRIAL_COLUMNS,
    ExperimentConfig,
    PremiseError,
    convergence_study,
    run_experiment,
)

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_PREMISE = 0, 2, 3, 4


def _emit(lines: Iterable[str], out: str | None) -> None:
    text = "".join(line + "\n" for line in lines)
    if out:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_lines(obj) -> list[str]:
    return json.dumps(obj, indent=2).split("\n")


def _default_seed() -> int:
    return int(os.environ.get("PINGPONG_SEED", "0"), 0)


def cmd_enumerate(args) -> int:
    alice = BitString.parse(args.alice)
    pattern = AttackPattern.parse(args.attacks)
    if args.audit and (alice.bits, pattern.labels, args.role) != (TABLE_ALICE, TABLE_PATTERN, "eve"):
        raise PingPongError(f"--audit needs --alice {TABLE_ALICE} --attacks {TABLE_PATTERN} --role eve")
    ensemble = enumerate_outcomes(alice, pattern, args.role)
    rows = audit_table(ensemble) if args.audit else None
    if args.format == "json":
        mean_q, mean_mi = expected_statistics(ensemble)
        obj = {
            "alice": alice.bits,
            "attacks": pattern.labels,
            "role": args.role,
            "outcomes": ensemble.records(),
            "mean_q": format_rational(mean_q),
            "mean_mi": round(mean_mi, 6),
        }
        if rows is not None:
            obj["audit"] = audit_records(rows)
        _emit(_json_lines(obj), args.out)
    else:
        lines = list(ensemble.csv_lines())
        if rows is not None:
            lines += [""] + list(audit_csv_lines(rows))
        _emit(lines, args.out)
    return EXIT_OK


def cmd_mi(args) -> int:
    alice = BitString.parse(args.alice)
    other = BitString.parse(args.other)
    counts = pair_counts(alice, other)
    res = mutual_information_from_counts(counts)
    fields = {
        "q": format_rational(res.q),
        "zero_rate": format_rational(res.zero_rate),
        "n00": counts.n00,
        "n01": counts.n01,
        "n10": counts.n10,
        "n11": counts.n11,
        "h_a": f"{res.h_a:.6f}",
        "h_other": f"{res.h_other:.6f}",
        "h_joint": f"{res.h_joint:.6f}",
        "mi": f"{res.mi:.6f}",
    }
    if args.format == "json":
        _emit(_json_lines({k: (float(v) if k.startswith(("h_", "mi")) else v) for k, v in fields.items()}), args.out)
    elif args.format == "csv":
        _emit([",".join(fields), ",".join(str(v) for v in fields.values())], args.out)
    else:
        _emit([f"{k}={v}" for k, v in fields.items()], args.out)
    return EXIT_OK


def cmd_surface(args) -> int:
    if args.resolution < 2:
        raise PingPongError("--resolution must be at least 2")
    _emit(surface_csv_lines(args.resolution), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = ExperimentConfig(
        length=args.length,
        trials=args.trials,
        eta=args.eta,
        pattern_policy=args.pattern_policy or ("explicit" if args.pattern else "uniform-random"),
        alice_policy=args.alice_policy or ("explicit" if args.alice else "exactly-balanced"),
        seed=args.seed,
        pattern=args.pattern,
        alice=args.alice,
        force=args.force,
        pooled=args.pooled,
    )
    records, report = run_experiment(config)
    rows = [r.row() for r in records]
    if args.format == "json":
        _emit(_json_lines({"trials": rows, "aggregate": report.to_dict()}), args.out)
    else:
        _emit([",".join(TRIAL_COLUMNS)] + [",".join(str(r[c]) for c in TRIAL_COLUMNS) for r in rows], args.out)
    if args.report:
        _emit([report.to_json()], args.report)
    return EXIT_OK


def cmd_asymptotic(args) -> int:
    e0, q_e, i_ae = asymptotic_operating_point()
    per_bit = single_bit_mutual_information("u", "eve")
    obj = {
        "frequencies": asymptotic_frequencies().records(),
        "e0": format_rational(e0),
        "q_e": format_rational(q_e),
        "i_ae": f"{i_ae:.6f}",
        "per_bit_mi": f"{per_bit:.6f}",
    }
    if args.format == "json":
        _emit(_json_lines(obj), args.out)
    else:
        lines = [f"{k}={v}" for k, v in obj["frequencies"].items()]
        lines += [f"{k}={obj[k]}" for k in ("e0", "q_e", "i_ae", "per_bit_mi")]
        _emit(lines, args.out)
    return EXIT_OK


def cmd_qber_grid(args) -> int:
    attainable = qber_attainable(args.length)
    target = parse_rational(args.target)
    lo, hi = attainable.nearest(target)
    ok = target in attainable
    wrong_bits = target * args.length
    J = args.length
    obj = {
        "length": J,
        "target": format_rational(target),
        "wrong_bits": terminating_decimal(wrong_bits) or format_rational(wrong_bits),
        "attainable": ok,
        # unreduced k/J so the wrong-bit count stays visible
        "nearest_below": f"{lo * J}/{J}",
        "nearest_above": f"{hi * J}/{J}",
    }
    if args.format == "json":
        _emit(_json_lines(obj), args.out)
    else:
        verdict = "ATTAINABLE" if ok else "NOT ATTAINABLE"
        _emit(
            [
                f"{verdict}: q={obj['target']} at length {args.length} needs {obj['wrong_bits']} wrong bits",
                f"nearest={obj['nearest_below']},{obj['nearest_above']}",
            ],
            args.out,
        )
    return EXIT_OK


def cmd_dist(args) -> int:
    _emit([conditional_json()], args.out)
    return EXIT_OK


def cmd_convergence(args) -> int:
    lengths = [int(x) for x in args.lengths.split(",") if x.strip()]
    rows = convergence_study(lengths, args.trials, args.seed)
    lines = ["length,mean_q_e,mean_i_ae,deviation"]
    lines += [f"{r.length},{r.mean_q_e:.6f},{r.mean_i_ae:.6f},{r.deviation:.6f}" for r in rows]
    _emit(lines, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pingpong", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--out", default=None, help="write to PATH instead of stdout")
        return p

    p = add("enumerate", cmd_enumerate, "all possible receiver strings with exact probabilities")
    p.add_argument("--alice", required=True)
    p.add_argument("--attacks", required=True)
    p.add_argument("--role", choices=("eve", "bob", "joint"), default="eve")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--audit", action="store_true", help="compare against the published table")

    p = add("mi", cmd_mi, "QBER, counts, entropies and mutual information of two strings")
    p.add_argument("--alice", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = add("surface", cmd_surface, "closed-form MI over the (b0, q) square as CSV")
    p.add_argument("--resolution", type=int, default=100)

    p = add("simulate", cmd_simulate, "seeded Monte-Carlo transmissions")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--pattern-policy", choices=PATTERN_POLICIES, default=None)
    p.add_argument("--pattern", default=None)
    p.add_argument("--alice-policy", choices=ALICE_POLICIES, default=None)
    p.add_argument("--alice", default=None)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=_default_seed())
    p.add_argument("--pooled", action="store_true", help="also report MI of all trials concatenated")
    p.add_argument("--force", action="store_true", help="run even if eta > 0.5")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--report", default=None, help="write the aggregate JSON to PATH")

    p = add("asymptotic", cmd_asymptotic, "limiting frequencies and operating point")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("qber-grid", cmd_qber_grid, "is a QBER realizable with an integer number of wrong bits")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    add("dist", cmd_dist, "per-bit conditional (bob, eve) distributions as JSON")

    p = add("convergence", cmd_convergence, "balanced-quarters experiments over several lengths")
    p.add_argument("--lengths", required=True, help="comma-separated, each divisible by 4")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=_default_seed())

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except PremiseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PREMISE
    except PingPongError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
