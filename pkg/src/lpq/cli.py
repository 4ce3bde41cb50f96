"""Command-line front end.

Subcommands: spectrum, compare, recover, find-offset, trials, sweep.
Options can also come from a JSON config file (flat object keyed like the
long flags); explicit flags override the file.  Runs are fully determined
by their options, including the seed, so output files are byte-identical
across repeats.

Exit codes: 0 success, 2 validation failure, 3 no recovery candidate,
4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analysis, closedform, offset, recovery, simulator
from .errors import ValidationError, VerificationFailed
from .oracle import OracleHandle, build_oracle
from .spectrum import CASES, Algorithm

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NO_CANDIDATE = 3
EXIT_VERIFICATION = 4


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _write_json(out: str | None, obj) -> None:
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    _write_text(out, text)


def _csv_lines(header: list[str], rows: list[list[str]], trailer: list[str] = ()) -> str:
    lines = ["# schema=1", ",".join(header)]
    lines += [",".join(row) for row in rows]
    lines += list(trailer)
    return "\n".join(lines) + "\n"


def _require(args, *keys) -> None:
    for key in keys:
        if getattr(args, key, None) is None:
            raise ValidationError(f"missing required option --{key}")


def _spec_from(args):
    _require(args, "n", "m", "p")
    return build_oracle(args.n, args.m, args.p, args.s, strict=args.strict)


def cmd_spectrum(args) -> int:
    spec = _spec_from(args)
    alg = Algorithm(args.alg)
    closed = closedform.closed_form_table(spec, alg, iterations=args.iterations_override)
    simulated = simulator.simulated_table(spec, alg, iterations=args.iterations_override)
    dev = np.abs(closed.pr - simulated.pr)
    if args.format == "json":
        _write_json(
            args.out,
            {
                "schema": 1,
                "instance": {"n": spec.n, "m": spec.m, "p": spec.p, "s": spec.s},
                "algorithm": alg.value,
                "max_abs_deviation": float(dev.max()),
                "rows": [
                    {
                        "y": y,
                        "case": CASES[closed.codes[y]].value,
                        "pr_closedform": float(closed.pr[y]),
                        "pr_simulated": float(simulated.pr[y]),
                        "abs_deviation": float(dev[y]),
                    }
                    for y in range(spec.n)
                ],
            },
        )
    else:
        rows = [
            [
                str(y),
                CASES[closed.codes[y]].value,
                _fmt(closed.pr[y]),
                _fmt(simulated.pr[y]),
                _fmt(dev[y]),
            ]
            for y in range(spec.n)
        ]
        _write_text(
            args.out,
            _csv_lines(
                ["y", "case", "pr_closedform", "pr_simulated", "abs_deviation"],
                rows,
                [f"# max_abs_deviation={_fmt(dev.max())}"],
            ),
        )
    return EXIT_OK


def cmd_compare(args) -> int:
    spec = _spec_from(args)
    tables = {alg: closedform.closed_form_table(spec, alg) for alg in Algorithm}
    bounds = {
        alg: closedform.pr_ratio_bounds(spec, alg) for alg in (Algorithm.QFT, Algorithm.QHS)
    }
    succ = recovery.success_set(spec)
    sums = {alg: float(tables[alg].pr[succ].sum()) for alg in Algorithm}
    rows = []
    verdicts = []
    for y in range(spec.n):
        case = CASES[tables[Algorithm.QFT].codes[y]].value
        if case in ("zero", "null"):
            rows.append([str(y), case, "excluded", "excluded", "excluded"])
            continue
        amp = float(tables[Algorithm.AMPLIFIED].pr[y])
        ratios = {}
        ok = True
        for alg in (Algorithm.QFT, Algorithm.QHS):
            ratio = amp / float(tables[alg].pr[y])
            ratios[alg] = ratio
            ok &= bounds[alg].lower - 1e-9 <= ratio <= bounds[alg].upper + 1e-9
        verdicts.append(ok)
        rows.append(
            [str(y), case, _fmt(ratios[Algorithm.QFT]), _fmt(ratios[Algorithm.QHS]),
             "pass" if ok else "FAIL"]
        )
    summary = {
        "bounds": {
            alg.value: {
                "lower": b.lower,
                "upper": b.upper,
                "approx": b.approx,
                "gap": b.gap,
            }
            for alg, b in bounds.items()
        },
        "success_set": [int(y) for y in succ],
        "success_probability": {alg.value: sums[alg] for alg in Algorithm},
        "summed_ratio": {
            alg.value: (sums[Algorithm.AMPLIFIED] / sums[alg] if sums[alg] else None)
            for alg in (Algorithm.QFT, Algorithm.QHS)
        },
        "all_rows_within_bounds": bool(all(verdicts)) if verdicts else True,
    }
    if args.format == "json":
        _write_json(args.out, {"schema": 1, "summary": summary, "rows": rows})
    else:
        trailer = [f"# {k}={json.dumps(v, sort_keys=True)}" for k, v in summary.items()]
        _write_text(
            args.out,
            _csv_lines(["y", "case", "ratio_vs_qft", "ratio_vs_qhs", "verdict"], rows, trailer),
        )
    return EXIT_OK


def cmd_recover(args) -> int:
    if args.verify:
        spec = _spec_from(args)
        result = analysis.verified_recovery(OracleHandle(spec), args.y, args.q_max)
        n = spec.n
    else:
        _require(args, "n")
        n = args.n
        if not 0 <= args.y < n:
            raise ValidationError(f"y={args.y} outside 0..{n - 1}")
        result = recovery.recover_period(args.y, n, args.q_max)
    obj = result.to_json_obj()
    obj["n"] = n
    if args.format == "json":
        _write_json(args.out, obj)
    else:
        rows = [[str(c.d), str(c.q)] for c in result.candidates]
        trailer = [
            f"# accepted={result.accepted}",
            f"# status={result.status.value}",
        ]
        _write_text(args.out, _csv_lines(["d", "q"], rows, trailer))
    if result.status is recovery.RecoveryStatus.NO_CANDIDATE:
        return EXIT_NO_CANDIDATE
    if result.status is recovery.RecoveryStatus.GCD_OBSTRUCTION:
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_find_offset(args) -> int:
    spec = _spec_from(args)
    handle = OracleHandle(spec)
    search = (
        offset.find_offset_counting
        if args.method == "counting"
        else offset.find_offset_decreasing
    )
    period = args.period if args.period is not None else spec.p
    try:
        result = search(handle, period, spec.m, args.seed)
    except VerificationFailed as exc:
        _write_json(args.out, {"schema": 1, "error": str(exc), "period_candidate": period})
        return EXIT_VERIFICATION
    obj = result.to_json_obj()
    obj["schema"] = 1
    obj["period_candidate"] = period
    if args.format == "json":
        _write_json(args.out, obj)
    else:
        rows = [[k, json.dumps(v)] for k, v in sorted(obj.items())]
        _write_text(args.out, _csv_lines(["field", "value"], rows))
    return EXIT_OK


def _workfactor_rows(spec) -> list[dict]:
    reports = analysis.workfactor_comparison(spec)
    rows = []
    for rep in reports:
        certified = analysis.expected_trials(rep.algorithm, spec)
        if rep.algorithm is Algorithm.QFT:
            verdict = rep.expected_runs >= spec.n / (4 * spec.m)
        elif rep.algorithm is Algorithm.QHS:
            verdict = rep.expected_runs >= spec.n / (2 * spec.m)
        else:
            verdict = True
        rows.append(
            {
                "algorithm": rep.algorithm.value,
                "per_run_cost": rep.per_run_cost,
                "expected_runs": rep.expected_runs,
                "total_cost": rep.total_cost,
                "ratio_vs_amplified": rep.ratio_vs_amplified,
                "certified_expected_trials": certified.expected_trials,
                "bound_verdict": "pass" if verdict else "FAIL",
            }
        )
    return rows


def cmd_trials(args) -> int:
    spec = _spec_from(args)
    rows = _workfactor_rows(spec)
    payload = {"schema": 1, "workfactor": rows}
    if args.runs:
        stats = analysis.monte_carlo_trials(Algorithm(args.alg), spec, args.runs, args.seed)
        payload["monte_carlo"] = {"algorithm": args.alg, **stats.to_json_obj()}
    if args.format == "json":
        _write_json(args.out, payload)
    else:
        header = list(rows[0].keys())
        body = [[_fmt(r[k]) if isinstance(r[k], float) else str(r[k]) for k in header] for r in rows]
        trailer = []
        if "monte_carlo" in payload:
            trailer = [f"# monte_carlo={json.dumps(payload['monte_carlo'], sort_keys=True)}"]
        _write_text(args.out, _csv_lines(header, body, trailer))
    return EXIT_OK


def cmd_sweep(args) -> int:
    _require(args, "m", "p")
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    n = args.n_min
    band = []
    while n <= args.n_max:
        spec = build_oracle(n, args.m, args.p, args.s, strict=args.strict)
        rows = _workfactor_rows(spec)
        path = out_dir / f"workfactor_n{n}.{args.format}"
        if args.format == "json":
            _write_json(str(path), {"schema": 1, "n": n, "workfactor": rows})
        else:
            header = list(rows[0].keys())
            body = [
                [_fmt(r[k]) if isinstance(r[k], float) else str(r[k]) for k in header]
                for r in rows
            ]
            _write_text(str(path), _csv_lines(header, body))
        qft_row = next(r for r in rows if r["algorithm"] == "qft")
        band.append((n, qft_row["ratio_vs_amplified"] / math.sqrt(n / args.m)))
        n *= 2
    for n, value in band:
        sys.stdout.write(f"n={n} ratio/sqrt(n/m)={_fmt(value)}\n")
    return EXIT_OK


_COMMON = {
    "n": dict(type=int, help="label-space size"),
    "m": dict(type=int, help="marked-set size"),
    "p": dict(type=int, help="period"),
    "s": dict(type=int, help="offset"),
    "seed": dict(type=int, help="PRNG seed (default 0)"),
    "out": dict(type=str, help="output path (default stdout)"),
    "format": dict(choices=["csv", "json"], help="output format (default csv)"),
    "q_max": dict(type=int, help="largest candidate period (default isqrt(n))"),
    "iterations_override": dict(type=int, help="override the amplification round count"),
}

_DEFAULTS = {"s": 0, "seed": 0, "format": "csv", "strict": True, "alg": "amplified"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpq",
        description="Exact simulation and analysis of period finding on marked arithmetic progressions",
    )
    parser.add_argument("--config", type=str, help="JSON file with default options")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, extra=()):
        sp = sub.add_parser(name)
        for key in ("n", "m", "p", "s", "seed", "out", "format", "q_max", "iterations_override"):
            sp.add_argument(f"--{key.replace('_', '-')}", default=None, **_COMMON[key])
        sp.add_argument("--strict", action=argparse.BooleanOptionalAction, default=None)
        for flag, kwargs in extra:
            sp.add_argument(flag, **kwargs)
        sp.set_defaults(func=func)
        return sp

    add("spectrum", cmd_spectrum, [("--alg", dict(choices=[a.value for a in Algorithm], default=None))])
    add("compare", cmd_compare)
    add(
        "recover",
        cmd_recover,
        [
            ("--y", dict(type=int, required=True, help="measured frequency")),
            ("--verify", dict(action="store_true", help="check the candidate against the oracle")),
        ],
    )
    add(
        "find-offset",
        cmd_find_offset,
        [
            ("--method", dict(choices=["counting", "decreasing"], default="decreasing")),
            ("--period", dict(type=int, default=None, help="period candidate (default: the true one)")),
        ],
    )
    add(
        "trials",
        cmd_trials,
        [
            ("--alg", dict(choices=[a.value for a in Algorithm], default=None)),
            ("--runs", dict(type=int, default=None, help="Monte-Carlo runs")),
        ],
    )
    add(
        "sweep",
        cmd_sweep,
        [
            ("--n-min", dict(type=int, default=256)),
            ("--n-max", dict(type=int, default=16384)),
        ],
    )
    return parser


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    config = {}
    if args.config:
        config = json.loads(Path(args.config).read_text())
    for key, value in vars(args).items():
        if value is None:
            if key in config:
                setattr(args, key, config[key])
            elif key in _DEFAULTS:
                setattr(args, key, _DEFAULTS[key])
    return args


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config(args)
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
