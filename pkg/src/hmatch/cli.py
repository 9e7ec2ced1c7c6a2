"""Command-line entry point: ``hmatch <subcommand> ...``.

Exit codes: 0 success, 2 bad input or configuration, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .algorithms import make_packer, parse_algorithm
from .analysis import (OPT_MAX_N, T_EXACT_TERMS, WEIGHTINGS, max_bin_weight, opt_bruteforce,
                       t_infinity_report)
from .core import DomainError, SequenceFormatError, format_sequence, lower_bound, read_sequence
from .generators import KINDS, Seed, custom_spec, generate, lookup
from .harness import (ConfigError, ExperimentConfig, ExperimentError, fmt6, results_csv,
                      results_json, run_experiment)

EXIT_OK, EXIT_INPUT, EXIT_RUNTIME = 0, 2, 3

_EXIT_HELP = "exit codes: 0 success, 2 malformed input or config, 3 runtime failure"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _load(path: str):
    try:
        return read_sequence(path)
    except SequenceFormatError as e:
        raise _UsageError(f"{path}: {e}") from None
    except (OSError, UnicodeDecodeError) as e:
        raise _UsageError(f"{path}: {e}") from None


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def cmd_pack(args) -> int:
    try:
        parse_algorithm(args.algo)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    s = _load(args.input)
    try:
        packer = make_packer(args.algo, s.denom)
    except ValueError as e:  # e.g. SS beyond its denominator limit
        raise _UsageError(str(e)) from None
    for i, x in enumerate(s.items):
        try:
            packer.step(x)
        except DomainError as e:
            raise _UsageError(f"{args.input}: line {i + 2}: {e}") from None
    cost = packer.cost
    lb = lower_bound(s)
    ratio = Fraction(cost, lb) if lb else Fraction(1)
    print(f"algo={args.algo} n={len(s)} cost={cost} waste={fmt6(cost - s.total)} "
          f"lower_bound={lb} ratio={fmt6(ratio)}")
    if args.dump_bins:
        for b in packer.bins:
            items = " ".join(str(x) for x in b.items)
            print(f"bin {b.id} tag={b.tag or '-'} level={b.level}/{s.denom} items: {items}")
    return EXIT_OK


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for p in pairs:
        key, sep, val = p.partition("=")
        if not sep or not key:
            raise _UsageError(f"--param expects k=v, got {p!r}")
        try:
            params[key] = float(val)
        except ValueError:
            raise _UsageError(f"--param {key}: not a number: {val!r}") from None
    return params


def cmd_gen(args) -> int:
    params = _parse_params(args.param)
    try:
        if args.dist == "custom":
            missing = [f for f in ("kind", "e", "lo", "hi") if getattr(args, f) is None]
            if missing:
                raise _UsageError("custom distribution needs " + ", ".join("--" + m for m in missing))
            spec = custom_spec(args.kind, args.e, args.lo, args.hi, **params)
        else:
            if any(v is not None for v in (args.kind, args.e, args.lo, args.hi)) or params:
                raise _UsageError("--kind/--e/--lo/--hi/--param apply only to --dist custom")
            spec = lookup(args.dist)
        s = generate(spec, args.n, Seed(args.seed))
    except (KeyError, ValueError) as e:
        raise _UsageError(str(e).strip("'\"")) from None
    text = format_sequence(s)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="ascii", newline="\n")
    return EXIT_OK


def cmd_run(args) -> int:
    try:
        text = Path(args.config).read_text()
    except OSError as e:
        raise _UsageError(str(e)) from None
    try:
        cfg = ExperimentConfig.from_json(text)
    except ConfigError as e:
        raise _UsageError(f"config: {e}") from None
    try:
        results = run_experiment(cfg, jobs=args.jobs)
    except ExperimentError as e:
        print(f"run failed: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    if args.format == "json":
        body = results_json(results)
    else:
        body = results_csv(results, timestamp=not args.no_timestamp)
    out = args.output or cfg.output
    if out and out != "-":
        Path(out).write_text(body, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_verify_weights(args) -> int:
    try:
        value, wit = max_bin_weight(WEIGHTINGS[args.case], args.resolution)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    print(f"case {args.case}: max bin weight {_frac(value)} = {float(value):.9f}")
    print(f"endpoint limit {_frac(wit.limit_weight)} = {float(wit.limit_weight):.9f}")
    for label, size in wit.items:
        print(f"  {label:<8} size {_frac(size)}")
    if wit.filler_label and wit.filler:
        print(f"  {wit.filler_label:<8} fill {_frac(wit.filler)}")
    return EXIT_OK


def cmd_tinfinity(args) -> int:
    if args.terms < 1:
        raise _UsageError("--terms must be at least 1")
    value, truncated = t_infinity_report(args.terms)
    note = f" (truncated to {T_EXACT_TERMS} terms)" if truncated else ""
    print(f"T_inf({args.terms}) = {value:.12f}{note}")
    return EXIT_OK


def cmd_opt(args) -> int:
    s = _load(args.input)
    try:
        value = opt_bruteforce(s, max_n=args.max_n)
    except ValueError as e:
        raise _UsageError(str(e)) from None
    print(f"opt={value} lower_bound={lower_bound(s)} n={len(s)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hmatch", description="Online bin packing toolkit.", epilog=_EXIT_HELP)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("pack", help="pack a sequence file with one algorithm", epilog=_EXIT_HELP)
    sp.add_argument("--algo", required=True, help="algorithm id, e.g. bf or hm:20")
    sp.add_argument("--input", required=True, help="sequence file ('D <denom>' then one numerator per line)")
    sp.add_argument("--dump-bins", action="store_true", help="print every bin with its tag")
    sp.set_defaults(func=cmd_pack)

    sp = sub.add_parser("gen", help="write a random sequence file", epilog=_EXIT_HELP)
    sp.add_argument("--dist", required=True, help="built-in set-instance name or 'custom'")
    sp.add_argument("--kind", choices=KINDS, help="distribution kind (custom only)")
    sp.add_argument("--e", type=int, help="bin capacity in units (custom only)")
    sp.add_argument("--lo", type=int, help="smallest size (custom only)")
    sp.add_argument("--hi", type=int, help="largest size (custom only)")
    sp.add_argument("--n", type=int, required=True, help="number of items")
    sp.add_argument("--seed", type=int, default=1, help="master seed (default 1)")
    sp.add_argument("--param", action="append", default=[], metavar="K=V",
                    help="kind parameter such as theta=0.5 (custom only, repeatable)")
    sp.add_argument("--out", required=True, help="output file, '-' for stdout")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("run", help="run a JSON-configured experiment", epilog=_EXIT_HELP)
    sp.add_argument("--config", required=True, help="experiment config (JSON)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--no-timestamp", action="store_true", help="omit the CSV timestamp comment")
    sp.add_argument("--output", help="override the config's output path ('-' for stdout)")
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("verify-weights", help="maximum bin weight of a weighting", epilog=_EXIT_HELP)
    sp.add_argument("--case", choices=("1", "2"), required=True)
    sp.add_argument("--resolution", type=int, default=192_000, help="size grid (multiple of 96)")
    sp.set_defaults(func=cmd_verify_weights)

    sp = sub.add_parser("tinfinity", help="partial sums of the Harmonic limit series", epilog=_EXIT_HELP)
    sp.add_argument("--terms", type=int, default=5)
    sp.set_defaults(func=cmd_tinfinity)

    sp = sub.add_parser("opt", help="exact optimum of a small sequence", epilog=_EXIT_HELP)
    sp.add_argument("--input", required=True)
    sp.add_argument("--max-n", type=int, default=OPT_MAX_N, help=f"item cap (default {OPT_MAX_N})")
    sp.set_defaults(func=cmd_opt)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"hmatch {args.command}: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001 - surfaced as a runtime failure
        print(f"hmatch {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
