"""Command-line surface: gen / oracle / kurtosis / score.

JSON results go to stdout, data files to the given paths, logs to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .datasets import read_dataset, write_dataset
from .kurtosis import export_sweep, kurtosis_sweep
from .mixtures import case_spec
from .oracle import evaluate_dataset, mismatch_probe


def _default_threads() -> int:
    env = os.environ.get("OFDM_SCSS_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parse_w_list(text: str, default_step: int = 4) -> list[int]:
    """Parse either '15,21,31' or a range 'LO..HI[:STEP]' (default step 4)."""
    if ".." in text:
        span, _, step = text.partition(":")
        lo, _, hi = span.partition("..")
        step_i = int(step) if step else default_step
        return list(range(int(lo), int(hi) + 1, step_i))
    return [int(tok) for tok in text.split(",") if tok]


def _cmd_gen(args) -> int:
    spec = case_spec(args.case, args.seed)
    manifest = write_dataset(
        spec,
        count=args.count,
        out_path=args.out,
        dtype=args.dtype,
        include_b=args.include_b,
        threads=args.threads,
    )
    summary = {
        "case": manifest.case_id,
        "count": manifest.count,
        "seed": manifest.master_seed,
        "dtype": manifest.dtype,
        "includes_interference": manifest.includes_interference,
        "out": str(args.out),
        "threads": args.threads,
    }
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_oracle(args) -> int:
    if args.k_wrong is not None:
        manifest, _ = read_dataset(args.data)
        spec = manifest.spec()
        report = mismatch_probe(spec, args.k_wrong, manifest.count)
        print(json.dumps(report.to_dict(), indent=2))
        return 0
    report = evaluate_dataset(args.data)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def _cmd_kurtosis(args) -> int:
    spec = case_spec(args.case, args.seed)
    w_list = _parse_w_list(args.w_list)
    sweep = kurtosis_sweep(
        spec,
        w_list,
        n_realizations=args.n,
        master_seed=args.seed,
        offset_policy=args.offset_policy,
        gaussian_control=args.gaussian_control,
        threads=args.threads,
        strict_sequential=args.strict_sequential,
    )
    export_sweep(sweep, args.out)
    print(json.dumps(sweep.manifest(), indent=2))
    return 0


def _cmd_score(args) -> int:
    report = evaluate_dataset(args.data, estimates_path=args.estimates)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdm-scss",
        description="Co-channel OFDM mixture benchmark toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a mixture dataset")
    p.add_argument("--case", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dtype", choices=["f32", "f64"], default="f64")
    p.add_argument("--include-b", action="store_true",
                   help="also store the interference series")
    p.add_argument("--out", required=True, help="output base path (.bin/.json)")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="oracle-separate a dataset, or probe a "
                                      "mismatched transform order")
    p.add_argument("--data", required=True)
    p.add_argument("--k-wrong", type=int, default=None,
                   help="run the mismatched-FFT probe with this order")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("kurtosis", help="window-length kurtosis sweep (CSV out)")
    p.add_argument("--case", type=int, choices=[1, 2, 3, 4], required=True)
    p.add_argument("--w-list", required=True,
                   help="comma list '15,21,31' or range '16..200:4'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--offset-policy", choices=["fixed", "random"],
                   default="random")
    p.add_argument("--gaussian-control", action="store_true",
                   help="replace windows with i.i.d. standard Gaussian samples")
    p.add_argument("--strict-sequential", action="store_true")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_kurtosis)

    p = sub.add_parser("score", help="score an external estimates file")
    p.add_argument("--data", required=True)
    p.add_argument("--estimates", required=True)
    p.set_defaults(func=_cmd_score)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", None) is None:
        args.threads = _default_threads()
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
