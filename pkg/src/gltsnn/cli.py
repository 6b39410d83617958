"""Command-line entry point: fit, predict, bench, and gen subcommands.

Every subcommand is deterministic given its flags; --threads only moves
work across cores and never changes output bytes. Exit codes: 0 success,
2 usage error (bad flags or flag values), 1 runtime error (bad files,
mismatched shapes).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .datasets import gen_friedman1, load_csv, load_table, write_csv
from .estimator import GltsnnConfig, deserialize, fit_gltsnn, predict_gltsnn, serialize
from .harness import run_experiments


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gltsnn",
        description="Cascade-ensemble regression: train, predict, benchmark, generate data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a model on a CSV and write it as JSON")
    fit.add_argument("data", help="training CSV with a header row")
    fit.add_argument("--target", required=True, help="name of the target column")
    fit.add_argument("--out", required=True, help="path for the model JSON")
    fit.add_argument("--seed", type=int, default=0, help="estimator seed (default 0)")
    fit.add_argument("--folds", type=int, default=10, help="time-split folds (default 10)")
    fit.add_argument("--num-knn", type=int, default=100, help="cascade seeds (default 100)")
    fit.add_argument("--tree-depth", type=int, default=None, help="depth cap (default none)")
    fit.add_argument("--threads", type=int, default=None, help="workers (default: cores)")

    predict = sub.add_parser("predict", help="predict a CSV with a saved model")
    predict.add_argument("model", help="model JSON written by fit")
    predict.add_argument("data", help="CSV containing the model's feature columns")
    predict.add_argument("--out", required=True, help="path for the prediction CSV")
    predict.add_argument("--threads", type=int, default=None, help="workers (default: cores)")

    bench = sub.add_parser("bench", help="run the six-cell OOF MSE benchmark")
    bench.add_argument("--seed", type=int, default=0, help="fold-assignment seed (default 0)")
    bench.add_argument("--out", default=None, help="also write the report as CSV")
    bench.add_argument("--threads", type=int, default=None, help="workers (default: cores)")

    gen = sub.add_parser("gen", help="generate a synthetic dataset CSV")
    gen.add_argument("generator", choices=["friedman1"], help="generator name")
    gen.add_argument("--n", type=int, default=1000, help="row count (default 1000)")
    gen.add_argument("--d", type=int, default=10, help="feature count >= 5 (default 10)")
    gen.add_argument("--noise", type=float, default=0.0, help="target noise sigma (default 0)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument("--out", required=True, help="path for the dataset CSV")
    return parser


def _usage_error(message: str) -> int:
    print(f"gltsnn: error: {message}", file=sys.stderr)
    return 2


def _runtime_error(message: str) -> int:
    print(f"gltsnn: error: {message}", file=sys.stderr)
    return 1


def _check_threads(threads: int | None) -> None:
    if threads is not None and threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")


def _cmd_fit(args) -> int:
    try:
        cfg = GltsnnConfig(
            random_seed=args.seed,
            tree_depth=args.tree_depth,
            num_folds=args.folds,
            num_knn=args.num_knn,
        )
        _check_threads(args.threads)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        ds = load_csv(args.data, args.target)
        start = time.perf_counter()
        model = fit_gltsnn(ds, cfg, threads=args.threads)
        seconds = time.perf_counter() - start
        with open(args.out, "wb") as handle:
            handle.write(serialize(model))
    except (ValueError, OSError) as exc:
        return _runtime_error(str(exc))
    print(f"fit: n={ds.n_rows} d={ds.n_features} seconds={seconds:.3f} -> {args.out}")
    return 0


def _cmd_predict(args) -> int:
    try:
        _check_threads(args.threads)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        with open(args.model, "rb") as handle:
            model = deserialize(handle.read())
        columns, matrix = load_table(args.data)
        missing = [name for name in model.feature_names if name not in columns]
        if missing:
            raise ValueError(
                f"model expects {model.n_features} feature columns "
                f"{model.feature_names}, data provides {len(columns)} columns "
                f"{columns} (missing {missing})"
            )
        X = np.ascontiguousarray(
            matrix[:, [columns.index(name) for name in model.feature_names]]
        )
        preds = predict_gltsnn(model, X, threads=args.threads)
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("prediction\n")
            for value in preds:
                handle.write(f"{float(value)!r}\n")
    except (ValueError, OSError) as exc:
        return _runtime_error(str(exc))
    print(f"predict: {preds.shape[0]} rows -> {args.out}")
    return 0


def _cmd_bench(args) -> int:
    try:
        _check_threads(args.threads)
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        report = run_experiments(args.seed, threads=args.threads)
        print(report.format_table(), end="")
        if args.out is not None:
            with open(args.out, "w", encoding="utf-8", newline="") as handle:
                handle.write(report.to_csv())
    except (ValueError, OSError) as exc:
        return _runtime_error(str(exc))
    return 0


def _cmd_gen(args) -> int:
    try:
        if args.n < 1:
            raise ValueError(f"n must be at least 1, got {args.n}")
        if args.d < 5:
            raise ValueError(f"d must be at least 5, got {args.d}")
        if args.noise < 0:
            raise ValueError(f"noise must be non-negative, got {args.noise}")
    except ValueError as exc:
        return _usage_error(str(exc))
    try:
        ds = gen_friedman1(args.n, d=args.d, noise=args.noise, seed=args.seed)
        write_csv(ds, args.out)
    except (ValueError, OSError) as exc:
        return _runtime_error(str(exc))
    print(f"gen: {ds.n_rows} rows, {ds.n_features} features -> {args.out}")
    return 0


_COMMANDS = {
    "fit": _cmd_fit,
    "predict": _cmd_predict,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage problems and 0 for --help.
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
