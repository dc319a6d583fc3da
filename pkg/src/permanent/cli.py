"""Command-line front end: compute, tune, bench, and precision.

Matrices are plain text: rows separated by ';' or newlines, elements by
whitespace.  Integer tokens give an exact integer computation; any token
with a '.' or exponent promotes the matrix to float64, and tokens like
``1.5+0.25i`` promote it to complex128.

Exit codes: 0 success, 2 bad input, 3 integer overflow, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algorithms import AlgorithmId, StepBudgetExceeded, run_algorithm
from .core import ElementKind, Matrix, make_matrix, transpose
from .dispatch import default_params, select_algorithm
from .oracles import precision_csv, run_precision_suite
from .tuner import (GRID_RATIOS, GRID_N, emit_tuning_file, grid_shapes,
                    load_tuning_file, plane_intersection, run_tuning,
                    time_algorithm)

_ALGO_CHOICES = ["opt"]
for _a in ("combinatoric", "ryser", "glynn"):
    _ALGO_CHOICES += [_a, f"{_a}_square", f"{_a}_rectangular"]


def parse_matrix_text(text: str) -> Matrix:
    """Parse the CLI matrix format into a Matrix."""
    rows = []
    for chunk in text.replace(";", "\n").splitlines():
        chunk = chunk.strip()
        if chunk:
            rows.append(chunk.split())
    if not rows:
        raise ValueError("empty matrix input")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("ragged rows: every row needs the same number of elements")
    parsed = []
    kind_rank = 0  # 0 int, 1 float, 2 complex
    for tok in (t for row in rows for t in row):
        try:
            parsed.append(int(tok))
            continue
        except ValueError:
            pass
        try:
            parsed.append(float(tok))
            kind_rank = max(kind_rank, 1)
            continue
        except ValueError:
            pass
        try:
            parsed.append(complex(tok.lower().replace("i", "j")))
            kind_rank = max(kind_rank, 2)
        except ValueError:
            raise ValueError(f"cannot parse element {tok!r}") from None
    if kind_rank == 2:
        parsed = [complex(v) for v in parsed]
    elif kind_rank == 1:
        parsed = [float(v) for v in parsed]
    return make_matrix(len(rows), n, parsed)


def _sci(x: float) -> str:
    return np.format_float_scientific(x, unique=True)


def format_value(value) -> str:
    """Integers verbatim, floats in scientific notation, complex as a+bi."""
    if isinstance(value, int):
        return str(value)
    if isinstance(value, complex):
        sign = "-" if value.imag < 0 else "+"
        return f"{_sci(value.real)}{sign}{_sci(abs(value.imag))}i"
    return _sci(value)


def _tuning_cache_path() -> Path:
    override = os.environ.get("PERMANENT_TUNING_FILE")
    if override:
        return Path(override)
    base = os.environ.get("XDG_CACHE_HOME", "~/.cache")
    return Path(base).expanduser() / "permanent" / "tuning.txt"


def _resolve_params(tuning_file):
    """Explicit file, else the PERMANENT_TUNE=ON cache, else defaults."""
    if tuning_file:
        return load_tuning_file(tuning_file)
    if os.environ.get("PERMANENT_TUNE", "").upper() == "ON":
        cache = _tuning_cache_path()
        if not cache.exists():
            report = run_tuning()
            cache.parent.mkdir(parents=True, exist_ok=True)
            emit_tuning_file(report.params, cache)
        return load_tuning_file(cache)
    return default_params()


def cmd_compute(args) -> int:
    if args.input:
        text = Path(args.input).read_text(encoding="utf-8")
    elif args.matrix:
        text = " ".join(args.matrix)
    else:
        text = sys.stdin.read()
    mat = parse_matrix_text(text)

    name = args.algorithm
    if name == "opt":
        if mat.m > mat.n:
            mat = transpose(mat)
        params = _resolve_params(args.tuning_file)
        alg = select_algorithm(mat.m, mat.n, params)
    else:
        base, _, suffix = name.partition("_")
        alg = AlgorithmId(base)
        if suffix == "square":
            if mat.m != mat.n:
                raise ValueError(f"{name} needs a square matrix, got {mat.m}x{mat.n}")
        elif suffix == "rectangular":
            if mat.m > mat.n:
                mat = transpose(mat)
            if alg is AlgorithmId.GLYNN and mat.m == mat.n:
                raise ValueError(f"{name} needs m < n, got a square matrix")
        else:
            if mat.m > mat.n:
                mat = transpose(mat)
    if args.verbose:
        print(f"algorithm: {alg.value}", file=sys.stderr)
    result = run_algorithm(mat, alg)
    if result.overflowed:
        print("error: intermediate or result exceeded the signed 64-bit range",
              file=sys.stderr)
        return 3
    print(format_value(result.value))
    return 0


def cmd_tune(args) -> int:
    n_range = range(2, args.max_n + 1)
    report = run_tuning(n_range=n_range, trials=args.trials, seed=args.seed)
    emit_tuning_file(report.params, args.output)
    p = report.params
    for i in range(1, 9):
        print(f"p{i} = {getattr(p, f'p{i}')!r}")
    inter = plane_intersection(report.plane_small, report.plane_large)
    if inter is None:
        print("boundaries are parallel (no intersection)")
    else:
        print(f"boundaries intersect at n = {inter[1]:.2f}, r = {inter[0]:.2f}")
    print(f"tuning file written to {args.output}")
    return 0


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


def cmd_bench(args) -> int:
    rows = []
    seed = args.seed
    for m, n in grid_shapes(range(2, args.max_n + 1), GRID_RATIOS):
        for alg in AlgorithmId:
            seed += 1
            s = time_algorithm(alg, m, n, trials=args.trials, seed=seed)
            if s.feasible:
                rows.append(s)
    rows.sort(key=lambda s: (s.algorithm.value, s.n, s.m))
    out = _open_out(args.output)
    try:
        out.write("algorithm,m,n,ratio,median_seconds,trials\n")
        for s in rows:
            out.write(f"{s.algorithm.value},{s.m},{s.n},{s.ratio!r},"
                      f"{s.median_time!r},{s.trials}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_precision(args) -> int:
    records = run_precision_suite(n_range=range(2, args.max_n + 1),
                                  seed=args.seed,
                                  cauchy_attempts=args.attempts)
    text = precision_csv(records)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permanent",
        description="Exact permanents of rectangular matrices.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute one permanent")
    c.add_argument("--algorithm", choices=_ALGO_CHOICES, default="opt")
    c.add_argument("--tuning-file", help="tuning file for the opt dispatch")
    c.add_argument("--input", help="read the matrix from this file")
    c.add_argument("--verbose", action="store_true",
                   help="report the dispatched algorithm on stderr")
    c.add_argument("matrix", nargs="*",
                   help="inline matrix, rows separated by ';'")
    c.set_defaults(fn=cmd_compute)

    t = sub.add_parser("tune", help="benchmark this machine and write a tuning file")
    t.add_argument("--output", default="tuning.txt")
    t.add_argument("--trials", type=int, default=5)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--max-n", type=int, default=max(GRID_N))
    t.set_defaults(fn=cmd_tune)

    b = sub.add_parser("bench", help="time every algorithm over the tuning grid")
    b.add_argument("--output", help="CSV output path (default stdout)")
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--max-n", type=int, default=max(GRID_N))
    b.set_defaults(fn=cmd_bench)

    p = sub.add_parser("precision", help="digits-lost table over the analytic families")
    p.add_argument("--output", help="CSV output path (default stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=16)
    p.add_argument("--attempts", type=int, default=1000,
                   help="Cauchy samples per order (100000 reproduces the full protocol)")
    p.set_defaults(fn=cmd_precision)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, TypeError, StepBudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
