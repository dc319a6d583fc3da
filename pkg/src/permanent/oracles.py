"""Analytic ground-truth permanents and the digits-lost precision score.

Three matrix families have closed-form permanents and anchor the
precision benchmark: all-ones matrices (n!/(n-m)!), zero-padded
identities (exactly 1), and Cauchy matrices, whose permanent is the
determinant ratio det(C o C)/det(C).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .algorithms import DEFAULT_STEP_BUDGET, AlgorithmId, run_algorithm
from .core import INT64_MAX, ElementKind, Matrix, as_matrix

#: double-precision unit roundoff step, the yardstick of digits_lost
MACHEPS = float(np.finfo(np.float64).eps)

#: digits_lost is undefined at zero error; exact matches report this floor
FLOOR_SENTINEL = 0.0

_COMBINATORIC_MAX_COLS = 14


def ones_matrix(m: int, n: int, kind: ElementKind = ElementKind.FLOAT64) -> Matrix:
    return as_matrix(np.ones((m, n), dtype=kind.dtype))


def ones_permanent(m: int, n: int):
    """n!/(n-m)! — exact int while it fits in int64, float64 beyond."""
    if m > n:
        raise ValueError(f"need m <= n, got {m}x{n}")
    exact = math.perm(n, m)
    return exact if exact <= INT64_MAX else float(exact)


def identity_matrix(m: int, n: int, kind: ElementKind = ElementKind.FLOAT64) -> Matrix:
    """delta_ij with the extra columns filled with zeros."""
    if m > n:
        raise ValueError(f"need m <= n, got {m}x{n}")
    return as_matrix(np.eye(m, n, dtype=kind.dtype))


def identity_permanent(m: int, n: int) -> int:
    if m > n:
        raise ValueError(f"need m <= n, got {m}x{n}")
    return 1


# --------------------------------------------------------------------------
# Cauchy matrices and Borchardt's determinant ratio
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CauchySpec:
    """Generators of a Cauchy matrix C_ij = 1/(x_i + y_j)."""

    n: int
    x: np.ndarray
    y: np.ndarray
    condition: float

    def matrix(self) -> Matrix:
        return as_matrix(1.0 / (self.x[:, None] + self.y[None, :]))


def sample_cauchy(n: int, attempts: int = 1000, seed=None) -> CauchySpec:
    """Draw x in [0.25, 0.75]^n and y in [-0.75, -0.25]^n repeatedly and
    keep the best-conditioned matrix.

    The ranges keep denominators from collapsing, and taking the minimum
    condition number over many draws keeps the determinant ratio
    trustworthy.  Deterministic under a fixed seed.
    """
    if attempts < 1:
        raise ValueError("need at least one attempt")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(attempts):
        x = rng.uniform(0.25, 0.75, n)
        y = rng.uniform(-0.75, -0.25, n)
        denom = x[:, None] + y[None, :]
        if np.abs(denom).min() < 1e-12:
            continue  # essentially singular; cond would be astronomical
        cond = float(np.linalg.cond(1.0 / denom))
        if not np.isfinite(cond):
            continue
        if best is None or cond < best.condition:
            best = CauchySpec(n, x.copy(), y.copy(), cond)
    if best is None:
        raise ArithmeticError("every sampled Cauchy matrix was singular")
    return best


def det_partial_pivot(a: np.ndarray) -> float:
    """Determinant by row-pivoted triangular elimination.

    Raises ArithmeticError when a pivot falls below 1e3 * macheps * |A|,
    i.e. the matrix is numerically singular.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    norm = float(np.abs(a).sum(axis=1).max())
    tol = 1e3 * MACHEPS * norm
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= tol:
            raise ArithmeticError(f"pivot {a[p, k]!r} below tolerance {tol!r}")
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        a[k + 1:, k:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k:])
    return sign * float(np.prod(np.diag(a)))


def borchardt_permanent(spec: CauchySpec) -> float:
    """per(C) = det(C o C) / det(C) for a Cauchy matrix."""
    c = 1.0 / (spec.x[:, None] + spec.y[None, :])
    return det_partial_pivot(c * c) / det_partial_pivot(c)


# --------------------------------------------------------------------------
# Precision metric and suite
# --------------------------------------------------------------------------

def digits_lost(evaluated, truth) -> float:
    """log10 of the relative error, measured in units of macheps digits.

    Zero means the result is correct to roundoff; an exact match reports
    the floor sentinel since the log is undefined there.
    """
    if truth == 0:
        raise ValueError("digits_lost needs a nonzero true value")
    if evaluated == truth:
        return FLOOR_SENTINEL
    rel = abs(evaluated - truth) / abs(truth)
    return math.log10(rel) - math.log10(MACHEPS)


@dataclass(frozen=True)
class PrecisionRecord:
    family: str
    algorithm: AlgorithmId
    m: int
    n: int
    kind: ElementKind
    digits: float | None  # None when overflowed
    overflow: bool


_FAMILIES = ("cauchy", "identity", "ones")
_SUITE_RATIOS = (0.25, 0.5, 0.75, 1.0)


def run_precision_suite(families=_FAMILIES,
                        algorithms=tuple(AlgorithmId),
                        n_range=range(2, 17),
                        kinds=(ElementKind.INT64, ElementKind.FLOAT64),
                        ratios=_SUITE_RATIOS,
                        seed: int = 0,
                        cauchy_attempts: int = 1000) -> list[PrecisionRecord]:
    """One digits-lost record per (family, algorithm, shape, kind).

    Overflows (flagged integer results, non-finite float results) are
    recorded in the row, never raised.  Cauchy rows are square float64
    only, since their truth comes from a determinant ratio.
    """
    records = []
    cauchy_cache = {}
    for family in sorted(families):
        for alg in sorted(algorithms, key=lambda a: a.value):
            for n in n_range:
                shapes = []
                for ratio in ratios:
                    m = max(1, round(ratio * n))
                    if m <= n and (m, n) not in shapes:
                        shapes.append((m, n))
                for m, n_ in shapes:
                    if alg is AlgorithmId.COMBINATORIC and (
                            n_ > _COMBINATORIC_MAX_COLS
                            or math.perm(n_, m) > DEFAULT_STEP_BUDGET):
                        continue
                    if family == "cauchy" and m != n_:
                        continue
                    for kind in kinds:
                        if family == "cauchy" and kind is not ElementKind.FLOAT64:
                            continue
                        rec = _precision_cell(family, alg, m, n_, kind,
                                              seed, cauchy_attempts, cauchy_cache)
                        records.append(rec)
    records.sort(key=lambda r: (r.family, r.algorithm.value, r.n, r.m, r.kind.value))
    return records


def _precision_cell(family, alg, m, n, kind, seed, attempts, cache) -> PrecisionRecord:
    if family == "ones":
        mat = ones_matrix(m, n, kind)
        truth = ones_permanent(m, n)
    elif family == "identity":
        mat = identity_matrix(m, n, kind)
        truth = identity_permanent(m, n)
    elif family == "cauchy":
        spec = cache.get(n)
        if spec is None:
            spec = sample_cauchy(n, attempts=attempts, seed=seed + n)
            cache[n] = spec
        mat = spec.matrix()
        truth = borchardt_permanent(spec)
    else:
        raise ValueError(f"unknown family {family!r}")
    result = run_algorithm(mat, alg)
    if result.overflowed:
        return PrecisionRecord(family, alg, m, n, kind, None, True)
    value = result.value
    if not math.isfinite(abs(value)):
        return PrecisionRecord(family, alg, m, n, kind, None, True)
    return PrecisionRecord(family, alg, m, n, kind, digits_lost(value, truth), False)


def precision_csv(records) -> str:
    """Render records as CSV: family,algorithm,m,n,kind,digits_lost,overflow."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "algorithm", "m", "n", "kind", "digits_lost", "overflow"])
    for r in records:
        writer.writerow([
            r.family, r.algorithm.value, r.m, r.n, r.kind.value,
            "" if r.digits is None else repr(r.digits),
            "true" if r.overflow else "false",
        ])
    return buf.getvalue()
