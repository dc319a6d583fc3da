"""Benchmark grid, label map, separator fits, and the tuning file.

The tuner times every algorithm over a grid of matrix shapes, labels each
cell by its fastest algorithm, detects the brute-force cutoff for tiny
squares, fits two hard-margin separators over the features (r, n), and
assembles the eight dispatch parameters.  Timed regions run strictly
sequentially on fresh random float64 matrices; relative speeds are what
matter, and they do not depend on the element type.
"""
from __future__ import annotations

import datetime
import math
import platform
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import svm
from .algorithms import AlgorithmId, run_algorithm
from .core import ElementKind, as_matrix
from .dispatch import TuningParams, select_algorithm

GRID_N = range(2, 25)
GRID_RATIOS = (1 / 8, 1 / 4, 3 / 8, 1 / 2, 5 / 8, 3 / 4, 7 / 8, 1.0)

#: Brute force is never timed past 14 columns, nor past this many
#: row-times-permutation steps (roughly a tenth of a second compiled).
COMBINATORIC_MAX_COLS = 14
COMBINATORIC_MAX_STEPS = 50_000_000

#: Subset/sign walks get out of hand past this many columns.
WALK_MAX_COLS = 26

#: Cells whose runner-up is within this factor carry no real signal and
#: are dropped before the hard-margin fit.
NEAR_TIE_FILTER = 1.05


@dataclass(frozen=True)
class BenchmarkSample:
    """Median wall time of one algorithm at one grid shape."""

    algorithm: AlgorithmId
    m: int
    n: int
    ratio: float
    median_time: float
    trials: int
    kind: ElementKind = ElementKind.FLOAT64
    feasible: bool = True


@dataclass(frozen=True)
class LabeledPoint:
    """A grid cell labeled with its fastest algorithm.

    ``margin_ratio`` is the runner-up median over the winner median
    (infinite when only one algorithm was feasible); ``best_median`` is
    the winner's median time.
    """

    r: float
    n: int
    m: int
    label: AlgorithmId
    margin_ratio: float
    best_median: float = 0.0


@dataclass(frozen=True)
class SeparatingPlane:
    """w_r * r + w_n * n + bias = 0; positive side = first trained class."""

    weight_r: float
    weight_n: float
    bias: float
    fallback: bool = False  # set when the classes were not separable

    def evaluate(self, r: float, n: float) -> float:
        return self.weight_r * r + self.weight_n * n + self.bias


@dataclass(frozen=True)
class TuningReport:
    params: TuningParams
    grid: list
    plane_small: SeparatingPlane
    plane_large: SeparatingPlane
    intersection: tuple | None


def algorithm_feasible(alg: AlgorithmId, m: int, n: int) -> bool:
    """Whether timing this cell is affordable on the tuning grid."""
    if alg is AlgorithmId.COMBINATORIC:
        return n <= COMBINATORIC_MAX_COLS and m * math.perm(n, m) <= COMBINATORIC_MAX_STEPS
    return n <= WALK_MAX_COLS


#: Amortize calls so each timed sample spans at least this long; cells far
#: below timer resolution would otherwise label on pure scheduler noise.
MIN_SAMPLE_SECONDS = 100e-6


def time_algorithm(alg: AlgorithmId, m: int, n: int, trials: int = 5,
                   seed=None) -> BenchmarkSample:
    """Median wall time over fresh random float64 matrices in [-1, 1].

    One warm-up run is discarded (it also sizes the repeat loop used to
    amortize very fast cells).  The kernels are pinned to compiled mode so
    every cell measures the same execution engine.  Infeasible cells come
    back flagged, with an infinite median.
    """
    if trials < 3:
        raise ValueError(f"need at least 3 trials, got {trials}")
    ratio = m / n
    if not algorithm_feasible(alg, m, n):
        return BenchmarkSample(alg, m, n, ratio, math.inf, 0, feasible=False)
    rng = np.random.default_rng(seed)
    mats = [as_matrix(rng.uniform(-1.0, 1.0, (m, n))) for _ in range(trials + 1)]
    t0 = time.perf_counter()
    run_algorithm(mats[0], alg, compiled=True)
    warm = time.perf_counter() - t0
    repeats = max(1, min(2000, round(MIN_SAMPLE_SECONDS / max(warm, 1e-9))))
    times = []
    for mat in mats[1:]:
        t0 = time.perf_counter()
        for _ in range(repeats):
            run_algorithm(mat, alg, compiled=True)
        t1 = time.perf_counter()
        times.append((t1 - t0) / repeats)
    return BenchmarkSample(alg, m, n, ratio, statistics.median(times), trials)


def grid_shapes(n_range=GRID_N, ratios=GRID_RATIOS):
    """The deduplicated (m, n) cells of the tuning grid."""
    seen = set()
    out = []
    for n in n_range:
        for ratio in ratios:
            m = max(1, round(ratio * n))
            if m > n or (m, n) in seen:
                continue
            seen.add((m, n))
            out.append((m, n))
    return out


def build_label_grid(n_range=GRID_N, ratios=GRID_RATIOS, trials: int = 5,
                     seed: int = 0) -> list[LabeledPoint]:
    """Time every algorithm on every grid cell and label the winners.

    Cells where no algorithm is feasible are omitted.
    """
    points = []
    cell_seed = seed
    for m, n in grid_shapes(n_range, ratios):
        samples = []
        for alg in AlgorithmId:
            cell_seed += 1
            samples.append(time_algorithm(alg, m, n, trials=trials, seed=cell_seed))
        feas = [s for s in samples if s.feasible]
        if not feas:
            continue
        feas.sort(key=lambda s: s.median_time)
        best = feas[0]
        margin = feas[1].median_time / best.median_time if len(feas) > 1 else math.inf
        points.append(LabeledPoint(r=m / n, n=n, m=m, label=best.algorithm,
                                   margin_ratio=margin, best_median=best.median_time))
    return points


def detect_small_square_cutoff(grid: list[LabeledPoint]) -> int:
    """Largest n with brute force fastest on every square up to n (else 1)."""
    squares = sorted((p for p in grid if p.m == p.n and p.n >= 2), key=lambda p: p.n)
    cutoff = 1
    for p in squares:
        if p.label is not AlgorithmId.COMBINATORIC:
            break
        cutoff = p.n
    return cutoff


def fit_hard_margin_svm(points: list[LabeledPoint], class_a: AlgorithmId,
                        class_b: AlgorithmId,
                        near_tie: float = NEAR_TIE_FILTER) -> SeparatingPlane:
    """Maximum-margin line between two label classes over features (r, n).

    Points whose runner-up was within ``near_tie`` of the winner carry no
    signal and are dropped first.  The positive side is ``class_a``.  If
    the retained points are not separable the result is a
    minimum-cost fit with ``fallback=True``, where misrouting a point
    costs its margin ratio minus one (so decisive cells stay on the right
    side at the expense of near-boundary ones).
    """
    kept = [p for p in points if p.label in (class_a, class_b)
            and p.margin_ratio >= near_tie]
    if not any(p.label is class_a for p in kept):
        raise ValueError(f"no retained training points labeled {class_a.value}")
    if not any(p.label is class_b for p in kept):
        raise ValueError(f"no retained training points labeled {class_b.value}")
    X = np.array([[p.r, p.n] for p in kept], dtype=float)
    y = np.array([1.0 if p.label is class_a else -1.0 for p in kept])
    fit = svm.max_margin_plane(X, y)
    if fit is not None:
        w, b, _ = fit
        return SeparatingPlane(float(w[0]), float(w[1]), float(b))
    weights = np.array([min(p.margin_ratio, 10.0) - 1.0 for p in kept])
    w, b, _ = svm.min_misclassification_plane(X, y, weights=weights)
    return SeparatingPlane(float(w[0]), float(w[1]), float(b), fallback=True)


def plane_intersection(p: SeparatingPlane, q: SeparatingPlane):
    """(r, n) where the two boundaries cross, or None when parallel."""
    a = np.array([[p.weight_r, p.weight_n], [q.weight_r, q.weight_n]])
    rhs = np.array([-p.bias, -q.bias])
    if abs(np.linalg.det(a)) < 1e-12 * max(1.0, float(np.abs(a).max()) ** 2):
        return None
    r, n = np.linalg.solve(a, rhs)
    return float(r), float(n)


def assemble_params(grid: list[LabeledPoint], plane1: SeparatingPlane,
                    plane2: SeparatingPlane, p4: int, p8: int) -> TuningParams:
    """Pack the planes and thresholds into TuningParams.

    ``plane1`` must put combinatoric-labeled points on its positive side
    and ``plane2`` glynn-labeled points on its positive side; a plane with
    no training point strictly on either side is rejected.
    """
    for plane, pos, neg in ((plane1, AlgorithmId.COMBINATORIC, AlgorithmId.GLYNN),
                            (plane2, AlgorithmId.GLYNN, AlgorithmId.RYSER)):
        relevant = [p for p in grid if p.label in (pos, neg)]
        if relevant and not any(abs(plane.evaluate(p.r, p.n)) > 1e-12 for p in relevant):
            raise ValueError("separating plane orientation is ambiguous: every "
                             "training point lies on the plane")
    p4 = min(p4, p8)
    return TuningParams(
        p1=plane1.weight_r, p2=plane1.weight_n, p3=plane1.bias,
        p4=float(p4),
        p5=plane2.weight_r, p6=plane2.weight_n, p7=plane2.bias,
        p8=float(p8),
        source="machine-tuned",
        created_at=datetime.datetime.now(datetime.timezone.utc)
        .isoformat(timespec="seconds"),
        host=f"{platform.node()} ({platform.machine()})",
    )


def _always_negative_plane() -> SeparatingPlane:
    return SeparatingPlane(0.0, -1.0, 0.0)


def _always_positive_plane() -> SeparatingPlane:
    return SeparatingPlane(0.0, 1.0, 0.0)


def _fit_or_default(points, class_a, class_b) -> SeparatingPlane:
    labels = {p.label for p in points if p.margin_ratio >= NEAR_TIE_FILTER}
    if class_a in labels and class_b in labels:
        return fit_hard_margin_svm(points, class_a, class_b)
    # one class never wins here: steer the branch away from (or onto) it
    return _always_negative_plane() if class_a not in labels else _always_positive_plane()


def _derive_p8(plane1, plane2, grid, max_n):
    """Regime boundary: the column where the lines cross, raised if needed
    so that every decisive brute-force cell stays in the small regime
    (the large regime has no brute-force branch to dispatch to)."""
    inter = plane_intersection(plane1, plane2)
    if inter is not None and 2 <= inter[1] <= max_n:
        p8 = round(inter[1])
    else:
        comb_ns = [p.n for p in grid if p.label is AlgorithmId.COMBINATORIC]
        p8 = max(comb_ns) + 1 if comb_ns else 2
    decisive = [p.n for p in grid if p.label is AlgorithmId.COMBINATORIC
                and p.margin_ratio >= 1.25]
    if decisive:
        p8 = max(p8, max(decisive))
    return max(2, min(p8, max_n)), inter


def run_tuning(n_range=GRID_N, ratios=GRID_RATIOS, trials: int = 5,
               seed: int = 0) -> TuningReport:
    """The whole pipeline: grid, labels, planes, parameters.

    The brute-force/glynn line trains on the whole grid minus the squares
    already hard-coded through p4; the glynn/ryser line is fit twice, the
    second pass restricted to the large regime located by the first.
    """
    grid = build_label_grid(n_range, ratios, trials=trials, seed=seed)
    max_n = max(p.n for p in grid)
    C, G, R = AlgorithmId.COMBINATORIC, AlgorithmId.GLYNN, AlgorithmId.RYSER

    p4 = detect_small_square_cutoff(grid)
    unpinned = [p for p in grid if not (p.m == p.n and p.n <= p4)]

    plane1 = _fit_or_default(unpinned, C, G)
    plane2 = _fit_or_default(grid, G, R)
    p8, _ = _derive_p8(plane1, plane2, grid, max_n)

    large = [p for p in grid if p.n > p8]
    plane2 = _fit_or_default(large or grid, G, R)
    p8, inter = _derive_p8(plane1, plane2, grid, max_n)

    params = assemble_params(grid, plane1, plane2, p4, p8)
    return TuningReport(params, grid, plane1, plane2, inter)


def evaluate_dispatch(params: TuningParams, shapes, trials: int = 5,
                      seed: int = 0):
    """Probe how far the selected algorithm is from the measured fastest.

    Returns one (m, n, chosen, slowdown) tuple per probe shape, where
    slowdown is chosen-median / fastest-median among feasible algorithms.
    """
    out = []
    probe_seed = seed + 90000
    for m, n in shapes:
        chosen = select_algorithm(m, n, params)
        medians = {}
        for alg in AlgorithmId:
            probe_seed += 1
            s = time_algorithm(alg, m, n, trials=trials, seed=probe_seed)
            if s.feasible:
                medians[alg] = s.median_time
        best = min(medians.values())
        slowdown = medians[chosen] / best if chosen in medians else math.inf
        out.append((m, n, chosen, slowdown))
    return out


# --------------------------------------------------------------------------
# Tuning file format: line-oriented key=value, format_version 1
# --------------------------------------------------------------------------

_FILE_KEYS = ("format_version", "source", "host", "created_at",
              "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8")


def emit_tuning_file(params: TuningParams, path) -> None:
    """Write the tuning file; floats use their shortest round-trip form."""
    lines = [
        "format_version=1",
        f"source={params.source}",
        f"host={params.host}",
        f"created_at={params.created_at}",
    ]
    for i in range(1, 9):
        lines.append(f"p{i}={getattr(params, f'p{i}')!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_tuning_file(path) -> TuningParams:
    """Parse and validate a tuning file written by :func:`emit_tuning_file`."""
    text = Path(path).read_text(encoding="utf-8")
    found = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        if key not in _FILE_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        if key in found:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        found[key] = value
    for key in _FILE_KEYS:
        if key not in found:
            raise ValueError(f"{path}: missing required key {key!r}")
    if found["format_version"] != "1":
        raise ValueError(f"{path}: unsupported format_version {found['format_version']!r}")
    return TuningParams(
        p1=float(found["p1"]), p2=float(found["p2"]), p3=float(found["p3"]),
        p4=float(found["p4"]), p5=float(found["p5"]), p6=float(found["p6"]),
        p7=float(found["p7"]), p8=float(found["p8"]),
        source=found["source"], created_at=found["created_at"], host=found["host"],
    )
