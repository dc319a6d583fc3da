"""Shape-based algorithm selection: the ``opt`` entry point.

Eight tuning parameters steer the choice.  ``p1..p3`` and ``p5..p7`` are
two separating lines over the features (r, n) with r = m/n; ``p4`` is the
brute-force cutoff for tiny squares and ``p8`` the small/large regime
boundary:

* n <= p8, square with n <= p4      -> combinatoric
* n <= p8 otherwise: p1*r+p2*n+p3>0 -> combinatoric, else glynn
* n >  p8:           p5*r+p6*n+p7>0 -> glynn,        else ryser

Comparisons are strict; a point exactly on a line takes the else branch.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .algorithms import AlgorithmId, DEFAULT_STEP_BUDGET, run_algorithm
from .core import Matrix, PermanentResult, as_matrix, transpose

_SOURCES = ("default", "machine-tuned")


@dataclass(frozen=True)
class TuningParams:
    """The eight dispatch parameters plus provenance metadata."""

    p1: float
    p2: float
    p3: float
    p4: float
    p5: float
    p6: float
    p7: float
    p8: float
    source: str = "default"
    created_at: str = ""
    host: str = ""

    def __post_init__(self):
        if self.source not in _SOURCES:
            raise ValueError(f"source must be one of {_SOURCES}, got {self.source!r}")
        if self.p8 < 2:
            raise ValueError(f"p8 must be >= 2, got {self.p8}")
        if self.p4 > self.p8:
            raise ValueError(f"need p4 <= p8, got p4={self.p4}, p8={self.p8}")
        if self.p1 == 0.0 and self.p2 == 0.0:
            raise ValueError("first separating line has a zero normal (p1, p2)")
        if self.p5 == 0.0 and self.p6 == 0.0:
            raise ValueError("second separating line has a zero normal (p5, p6)")


# Frozen from a tuning run of this package (the measured boundary slopes),
# normalized so that the two boundaries meet at (n, r) = (13, 0.29) with
# p8 = 13.  Regenerate with ``permanent tune`` (or PERMANENT_TUNE=ON) for
# machine-specific numbers.
_DEFAULT = TuningParams(
    p1=-1.0,
    p2=-0.105,
    p3=1.655,
    p4=5.0,
    p5=1.0,
    p6=-0.007,
    p7=-0.199,
    p8=13.0,
    source="default",
)


def default_params() -> TuningParams:
    """The compiled-in baseline parameters."""
    return _DEFAULT


def load_params(path=None) -> TuningParams:
    """Load a tuning file, or fall back to the compiled-in defaults."""
    if path is None:
        return default_params()
    from .tuner import load_tuning_file

    return load_tuning_file(path)


def select_algorithm(m: int, n: int, params: TuningParams) -> AlgorithmId:
    """Pick the algorithm expected to be fastest for an m-by-n matrix, m <= n."""
    if m > n:
        raise ValueError(f"need m <= n, got {m}x{n}; transpose first")
    r = m / n
    if n <= params.p8:
        if m == n and n <= params.p4:
            return AlgorithmId.COMBINATORIC
        h1 = params.p1 * r + params.p2 * n + params.p3
        return AlgorithmId.COMBINATORIC if h1 > 0 else AlgorithmId.GLYNN
    h2 = params.p5 * r + params.p6 * n + params.p7
    return AlgorithmId.GLYNN if h2 > 0 else AlgorithmId.RYSER


def permanent_opt(a, params: TuningParams | None = None, compiled=None,
                  step_budget: int = DEFAULT_STEP_BUDGET) -> PermanentResult:
    """Compute the permanent with the selected algorithm.

    Accepts any matrix; m > n inputs are transposed once here.  The value
    matches every individual algorithm (within their tolerances) — only
    the speed depends on the selection.
    """
    mat = as_matrix(a)
    if mat.m > mat.n:
        mat = transpose(mat)
    if params is None:
        params = default_params()
    alg = select_algorithm(mat.m, mat.n, params)
    return run_algorithm(mat, alg, compiled=compiled, step_budget=step_budget)
