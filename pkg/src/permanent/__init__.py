"""Exact permanents of general rectangular matrices.

Three exact algorithms (brute-force combinatoric, Ryser
inclusion-exclusion, Glynn sign vectors) plus ``opt``, which picks the
fastest one for the matrix shape from tuned parameters:

>>> import numpy as np, permanent
>>> permanent.opt(np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))
450

Integer matrices give exact integer results (OverflowError if any 64-bit
intermediate is exceeded); float and complex matrices give float64 and
complex128 results.  Matrices with more rows than columns are transposed
internally, which leaves the permanent unchanged.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .algorithms import (AlgorithmId, DEFAULT_STEP_BUDGET, StepBudgetExceeded,
                         permanent_combinatoric, permanent_glynn_rectangular,
                         permanent_glynn_square, permanent_ryser_rectangular,
                         permanent_ryser_square, run_algorithm)
from .core import (ElementKind, Matrix, PermanentResult, as_matrix,
                   make_matrix, transpose)
from .dispatch import (TuningParams, default_params, load_params,
                       permanent_opt, select_algorithm)
from .reference import permanent_reference

__all__ = [
    "AlgorithmId", "ElementKind", "Matrix", "PermanentResult", "TuningParams",
    "as_matrix", "combinatoric", "combinatoric_rectangular",
    "combinatoric_square", "default_params", "glynn", "glynn_rectangular",
    "glynn_square", "load_params", "make_matrix", "opt",
    "permanent_combinatoric", "permanent_glynn_rectangular",
    "permanent_glynn_square", "permanent_opt", "permanent_reference",
    "permanent_ryser_rectangular", "permanent_ryser_square", "run_algorithm",
    "ryser", "ryser_rectangular", "ryser_square", "select_algorithm",
    "transpose", "StepBudgetExceeded", "DEFAULT_STEP_BUDGET",
]


def _unwrap(result: PermanentResult):
    if result.overflowed:
        raise OverflowError("an intermediate or the result exceeded the signed "
                            "64-bit range; use a float matrix for an approximate value")
    return result.value


def _normalized(a) -> Matrix:
    mat = as_matrix(a)
    return transpose(mat) if mat.m > mat.n else mat


def combinatoric(a, step_budget: int = DEFAULT_STEP_BUDGET):
    """Permanent by brute-force enumeration of column permutations."""
    return _unwrap(permanent_combinatoric(_normalized(a), step_budget=step_budget))


def ryser(a):
    """Permanent by inclusion-exclusion over column subsets."""
    mat = _normalized(a)
    if mat.m == mat.n:
        return _unwrap(permanent_ryser_square(mat))
    return _unwrap(permanent_ryser_rectangular(mat))


def glynn(a):
    """Permanent by the sign-vector polarization identity."""
    mat = _normalized(a)
    if mat.m == mat.n:
        return _unwrap(permanent_glynn_square(mat))
    return _unwrap(permanent_glynn_rectangular(mat))


def opt(a, params: TuningParams | None = None, tuning_file=None):
    """Permanent by whichever algorithm the tuning parameters select."""
    if params is None and tuning_file is not None:
        params = load_params(tuning_file)
    return _unwrap(permanent_opt(a, params=params))


def _square_only(a) -> Matrix:
    mat = as_matrix(a)
    if mat.m != mat.n:
        raise ValueError(f"square form needs m == n, got {mat.m}x{mat.n}")
    return mat


def combinatoric_square(a, step_budget: int = DEFAULT_STEP_BUDGET):
    return _unwrap(permanent_combinatoric(_square_only(a), step_budget=step_budget))


def combinatoric_rectangular(a, step_budget: int = DEFAULT_STEP_BUDGET):
    return _unwrap(permanent_combinatoric(as_matrix(a), step_budget=step_budget))


def ryser_square(a):
    return _unwrap(permanent_ryser_square(_square_only(a)))


def ryser_rectangular(a):
    return _unwrap(permanent_ryser_rectangular(as_matrix(a)))


def glynn_square(a):
    return _unwrap(permanent_glynn_square(_square_only(a)))


def glynn_rectangular(a):
    return _unwrap(permanent_glynn_rectangular(as_matrix(a)))
