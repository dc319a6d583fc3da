"""The three exact permanent algorithms, in square and rectangular form.

All operations here require the caller to have normalized the input so
that m <= n (an m > n matrix has the same permanent as its transpose; the
top-level wrappers in :mod:`permanent` do this once at the boundary).

Results follow the element kind of the input: integer matrices produce
exact integers with 64-bit overflow detection, float and complex matrices
produce float64/complex128 values.

Small matrices run on interpreted kernels; once the enumeration exceeds
``COMPILE_STEP_THRESHOLD`` steps the JIT-compiled kernels take over.
Pass ``compiled=True`` (or ``False``) to pin the mode, e.g. for timing.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import _kernels
from .core import INT64_MAX, ElementKind, Matrix, PermanentResult


class AlgorithmId(enum.Enum):
    """The closed set of algorithms known to dispatch, tuner, and CLI."""

    COMBINATORIC = "combinatoric"
    RYSER = "ryser"
    GLYNN = "glynn"


class StepBudgetExceeded(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


#: Refuse combinatoric runs above this many column permutations; at roughly
#: 10^9 enumerated permutations per second that is about an hour of work.
DEFAULT_STEP_BUDGET = 2_000_000_000

#: Enumerations below this many steps stay on the interpreted kernels,
#: which avoids the JIT machinery for throwaway small calls.
COMPILE_STEP_THRESHOLD = 20_000

# Gray-walk step counters live in int64, which caps the subset walks.
_MAX_ENUM_COLS = 62


def _require(cond: bool, msg: str):
    if not cond:
        raise ValueError(msg)


def _use_compiled(steps: int, compiled) -> bool:
    if compiled is None:
        return steps >= COMPILE_STEP_THRESHOLD
    return bool(compiled)


def _int_result(value, overflowed) -> PermanentResult:
    return PermanentResult(int(value), bool(overflowed))


def _plain_result(value, kind: ElementKind) -> PermanentResult:
    if kind is ElementKind.FLOAT64:
        return PermanentResult(float(value))
    return PermanentResult(complex(value))


def permanent_combinatoric(a: Matrix, step_budget: int = DEFAULT_STEP_BUDGET,
                           compiled=None) -> PermanentResult:
    """Sum of products over all m-permutations of the n columns.

    Exact for integer matrices (absent overflow).  Cost is about
    m * n!/(n-m)!, so runs whose permutation count exceeds ``step_budget``
    are refused rather than silently taking days.
    """
    _require(a.m <= a.n, f"need m <= n, got {a.m}x{a.n}; transpose first")
    perms = math.perm(a.n, a.m)
    if perms > step_budget:
        raise StepBudgetExceeded(
            f"combinatoric on {a.m}x{a.n} needs {perms} permutations "
            f"(> budget {step_budget})")
    use = _use_compiled(perms, compiled)
    if a.kind is ElementKind.INT64:
        value, ovf = _kernels.get_kernel("comb_dfs_int", use)(a.data)
        return _int_result(value, ovf)
    value = _kernels.get_kernel("comb_dfs", use)(a.data)
    return _plain_result(value, a.kind)


def permanent_ryser_square(a: Matrix, compiled=None) -> PermanentResult:
    """Inclusion-exclusion over column subsets, square matrices only.

    The subsets are walked in Gray-code order with running row sums, so
    each of the 2^n steps costs O(n).
    """
    _require(a.m == a.n, f"square form needs m == n, got {a.m}x{a.n}")
    _require(a.n <= _MAX_ENUM_COLS, f"subset walk over {a.n} columns exceeds 2^62 steps")
    steps = (1 << a.n) - 1
    use = _use_compiled(steps, compiled)
    if a.kind is ElementKind.INT64:
        value, ovf = _kernels.get_kernel("ryser_sq_int", use)(a.data)
        return _int_result(value, ovf)
    value = _kernels.get_kernel("ryser_sq", use)(a.data)
    return _plain_result(value, a.kind)


def _ryser_weights(m: int, n: int):
    """Signed binomial weight of each subset size s: (-1)^(m-s) C(n-s, m-s)."""
    w = [0] * (m + 1)
    for s in range(1, m + 1):
        w[s] = (-1) ** (m - s) * math.comb(n - s, m - s)
    return w


def permanent_ryser_rectangular(a: Matrix, compiled=None) -> PermanentResult:
    """General Ryser form for m <= n: subset sizes 1..m, binomial-weighted.

    Combinations of each size are enumerated lexicographically with
    incremental row-sum updates, so the cost is driven by
    sum_s C(n, s), which strongly rewards very rectangular shapes.
    """
    _require(a.m <= a.n, f"need m <= n, got {a.m}x{a.n}; transpose first")
    weights = _ryser_weights(a.m, a.n)
    steps = sum(math.comb(a.n, s) for s in range(1, a.m + 1))
    use = _use_compiled(steps, compiled)
    if a.kind is ElementKind.INT64:
        if any(abs(w) > INT64_MAX for w in weights):
            return PermanentResult(0, True)
        warr = np.array(weights, dtype=np.int64)
        value, ovf = _kernels.get_kernel("ryser_rect_int", use)(a.data, warr)
        return _int_result(value, ovf)
    warr = np.array(weights, dtype=a.kind.dtype)
    value = _kernels.get_kernel("ryser_rect", use)(a.data, warr)
    return _plain_result(value, a.kind)


def permanent_glynn_square(a: Matrix, compiled=None) -> PermanentResult:
    """Polarization-identity form over 2^(n-1) sign vectors, square only.

    The sign vectors are walked in Gray order (first sign pinned to +1)
    with running weighted column sums.  Integer inputs accumulate in
    int64 and the single final division is verified to be exact.
    """
    _require(a.m == a.n, f"square form needs m == n, got {a.m}x{a.n}")
    _require(a.n <= _MAX_ENUM_COLS, f"sign walk over {a.n} columns exceeds 2^61 steps")
    steps = 1 << (a.n - 1)
    use = _use_compiled(steps, compiled)
    if a.kind is ElementKind.INT64:
        acc, ovf = _kernels.get_kernel("glynn_sq_int", use)(a.data)
        if ovf:
            return PermanentResult(0, True)
        denom = 1 << (a.n - 1)
        if acc % denom:  # cannot happen without a 64-bit excursion
            return PermanentResult(0, True)
        return PermanentResult(int(acc) // denom)
    acc = _kernels.get_kernel("glynn_sq", use)(a.data)
    return _plain_result(acc / (2.0 ** (a.n - 1)), a.kind)


def permanent_glynn_rectangular(a: Matrix, compiled=None) -> PermanentResult:
    """Glynn form for m < n via virtual rows of ones.

    The padded matrix is never materialized: the n-m phantom rows only
    shift every column sum by the running sum of their signs.  The result
    carries the extra 1/(n-m)! normalization.
    """
    _require(a.m < a.n, f"rectangular form needs m < n, got {a.m}x{a.n}")
    _require(a.n <= _MAX_ENUM_COLS, f"sign walk over {a.n} columns exceeds 2^61 steps")
    steps = 1 << (a.n - 1)
    use = _use_compiled(steps, compiled)
    if a.kind is ElementKind.INT64:
        acc, ovf = _kernels.get_kernel("glynn_rect_int", use)(a.data)
        if ovf:
            return PermanentResult(0, True)
        denom = (1 << (a.n - 1)) * math.factorial(a.n - a.m)
        if acc % denom:
            return PermanentResult(0, True)
        return PermanentResult(int(acc) // denom)
    acc = _kernels.get_kernel("glynn_rect", use)(a.data)
    value = acc / (2.0 ** (a.n - 1)) / float(math.factorial(a.n - a.m))
    return _plain_result(value, a.kind)


def run_algorithm(a: Matrix, alg: AlgorithmId, compiled=None,
                  step_budget: int = DEFAULT_STEP_BUDGET) -> PermanentResult:
    """Run one algorithm on an m <= n matrix, picking its square or
    rectangular form by shape."""
    if alg is AlgorithmId.COMBINATORIC:
        return permanent_combinatoric(a, step_budget=step_budget, compiled=compiled)
    if alg is AlgorithmId.RYSER:
        if a.m == a.n:
            return permanent_ryser_square(a, compiled=compiled)
        return permanent_ryser_rectangular(a, compiled=compiled)
    if alg is AlgorithmId.GLYNN:
        if a.m == a.n:
            return permanent_glynn_square(a, compiled=compiled)
        return permanent_glynn_rectangular(a, compiled=compiled)
    raise ValueError(f"unknown algorithm {alg!r}")
