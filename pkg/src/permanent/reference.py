"""Plain transcriptions of the base algorithm pseudocode, kept as oracles.

These walk their enumerations naively (fresh sums every step, no Gray
tricks) and do all arithmetic in native Python, so integer results are
exact at any size.  They exist to cross-check the optimized kernels and
are guarded to small matrices.
"""
from __future__ import annotations

import itertools

from .algorithms import AlgorithmId, StepBudgetExceeded
from .core import Matrix, PermanentResult, INT64_MAX, INT64_MIN, ElementKind
from .iterate import binomial, iter_combinations

#: Reference code is quadratic per enumeration step; keep it on toy sizes.
MAX_REFERENCE_COLS = 20


def reference_combinatoric(a: Matrix):
    """Brute-force sum over the m-permutations of the columns."""
    rows = a.tolist()
    m, n = a.m, a.n
    total = 0
    for perm in itertools.permutations(range(n), m):
        p = 1
        for i in range(m):
            p *= rows[i][perm[i]]
        total += p
    return total


def reference_ryser_square(a: Matrix):
    """Subset loop with alternating sign by subset size, square matrices."""
    rows = a.tolist()
    m = a.m
    out = 0
    for k in range(2 ** m):
        rowsumprod = 1
        for i in range(m):
            rowsum = 0
            for j in range(m):
                if k & (1 << j):
                    rowsum += rows[i][j]
            rowsumprod *= rowsum
        sign = -1 if bin(k).count("1") & 1 else 1
        out += rowsumprod * sign
    final_sign = -1 if m & 1 else 1
    return out * final_sign


def reference_ryser_rectangular(a: Matrix):
    """Loop over subset sizes m-k, combinations weighted by C(n-m+k, k)."""
    rows = a.tolist()
    m, n = a.m, a.n
    sign = 1
    out = 0
    for k in range(m):
        bin_coeff = binomial(n - m + k, k)
        permsum = 0
        for comb in iter_combinations(n, m - k):
            colprod = 1
            for i in range(m):
                matsum = 0
                for j in range(m - k):
                    matsum += rows[i][comb[j]]
                colprod *= matsum
            permsum += colprod * sign * bin_coeff
        out += permsum
        sign = -sign
    return out


def _glynn_walk(rows, m, n):
    """Shared sign-array walk; ``m`` real rows, ``n - m`` virtual ones rows."""
    delta = [1] * n
    out = 1
    for j in range(n):
        s = 0
        for i in range(m):
            s += rows[i][j] * delta[i]
        for k in range(m, n):
            s += delta[k]
        out *= s
    bound = n - 1
    pos = 0
    sign = 1
    perm = list(range(n))
    while pos != bound:
        sign = -sign
        delta[bound - pos] = -delta[bound - pos]
        prod = 1
        for j in range(n):
            s = 0
            for i in range(m):
                s += rows[i][j] * delta[i]
            for k in range(m, n):
                s += delta[k]
            prod *= s
        out += sign * prod
        perm[0] = 0
        perm[pos] = perm[pos + 1]
        pos += 1
        perm[pos] = pos
        pos = perm[0]
    return out


def _exact_divide(out, denom, kind: ElementKind):
    if kind is ElementKind.INT64:
        if out % denom:
            raise ArithmeticError("sign-vector sum is not divisible by its normalization")
        return out // denom
    return out / denom


def reference_glynn_square(a: Matrix):
    """Sign-array walk recomputing every weighted column sum per step."""
    rows = a.tolist()
    m = a.m
    out = _glynn_walk(rows, m, m)
    return _exact_divide(out, 2 ** (m - 1), a.kind)


def reference_glynn_rectangular(a: Matrix):
    """Same walk with an extended sign array covering the virtual ones rows."""
    rows = a.tolist()
    m, n = a.m, a.n
    out = _glynn_walk(rows, m, n)
    denom = 2 ** (n - 1)
    for f in range(2, n - m + 1):
        denom *= f
    return _exact_divide(out, denom, a.kind)


def permanent_reference(a: Matrix, alg: AlgorithmId) -> PermanentResult:
    """Structural oracle for the optimized kernels, small sizes only.

    Integer results are exact Python integers; the overflow flag merely
    reports whether the value lies outside the signed 64-bit range.
    """
    if a.m > a.n:
        raise ValueError(f"need m <= n, got {a.m}x{a.n}; transpose first")
    if a.n > MAX_REFERENCE_COLS:
        raise StepBudgetExceeded(
            f"reference implementations are guarded to n <= {MAX_REFERENCE_COLS}")
    if alg is AlgorithmId.COMBINATORIC:
        value = reference_combinatoric(a)
    elif alg is AlgorithmId.RYSER:
        value = reference_ryser_square(a) if a.m == a.n else reference_ryser_rectangular(a)
    elif alg is AlgorithmId.GLYNN:
        value = reference_glynn_square(a) if a.m == a.n else reference_glynn_rectangular(a)
    else:
        raise ValueError(f"unknown algorithm {alg!r}")
    overflowed = a.kind is ElementKind.INT64 and not (INT64_MIN <= value <= INT64_MAX)
    return PermanentResult(value, overflowed)
