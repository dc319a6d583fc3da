"""Enumeration primitives used by the permanent kernels.

Three explicit-state cursors (k-combinations in lexicographic order,
minimal-change permutations, and the sign-vector Gray walk) plus exact
binomial/factorial helpers.  Cursors are single-owner mutable state; a
full traversal touches up to 2^n items, so nothing here materializes a
list.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import INT64_MAX


class CursorExhausted(RuntimeError):
    """Raised when advancing a cursor that has already finished."""


# --------------------------------------------------------------------------
# k-combinations of {0..n-1}, lexicographic order
# --------------------------------------------------------------------------

@dataclass
class CombinationCursor:
    """Strictly increasing k-subset of {0..n-1}; advanced in place."""

    n: int
    k: int
    current: list[int] = field(default_factory=list)
    exhausted: bool = False

    def __post_init__(self):
        if not (0 <= self.k <= self.n):
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if not self.current:
            self.current = list(range(self.k))


def next_combination(c: CombinationCursor) -> CombinationCursor:
    """Advance to the lexicographically next combination.

    Sets ``c.exhausted`` after the last combination; advancing an
    exhausted cursor raises :class:`CursorExhausted`.
    """
    if c.exhausted:
        raise CursorExhausted("combination cursor is exhausted")
    # Rightmost index that can still be incremented.
    p = c.k - 1
    while p >= 0 and c.current[p] == c.n - c.k + p:
        p -= 1
    if p < 0:
        c.exhausted = True
        return c
    c.current[p] += 1
    for q in range(p + 1, c.k):
        c.current[q] = c.current[q - 1] + 1
    return c


def iter_combinations(n: int, k: int):
    """Yield every k-combination of {0..n-1} as a tuple, in lexicographic order."""
    c = CombinationCursor(n, k)
    while not c.exhausted:
        yield tuple(c.current)
        next_combination(c)


# --------------------------------------------------------------------------
# Minimal-change permutations (directed-integer algorithm)
# --------------------------------------------------------------------------

_LEFT = -1
_RIGHT = 1


@dataclass
class SjtPermutationCursor:
    """Permutation of {0..n-1}; consecutive states differ by one adjacent swap."""

    n: int
    current: list[int] = field(default_factory=list)
    directions: list[int] = field(default_factory=list)
    exhausted: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if not self.current:
            self.current = list(range(self.n))
            self.directions = [_LEFT] * self.n


def _largest_mobile(c: SjtPermutationCursor) -> int:
    """Position of the largest mobile element, or -1 if none is mobile."""
    best_pos = -1
    best_val = -1
    for pos, val in enumerate(c.current):
        d = c.directions[val]
        tgt = pos + d
        if 0 <= tgt < c.n and c.current[tgt] < val and val > best_val:
            best_pos, best_val = pos, val
    return best_pos


def next_sjt_permutation(c: SjtPermutationCursor) -> SjtPermutationCursor:
    """Advance by one adjacent transposition; full traversal visits all n!."""
    if c.exhausted:
        raise CursorExhausted("permutation cursor is exhausted")
    pos = _largest_mobile(c)
    if pos < 0:
        c.exhausted = True
        return c
    val = c.current[pos]
    tgt = pos + c.directions[val]
    c.current[pos], c.current[tgt] = c.current[tgt], c.current[pos]
    for v in range(val + 1, c.n):
        c.directions[v] = -c.directions[v]
    return c


def iter_sjt_permutations(n: int):
    """Yield all n! permutations of {0..n-1} in minimal-change order."""
    c = SjtPermutationCursor(n)
    while not c.exhausted:
        yield tuple(c.current)
        next_sjt_permutation(c)


# --------------------------------------------------------------------------
# Sign-vector Gray walk
# --------------------------------------------------------------------------

@dataclass
class GrayCursor:
    """Walk over the 2^(n-1) sign vectors with the first sign pinned to +1.

    ``bitmask`` bit i set means sign i is -1.  Each step flips exactly one
    position, recorded in ``last_flip``.
    """

    n: int
    step: int = 0
    bitmask: int = 0
    last_flip: int = -1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")

    @property
    def total_steps(self) -> int:
        return (1 << (self.n - 1)) - 1

    def delta(self) -> list[int]:
        return [-1 if (self.bitmask >> i) & 1 else 1 for i in range(self.n)]


def next_gray(c: GrayCursor) -> GrayCursor:
    """Flip one sign; position n-1 at step 1, then the usual ruler pattern."""
    if c.step >= c.total_steps:
        raise CursorExhausted("gray cursor walked all sign vectors")
    k = c.step + 1
    t = 0
    while k & 1 == 0:
        k >>= 1
        t += 1
    flip = c.n - 1 - t
    c.bitmask ^= 1 << flip
    c.last_flip = flip
    c.step += 1
    return c


# --------------------------------------------------------------------------
# Exact counting helpers
# --------------------------------------------------------------------------

def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; raises OverflowError past the int64 range."""
    if not (0 <= k <= n):
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    out = math.comb(n, k)
    if out > INT64_MAX:
        raise OverflowError(f"binomial({n}, {k}) = {out} exceeds int64")
    return out


def factorial(n: int):
    """n! — exact int through 20!, float64 beyond (20! is the last to fit int64)."""
    if n < 0:
        raise ValueError("factorial of a negative count")
    out = math.factorial(n)
    return out if n <= 20 else float(out)
