"""Shared independent oracles for the test suite.

These deliberately avoid the library's own enumeration code: the brute
force walks ``itertools.permutations`` with native Python arithmetic, and
the binomial oracle is plain Pascal addition.
"""
import itertools

import numpy as np
import pytest


def brute_force_permanent(rows):
    """Exact permanent of a list-of-lists via raw permutation enumeration."""
    m = len(rows)
    n = len(rows[0])
    if m > n:
        rows = [[rows[i][j] for i in range(m)] for j in range(n)]
        m, n = n, m
    total = 0
    for perm in itertools.permutations(range(n), m):
        p = 1
        for i in range(m):
            p *= rows[i][perm[i]]
        total += p
    return total


def pascal_binomial(n, k):
    """Binomial coefficient by repeated Pascal addition."""
    row = [1]
    for _ in range(n):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return row[k]


def random_int_matrix(rng, m, n, lo=0, hi=9):
    return rng.integers(lo, hi + 1, (m, n)).astype(np.int64)


def random_float_matrix(rng, m, n):
    return rng.uniform(-1.0, 1.0, (m, n))


def random_complex_matrix(rng, m, n):
    return rng.uniform(-1.0, 1.0, (m, n)) + 1j * rng.uniform(-1.0, 1.0, (m, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240613)
