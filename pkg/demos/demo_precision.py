#!/usr/bin/env python3
"""Precision benchmark against the analytic families.

Three families have known permanents: all-ones (n!/(n-m)!), padded
identities (1), and Cauchy matrices (a determinant ratio).  The score is
the number of decimal digits lost relative to machine precision; integer
results are exact until an intermediate leaves the 64-bit range, which is
reported as an overflow instead of a score.
"""

from permanent.algorithms import AlgorithmId
from permanent.core import ElementKind
from permanent.oracles import precision_csv, run_precision_suite

records = run_precision_suite(n_range=range(2, 17), seed=0, cauchy_attempts=1000)

print("digits lost on square ones matrices (float64):")
for r in records:
    if r.family == "ones" and r.m == r.n and r.kind is ElementKind.FLOAT64:
        print(f"  n={r.n:2d} {r.algorithm.value:12s} d={r.digits:6.2f}")

print("\ninteger ones matrices: exact until the value outgrows int64:")
for r in records:
    if (r.family == "ones" and r.m == r.n and r.kind is ElementKind.INT64
            and r.algorithm is AlgorithmId.GLYNN):
        note = "overflow" if r.overflow else f"d={r.digits:.2f}"
        print(f"  n={r.n:2d} glynn        {note}")

print("\nrectangular identities: ryser stays exact, glynn pays for its"
      " virtual rows of ones:")
for r in records:
    if (r.family == "identity" and r.kind is ElementKind.FLOAT64
            and r.m == max(1, round(0.25 * r.n))
            and r.algorithm in (AlgorithmId.RYSER, AlgorithmId.GLYNN)):
        print(f"  {r.m:2d}x{r.n:2d} {r.algorithm.value:6s} d={r.digits:6.2f}")

print("\nfull table is one call away:")
print(precision_csv(records[:6]) + "...")
