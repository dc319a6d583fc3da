#!/usr/bin/env python3
"""Tour of the permanent algorithms on integer, float, and complex matrices."""

import numpy as np

import permanent

# The three exact algorithms all agree; opt picks the fastest for the shape.
a = np.array([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
print("matrix:\n", a)
print("opt         :", permanent.opt(a))
print("combinatoric:", permanent.combinatoric(a))
print("ryser       :", permanent.ryser(a))
print("glynn       :", permanent.glynn(a))

# Rectangular matrices work directly; m > n is transposed internally.
wide = np.ones((2, 4), dtype=np.int64)
print("\n2x4 ones (4!/2!):", permanent.ryser(wide))
tall = wide.T
print("4x2 ones (same) :", permanent.ryser(tall))

# Integer matrices give exact integers; floats give float64.
f = np.random.default_rng(0).uniform(-1, 1, (6, 6))
print("\nrandom 6x6 float:", permanent.glynn(f))

# Complex matrices give complex results.
c = np.array([[1 + 2j, 0.5j], [1j, 2 + 0j]])
print("complex 2x2     :", permanent.ryser(c))

# Integer overflow is detected, never wrapped.
big = np.array([[2**62, 3], [5, 2**62]], dtype=np.int64)
try:
    permanent.ryser(big)
except OverflowError as exc:
    print("\noverflow detected:", exc)

# Which algorithm would opt run? Ask the selector directly.
params = permanent.default_params()
for m, n in ((3, 3), (10, 10), (20, 20), (4, 20)):
    print(f"select({m:2d},{n:2d}) ->", permanent.select_algorithm(m, n, params).value)
