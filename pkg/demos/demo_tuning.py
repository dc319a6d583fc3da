#!/usr/bin/env python3
"""Machine-specific tuning: benchmark the grid, fit the separators, and
write a tuning file.

This demo shrinks the grid to keep the run short; drop max_n back to 24
(or just run ``permanent tune``) for the full procedure.
"""

import tempfile
from pathlib import Path

from permanent import tuner
from permanent.dispatch import select_algorithm

report = tuner.run_tuning(n_range=range(2, 15), trials=3, seed=0)

print("fastest algorithm per grid cell:")
for p in sorted(report.grid, key=lambda p: (p.n, p.m)):
    print(f"  n={p.n:2d} m={p.m:2d}  {p.label.value:12s} "
          f"runner-up at {p.margin_ratio:6.2f}x  ({p.best_median * 1e6:8.1f} us)")

print("\nbrute-force/glynn line:", report.plane_small)
print("glynn/ryser line      :", report.plane_large)
if report.intersection:
    r, n = report.intersection
    print(f"lines cross at n = {n:.2f}, r = {r:.2f}")

params = report.params
print("\ntuning parameters:")
for i in range(1, 9):
    print(f"  p{i} = {getattr(params, f'p{i}')!r}")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "tuning.txt"
    tuner.emit_tuning_file(params, path)
    print("\ntuning file:")
    print(path.read_text())
    loaded = tuner.load_tuning_file(path)
    assert loaded == params

print("dispatch with the tuned parameters:")
for m, n in ((3, 3), (2, 12), (8, 14), (14, 14)):
    print(f"  select({m:2d},{n:2d}) ->", select_algorithm(m, n, params).value)
