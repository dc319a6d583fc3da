#!/usr/bin/env python3
"""Regenerate the parity fixtures.

Each case carries a matrix and the value computed directly by the Python
library; the bindings must reproduce it exactly (integers) or bit for bit
(floats, which survive JSON as shortest round-trip decimals).

Run from this directory: python3 gen_expected.py
"""
import json
from pathlib import Path

import numpy as np

import permanent

FNS = {
    "combinatoric": permanent.combinatoric,
    "ryser": permanent.ryser,
    "glynn": permanent.glynn,
    "opt": permanent.opt,
}

rng = np.random.default_rng(20240614)
names = list(FNS)
cases = []
for dtype in ("int", "float", "complex"):
    for i in range(100):
        m = int(rng.integers(1, 8))
        n = int(rng.integers(m, 8))
        name = names[i % len(names)]
        if dtype == "int":
            mat = rng.integers(0, 10, (m, n)).astype(np.int64)
            value = FNS[name](mat)
            matrix = mat.tolist()
            expected = {"kind": "int", "value": str(value)}
        elif dtype == "float":
            mat = rng.uniform(-1.0, 1.0, (m, n))
            value = FNS[name](mat)
            matrix = mat.tolist()
            expected = {"kind": "float", "value": value}
        else:
            mat = rng.uniform(-1.0, 1.0, (m, n)) + 1j * rng.uniform(-1.0, 1.0, (m, n))
            value = FNS[name](mat)
            matrix = [[{"re": v.real, "im": v.imag} for v in row] for row in mat.tolist()]
            expected = {"kind": "complex", "re": value.real, "im": value.imag}
        cases.append({"dtype": dtype, "algorithm": name,
                      "matrix": matrix, "expected": expected})

out = Path(__file__).parent / "fixtures" / "parity.json"
out.parent.mkdir(exist_ok=True)
out.write_text(json.dumps(cases, indent=1) + "\n")
print(f"wrote {len(cases)} cases to {out}")
