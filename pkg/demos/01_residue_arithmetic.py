#!/usr/bin/env python3
"""Residue-set arithmetic: sumsets, dilates, and the three kernels.

Walks through the basic objects on small moduli, then times the kernels
against each other on a larger prime to show why the default switches.
"""

import random
import time

from dilates import Kernel, ResidueSet, canonical_form, dilate, dilate_sum, sumset

print("=" * 64)
print("  SUMS OF DILATES IN Z/NZ")
print("=" * 64)

A = ResidueSet.from_elements(13, [0, 1, 3])
print(f"\nA = {A.format()}")
print(f"2*A          = {dilate(A, 2).format()}")
print(f"A + A        = {sumset(A, A).format()}")
print(f"A + 2*A      = {dilate_sum(A, 2).format()}")
print(f"A + 5*A      = {dilate_sum(A, 5).format()}")
print(f"|A + 5*A| = {len(dilate_sum(A, 5))}  (Cauchy-Davenport floor: "
      f"min(2|A|-1, p) = {min(2 * len(A) - 1, 13)})")

print("\nAffine canonicalization: u*A + v with the same dilate-sum size")
B = ResidueSet.from_elements(13, [2, 7, 9])
print(f"B = {B.format()}  ->  canonical_form(B) = {canonical_form(B).format()}")
print(f"|B + 2*B| = {len(dilate_sum(B, 2))}, "
      f"|canon + 2*canon| = {len(dilate_sum(canonical_form(B), 2))}")

print("\nKernel agreement and timing (p = 10007):")
rng = random.Random(0)
p = 10007
for size in (32, 512, 4096):
    X = ResidueSet.from_elements(p, rng.sample(range(p), size))
    Y = ResidueSet.from_elements(p, rng.sample(range(p), size))
    row = [f"|A|=|B|={size:5d}"]
    reference = None
    for kernel in (Kernel.BITSHIFT, Kernel.CONVOLUTION):
        t0 = time.perf_counter()
        out = sumset(X, Y, kernel)
        dt = time.perf_counter() - t0
        row.append(f"{kernel.value}: {dt * 1000:7.2f} ms")
        if reference is None:
            reference = out
        assert out == reference
    print("  " + "   ".join(row) + "   (identical bits)")

print("\nnaive kernel on a small instance for completeness:")
X = ResidueSet.from_elements(101, rng.sample(range(101), 40))
Y = ResidueSet.from_elements(101, rng.sample(range(101), 40))
assert sumset(X, Y, Kernel.NAIVE) == sumset(X, Y, Kernel.BITSHIFT)
print("  naive == bitshift on random 40-element sets mod 101")
