#!/usr/bin/env python3
"""Inequality oracles: every check is a theorem, so violations = bugs.

Runs one worked instance of each inequality with its exact report, then
seeded random suites.  The growth constant K is always the minimal exact
rational |B + lam*B| / |B|, never a rounded float.
"""

from dilates import ResidueSet, check_cauchy_davenport, check_dilate_chain
from dilates.checks import check_kfold_cd_chain, check_plunnecke, check_ruzsa_triangle
from dilates.verify import (run_cd_suite, run_dilate_chain_suite,
                            run_kfold_suite, run_plunnecke_suite,
                            run_ruzsa_suite)

print("=" * 70)
print("  WORKED INSTANCES")
print("=" * 70)

A = ResidueSet.from_elements(101, [0, 1, 2, 3, 4])
B = ResidueSet.from_elements(101, [0, 7, 14])
r = check_cauchy_davenport(A, B)
print(f"Cauchy-Davenport: |A+B| = {r.lhs} >= {r.rhs}   slack {r.slack}")

X = ResidueSet.from_elements(1009, [0, 1, 5])
r = check_ruzsa_triangle(X, X, X)
print(f"Ruzsa triangle:   |X||X+X| = {r.lhs} <= |X+X|^2 = {r.rhs}")

N = 1009
ab = ResidueSet.from_elements(N, [0, 1, 4])
r = check_plunnecke(ab, ab, 2, 1)
print(f"Plunnecke-Ruzsa:  |2B-B| = {r.lhs} <= K^3 |A| = {r.rhs}  (K = {r.ratio_bound})")

b = ResidueSet.from_elements(100003, [0, 3, 10, 41])
r = check_dilate_chain(b, 3, 2)
detail = dict(r.details)
print(f"Dilate chain:     |B+3B+9B| = {r.lhs} <= K^8 |B| = {float(r.rhs):.1f} "
      f" (K = {r.ratio_bound})")
print(f"                  |B+B| = {detail['double_sum']} <= K^2|B| = "
      f"{detail['double_sum_bound']};  |B+B+3B| = {detail['double_plus_dilate']} "
      f"<= K^7|B| = {detail['double_plus_dilate_bound']}")

a = ResidueSet.from_elements(101, [0, 1, 11])
r = check_kfold_cd_chain(a, 4, 10)
print(f"k-fold CD chain:  |A+A+A+10A| = {r.lhs} >= {r.rhs}")

print("\n" + "=" * 70)
print("  SEEDED SUITES (violations must be zero)")
print("=" * 70)
suites = [
    run_cd_suite(101, 2000, seed=1),
    run_ruzsa_suite(1009, 2000, seed=1),
    run_plunnecke_suite(300, seed=1),
    run_dilate_chain_suite(50, seed=1),
    run_kfold_suite(101, 500, seed=1),
]
for s in suites:
    extra = f"  {s.stats}" if s.stats else ""
    print(f"  {s.name:<14} cases={s.cases:<6} violations={s.violations}{extra}")
