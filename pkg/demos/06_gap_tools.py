#!/usr/bin/env python3
"""Generalized arithmetic progressions: expansion, truncation, span, search.

Shows the large-step truncation P' of a proper progression, the
lambda-power span containment that turns P' into all of Z/pZ, and the
exhaustive finder recovering a planted progression from noisy data.
"""

import random

from dilates import (Gap, ResidueSet, expand, find_max_proper_gap, is_proper,
                     lambda_span_check, truncate_to_large_steps)

print("=" * 68)
print("  EXPANSION AND PROPERNESS")
print("=" * 68)
g = Gap(31, 4, (1, 9), (4, 3))
print(f"P = {g.format()}   nominal size {g.nominal_size}")
print(f"expand(P) = {expand(g).format()}")
print(f"proper: {is_proper(g)}")
collide = Gap(5, 0, (1, 2), (3, 2))
print(f"\ncolliding example {collide.format()}: expands to "
      f"{expand(collide).format()} ({len(expand(collide))} < {collide.nominal_size})")

print("\n" + "=" * 68)
print("  LARGE-STEP TRUNCATION AND SPAN")
print("=" * 68)
g = Gap(101, 17, (5, 23), (7, 2))
t = truncate_to_large_steps(g, 4)
print(f"P  = {g.format()}")
print(f"P' = {t.format()}   (kept lengths >= 4, rebased at 0)")
print(f"|P'| = {len(expand(t))} >= |P| / 4^(d-m) = {len(expand(g))}/4 ✓")

report = lambda_span_check(t, 4, 1)
detail = dict(report.details)
print(f"\nspan: |P' + 4*P'| = {report.lhs}; 4-fold sumset size {report.rhs}; "
      f"containment {report.holds}")
print(f"      CD floor for the fold: {detail['cd_floor']}; "
      f"fills Z/101Z: {detail['rhs_fills_group']}")

print("\n" + "=" * 68)
print("  EXHAUSTIVE FINDER (p <= 101, dimension <= 2)")
print("=" * 68)
rng = random.Random(12)
p = 97
planted = Gap(p, 30, (3, 17), (5, 4))
assert is_proper(planted)
noise = rng.sample([x for x in range(p) if x not in expand(planted)], 2)
s = ResidueSet.from_elements(p, list(expand(planted).elements()) + noise)
print(f"planted {planted.format()} (size {planted.nominal_size}) + 2 noise points")
found = find_max_proper_gap(s, 2)
print(f"found   {found.format()} (size {found.nominal_size}, "
      f"proper {is_proper(found)})")

print("\nplain progression data:")
s2 = ResidueSet.from_elements(11, [0, 2, 4, 6])
print(f"  {s2.format()} -> {find_max_proper_gap(s2, 2).format()}")
print(f"  full group     -> {find_max_proper_gap(ResidueSet.full(11), 2).format()}")
