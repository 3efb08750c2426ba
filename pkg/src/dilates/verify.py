"""Seeded property suites over the inequality oracles.

Each suite draws reproducible random instances, runs the corresponding
check and reports a violation count.  The inequalities are theorems, so a
single violation indicates a kernel bug; the CLI turns it into a nonzero
exit and the acceptance tests assert zero across large case counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .checks import (check_cauchy_davenport, check_dilate_chain,
                     check_kfold_cd_chain, check_plunnecke,
                     check_ruzsa_triangle)
from .residues import (ResidueSet, affine_image, canonical_form, dilate_sum,
                       require_prime)

__all__ = [
    "SuiteSummary",
    "run_cd_suite",
    "run_ruzsa_suite",
    "run_plunnecke_suite",
    "run_dilate_chain_suite",
    "run_kfold_suite",
    "run_affine_suite",
    "SUITES",
]


@dataclass
class SuiteSummary:
    name: str
    cases: int
    violations: int
    first_failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def record(self, report) -> None:
        self.cases += 1
        if not report.holds:
            self.violations += 1
            if len(self.first_failures) < 5:
                self.first_failures.append(report.to_json_dict())

    def to_json_dict(self) -> dict:
        return {
            "suite": self.name,
            "cases": self.cases,
            "violations": self.violations,
            "ok": self.ok,
            "first_failures": self.first_failures,
            "stats": self.stats,
        }


def _random_subset(rng: random.Random, n: int, size: int) -> ResidueSet:
    return ResidueSet.from_elements(n, rng.sample(range(n), size))


def _random_size(rng: random.Random, n: int, dense_cap: int = 128) -> int:
    # mostly small sets (cheap), with a dense tail so the min(..., p) branch
    # of Cauchy-Davenport gets exercised
    if rng.random() < 0.2:
        return rng.randint(1, n)
    return rng.randint(1, min(dense_cap, n))


def run_cd_suite(p: int, cases: int, seed: int = 0) -> SuiteSummary:
    """Random Cauchy-Davenport instances plus constructed same-difference
    progression pairs, which must achieve slack exactly 0."""
    require_prime(p)
    rng = random.Random(seed)
    summary = SuiteSummary("cd", 0, 0)
    zero_slack = 0
    ap_cases = 0
    for i in range(cases):
        if i % 10 == 9:
            # progression pair with one common difference: equality case
            d = rng.randint(1, p - 1)
            la = rng.randint(1, (p - 1) // 2)
            lb = rng.randint(1, p - la)  # |A|+|B|-1 <= p
            a0, b0 = rng.randrange(p), rng.randrange(p)
            a = ResidueSet.from_elements(p, [(a0 + j * d) % p for j in range(la)])
            b = ResidueSet.from_elements(p, [(b0 + j * d) % p for j in range(lb)])
            report = check_cauchy_davenport(a, b)
            ap_cases += 1
            if report.slack == 0:
                zero_slack += 1
        else:
            a = _random_subset(rng, p, _random_size(rng, p))
            b = _random_subset(rng, p, _random_size(rng, p))
            report = check_cauchy_davenport(a, b)
        summary.record(report)
    summary.stats["ap_equality_slack_zero"] = zero_slack
    summary.stats["ap_equality_cases"] = ap_cases
    return summary


def run_ruzsa_suite(modulus: int, cases: int, seed: int = 0) -> SuiteSummary:
    rng = random.Random(seed)
    summary = SuiteSummary("ruzsa", 0, 0)
    for _ in range(cases):
        x = _random_subset(rng, modulus, _random_size(rng, modulus, 64))
        y = _random_subset(rng, modulus, _random_size(rng, modulus, 64))
        z = _random_subset(rng, modulus, _random_size(rng, modulus, 64))
        summary.record(check_ruzsa_triangle(x, y, z))
    return summary


def run_plunnecke_suite(cases: int, seed: int = 0, max_element: int = 50,
                        max_fold: int = 3) -> SuiteSummary:
    """Random integer sets A, B in [0, max_element], emulated with verified
    headroom; m, n <= max_fold."""
    rng = random.Random(seed)
    summary = SuiteSummary("plunnecke", 0, 0)
    modulus = 2 * max_fold * max_element + 2
    for _ in range(cases):
        while True:
            m, n = rng.randint(0, max_fold), rng.randint(0, max_fold)
            if m + n >= 1:
                break
        a = _random_subset(rng, max_element + 1, rng.randint(1, max_element + 1))
        b = _random_subset(rng, max_element + 1, rng.randint(1, max_element + 1))
        a = ResidueSet.from_elements(modulus, a.elements())
        b = ResidueSet.from_elements(modulus, b.elements())
        summary.record(check_plunnecke(a, b, m, n))
    return summary


def run_dilate_chain_suite(cases: int, seed: int = 0, max_element: int = 100,
                           lambdas=(2, 3, 5), chain_lengths=(2, 3)) -> SuiteSummary:
    """Random integer sets B in [0, max_element]; every (lam, l) combination
    is checked for each set, including the intermediate bounds."""
    rng = random.Random(seed)
    summary = SuiteSummary("dilate-chain", 0, 0)
    worst = max(max(lambdas) ** (l + 1) // (max(lambdas) - 1) + 1
                for l in chain_lengths)
    modulus = worst * max_element + max(lambdas) + 3
    for _ in range(cases):
        base = rng.sample(range(max_element + 1), rng.randint(1, 40))
        b = ResidueSet.from_elements(modulus, base)
        for lam in lambdas:
            for l in chain_lengths:
                summary.record(check_dilate_chain(b, lam, l))
    return summary


def run_kfold_suite(p: int, cases: int, seed: int = 0, k_max: int = 5) -> SuiteSummary:
    require_prime(p)
    rng = random.Random(seed)
    summary = SuiteSummary("kfold-cd", 0, 0)
    for _ in range(cases):
        a = _random_subset(rng, p, _random_size(rng, p))
        k = rng.randint(2, k_max)
        lam = rng.randint(2, max(3, p - 1))
        summary.record(check_kfold_cd_chain(a, k, lam))
    return summary


def run_affine_suite(p: int, cases: int, seed: int = 0,
                     orbit_samples: int = 25) -> SuiteSummary:
    """|dilate_sum(u*A + v, lam)| must equal |dilate_sum(A, lam)| for every
    unit u and shift v; canonical forms must agree across sampled orbits."""
    require_prime(p)
    rng = random.Random(seed)
    summary = SuiteSummary("affine", 0, 0)
    for _ in range(cases):
        a = _random_subset(rng, p, rng.randint(1, 128 if p > 128 else p))
        u = rng.randint(1, p - 1)
        v = rng.randrange(p)
        lam = rng.randint(-p, p)
        lhs = len(dilate_sum(affine_image(a, u, v), lam))
        rhs = len(dilate_sum(a, lam))
        summary.cases += 1
        if lhs != rhs:
            summary.violations += 1
            if len(summary.first_failures) < 5:
                summary.first_failures.append(
                    {"set": a.format(), "u": u, "v": v, "lambda": lam,
                     "lhs": lhs, "rhs": rhs})
    constant = 0
    for _ in range(orbit_samples):
        a = _random_subset(rng, p, rng.randint(1, 10))
        u = rng.randint(1, p - 1)
        v = rng.randrange(p)
        summary.cases += 1
        if canonical_form(a) == canonical_form(affine_image(a, u, v)):
            constant += 1
        else:
            summary.violations += 1
    summary.stats["orbit_samples"] = orbit_samples
    summary.stats["orbit_canonical_constant"] = constant
    return summary


def _suite_cd(args, cases, seed):
    return run_cd_suite(args.p, cases, seed)


def _suite_ruzsa(args, cases, seed):
    modulus = args.modulus if args.modulus else (args.p or 1009)
    return run_ruzsa_suite(modulus, cases, seed)


def _suite_plunnecke(args, cases, seed):
    return run_plunnecke_suite(cases, seed)


def _suite_dilate_chain(args, cases, seed):
    lambdas = (args.lam,) if args.lam else (2, 3, 5)
    ls = (args.l,) if args.l else (2, 3)
    return run_dilate_chain_suite(cases, seed, lambdas=lambdas, chain_lengths=ls)


def _suite_kfold(args, cases, seed):
    return run_kfold_suite(args.p, cases, seed)


def _suite_affine(args, cases, seed):
    return run_affine_suite(args.p, cases, seed)


SUITES = {
    "cd": _suite_cd,
    "ruzsa": _suite_ruzsa,
    "plunnecke": _suite_plunnecke,
    "dilate-chain": _suite_dilate_chain,
    "kfold-cd": _suite_kfold,
    "affine": _suite_affine,
}
