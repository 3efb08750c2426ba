"""Generalized arithmetic progressions over Z/pZ.

A progression P = {a + sum n_i v_i : 0 <= n_i < k_i} is proper when all
nominal_size = prod k_i combinations land on distinct residues.  Besides
expansion and properness this module provides the large-step truncation
P' (keep only generators with k_i >= lam), the lambda-power span
containment check, and a small-scale exhaustive finder for the largest
proper progression inside a given set.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .checks import IneqReport, _digest
from .errors import ScaleCapError
from .residues import ResidueSet, dilate, iterated_sumset, require_prime, sumset

__all__ = [
    "Gap",
    "expand",
    "is_proper",
    "truncate_to_large_steps",
    "lambda_span_check",
    "find_max_proper_gap",
]

_EXPAND_CAP = 1 << 26
_FINDER_MAX_P = 101
_FINDER_MAX_DIM = 2


@dataclass(frozen=True)
class Gap:
    """A generalized arithmetic progression with explicit base, generators
    and lengths.  Degenerate data (k_i = 1 terms, repeated generators) is
    legal; zero generators are rejected only when their length exceeds 1."""

    modulus: int
    base: int
    generators: tuple[int, ...]
    lengths: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.modulus)
        if len(self.generators) != len(self.lengths):
            raise ValueError("generators and lengths must have equal arity")
        if not 0 <= self.base < self.modulus:
            raise ValueError("base out of range")
        for v, k in zip(self.generators, self.lengths):
            if not 0 <= v < self.modulus:
                raise ValueError(f"generator {v} out of range")
            if k < 1:
                raise ValueError(f"length {k} must be >= 1")
            if v == 0 and k >= 2:
                raise ValueError("zero generator with length >= 2")

    @property
    def dimension(self) -> int:
        return len(self.generators)

    @property
    def nominal_size(self) -> int:
        return prod(self.lengths)

    @property
    def is_degenerate(self) -> bool:
        nontrivial = [v for v, k in zip(self.generators, self.lengths) if k >= 2]
        return len(set(nontrivial)) < len(nontrivial) or any(k == 1 for k in self.lengths)

    @classmethod
    def parse(cls, text: str) -> "Gap":
        """Parse ``p=<p>;a=<a>;v=[v1,..];k=[k1,..]``."""
        parts = text.strip().split(";")
        if len(parts) != 4 or not parts[0].startswith("p=") or not parts[1].startswith("a=") \
                or not parts[2].startswith("v=[") or not parts[3].startswith("k=["):
            raise ValueError(f"bad gap literal: {text!r}")

        def ints(body: str) -> tuple[int, ...]:
            body = body.strip()
            if not body.endswith("]"):
                raise ValueError(f"bad list in gap literal: {body!r}")
            inner = body[:-1].strip()
            return tuple(int(tok) for tok in inner.split(",")) if inner else ()

        return cls(int(parts[0][2:]), int(parts[1][2:]),
                   ints(parts[2][3:]), ints(parts[3][3:]))

    def format(self) -> str:
        v = ",".join(map(str, self.generators))
        k = ",".join(map(str, self.lengths))
        return f"p={self.modulus};a={self.base};v=[{v}];k=[{k}]"


def expand(gap: Gap, cap: int = _EXPAND_CAP) -> ResidueSet:
    """All residues the progression represents (with multiplicity collapsed)."""
    if gap.nominal_size > cap:
        raise ScaleCapError(f"nominal size {gap.nominal_size} exceeds cap {cap}")
    p = gap.modulus
    values = {gap.base}
    for v, k in zip(gap.generators, gap.lengths):
        values = {(x + j * v) % p for x in values for j in range(k)}
    return ResidueSet.from_elements(p, values)


def is_proper(gap: Gap, cap: int = _EXPAND_CAP) -> bool:
    """True iff all nominal_size combinations are distinct residues."""
    if gap.nominal_size > gap.modulus:
        return False
    return len(expand(gap, cap)) == gap.nominal_size


def truncate_to_large_steps(gap: Gap, lam: int) -> Gap:
    """The base-0 sub-progression on the generators with k_i >= lam.

    Generator/length pairs are ordered by descending length (ties keep the
    original order).  For proper input the truncation keeps at least a
    1/lam^(d-m) fraction of the elements, m being the number of survivors.
    """
    if lam < 2:
        raise ValueError("need lam >= 2")
    order = sorted(range(gap.dimension), key=lambda i: (-gap.lengths[i], i))
    kept = [i for i in order if gap.lengths[i] >= lam]
    if not kept:
        raise ValueError(f"no generator has length >= {lam}")
    return Gap(gap.modulus, 0,
               tuple(gap.generators[i] for i in kept),
               tuple(gap.lengths[i] for i in kept))


def lambda_span_check(gap: Gap, lam: int, exponent: int,
                      cap: int = _EXPAND_CAP) -> IneqReport:
    """Verify P' + lam*P' + ... + lam^d*P' contains the lam^d-fold sumset
    of P', for a truncation P' whose lengths all satisfy k_i >= lam.

    lhs/rhs are the two cardinalities; holds is the set containment.
    Details report whether the right side already fills Z/pZ and the
    Cauchy-Davenport floor min(lam^d (|P'| - 1) + 1, p) that forces it.
    """
    if lam < 2 or exponent < 0:
        raise ValueError("need lam >= 2 and exponent >= 0")
    if any(k < lam for k in gap.lengths):
        raise ValueError("span check requires every length >= lam")
    if lam**exponent * gap.nominal_size > cap:
        raise ScaleCapError("span check exceeds enumeration cap")
    p = gap.modulus
    base = expand(gap, cap)
    lhs_set = base
    for j in range(1, exponent + 1):
        lhs_set = sumset(lhs_set, dilate(base, pow(lam, j, p)))
    rhs_set = base if exponent == 0 else iterated_sumset(base, lam**exponent)
    holds = rhs_set.is_subset(lhs_set)
    floor = min(lam**exponent * (len(base) - 1) + 1, p)
    details = (
        ("rhs_fills_group", str(len(rhs_set) == p).lower()),
        ("cd_floor", str(floor)),
    )
    return IneqReport(
        inequality="lambda-power-span",
        lhs=len(lhs_set), rhs=len(rhs_set), holds=holds,
        slack=len(lhs_set) - len(rhs_set), details=details,
        inputs_digest=_digest(gap.format(), str(lam), str(exponent)),
    )


def _run_table(members: int, p: int, v: int) -> list[int]:
    """run[x] = number of consecutive members x, x+v, ... (capped at p)."""
    run = [0] * p
    # walk the single p-cycle generated by v twice, propagating run lengths
    order = [0] * p
    x = 0
    for i in range(p):
        order[i] = x
        x = (x + v) % p
    nxt = 0
    for i in range(2 * p - 1, -1, -1):
        x = order[i % p]
        if members >> x & 1:
            nxt = min(nxt + 1, p)
        else:
            nxt = 0
        if i < p:
            run[x] = nxt
    return run


def find_max_proper_gap(s: ResidueSet, d_max: int) -> Gap:
    """Exhaustive search for a largest proper progression inside s.

    Brute force only: requires p <= 101 and d_max <= 2.  Generators are
    normalized to 1 <= v <= (p-1)/2 (sign flips preserve the represented
    set) and 2-dim candidates to k_1 >= k_2; ties between maximizers are
    broken by smaller dimension, then lexicographically least (a, v, k).
    """
    p = s.modulus
    require_prime(p)
    if p > _FINDER_MAX_P or d_max > _FINDER_MAX_DIM:
        raise ScaleCapError(f"finder limited to p <= {_FINDER_MAX_P}, d <= {_FINDER_MAX_DIM}")
    if d_max < 1:
        raise ValueError("need d_max >= 1")
    if s.bits == 0:
        raise ValueError("empty set contains no progression")
    members = s.bits
    elements = s.elements()
    size = len(elements)

    best_key = None
    best = None

    def offer(nominal: int, a: int, vs: tuple[int, ...], ks: tuple[int, ...]):
        nonlocal best_key, best
        key = (-nominal, len(vs), a, vs, ks)
        if best_key is None or key < best_key:
            best_key = key
            best = Gap(p, a, vs, ks)

    if size == 1:
        offer(1, elements[0], (0,), (1,))
        return best

    half = 1 if p == 2 else (p - 1) // 2
    # dimension 1: for a prime modulus any v != 0, k <= p progression is proper
    for v in range(1, half + 1):
        run = _run_table(members, p, v)
        for a in elements:
            offer(run[a], a, (v,), (run[a],))
    if best_key is not None and -best_key[0] >= size:
        return best  # a proper progression already covers all of s

    if d_max >= 2:
        for v1 in range(1, half + 1):
            run1 = _run_table(members, p, v1)
            for a in elements:
                r1 = run1[a]
                for k1 in range(2, r1 + 1):
                    cap2 = min(k1, size // k1, p // k1)
                    if cap2 < 2:
                        continue
                    for v2 in range(1, half + 1):
                        # extend rows a + j*v2 while each supports a k1-run
                        k2 = 1
                        while k2 < cap2 and run1[(a + k2 * v2) % p] >= k1:
                            k2 += 1
                        for kk in range(2, k2 + 1):
                            nominal = k1 * kk
                            cand_key = (-nominal, 2, a, (v1, v2), (k1, kk))
                            if best_key is not None and cand_key >= best_key:
                                continue
                            cand = Gap(p, a, (v1, v2), (k1, kk))
                            if is_proper(cand):
                                offer(nominal, a, (v1, v2), (k1, kk))
    return best
