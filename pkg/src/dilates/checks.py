"""Checkable oracles for the classical sumset inequalities.

Every operation evaluates both sides of a known theorem exactly and
returns a report; `holds` must come back True on valid input, so a False
is a bug detector for the residue-set kernels.  Growth constants K are
kept as exact Fractions (the minimal admissible value), never floored.

Integer-set instances are emulated in Z/NZ; each operation derives the
largest reachable element and rejects moduli that could wrap silently.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction

from .residues import (Kernel, ResidueSet, dilate, dilate_sum, iterated_sumset,
                       kfold_dilate_sum, require_prime, sumset)

__all__ = [
    "IneqReport",
    "check_cauchy_davenport",
    "check_ruzsa_triangle",
    "check_plunnecke",
    "check_dilate_chain",
    "check_kfold_cd_chain",
]


def _digest(*parts: str) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(part.encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]


def _num(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


@dataclass(frozen=True)
class IneqReport:
    """Evaluation of one inequality instance.

    `slack` is rhs - lhs for upper-bound inequalities (lhs <= rhs) and
    lhs - rhs for lower-bound ones; each check states its convention.
    """

    inequality: str
    lhs: Fraction | int
    rhs: Fraction | int
    holds: bool
    slack: Fraction | int
    ratio_bound: Fraction | None = None
    details: tuple[tuple[str, str], ...] = field(default=())
    inputs_digest: str = ""

    def to_json_dict(self) -> dict:
        out = {
            "inequality": self.inequality,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "K": _num(self.ratio_bound) if self.ratio_bound is not None else None,
            "holds": self.holds,
            "slack": _num(self.slack),
            "inputs_digest": self.inputs_digest,
        }
        out.update(dict(self.details))
        return out


def _require_nonempty(*sets: ResidueSet) -> None:
    for s in sets:
        if s.bits == 0:
            raise ValueError("inequality checks need nonempty sets")


def check_cauchy_davenport(a: ResidueSet, b: ResidueSet,
                           kernel: Kernel | None = None) -> IneqReport:
    """|A + B| >= min(|A| + |B| - 1, p) over a prime modulus.

    slack = lhs - rhs >= 0 when the theorem holds; slack 0 occurs e.g. for
    arithmetic progressions with a common difference.
    """
    require_prime(a.modulus)
    _require_nonempty(a, b)
    lhs = len(sumset(a, b, kernel))
    rhs = min(len(a) + len(b) - 1, a.modulus)
    return IneqReport(
        inequality="cauchy-davenport",
        lhs=lhs, rhs=rhs, holds=lhs >= rhs, slack=lhs - rhs,
        inputs_digest=_digest(a.format(), b.format()),
    )


def check_ruzsa_triangle(x: ResidueSet, y: ResidueSet, z: ResidueSet,
                         kernel: Kernel | None = None) -> IneqReport:
    """|X| * |Y + Z| <= |X + Y| * |X + Z| (sum form of the triangle
    inequality; valid in any Z/NZ).  slack = rhs - lhs."""
    _require_nonempty(x, y, z)
    lhs = len(x) * len(sumset(y, z, kernel))
    rhs = len(sumset(x, y, kernel)) * len(sumset(x, z, kernel))
    return IneqReport(
        inequality="ruzsa-triangle",
        lhs=lhs, rhs=rhs, holds=lhs <= rhs, slack=rhs - lhs,
        inputs_digest=_digest(x.format(), y.format(), z.format()),
    )


def _fold(b: ResidueSet, m: int, kernel: Kernel | None) -> ResidueSet:
    """m-fold sumset with the 0-fold convention {0}."""
    if m == 0:
        return ResidueSet.from_elements(b.modulus, [0])
    return iterated_sumset(b, m, kernel)


def _max_element(s: ResidueSet) -> int:
    return s.bits.bit_length() - 1


def check_plunnecke(a: ResidueSet, b: ResidueSet, m: int, n: int,
                    kernel: Kernel | None = None) -> IneqReport:
    """|mB - nB| <= K^(m+n) |A| where K = |A+B|/|A| (minimal admissible).

    Z-emulation: requires modulus > (m+n)*max(B) and > max(A)+max(B) so no
    sum or difference wraps.  slack = rhs - lhs (exact rational).
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 with m + n >= 1")
    _require_nonempty(a, b)
    modulus = a.modulus
    needed = max((m + n) * _max_element(b), _max_element(a) + _max_element(b))
    if modulus <= needed:
        raise ValueError(f"wraparound risk: need modulus > {needed}, got {modulus}")
    k = Fraction(len(sumset(a, b, kernel)), len(a))
    mb = _fold(b, m, kernel)
    nb = dilate(_fold(b, n, kernel), -1)
    lhs = len(sumset(mb, nb, kernel))
    rhs = k ** (m + n) * len(a)
    return IneqReport(
        inequality="plunnecke-ruzsa",
        lhs=lhs, rhs=rhs, holds=lhs <= rhs, slack=rhs - lhs, ratio_bound=k,
        inputs_digest=_digest(a.format(), b.format(), str(m), str(n)),
    )


def check_dilate_chain(b: ResidueSet, lam: int, l: int,
                       kernel: Kernel | None = None) -> IneqReport:
    """|B + lam*B + ... + lam^l * B| <= K^(7l-6) |B| with K = |B+lam*B|/|B|.

    Also evaluates the intermediate bounds |B+B| <= K^2 |B| and
    |B+B+lam*B| <= K^7 |B| used to derive the chain.  slack = rhs - lhs.
    """
    if lam < 2 or l < 1:
        raise ValueError("need lam >= 2 and l >= 1")
    _require_nonempty(b)
    modulus = b.modulus
    chain_mult = sum(lam**i for i in range(l + 1))
    needed = max(chain_mult, lam + 2) * _max_element(b)
    if modulus <= needed:
        raise ValueError(f"wraparound risk: need modulus > {needed}, got {modulus}")

    size = len(b)
    k = Fraction(len(dilate_sum(b, lam, kernel)), size)
    chain = b
    for i in range(1, l + 1):
        chain = sumset(chain, dilate(b, lam**i), kernel)
    lhs = len(chain)
    rhs = k ** (7 * l - 6) * size

    double = sumset(b, b, kernel)
    bb = len(double)
    bb_lam = len(sumset(double, dilate(b, lam), kernel))
    details = (
        ("double_sum", str(bb)),
        ("double_sum_bound", _num(k**2 * size)),
        ("double_sum_holds", str(bb <= k**2 * size).lower()),
        ("double_plus_dilate", str(bb_lam)),
        ("double_plus_dilate_bound", _num(k**7 * size)),
        ("double_plus_dilate_holds", str(bb_lam <= k**7 * size).lower()),
    )
    holds = lhs <= rhs and bb <= k**2 * size and bb_lam <= k**7 * size
    return IneqReport(
        inequality="dilate-chain",
        lhs=lhs, rhs=rhs, holds=holds, slack=rhs - lhs, ratio_bound=k,
        details=details,
        inputs_digest=_digest(b.format(), str(lam), str(l)),
    )


def check_kfold_cd_chain(a: ResidueSet, k: int, lam: int,
                         kernel: Kernel | None = None) -> IneqReport:
    """|A + ... + A + lam*A| >= min(p, |A + lam*A| + (k-2)(|A| - 1)),
    by chaining Cauchy-Davenport across the k-1 plain summands.
    slack = lhs - rhs."""
    require_prime(a.modulus)
    if k < 2:
        raise ValueError("need k >= 2")
    _require_nonempty(a)
    lhs = len(kfold_dilate_sum(a, k, lam, kernel))
    rhs = min(a.modulus,
              len(dilate_sum(a, lam, kernel)) + (k - 2) * (len(a) - 1))
    return IneqReport(
        inequality="kfold-cd-chain",
        lhs=lhs, rhs=rhs, holds=lhs >= rhs, slack=lhs - rhs,
        inputs_digest=_digest(a.format(), str(k), str(lam)),
    )
