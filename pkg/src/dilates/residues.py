"""Exact set arithmetic in Z/NZ.

A set of residues is stored as a bitvector packed into a Python integer
(bit i set iff residue i is a member), which makes the shift-and-OR sumset
kernel a handful of bigint operations.  Three interchangeable sumset
kernels are provided (naive pair enumeration, bitvector shifting, FFT
convolution); they produce bit-identical results and exist so each can
serve as an oracle for the others.

Sets of integers are emulated by choosing the modulus larger than any
reachable sum; callers that rely on this validate the headroom themselves.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

import numpy as np

__all__ = [
    "Kernel",
    "ResidueSet",
    "sumset",
    "dilate",
    "dilate_sum",
    "kfold_dilate_sum",
    "iterated_sumset",
    "difference_set",
    "affine_image",
    "canonical_form",
    "is_canonical",
    "is_prime",
    "require_prime",
]

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= 1 << 64:
        raise ValueError(f"primality test limited to n < 2^64, got {n}")
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(n: int, what: str = "modulus") -> None:
    if not is_prime(n):
        raise ValueError(f"{what} must be prime, got {n}")


class Kernel(enum.Enum):
    """Sumset kernel selector; all kernels give identical outputs."""

    NAIVE = "naive"
    BITSHIFT = "bitshift"
    CONVOLUTION = "convolution"


# Convolution uses float64 FFTs; counts round safely only while the maximum
# possible pair count stays far below 2^53.  2^26 is the contract limit.
_SAFE_COUNT_BITS = 26
_CONVOLUTION_MIN_N = 1 << 14


@dataclass(frozen=True)
class ResidueSet:
    """An immutable subset of Z/NZ stored as a membership bitvector."""

    modulus: int
    bits: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        if self.bits < 0 or self.bits >> self.modulus:
            raise ValueError("bitvector has bits outside [0, modulus)")

    @classmethod
    def from_elements(cls, modulus: int, elements) -> "ResidueSet":
        bits = 0
        for x in elements:
            bits |= 1 << (x % modulus)
        return cls(modulus, bits)

    @classmethod
    def empty(cls, modulus: int) -> "ResidueSet":
        return cls(modulus, 0)

    @classmethod
    def full(cls, modulus: int) -> "ResidueSet":
        return cls(modulus, (1 << modulus) - 1)

    @classmethod
    def parse(cls, text: str) -> "ResidueSet":
        """Parse the set literal format ``p=<N>;{a1,a2,...}``."""
        text = text.strip()
        head, _, body = text.partition(";")
        if not head.startswith("p=") or not body.startswith("{") or not body.endswith("}"):
            raise ValueError(f"bad set literal: {text!r}")
        modulus = int(head[2:])
        inner = body[1:-1].strip()
        elements = [int(tok) for tok in inner.split(",")] if inner else []
        for a, b in zip(elements, elements[1:]):
            if b <= a:
                raise ValueError("set literal elements must be ascending and distinct")
        if elements and not (0 <= elements[0] and elements[-1] < modulus):
            raise ValueError("set literal elements out of range")
        return cls.from_elements(modulus, elements)

    def format(self) -> str:
        return f"p={self.modulus};{{{','.join(map(str, self.elements()))}}}"

    def elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.modulus) if self.bits >> i & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> (x % self.modulus) & 1)

    def __iter__(self):
        return iter(self.elements())

    def is_subset(self, other: "ResidueSet") -> bool:
        _check_same_modulus(self, other)
        return self.bits | other.bits == other.bits

    def __repr__(self):
        return f"ResidueSet({self.format()!r})"


def _check_same_modulus(a: ResidueSet, b: ResidueSet) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")


def _bits_to_mask(n: int, bits: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def _mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(mask.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _shift_accumulate(n: int, bits: int, shifts) -> int:
    """OR together cyclic shifts of a bitvector: union of bits+s mod n."""
    mask = (1 << n) - 1
    acc = 0
    for s in shifts:
        acc |= ((bits << s) | (bits >> (n - s))) & mask
    return acc


def _sumset_bits_naive(n: int, ea, eb) -> int:
    out = 0
    for a in ea:
        for b in eb:
            out |= 1 << ((a + b) % n)
    return out


def _sumset_bits_bitshift(n: int, a: ResidueSet, b: ResidueSet) -> int:
    # drive the shifts with the smaller operand
    if len(a) < len(b):
        a, b = b, a
    return _shift_accumulate(n, a.bits, b.elements())


def _sumset_bits_convolution(n: int, a: ResidueSet, b: ResidueSet) -> int:
    if min(len(a), len(b)) >= 1 << _SAFE_COUNT_BITS:
        # pair counts could defeat float rounding; exactness wins
        return _sumset_bits_bitshift(n, a, b)
    ma = _bits_to_mask(n, a.bits).astype(np.float64)
    mb = _bits_to_mask(n, b.bits).astype(np.float64)
    counts = np.fft.irfft(np.fft.rfft(ma) * np.fft.rfft(mb), n)
    if np.max(np.abs(counts - np.rint(counts))) > 0.25:
        return _sumset_bits_bitshift(n, a, b)
    return _mask_to_bits(counts > 0.5)


def _auto_kernel(n: int, ca: int, cb: int) -> Kernel:
    # Shift cost is min(|A|,|B|) word passes over the bitvector; FFT cost is
    # ~n log n independent of density.  Crossover near 64*log2(n).
    if n < _CONVOLUTION_MIN_N:
        return Kernel.BITSHIFT
    if min(ca, cb) <= 64 * n.bit_length():
        return Kernel.BITSHIFT
    return Kernel.CONVOLUTION


def sumset(a: ResidueSet, b: ResidueSet, kernel: Kernel | None = None) -> ResidueSet:
    """A + B = {a + b mod N}.  Kernel choice never affects the result."""
    _check_same_modulus(a, b)
    n = a.modulus
    if a.bits == 0 or b.bits == 0:
        return ResidueSet.empty(n)
    if kernel is None:
        kernel = _auto_kernel(n, len(a), len(b))
    elif not isinstance(kernel, Kernel):
        kernel = Kernel(kernel)
    if kernel is Kernel.NAIVE:
        bits = _sumset_bits_naive(n, a.elements(), b.elements())
    elif kernel is Kernel.BITSHIFT:
        bits = _sumset_bits_bitshift(n, a, b)
    else:
        bits = _sumset_bits_convolution(n, a, b)
    return ResidueSet(n, bits)


def dilate(a: ResidueSet, lam: int) -> ResidueSet:
    """lam*A = {lam*a mod N}.  |lam*A| = |A| whenever gcd(lam, N) = 1."""
    n = a.modulus
    lam %= n
    if lam == 1:
        return a
    bits = 0
    for x in a.elements():
        bits |= 1 << (x * lam % n)
    return ResidueSet(n, bits)


def dilate_sum(a: ResidueSet, lam: int, kernel: Kernel | None = None) -> ResidueSet:
    """A + lam*A, the sum of dilates."""
    return sumset(a, dilate(a, lam), kernel)


def kfold_dilate_sum(a: ResidueSet, k: int, lam: int,
                     kernel: Kernel | None = None) -> ResidueSet:
    """A + ... + A + lam*A with k-1 plain summands; k=2 is dilate_sum."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if a.bits == 0:
        return ResidueSet.empty(a.modulus)
    out = iterated_sumset(a, k - 1, kernel)
    return sumset(out, dilate(a, lam), kernel)


def iterated_sumset(a: ResidueSet, m: int, kernel: Kernel | None = None) -> ResidueSet:
    """The m-fold sumset A + ... + A, computed by repeated doubling."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if a.bits == 0:
        return a
    full = (1 << a.modulus) - 1
    result = None
    power = a
    while m:
        if m & 1:
            result = power if result is None else sumset(result, power, kernel)
            if result.bits == full:
                return result
        m >>= 1
        if m:
            power = sumset(power, power, kernel)
    return result


def difference_set(a: ResidueSet, b: ResidueSet, kernel: Kernel | None = None) -> ResidueSet:
    """A - B = {a - b mod N} = A + (-1)*B."""
    _check_same_modulus(a, b)
    return sumset(a, dilate(b, -1), kernel)


def affine_image(a: ResidueSet, u: int, v: int) -> ResidueSet:
    """{u*a + v mod N} for a unit u; a bijective relabelling of Z/NZ."""
    n = a.modulus
    if gcd(u, n) != 1:
        raise ValueError(f"u={u} is not a unit mod {n}")
    u %= n
    v %= n
    bits = 0
    for x in a.elements():
        bits |= 1 << ((u * x + v) % n)
    return ResidueSet(n, bits)


def _min_rotation(n: int, srt: list[int], best) -> tuple[int, ...] | None:
    """Fold the shifts of srt into the running minimum `best`.

    Only shifts mapping a member to 0 are candidates: a nonempty minimum
    sorted tuple must start at 0.
    """
    m = len(srt)
    for i in range(m):
        pivot = srt[i]
        cand = tuple(srt[j] - pivot for j in range(i, m)) + tuple(
            srt[j] - pivot + n for j in range(i)
        )
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(a: ResidueSet) -> ResidueSet:
    """The distinguished representative of the affine orbit {u*A + v}.

    Representative = the image whose sorted element tuple is lexicographically
    least (memberships pushed toward 0); idempotent and constant on orbits.
    Requires a prime modulus so that every u in [1, N) is a unit.
    """
    n = a.modulus
    require_prime(n)
    if a.bits == 0 or a.bits == (1 << n) - 1:
        return a
    best = None
    for u in range(1, n):
        srt = sorted(x * u % n for x in a.elements())
        best = _min_rotation(n, srt, best)
    return ResidueSet.from_elements(n, best)


def is_canonical(a: ResidueSet) -> bool:
    """True iff a == canonical_form(a), with early exit."""
    n = a.modulus
    require_prime(n)
    if a.bits == 0 or a.bits == (1 << n) - 1:
        return True
    own = a.elements()
    if own[0] != 0:
        return False
    m = len(own)
    for u in range(1, n):
        srt = sorted(x * u % n for x in own)
        for i in range(m):
            pivot = srt[i]
            cand = tuple(srt[j] - pivot for j in range(i, m)) + tuple(
                srt[j] - pivot + n for j in range(i)
            )
            if cand < own:
                return False
    return True
