"""Arithmetic in the binary extension fields GF(2^n) for 1 <= n <= 64.

A field element is an n-bit string stored as a Python int: bit i of the
int is the coefficient of x^i, so the string "101" is the polynomial
x^2 + 1 and the int 5.  The all-zeros string is the additive identity
and the int 1 (the string 0^{n-1}1) is the multiplicative identity.

Each field is fixed by an irreducible modulus polynomial of degree n,
encoded as an (n+1)-bit int with the top bit set.  The default modulus
for each n is the lexicographically least irreducible polynomial of
degree n, which for this encoding is the numerically smallest one, e.g.

    n=2 : x^2 + x + 1            -> 0b111       = 0x7
    n=3 : x^3 + x + 1            -> 0b1011      = 0xb
    n=8 : x^8 + x^4 + x^3 + x + 1 -> 0b100011011 = 0x11b
    n=64: x^64 + x^4 + x^3 + x + 1             = 0x1000000000000001b

Custom moduli are accepted for n <= 32 and are checked irreducible by
trial division against every polynomial of degree 1..n/2; for n > 32
only the built-in table entry is accepted.

Multiplication is shift-and-XOR with interleaved reduction; inversion
is the extended Euclidean algorithm on polynomials.  All values are
immutable and all operations are pure, so everything here is safe for
unrestricted concurrent use.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import DomainError, ParameterError

MAX_N = 64

# Lexicographically least irreducible polynomial of each degree 1..64.
# Generated by ascending search with a Rabin irreducibility test and
# cross-checked against trial division (n <= 32) and sympy.
_LEAST_IRREDUCIBLE = {
    1: 0x2, 2: 0x7, 3: 0xb, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83,
    8: 0x11b, 9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201b,
    14: 0x4021, 15: 0x8003, 16: 0x1002b, 17: 0x20009, 18: 0x40009,
    19: 0x80027, 20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021,
    24: 0x100001b, 25: 0x2000009, 26: 0x400001b, 27: 0x8000027,
    28: 0x10000003, 29: 0x20000005, 30: 0x40000003, 31: 0x80000009,
    32: 0x10000008d, 33: 0x20000004b, 34: 0x40000001b, 35: 0x800000005,
    36: 0x1000000035, 37: 0x200000003f, 38: 0x4000000063,
    39: 0x8000000011, 40: 0x10000000039, 41: 0x20000000009,
    42: 0x40000000027, 43: 0x80000000059, 44: 0x100000000021,
    45: 0x20000000001b, 46: 0x400000000003, 47: 0x800000000021,
    48: 0x100000000002d, 49: 0x2000000000071, 50: 0x400000000001d,
    51: 0x800000000004b, 52: 0x10000000000009, 53: 0x20000000000047,
    54: 0x4000000000007d, 55: 0x80000000000047, 56: 0x100000000000095,
    57: 0x200000000000011, 58: 0x400000000000063, 59: 0x80000000000007b,
    60: 0x1000000000000003, 61: 0x2000000000000027,
    62: 0x4000000000000069, 63: 0x8000000000000003,
    64: 0x1000000000000001b,
}


def _poly_mod(a: int, b: int) -> int:
    """Remainder of carry-less division of polynomial a by b."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def _trial_division_irreducible(candidate: int) -> bool:
    """True iff candidate has no divisor of degree 1..deg/2."""
    n = candidate.bit_length() - 1
    for d in range(2, 1 << (n // 2 + 1)):
        if d.bit_length() >= 2 and _poly_mod(candidate, d) == 0:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _check_modulus(n: int, modulus: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ParameterError(f"field degree n={n} outside supported range 1..{MAX_N}")
    if modulus.bit_length() != n + 1:
        raise ParameterError(
            f"modulus {modulus:#x} does not have degree exactly {n}"
        )
    if n <= 32:
        if not _trial_division_irreducible(modulus):
            raise ParameterError(f"modulus {modulus:#x} is reducible")
    elif modulus != _LEAST_IRREDUCIBLE[n]:
        raise ParameterError(
            f"modulus {modulus:#x} for n={n} is not in the vetted table; "
            f"expected {_LEAST_IRREDUCIBLE[n]:#x}"
        )


@dataclass(frozen=True)
class FieldParams:
    """A field GF(2^n): bit length n and irreducible modulus."""

    n: int
    modulus: int

    def __post_init__(self):
        _check_modulus(self.n, self.modulus)

    @property
    def order(self) -> int:
        return 1 << self.n


@functools.lru_cache(maxsize=None)
def field_params(n: int) -> FieldParams:
    """The default field for bit length n (table modulus)."""
    if not 1 <= n <= MAX_N:
        raise ParameterError(f"field degree n={n} outside supported range 1..{MAX_N}")
    return FieldParams(n, _LEAST_IRREDUCIBLE[n])


@dataclass(frozen=True)
class FieldElement:
    """An n-bit string viewed as an element of GF(2^n)."""

    bits: int
    params: FieldParams

    def __post_init__(self):
        if not 0 <= self.bits < self.params.order:
            raise ParameterError(
                f"element {self.bits:#x} does not fit in {self.params.n} bits"
            )

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)


def _require_same_params(a: FieldElement, b: FieldElement) -> None:
    if a.params != b.params:
        raise ParameterError("operands belong to different fields")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Field addition: bitwise XOR."""
    _require_same_params(a, b)
    return FieldElement(a.bits ^ b.bits, a.params)


def mul_bits(a: int, b: int, params: FieldParams) -> int:
    """Field product of two raw n-bit values (int level)."""
    top = 1 << params.n
    modulus = params.modulus
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return r


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Field multiplication: carry-less product reduced by the modulus."""
    _require_same_params(a, b)
    return FieldElement(mul_bits(a.bits, b.bits, a.params), a.params)


def inverse_bits(a: int, params: FieldParams) -> int:
    """Multiplicative inverse of a raw nonzero n-bit value (int level)."""
    if a == 0:
        raise DomainError("zero has no multiplicative inverse")
    # Extended Euclid over GF(2)[x]: r0 = u*modulus + t0*a throughout.
    r0, r1 = params.modulus, a
    t0, t1 = 0, 1
    while r1:
        shift = r0.bit_length() - r1.bit_length()
        if shift < 0:
            r0, r1, t0, t1 = r1, r0, t1, t0
            continue
        r0 ^= r1 << shift
        t0 ^= t1 << shift
    # r0 is now gcd(modulus, a) = 1, so t0 * a = 1 (mod modulus).
    return _poly_mod(t0, params.modulus)


def inverse(a: FieldElement) -> FieldElement:
    """Multiplicative inverse; rejects the zero element."""
    return FieldElement(inverse_bits(a.bits, a.params), a.params)


def nth_nonzero(i: int, params: FieldParams) -> FieldElement:
    """The i-th nonzero element, 1-based, in numeric order of bit strings.

    Numeric order makes index 1 the multiplicative identity, so a
    construction whose first coefficient is nth_nonzero(1) degenerates
    to plain XOR there.
    """
    if not 1 <= i <= params.order - 1:
        raise ParameterError(
            f"nonzero-element index {i} out of range 1..{params.order - 1}"
        )
    return FieldElement(i, params)
