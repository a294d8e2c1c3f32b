"""Exact small-scale distribution checks with rational probabilities.

Distributions keep a ``Fraction`` per outcome so statements like
"exactly uniform" are decided with no floating-point drift; floats
appear only at the final log/compare step (min-entropy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DecodeError, ParameterError, ResourceError

# Hard default: pair enumeration up to n = 12, i.e. 2^24 evaluations.
DEFAULT_ENUM_BUDGET = 1 << 24


@dataclass(frozen=True)
class Dist:
    """A probability distribution on {0,1}^domain_bits."""

    domain_bits: int
    probs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        limit = 1 << self.domain_bits
        total = Fraction(0)
        for outcome, p in self.probs.items():
            if not 0 <= outcome < limit:
                raise ParameterError(
                    f"outcome {outcome:#x} does not fit in {self.domain_bits} bits"
                )
            if p < 0:
                raise ParameterError("negative probability")
            total += p
        if total != 1:
            raise ParameterError(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_counts(cls, domain_bits: int, counts: dict[int, int]) -> "Dist":
        total = sum(counts.values())
        return cls(
            domain_bits,
            {v: Fraction(c, total) for v, c in counts.items() if c},
        )

    @classmethod
    def uniform(cls, domain_bits: int) -> "Dist":
        p = Fraction(1, 1 << domain_bits)
        return cls(domain_bits, {v: p for v in range(1 << domain_bits)})

    @classmethod
    def point_mass(cls, domain_bits: int, outcome: int) -> "Dist":
        return cls(domain_bits, {outcome: Fraction(1)})


def pushforward(
    fn: Callable[[int, int], int],
    n: int,
    out_bits: int,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> Dist:
    """Exact distribution of fn(x1, x2) under uniform independent n-bit inputs.

    Enumerates all 2^(2n) input pairs; rejects the run up front when that
    exceeds ``budget`` evaluations.
    """
    evals = 1 << (2 * n)
    if evals > budget:
        raise ResourceError(
            f"pushforward needs {evals} evaluations, over budget {budget}"
        )
    counts: dict[int, int] = {}
    N = 1 << n
    for x1 in range(N):
        for x2 in range(N):
            v = fn(x1, x2)
            counts[v] = counts.get(v, 0) + 1
    return Dist(out_bits, {v: Fraction(c, evals) for v, c in counts.items()})


def min_entropy(d: Dist) -> float:
    """-log2 of the largest probability (0.0 for a point mass).

    Exact rational input; the result is a float good to well below 2^-40.
    """
    if not d.probs:
        raise ParameterError("empty distribution")
    p = max(d.probs.values())
    return math.log2(p.denominator) - math.log2(p.numerator)


def statistical_distance(d1: Dist, d2: Dist) -> Fraction:
    """Largest probability gap over all events: half the L1 distance."""
    if d1.domain_bits != d2.domain_bits:
        raise ParameterError("distributions live on different domains")
    outcomes = set(d1.probs) | set(d2.probs)
    zero = Fraction(0)
    l1 = sum(abs(d1.probs.get(v, zero) - d2.probs.get(v, zero)) for v in outcomes)
    return l1 / 2


def epsilon_close_to_min_entropy(d: Dist, k_bits: float) -> Fraction:
    """Distance from d to the nearest distribution with min-entropy >= k_bits.

    Cap every probability at 2^-k_bits and move the excess onto under-cap
    outcomes; the total excess is the exact optimum.  Integral k_bits keep
    the cap (and so the answer) exactly rational.
    """
    if not 0 <= k_bits <= d.domain_bits:
        raise ParameterError(
            f"k_bits={k_bits} out of range 0..{d.domain_bits}"
        )
    if float(k_bits).is_integer():
        cap = Fraction(1, 1 << int(k_bits))
    else:
        cap = Fraction(2.0 ** -float(k_bits))
    zero = Fraction(0)
    return sum((p - cap for p in d.probs.values() if p > cap), zero)


def dist_to_text(d: Dist) -> str:
    """Serialize: a ``bits n`` header, then ``outcome_hex num/den`` lines."""
    width = max(1, (d.domain_bits + 3) // 4)
    lines = [f"bits {d.domain_bits}"]
    for outcome in sorted(d.probs):
        p = d.probs[outcome]
        lines.append(f"{outcome:0{width}x} {p.numerator}/{p.denominator}")
    return "\n".join(lines) + "\n"


def dist_from_text(text: str) -> Dist:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("bits "):
        raise DecodeError("missing 'bits <n>' header", 0)
    try:
        domain_bits = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise DecodeError("unreadable 'bits' header", 0) from None
    probs: dict[int, Fraction] = {}
    for idx, line in enumerate(lines[1:], start=1):
        try:
            outcome_hex, frac = line.split()
            num, den = frac.split("/")
            probs[int(outcome_hex, 16)] = Fraction(int(num), int(den))
        except ValueError:
            raise DecodeError(f"unreadable distribution line {line!r}", idx) from None
    return Dist(domain_bits, probs)
