"""Expand two n-bit seeds into many jointly-decodable n-bit strings.

Output i is z_i = x1 + e_i * x2 computed in GF(2^n), where e_i is the
i-th nonzero field element in numeric order.  Because e_1 is the
multiplicative identity, the first output is plain XOR of the seeds.

For any fixed pair of distinct indices i != j the map
(x1, x2) -> (z_i, z_j) is a bijection on pairs of n-bit strings
(``invert_pair`` is its inverse), so under uniform independent seeds
every output pair is exactly uniform: the outputs are pairwise
independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import ParameterError
from .gf2n import FieldParams, inverse_bits, mul_bits


@dataclass(frozen=True)
class ExtendRequest:
    """Two n-bit seeds plus the number of outputs to produce."""

    x1: int
    x2: int
    count: int
    params: FieldParams

    def __post_init__(self):
        order = self.params.order
        for name, v in (("x1", self.x1), ("x2", self.x2)):
            if not 0 <= v < order:
                raise ParameterError(f"{name} does not fit in {self.params.n} bits")
        if not 1 <= self.count <= order - 1:
            raise ParameterError(
                f"count {self.count} out of range 1..{order - 1}: "
                "indices must be distinct nonzero field elements"
            )


@dataclass(frozen=True)
class ExtendOutput:
    outputs: tuple[int, ...]


def iter_extend(req: ExtendRequest) -> Iterator[int]:
    """Yield z_1, z_2, ... in index order with O(n) memory."""
    for i in range(1, req.count + 1):
        yield req.x1 ^ mul_bits(i, req.x2, req.params)


def extend(req: ExtendRequest) -> ExtendOutput:
    """All ``req.count`` outputs, materialized in index order."""
    return ExtendOutput(tuple(iter_extend(req)))


def invert_pair(
    zi: int, zj: int, i: int, j: int, params: FieldParams
) -> tuple[int, int]:
    """Recover (x1, x2) from outputs zi, zj at distinct indices i, j.

    Solves zi + zj = (e_i + e_j) * x2; the index sum is nonzero exactly
    because i != j, so the field inverse exists.
    """
    order = params.order
    if i == j:
        raise ParameterError("indices must be distinct to invert a pair")
    for name, v in (("i", i), ("j", j)):
        if not 1 <= v <= order - 1:
            raise ParameterError(f"index {name}={v} out of range 1..{order - 1}")
    for name, v in (("zi", zi), ("zj", zj)):
        if not 0 <= v < order:
            raise ParameterError(f"{name} does not fit in {params.n} bits")
    x2 = mul_bits(zi ^ zj, inverse_bits(i ^ j, params), params)
    x1 = zi ^ mul_bits(i, x2, params)
    return x1, x2
