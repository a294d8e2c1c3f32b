"""Compressor-backed proxies for string complexity and dependency.

True program-length complexity is uncomputable; every estimate here is
a heuristic built from off-the-shelf compressors.  The conditional
estimate uses the standard difference-of-joint surrogate

    k(x | y) ~= max(0, k(y . x) - k(y))

with the pairing fixed as y then x, no delimiter.  This is documented
as a heuristic: it inherits each backend's window and header behavior,
and the per-backend constants live in recorded test fixtures, not here.

Shipped backends: "lzma" (dictionary/LZ77 family, the default; its
large window is what makes the self-dependency fixture sharp) and
"bz2" (block-sorting family).  Both are deterministic and round-trip.

Also here: the self-delimiting pairing codec for bit strings.  The
length of the first part is written as doubled binary digits,
terminated by "01", followed by both parts:

    encode("101", "00") = "11" doubled -> "1111" + "01" + "101" + "00"

so |encode(a, b)| = |a| + |b| + 2*floor(log2 |a|) + 4 exactly.
"""

from __future__ import annotations

import bz2
import lzma
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import BackendError, DecodeError, ParameterError


@dataclass(frozen=True)
class Compressor:
    """A deterministic compression backend."""

    name: str
    compress: Callable[[bytes], bytes]
    decompress: Optional[Callable[[bytes], bytes]] = None


BACKENDS = {
    "lzma": Compressor("lzma", lambda d: lzma.compress(d, preset=6), lzma.decompress),
    "bz2": Compressor("bz2", lambda d: bz2.compress(d, 9), bz2.decompress),
}
DEFAULT_BACKEND = "lzma"


def get_backend(name: str) -> Compressor:
    try:
        return BACKENDS[name]
    except KeyError:
        raise BackendError(
            f"unknown backend; available: {', '.join(sorted(BACKENDS))}", name
        ) from None


def k_estimate(data: bytes, comp: Compressor) -> int:
    """Estimated complexity of data in bits: 8 * |compress(data)|."""
    try:
        return 8 * len(comp.compress(data))
    except Exception as exc:
        raise BackendError(f"compression failed: {exc}", comp.name) from exc


def conditional_k_estimate(x: bytes, y: bytes, comp: Compressor) -> int:
    """Estimated complexity of x given y: max(0, k(y.x) - k(y)) bits."""
    return max(0, k_estimate(y + x, comp) - k_estimate(y, comp))


@dataclass(frozen=True)
class DepEstimate:
    """Dependency estimates in bits, raw and clamped to >= 0.

    verdict is True iff both directional drops are within alpha, i.e.
    the strings look at most alpha-dependent to this backend.
    """

    kx: int
    ky: int
    kxy: int
    dep_raw: int
    dep: int
    alpha_x_raw: int
    alpha_x: int
    alpha_y_raw: int
    alpha_y: int
    alpha: float
    verdict: bool


def dependency(x: bytes, y: bytes, comp: Compressor, alpha: float) -> DepEstimate:
    """Directional complexity drops of x and y against each other."""
    kx = k_estimate(x, comp)
    ky = k_estimate(y, comp)
    kxy = k_estimate(x + y, comp)
    kyx = k_estimate(y + x, comp)
    cond_x = max(0, kyx - ky)  # k(x | y)
    cond_y = max(0, kxy - kx)  # k(y | x)
    alpha_x_raw = kx - cond_x
    alpha_y_raw = ky - cond_y
    dep_raw = kx + ky - kxy
    alpha_x = max(0, alpha_x_raw)
    alpha_y = max(0, alpha_y_raw)
    return DepEstimate(
        kx=kx,
        ky=ky,
        kxy=kxy,
        dep_raw=dep_raw,
        dep=max(0, dep_raw),
        alpha_x_raw=alpha_x_raw,
        alpha_x=alpha_x,
        alpha_y_raw=alpha_y_raw,
        alpha_y=alpha_y,
        alpha=alpha,
        verdict=alpha_x <= alpha and alpha_y <= alpha,
    )


@dataclass(frozen=True)
class SymmetryDiagnostic:
    """Both directional drops and how far apart they are, in bits."""

    lhs_drop: int
    rhs_drop: int
    abs_diff: int


def symmetry_diagnostic(x: bytes, y: bytes, comp: Compressor) -> SymmetryDiagnostic:
    """Compare k(x) - k(x|y) against k(y) - k(y|x).

    Purely diagnostic: for ideal complexities the two sides agree up to
    logarithmic terms; compressor estimates only indicate that
    empirically.
    """
    est = dependency(x, y, comp, alpha=0.0)
    return SymmetryDiagnostic(
        est.alpha_x, est.alpha_y, abs(est.alpha_x - est.alpha_y)
    )


def _check_bit_string(s: str, what: str) -> None:
    for pos, ch in enumerate(s):
        if ch not in "01":
            raise ParameterError(f"{what} has non-bit character {ch!r} at {pos}")


def concat_encode(a: str, b: str) -> str:
    """Self-delimiting pairing of two bit strings; a must be nonempty."""
    _check_bit_string(a, "a")
    _check_bit_string(b, "b")
    if not a:
        raise ParameterError("the first part must be nonempty to encode its length")
    length_bits = format(len(a), "b")
    doubled = "".join(ch + ch for ch in length_bits)
    return doubled + "01" + a + b


def concat_decode(s: str) -> tuple[str, str]:
    """Inverse of concat_encode; rejects malformed input with its position."""
    for pos, ch in enumerate(s):
        if ch not in "01":
            raise DecodeError(f"non-bit character {ch!r}", pos)
    pos = 0
    length_bits = []
    while True:
        pair = s[pos : pos + 2]
        if len(pair) < 2:
            raise DecodeError("truncated length prefix", pos)
        if pair == "01":
            pos += 2
            break
        if pair[0] != pair[1]:
            raise DecodeError("unpaired length prefix bits", pos)
        length_bits.append(pair[0])
        pos += 2
    if not length_bits:
        raise DecodeError("empty length field", 0)
    if length_bits[0] != "1":
        raise DecodeError("length field has a leading zero", 0)
    len_a = int("".join(length_bits), 2)
    if len(s) - pos < len_a:
        raise DecodeError(
            f"payload shorter than declared length {len_a}", pos
        )
    return s[pos : pos + len_a], s[pos + len_a :]
