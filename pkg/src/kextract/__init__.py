"""Pairwise-independence constructions over GF(2^n), balanced color
tables with exact verification, condenser-table pipelines, and
compression-based dependency estimates, plus exact small-scale
distribution checks backing all of them."""

from . import btable, condense, extend, gf2n, kproxy, stats
from .errors import (
    BackendError,
    DecodeError,
    DomainError,
    KextractError,
    ParameterError,
    ResourceError,
)

__version__ = "0.1.0"

__all__ = [
    "btable",
    "condense",
    "extend",
    "gf2n",
    "kproxy",
    "stats",
    "KextractError",
    "ParameterError",
    "DomainError",
    "ResourceError",
    "DecodeError",
    "BackendError",
    "__version__",
]
