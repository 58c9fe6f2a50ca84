"""Type-A zigzag representations, their tensor ideals, and the spectrum of point ideals."""

from .barcode import Barcode, Interval, assemble, base_change, decompose, rank_invariant
from .linalg import GF2, GF5, QQ, Field, Matrix, get_field
from .quiver import (
    Morphism,
    QuiverWindow,
    Representation,
    cokernel,
    direct_sum,
    extension,
    interval_rep,
    kernel,
    support,
    tensor,
)
from .subsets import FiniteSubset

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "Interval",
    "assemble",
    "base_change",
    "decompose",
    "rank_invariant",
    "GF2",
    "GF5",
    "QQ",
    "Field",
    "Matrix",
    "get_field",
    "Morphism",
    "QuiverWindow",
    "Representation",
    "cokernel",
    "direct_sum",
    "extension",
    "interval_rep",
    "kernel",
    "support",
    "tensor",
    "FiniteSubset",
]
