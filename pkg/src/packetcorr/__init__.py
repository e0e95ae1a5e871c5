"""Exact combinatorics comparing real and p-adic A-packets."""

from .arith import HalfInteger, Permutation
from .parameters import (
    InfinitesimalCharacter, PAdicArthurParameter, RealArthurParameter, ValidationError,
    target_group,
)

__all__ = [
    "HalfInteger", "InfinitesimalCharacter", "PAdicArthurParameter", "Permutation",
    "RealArthurParameter", "ValidationError", "target_group",
]
__version__ = "0.1.0"
