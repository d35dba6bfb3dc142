"""Exact-arithmetic homological calculator for bound quiver algebras.

Everything is computed over an exact field (arbitrary-precision rationals
or a prime field), so every certificate the package emits can be re-checked
by rank computations alone.
"""

from bocal.linalg import QQ, PrimeField, Mat
from bocal.algebra import (
    Quiver,
    Relation,
    AlgebraData,
    AlgebraTower,
    build_bound_quiver_algebra,
    make_subalgebra,
    is_left_idealized_extension,
    build_tower,
    opposite_algebra,
)

__all__ = [
    "QQ",
    "PrimeField",
    "Mat",
    "Quiver",
    "Relation",
    "AlgebraData",
    "AlgebraTower",
    "build_bound_quiver_algebra",
    "make_subalgebra",
    "is_left_idealized_extension",
    "build_tower",
    "opposite_algebra",
]
